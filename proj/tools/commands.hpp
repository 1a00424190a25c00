// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace sidelobe::cli {

struct Invocation {
  std::vector<std::string> argv;  // without the program name
  std::string started;
};

/// A registered subcommand and the action to run when it was parsed.
struct Command {
  CLI::App* app;
  std::function<int(const Invocation&)> run;
};

Command add_compute(CLI::App& app);
Command add_verify(CLI::App& app);
Command add_simulate(CLI::App& app);
Command add_search(CLI::App& app);

}  // namespace sidelobe::cli
