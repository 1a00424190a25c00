// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "cli_common.hpp"
#include "commands.hpp"
#include "sidelobe/errors.hpp"

namespace sidelobe::cli {

namespace {

int dispatch(std::vector<std::string> args);

// Re-runs the command recorded in a manifest, with its environment
// overrides, optionally into a different output directory.
int replay(const std::string& manifest_path, const std::string& out) {
  std::ifstream f(manifest_path);
  if (!f) throw IoError("cannot open " + manifest_path);
  Json m;
  try {
    m = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(manifest_path + ": " + e.what());
  }
  for (const auto& [name, value] : m.at("env").items()) setenv(name.c_str(), value.get<std::string>().c_str(), 1);
  auto args = m.at("argv").get<std::vector<std::string>>();
  if (!out.empty()) {
    args.push_back("--out");
    args.push_back(out);
  }
  return dispatch(args);
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"Autocorrelation and peak sidelobe level of binary sequences", "sidelobe"};
  app.set_version_flag("--version", SIDELOBE_VERSION);
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  const std::vector<Command> commands{add_compute(app), add_verify(app), add_simulate(app), add_search(app)};

  std::string manifest, replay_out;
  auto* rep = app.add_subcommand("replay", "re-run the command recorded in a manifest.json");
  rep->add_option("manifest", manifest, "path to manifest.json")->required();
  rep->add_option("--out", replay_out, "write outputs here instead of the recorded directory");

  // CLI11 parses a reversed argument vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  if (rep->parsed()) return replay(manifest, replay_out);
  const Invocation inv{args, utc_now()};
  for (const auto& c : commands)
    if (c.app->parsed()) return c.run(inv);
  return kInputError;
}

}  // namespace

}  // namespace sidelobe::cli

int main(int argc, char** argv) {
  using namespace sidelobe;
  using namespace sidelobe::cli;
  try {
    return dispatch(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kBudgetRefused;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kCheckFailed;
  }
}
