// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sidelobe/report.hpp"

namespace sidelobe::cli {

using report::Json;

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kBudgetRefused = 3,
  kIoError = 4,
};

/// Thrown for unreadable inputs and unwritable outputs.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { table, csv, json };

/// Options shared by every command.
struct Common {
  std::string format = "table";
  std::string out = "sidelobe-out";
  unsigned workers = 1;
};

void add_common(CLI::App& cmd, Common& common);

Format format_of(const Common& common);

/// One file a command produced, plus what it printed to stdout.
class Output {
 public:
  explicit Output(const Common& common);

  /// Writes `body` to <out>/<name> and records it for the manifest.
  void write(const std::string& name, const std::string& body);
  const std::vector<std::string>& files() const { return files_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

/// Parameters of a parsed command as {option: value(s)}.
Json collect_params(const CLI::App& cmd);

/// Writes manifest.json. `argv` excludes the program name.
void write_manifest(Output& out, const std::string& command, const Json& params, std::uint64_t seed,
                    const std::vector<std::string>& argv, const std::string& started);

std::string utc_now();

/// Payload metadata that stays identical across reruns.
Json payload_meta(std::uint64_t seed, std::uint64_t trials);

/// Fixed-width table rendering for terminal output.
std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

/// Emits a CSV/JSON pair to stdout in the selected format.
void print(const Common& common, const report::Csv& csv, const Json& json,
           const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

/// "1,2,3" -> {1,2,3}; throws std::invalid_argument on garbage.
std::vector<std::int64_t> parse_int_list(const std::string& text);

}  // namespace sidelobe::cli
