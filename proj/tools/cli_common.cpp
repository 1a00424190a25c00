// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include "cli_common.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sidelobe::cli {

namespace {

// Environment overrides recorded in the manifest so a replay sees them too.
constexpr const char* kEnvVars[] = {"PSL_FORMAT", "PSL_OUT", "PSL_WORKERS", "PSL_SEED",
                                    "PSL_TRIALS", "PSL_BUDGET", "PSL_LAMBDA"};

}  // namespace

void add_common(CLI::App& cmd, Common& common) {
  cmd.add_option("--format", common.format, "stdout format: table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->envname("PSL_FORMAT");
  cmd.add_option("--out", common.out, "directory for output files and manifest.json")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)
      ->envname("PSL_OUT");
  cmd.add_option("--workers", common.workers, "worker threads (never changes results)")
      ->check(CLI::Range(1U, 1024U))
      ->envname("PSL_WORKERS");
}

Format format_of(const Common& common) {
  if (common.format == "csv") return Format::csv;
  if (common.format == "json") return Format::json;
  return Format::table;
}

Output::Output(const Common& common) : dir_(common.out) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_)) {
    throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
  }
}

void Output::write(const std::string& name, const std::string& body) {
  const auto path = dir_ / name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << body;
  f.close();
  if (!f) throw IoError("cannot write " + path.string());
  if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
}

Json collect_params(const CLI::App& cmd) {
  Json params = Json::object();
  for (const CLI::Option* opt : cmd.get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    std::string key = opt->get_name();
    key.erase(0, key.find_first_not_of('-'));
    if (opt->count() == 0) {
      if (opt->get_default_str().empty()) continue;
      params[key] = opt->get_default_str();
    } else if (opt->results().size() == 1) {
      params[key] = opt->results().front();
    } else {
      params[key] = opt->results();
    }
  }
  return params;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(Output& out, const std::string& command, const Json& params, std::uint64_t seed,
                    const std::vector<std::string>& argv, const std::string& started) {
  Json env = Json::object();
  for (const char* name : kEnvVars)
    if (const char* v = std::getenv(name)) env[name] = v;

  // Listed before writing so the manifest names itself as an output too.
  std::vector<std::string> files = out.files();
  files.push_back("manifest.json");
  Json m{{"command", command}, {"params", params}, {"argv", argv},   {"env", env},
         {"seed", seed},       {"version", SIDELOBE_VERSION},        {"started", started},
         {"finished", utc_now()}, {"outputs", files}};
  out.write("manifest.json", m.dump(2) + "\n");
}

Json payload_meta(std::uint64_t seed, std::uint64_t trials) {
  return Json{{"seed", seed}, {"trials", trials}, {"version", SIDELOBE_VERSION}};
}

std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << cells[i];
      if (i + 1 < cells.size()) os << std::string(width[i] - cells[i].size() + 2, ' ');
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

void print(const Common& common, const report::Csv& csv, const Json& json, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows) {
  switch (format_of(common)) {
    case Format::csv: std::cout << csv.str(); break;
    case Format::json: std::cout << json.dump(2) << '\n'; break;
    case Format::table: std::cout << table(header, rows); break;
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const long long v = std::stoll(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

}  // namespace sidelobe::cli
