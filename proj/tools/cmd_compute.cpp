// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

#include "cli_common.hpp"
#include "commands.hpp"
#include "sidelobe/correlation.hpp"
#include "sidelobe/sequence.hpp"

namespace sidelobe::cli {

namespace {

struct ComputeOptions {
  Common common;
  std::string input = "-";
  bool acf = false;
  bool psl = false;
  int measure = 0;
  std::string method = "auto";
  std::string encoding = "auto";
  bool binary = false;
  double budget = kDefaultMeasureBudget;
};

std::vector<SequenceRecord> load(const ComputeOptions& o) {
  std::string text;
  if (o.input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream f(o.input, std::ios::binary);
    if (!f) throw IoError("cannot open " + o.input);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  std::istringstream in(text);
  if (o.binary) {
    std::vector<SequenceRecord> out;
    std::size_t k = 0;
    for (auto& s : read_binary(in)) out.push_back({++k, std::move(s)});
    return out;
  }
  Encoding enc = Encoding::plusminus;
  if (o.encoding == "auto") enc = detect_encoding(text);
  else if (o.encoding == "01") enc = Encoding::binary01;
  return read_sequences(in, enc);
}

CorrelationProfile profile(const BinarySequence& s, const std::string& method) {
  if (method == "naive") return acf_naive(s);
  if (method == "fft") return acf_fft(s);
  return acf_bitparallel(s);
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

int run(const ComputeOptions& o, const CLI::App& cmd, const Invocation& inv) {
  const bool want_psl = o.psl || o.acf || o.measure == 0;
  const auto records = load(o);

  report::Csv csv({"line", "n", "psl", "acf", "measure", "shifts", "prefix"});
  Json items = Json::array();
  std::vector<std::vector<std::string>> rows;
  for (const auto& rec : records) {
    const auto& s = rec.sequence;
    Json item{{"line", rec.line}, {"n", s.size()}};
    std::string psl_cell, acf_cell, measure_cell, shifts_cell, prefix_cell;
    // The full profile is only needed for --acf or an explicit method.
    std::optional<CorrelationProfile> p;
    if (o.acf || o.method != "auto") p = profile(s, o.method);
    if (want_psl) {
      std::optional<std::int64_t> m;
      if (p) m = p->psl;
      else if (s.size() > 1) m = sidelobe::psl(s);
      item["psl"] = m ? Json(*m) : Json(nullptr);
      psl_cell = m ? std::to_string(*m) : "";
    }
    if (o.acf) {
      item["acf"] = p->values;
      acf_cell = join(p->values);
    }
    if (o.measure > 0) {
      const auto r = correlation_measure(s, o.measure, o.budget);
      item["measure"] = report::to_json(r);
      measure_cell = std::to_string(r.value);
      std::vector<std::int64_t> sh(r.shifts.begin(), r.shifts.end());
      shifts_cell = join(sh);
      prefix_cell = std::to_string(r.prefix);
    }
    items.push_back(item);
    std::vector<std::string> row{std::to_string(rec.line), std::to_string(s.size()), psl_cell, acf_cell,
                                 measure_cell, shifts_cell, prefix_cell};
    csv.row(row);
    rows.push_back(std::move(row));
  }

  Json payload{{"command", "compute"}, {"version", SIDELOBE_VERSION}, {"sequences", items}};
  Output out(o.common);
  out.write("compute.csv", csv.str());
  out.write("compute.json", payload.dump(2) + "\n");
  write_manifest(out, "compute", collect_params(cmd), 0, inv.argv, inv.started);
  print(o.common, csv, payload, {"line", "n", "psl", "acf", "S_r", "shifts", "prefix"}, rows);
  return kOk;
}

}  // namespace

Command add_compute(CLI::App& app) {
  auto o = std::make_shared<ComputeOptions>();
  auto* cmd = app.add_subcommand("compute", "correlations, peak sidelobe level and S_r of given sequences");
  cmd->add_option("input", o->input, "sequence file, one per line ('-' for stdin)");
  cmd->add_flag("--acf", o->acf, "print C_0..C_{n-1}");
  cmd->add_flag("--psl", o->psl, "print the peak sidelobe level (on unless only --measure is given)");
  cmd->add_option("--measure", o->measure, "compute S_r for this r")->check(CLI::Range(2, 64));
  cmd->add_option("--method", o->method, "auto, naive, bitparallel or fft")
      ->check(CLI::IsMember({"auto", "naive", "bitparallel", "fft"}));
  cmd->add_option("--encoding", o->encoding, "auto, pm (+/-) or 01")->check(CLI::IsMember({"auto", "pm", "01"}));
  cmd->add_flag("--binary", o->binary, "input holds packed binary records");
  cmd->add_option("--budget", o->budget, "operation budget for S_r")->envname("PSL_BUDGET");
  add_common(*cmd, o->common);
  return {cmd, [o, cmd](const Invocation& inv) { return run(*o, *cmd, inv); }};
}

}  // namespace sidelobe::cli
