// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <memory>

#include "cli_common.hpp"
#include "commands.hpp"
#include "sidelobe/exact.hpp"

namespace sidelobe::cli {

namespace {

struct SearchOptions {
  Common common;
  int min_psl = 0;
  int dist = 0;
  std::string table;
  int max_n = 0;
};

int run(const SearchOptions& o, const CLI::App& cmd, const Invocation& inv) {
  if (!o.min_psl && !o.dist && o.table.empty()) {
    throw std::invalid_argument("search: give --min-psl, --dist or --table");
  }
  report::Csv csv({"n", "min_psl", "min_psl_over_sqrt_n", "witness", "expectation", "distribution"});
  Json items = Json::array();
  std::vector<std::vector<std::string>> rows;

  auto add = [&](const exact::MinPsl& r, const exact::ExactPslSummary* d) {
    const std::string witness = render(r.witness, Encoding::plusminus);
    const std::string ratio = report::format_double(static_cast<double>(r.value) / std::sqrt(r.n));
    std::string expectation, dist;
    Json item = report::to_json(r);
    if (d) {
      expectation = to_string(d->expectation);
      for (const auto& [m, c] : d->distribution) dist += (dist.empty() ? "" : " ") + std::to_string(m) + ":" + std::to_string(c);
      item["distribution"] = report::to_json(*d)["distribution"];
      item["expectation"] = report::rational_to_json(d->expectation);
    }
    csv.row({std::to_string(r.n), std::to_string(r.value), ratio, witness, expectation, dist});
    rows.push_back({std::to_string(r.n), std::to_string(r.value), ratio, witness, expectation, dist});
    items.push_back(item);
  };

  const int psl_limit = o.max_n ? o.max_n : exact::kMaxMinPslN;
  const int dist_limit = o.max_n ? o.max_n : exact::kMaxDistributionN;
  if (o.min_psl) add(exact::min_psl(o.min_psl, psl_limit), nullptr);
  if (o.dist) {
    const auto d = exact::exact_psl_distribution(o.dist, o.common.workers, dist_limit);
    exact::MinPsl r;
    r.n = d.n;
    r.value = d.min_psl;
    r.witness = d.witness;
    add(r, &d);
  }
  if (!o.table.empty()) {
    const auto dots = o.table.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("--table expects LO..HI");
    const int lo = std::stoi(o.table.substr(0, dots));
    const int hi = std::stoi(o.table.substr(dots + 2));
    if (lo < 2 || hi < lo) throw std::invalid_argument("--table expects 2 <= LO <= HI");
    for (int n = lo; n <= hi; ++n) add(exact::min_psl(n, psl_limit), nullptr);
  }

  Json payload{{"command", "search"}, {"version", SIDELOBE_VERSION}, {"results", items}};
  Output out(o.common);
  out.write("search.csv", csv.str());
  out.write("search.json", payload.dump(2) + "\n");
  write_manifest(out, "search", collect_params(cmd), 0, inv.argv, inv.started);
  print(o.common, csv, payload, {"n", "M_n", "M_n/sqrt(n)", "witness", "E[M]", "distribution"}, rows);
  return kOk;
}

}  // namespace

Command add_search(CLI::App& app) {
  auto o = std::make_shared<SearchOptions>();
  auto* cmd = app.add_subcommand("search", "exact minimum peak sidelobe level and exact distributions");
  cmd->add_option("--min-psl", o->min_psl, "find M_n and an optimal sequence")->check(CLI::Range(2, 64));
  cmd->add_option("--dist", o->dist, "exact distribution of M over all 2^n sequences")->check(CLI::Range(2, 64));
  cmd->add_option("--table", o->table, "M_n for every n in LO..HI");
  cmd->add_option("--max-n", o->max_n, "override the largest n searched");
  add_common(*cmd, o->common);
  return {cmd, [o, cmd](const Invocation& inv) { return run(*o, *cmd, inv); }};
}

}  // namespace sidelobe::cli
