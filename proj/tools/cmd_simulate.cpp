// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <memory>

#include "cli_common.hpp"
#include "commands.hpp"
#include "sidelobe/bounds.hpp"
#include "sidelobe/exact.hpp"
#include "sidelobe/montecarlo.hpp"

namespace sidelobe::cli {

namespace {

struct SimulateOptions {
  Common common;
  std::string n;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string u = "1";
  int v = 0;
  std::string lambda = "auto";
  int points = 50;
  double confidence = 95;
};

std::string num(double x) { return report::format_double(x); }

std::uint64_t trials_or(const SimulateOptions& o, std::uint64_t fallback) {
  return o.trials ? o.trials : fallback;
}

double z_of(const SimulateOptions& o) {
  if (o.confidence == 95) return mc::kZ95;
  if (o.confidence == 99) return mc::kZ99;
  throw std::invalid_argument("--confidence must be 95 or 99");
}

double threshold(const SimulateOptions& o, std::int64_t n) {
  if (o.lambda == "auto") return bounds::lambda_n(static_cast<double>(n));
  std::size_t used = 0;
  const double x = std::stod(o.lambda, &used);
  if (used != o.lambda.size()) throw std::invalid_argument("bad --lambda '" + o.lambda + "'");
  return x;
}

// "max" picks the largest shift with u <= n / log n.
std::int64_t shift(const SimulateOptions& o, std::int64_t n) {
  const std::int64_t u = o.u == "max" ? bounds::max_small_shift(n) : parse_int_list(o.u).at(0);
  if (u < 1 || u >= n) throw std::invalid_argument("--u must satisfy 1 <= u < n");
  return u;
}

std::vector<std::int64_t> lengths(const SimulateOptions& o, std::vector<std::int64_t> fallback) {
  auto ns = o.n.empty() ? fallback : parse_int_list(o.n);
  for (auto n : ns)
    if (n < 1) throw std::invalid_argument("--n values must be positive");
  return ns;
}

struct Emitted {
  report::Csv csv;
  Json payload;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::uint64_t trials;
};

Emitted trend(const SimulateOptions& o) {
  const auto ns64 = lengths(o, {1024, 4096});
  std::vector<std::size_t> ns(ns64.begin(), ns64.end());
  const auto trials = trials_or(o, 1000);
  Emitted e{report::Csv({"n", "mean", "se", "lower_bound", "sqrt2"}), {}, {}, {}, trials};
  Json rows = Json::array();
  for (const auto& r : mc::trend_report(ns, trials, o.seed, o.common.workers)) {
    std::vector<std::string> cells{std::to_string(r.n), num(r.mean), num(r.std_error), num(r.lower_bound),
                                   num(r.sqrt2)};
    e.csv.row(cells);
    e.rows.push_back(cells);
    rows.push_back(report::to_json(r));
  }
  e.header = {"n", "mean M/sqrt(n log n)", "se", "lower bound", "sqrt2"};
  e.payload = Json{{"meta", payload_meta(o.seed, trials)}, {"rows", rows}};
  return e;
}

Emitted tail(const SimulateOptions& o) {
  const auto trials = trials_or(o, 100000);
  const double z = z_of(o);
  Emitted e{report::Csv({"n", "u", "v", "lambda", "estimate", "ci_lo", "ci_hi", "bound", "trials", "hits"}), {}, {},
            {}, trials};
  Json rows = Json::array();
  for (auto n : lengths(o, {16})) {
    const auto u = shift(o, n);
    const double lambda = threshold(o, n);
    const mc::SampleConfig cfg{static_cast<std::size_t>(n), trials, o.seed, o.common.workers};
    Json row{{"n", n}, {"u", u}};
    mc::TailEstimate est;
    double bound = 0;
    if (o.v > 0) {
      if (o.v <= u || o.v >= n) throw std::invalid_argument("--v must satisfy u < v < n");
      est = mc::estimate_tail_joint(cfg, u, o.v, lambda, z);
      bound = bounds::upper_bound_joint(n);
      row["v"] = o.v;
      row["finding"] = mc::to_string(mc::classify_joint(est, bound));
    } else {
      est = mc::estimate_tail_single(cfg, u, lambda, z);
      bound = n > 2 ? bounds::lower_bound_single(n) : NAN;
      row["v"] = nullptr;
      row["gaussian"] = 2 * bounds::phi_tail(bounds::xi_n(n, u));
    }
    row["lambda"] = lambda;
    row["estimate"] = report::to_json(est);
    row["bound"] = bound;
    rows.push_back(row);
    std::vector<std::string> cells{std::to_string(n),   std::to_string(u),      o.v > 0 ? std::to_string(o.v) : "",
                                   num(lambda),         num(est.estimate),      num(est.ci_lo),
                                   num(est.ci_hi),      num(bound),             std::to_string(est.trials),
                                   std::to_string(est.hits)};
    e.csv.row(cells);
    e.rows.push_back(cells);
  }
  e.header = {"n", "u", "v", "lambda", "estimate", "ci_lo", "ci_hi", "bound", "trials", "hits"};
  e.payload = Json{{"meta", payload_meta(o.seed, trials)}, {"confidence", o.confidence}, {"rows", rows}};
  return e;
}

Emitted concentration(const SimulateOptions& o) {
  const auto trials = trials_or(o, 10000);
  Emitted e{report::Csv({"theta", "empirical", "bound", "flag", "n", "se"}), {}, {}, {}, trials};
  Json rows = Json::array();
  for (auto n : lengths(o, {64})) {
    const auto thetas = exact::theta_grid(static_cast<int>(n), o.points);
    const mc::SampleConfig cfg{static_cast<std::size_t>(n), trials, o.seed, o.common.workers};
    for (const auto& r : mc::concentration_profile(cfg, thetas)) {
      std::vector<std::string> cells{num(r.theta), num(r.empirical), num(r.bound), r.flag ? "1" : "0",
                                     std::to_string(n), num(r.std_error)};
      e.csv.row(cells);
      e.rows.push_back(cells);
      auto j = report::to_json(r);
      j["n"] = n;
      rows.push_back(j);
    }
  }
  e.header = {"theta", "empirical", "bound", "flag", "n", "se"};
  e.payload = Json{{"meta", payload_meta(o.seed, trials)}, {"rows", rows}};
  return e;
}

Emitted distribution(const SimulateOptions& o) {
  const auto trials = trials_or(o, 10000);
  Emitted e{report::Csv({"n", "bin_lo", "bin_hi", "count"}), {}, {}, {}, trials};
  Json rows = Json::array();
  for (auto n : lengths(o, {1024})) {
    const auto d = mc::sample_psl_ratio({static_cast<std::size_t>(n), trials, o.seed, o.common.workers});
    for (std::size_t i = 0; i < d.histogram.counts.size(); ++i) {
      std::vector<std::string> cells{std::to_string(n), num(d.histogram.edges[i]), num(d.histogram.edges[i + 1]),
                                     std::to_string(d.histogram.counts[i])};
      e.csv.row(cells);
      e.rows.push_back(cells);
    }
    auto j = report::to_json(d);
    j["n"] = n;
    rows.push_back(j);
  }
  e.header = {"n", "bin_lo", "bin_hi", "count"};
  e.payload = Json{{"meta", payload_meta(o.seed, trials)}, {"rows", rows}};
  return e;
}

Emitted event(const SimulateOptions& o) {
  const auto trials = trials_or(o, 10000);
  const double z = z_of(o);
  Emitted e{report::Csv({"n", "lambda", "trials", "hits", "estimate", "ci_lo", "ci_hi", "bound"}), {}, {}, {},
            trials};
  Json rows = Json::array();
  for (auto n : lengths(o, {1024})) {
    const double lambda = threshold(o, n);
    const auto est = mc::psl_event_rate({static_cast<std::size_t>(n), trials, o.seed, o.common.workers}, lambda, z);
    const double bound = n > 2 ? bounds::psl_tail_lower(n) : NAN;
    std::vector<std::string> cells{std::to_string(n), num(lambda), std::to_string(est.trials), std::to_string(est.hits),
                                   num(est.estimate), num(est.ci_lo), num(est.ci_hi), num(bound)};
    e.csv.row(cells);
    e.rows.push_back(cells);
    rows.push_back(Json{{"n", n}, {"lambda", lambda}, {"estimate", report::to_json(est)}, {"bound", bound}});
  }
  e.header = {"n", "lambda", "trials", "hits", "estimate", "ci_lo", "ci_hi", "lower bound"};
  e.payload = Json{{"meta", payload_meta(o.seed, trials)}, {"rows", rows}};
  return e;
}

void add_sampling(CLI::App& cmd, SimulateOptions& o) {
  cmd.add_option("--n", o.n, "comma-separated sequence lengths");
  cmd.add_option("--trials", o.trials, "number of random sequences per length")->envname("PSL_TRIALS");
  cmd.add_option("--seed", o.seed, "random seed")->envname("PSL_SEED");
  add_common(cmd, o.common);
}

}  // namespace

Command add_simulate(CLI::App& app) {
  auto o = std::make_shared<SimulateOptions>();
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimates over uniform random sequences");
  sim->require_subcommand(1);

  struct Kind {
    const char* name;
    const char* file;
    Emitted (*fn)(const SimulateOptions&);
    CLI::App* cmd;
  };
  auto kinds = std::make_shared<std::vector<Kind>>(std::vector<Kind>{
      {"trend", "trend", trend, nullptr},
      {"tail", "tails", tail, nullptr},
      {"concentration", "concentration", concentration, nullptr},
      {"dist", "distribution", distribution, nullptr},
      {"event", "event", event, nullptr},
  });
  const char* help[] = {"mean of M/sqrt(n log n) against its bounds", "single or joint correlation tail",
                        "empirical concentration of M around its mean", "histogram of M/sqrt(n log n)",
                        "rate of M >= lambda"};
  for (std::size_t i = 0; i < kinds->size(); ++i) {
    auto& k = (*kinds)[i];
    k.cmd = sim->add_subcommand(k.name, help[i]);
    add_sampling(*k.cmd, *o);
  }
  auto* tail_cmd = (*kinds)[1].cmd;
  tail_cmd->add_option("--u", o->u, "shift, or 'max' for floor(n / log n)");
  tail_cmd->add_option("--v", o->v, "second shift for the joint tail");
  for (auto i : {1, 4}) {
    (*kinds)[i].cmd->add_option("--lambda", o->lambda, "threshold, or 'auto' for sqrt(2 n log n)")
        ->envname("PSL_LAMBDA");
    (*kinds)[i].cmd->add_option("--confidence", o->confidence, "95 or 99");
  }
  (*kinds)[2].cmd->add_option("--points", o->points, "theta grid size")->check(CLI::Range(2, 100000));

  return {sim, [o, kinds](const Invocation& inv) {
    for (const auto& k : *kinds) {
      if (!k.cmd->parsed()) continue;
      auto e = k.fn(*o);
      Output out(o->common);
      out.write(std::string(k.file) + ".csv", e.csv.str());
      out.write(std::string(k.file) + ".json", e.payload.dump(2) + "\n");
      write_manifest(out, std::string("simulate ") + k.name, collect_params(*k.cmd), o->seed, inv.argv, inv.started);
      print(o->common, e.csv, e.payload, e.header, e.rows);
      return static_cast<int>(kOk);
    }
    throw std::invalid_argument("simulate: missing kind");
  }};
}

}  // namespace sidelobe::cli
