// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance run. Prints one PASS/FAIL line per criterion, with
// the measured numbers, and exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "sidelobe/bounds.hpp"
#include "sidelobe/combin.hpp"
#include "sidelobe/correlation.hpp"
#include "sidelobe/errors.hpp"
#include "sidelobe/exact.hpp"
#include "sidelobe/montecarlo.hpp"
#include "sidelobe/rng.hpp"

namespace {

using namespace sidelobe;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(20260101);
  std::uniform_int_distribution<std::size_t> len(2, 4096);
  std::size_t mismatches = 0, corrected = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const auto seq = CounterRng::sequence(1, i, len(gen));
    const auto a = acf_naive(seq);
    const auto b = acf_bitparallel(seq);
    const auto c = acf_fft(seq);
    corrected += c.corrected_shifts;
    if (!(a == b) || !(a == c)) ++mismatches;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 60,
          fmt("10000 sequences, %zu mismatches, %zu fft shifts repaired, %.1f s (limit 60 s)", mismatches, corrected,
              secs)};
}

Verdict barker() {
  std::string got;
  bool ok = true;
  for (int n : {2, 3, 4, 5, 7, 11, 13}) {
    const auto r = exact::min_psl(n);
    ok = ok && r.value == 1 && psl(r.witness) == 1;
    got += fmt("M_%d=%lld ", n, static_cast<long long>(r.value));
  }
  return {ok, got};
}

Verdict even_tuples() {
  std::size_t checked = 0, violations = 0;
  for (int m = 1; m <= 6; ++m)
    for (int q = 1; q <= 4; ++q) {
      ++checked;
      if (combin::count_even_tuples(m, q) > combin::bound_even_single_exact(m, q)) ++violations;
    }
  for (int n = 3; n <= 8; ++n)
    for (int u = 1; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        for (int q = 1; q <= 2; ++q)
          for (int t = 0; t < q; ++t) {
            ++checked;
            if (!le_bound(combin::count_S(n, u, v, q, t), combin::bound_S(n, q, t))) ++violations;
          }
  return {violations == 0, fmt("%zu inequalities, %zu violations", checked, violations)};
}

Verdict moments() {
  std::size_t identities = 0, partitions = 0, bounds_checked = 0, bad = 0;
  for (int n = 3; n <= 10; ++n)
    for (int u = 1; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        const auto tuples = combin::exact_moment_tuples(n, u, v, 1);
        ++identities;
        if (Rational(tuples) != combin::exact_moment_sequences(n, u, v, 1)) ++bad;
        const auto part = combin::partition_T(n, u, v, 1, 0);
        ++partitions;
        if (part.total() != tuples) ++bad;
      }
  for (int n = 3; n <= 16; ++n)
    for (int u = 1; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        for (auto [p, h] : {std::pair{1, 0}, std::pair{2, 0}, std::pair{2, 1}}) {
          const auto r = combin::moment_report(n, u, v, p, h);
          ++bounds_checked;
          if (!r.bound_holds() || !r.identity_holds() || !r.partition_holds()) ++bad;
        }
  return {bad == 0, fmt("%zu identities, %zu partitions, %zu moment bounds, %zu violations", identities, partitions,
                        bounds_checked, bad)};
}

Verdict concentration() {
  std::size_t checked = 0, violations = 0;
  for (int n = 2; n <= 18; ++n) {
    const auto d = exact::exact_psl_distribution(n);
    for (const auto& row : exact::concentration_check(d, exact::theta_grid(n, 50))) {
      ++checked;
      violations += !row.holds;
    }
  }
  return {violations == 0, fmt("n=2..18, %zu (n, theta) points, %zu violations", checked, violations)};
}

Verdict single_tails() {
  const std::int64_t n = 4096;
  const double lambda = bounds::lambda_n(n);
  const double lb = bounds::lower_bound_single(n);
  std::string detail;
  bool at_4096 = true;
  for (std::int64_t u : {std::int64_t{1}, bounds::max_small_shift(n)}) {
    const auto est = mc::estimate_tail_single({static_cast<std::size_t>(n), 1000000, 6, 8}, u, lambda);
    const double gauss = 2 * bounds::phi_tail(bounds::xi_n(n, u));
    const bool ok = est.estimate >= lb && est.estimate >= 0.5 * gauss && est.estimate <= 2 * gauss;
    at_4096 = at_4096 && ok;
    detail += fmt("u=%lld: est %.3e (95%% CI %.3e..%.3e) vs 2Phi(-xi) %.3e, bound %.3e [%s]; ",
                  static_cast<long long>(u), est.estimate, est.ci_lo, est.ci_hi, gauss, lb, ok ? "ok" : "fails");
  }
  if (at_4096) return {true, detail};

  // Fallback allowed by the criterion: the bound must hold by n = 2^16. The
  // exact binomial tail is the true probability, so no sampling is needed.
  bool at_65536 = true;
  const std::int64_t big = 65536;
  for (std::int64_t u : {std::int64_t{1}, bounds::max_small_shift(big)}) {
    const double p = to_double(exact::exact_tail_single(static_cast<int>(big), static_cast<int>(u), bounds::lambda_n(big)));
    const double b = bounds::lower_bound_single(big);
    at_65536 = at_65536 && p >= b;
    detail += fmt("n=65536 u=%lld: exact %.4e vs bound %.4e (ratio %.3f); ", static_cast<long long>(u), p, b, p / b);
  }
  // Where would the worst shift first clear the bound?
  std::string crossover = "none up to 2^40";
  for (int k = 12; k <= 40; ++k) {
    const std::int64_t m = std::int64_t{1} << k;
    const std::int64_t u = bounds::max_small_shift(m);
    const double p = bounds::binomial_two_sided_tail(m - u, bounds::lambda_n(m));
    if (p >= bounds::lower_bound_single(m)) {
      crossover = fmt("2^%d", k);
      break;
    }
  }
  detail += "worst-shift crossover: " + crossover;
  return {at_65536, detail};
}

Verdict joint_tails() {
  std::string detail;
  std::size_t pairs = 0, exceed = 0, factor_checked = 0, factor_bad = 0;
  for (int n : {16, 20, 22}) {
    const auto t = exact::joint_tail_table(n, bounds::lambda_n(n), 8);
    const double bound = bounds::upper_bound_joint(n);
    std::size_t local = 0;
    for (int u = 1; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        ++pairs;
        if (to_double(t.joint_probability(u, v)) > bound) ++local;
      }
    exceed += local;
    detail += fmt("n=%d: %zu pairs above 23/n^2; ", n, local);
  }
  for (int n = 4; n <= 22; ++n) {
    const auto t = exact::joint_tail_table(n, bounds::lambda_n(n), 8);
    for (int u = (n + 1) / 2; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        ++factor_checked;
        if (t.joint_probability(u, v) != t.single_probability(u) * t.single_probability(v)) ++factor_bad;
      }
  }
  detail += fmt("factorization n/2<=u<v, n<=22: %zu checked, %zu failures", factor_checked, factor_bad);
  if (exceed) detail += " (exceedances are exploratory and do not fail this criterion)";
  (void)pairs;
  return {factor_bad == 0, detail};
}

Verdict trend() {
  const auto t0 = Clock::now();
  const std::vector<std::size_t> ns{1 << 10, 1 << 12, 1 << 14, 1 << 16};
  const auto rows = mc::trend_report(ns, 2000, 8, 8);
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const bool in_band = r.mean >= 0.9 && r.mean <= std::numbers::sqrt2 + 0.02;
    bool rising = true;
    if (i > 0) {
      const auto& p = rows[i - 1];
      rising = r.mean >= p.mean - 2 * std::hypot(r.std_error, p.std_error);
    }
    ok = ok && in_band && rising;
    detail += fmt("n=%zu mean %.4f se %.4f%s; ", r.n, r.mean, r.std_error, in_band && rising ? "" : " [fails]");
  }
  // Small lengths against the exact expectation.
  const std::vector<std::size_t> small{4, 8, 16};
  const auto srows = mc::trend_report(small, 20000, 8, 8);
  for (const auto& r : srows) {
    const auto d = exact::exact_psl_distribution(static_cast<int>(r.n));
    const double want = to_double(d.expectation) / std::sqrt(r.n * std::log(static_cast<double>(r.n)));
    const bool close = std::abs(r.mean - want) <= 4 * r.std_error;
    ok = ok && close;
    detail += fmt("n=%zu mc %.4f exact %.4f%s; ", r.n, r.mean, want, close ? "" : " [fails]");
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 1800;
  detail += fmt("%.0f s", secs);
  return {ok, detail};
}

Verdict cramer() {
  double prev = INFINITY;
  bool monotone = true;
  std::string detail;
  for (std::int64_t n : {100, 1000, 10000, 100000}) {
    const double gap = std::abs(bounds::cramer_ratio(n, 2) - 1);
    monotone = monotone && gap < prev;
    prev = gap;
    detail += fmt("n=%lld |ratio-1|=%.5f; ", static_cast<long long>(n), gap);
  }
  return {monotone, detail + (monotone ? "decreasing" : "not monotone")};
}

Verdict determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / fmt("sidelobe-acceptance-%d", static_cast<int>(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto run = [&](const char* tag, int workers) {
    const std::string cmd = fmt("\"%s\" simulate trend --n 1024,4096 --trials 1000 --seed 7 --workers %d --out \"%s\" "
                                ">/dev/null",
                                SIDELOBE_CLI_PATH, workers, (dir / tag).c_str());
    if (std::system(cmd.c_str()) != 0) return std::string("<run failed>");
    std::ifstream f(dir / tag / "trend.csv", std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  const auto a = run("w1a", 1);
  const auto b = run("w1b", 1);
  const auto c = run("w8", 8);
  fs::remove_all(dir);
  const bool ok = a == b && a == c && a.find("<run failed>") == std::string::npos && !a.empty();
  return {ok, fmt("workers 1, 1, 8: trend.csv %s (%zu bytes)", ok ? "byte-identical" : "differs", a.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"1 oracle equivalence", oracle_equivalence},
      {"2 Barker lengths", barker},
      {"3 even-tuple bounds", even_tuples},
      {"4 moment identity and bound", moments},
      {"5 exact concentration", concentration},
      {"6 single-shift tails", single_tails},
      {"7 joint tails", joint_tails},
      {"8 trend of M/sqrt(n log n)", trend},
      {"9 Cramer ratio", cramer},
      {"10 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << " (" << fmt("%.1f s", seconds_since(t0)) << "): " << v.detail
              << std::endl;
  }
  std::cout << (failed ? fmt("%d criteria failed", failed) : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
