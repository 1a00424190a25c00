// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#include "sidelobe/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace sidelobe::report {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json big_to_json(const BigInt& x) {
  if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max()) return x.convert_to<std::uint64_t>();
  if (x < 0 && x >= std::numeric_limits<std::int64_t>::min()) return x.convert_to<std::int64_t>();
  return x.str();
}

Json rational_to_json(const Rational& x) {
  return Json{{"exact", to_string(x)}, {"value", to_double(x)}};
}

Json to_json(const BoundReport& r) {
  return Json{{"name", r.name}, {"n", r.n}, {"params", r.params}, {"value", r.value}};
}

Json to_json(const InequalityCheck& c) {
  return Json{{"name", c.name}, {"n", c.n}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}};
}

Json to_json(const CorrelationProfile& p) {
  Json j{{"n", p.n}, {"acf", p.values}};
  j["psl"] = p.psl ? Json(*p.psl) : Json(nullptr);
  j["corrected_shifts"] = p.corrected_shifts;
  return j;
}

Json to_json(const CorrelationMeasureResult& r) {
  return Json{{"r", r.r}, {"value", r.value}, {"shifts", r.shifts}, {"prefix", r.prefix}};
}

Json to_json(const combin::MomentReport& r) {
  Json j{{"n", r.n}, {"u", r.u}, {"v", r.v}, {"p", r.p}, {"h", r.h}};
  if (r.exact) {
    j["exact"] = boost::multiprecision::denominator(*r.exact) == 1
                     ? big_to_json(boost::multiprecision::numerator(*r.exact))
                     : Json(to_string(*r.exact));
  } else {
    j["exact"] = nullptr;
  }
  j["tuple_count"] = r.tuple_count ? big_to_json(*r.tuple_count) : Json(nullptr);
  j["t1"] = r.partition ? big_to_json(r.partition->t1) : Json(nullptr);
  j["t2"] = r.partition ? big_to_json(r.partition->t2) : Json(nullptr);
  j["t3"] = r.partition ? big_to_json(r.partition->t3) : Json(nullptr);
  j["bound"] = r.bound;
  return j;
}

Json to_json(const exact::MinPsl& r) {
  return Json{{"n", r.n}, {"min_psl", r.value}, {"witness", render(r.witness, Encoding::plusminus)}};
}

Json to_json(const exact::ExactPslSummary& s) {
  Json dist = Json::object();
  for (const auto& [m, c] : s.distribution) dist[std::to_string(m)] = c;
  return Json{{"n", s.n},
              {"min_psl", s.min_psl},
              {"witness", render(s.witness, Encoding::plusminus)},
              {"distribution", dist},
              {"expectation", rational_to_json(s.expectation)}};
}

Json to_json(const exact::IndependenceReport& r) {
  return Json{{"n", r.n},          {"u", r.u},
              {"uniform", r.uniform}, {"patterns", r.patterns},
              {"expected_hits", r.expected}, {"min_hits", r.min_hits},
              {"max_hits", r.max_hits}};
}

Json to_json(const exact::BonferroniReport& r) {
  return Json{{"n", r.n},
              {"lambda", r.lambda},
              {"shifts", r.shifts},
              {"max_probability", rational_to_json(r.max_probability)},
              {"singles", rational_to_json(r.singles)},
              {"pairs", rational_to_json(r.pairs)},
              {"holds", r.holds()}};
}

Json to_json(const mc::TailEstimate& t) {
  return Json{{"trials", t.trials}, {"hits", t.hits},   {"estimate", t.estimate},
              {"ci_lo", t.ci_lo},   {"ci_hi", t.ci_hi}, {"z", t.z}};
}

Json to_json(const mc::EmpiricalDistribution& d) {
  Json q = Json::array();
  for (const auto& [level, value] : d.quantiles) q.push_back(Json{{"level", level}, {"value", value}});
  return Json{{"count", d.count},
              {"seed", d.seed},
              {"mean", d.mean},
              {"variance", d.variance},
              {"std_error", d.std_error},
              {"quantiles", q},
              {"histogram", Json{{"edges", d.histogram.edges}, {"counts", d.histogram.counts}}}};
}

Json to_json(const mc::TrendRow& r) {
  return Json{{"n", r.n},
              {"mean", r.mean},
              {"se", r.std_error},
              {"lower_bound", std::isnan(r.lower_bound) ? Json(nullptr) : Json(r.lower_bound)},
              {"sqrt2", r.sqrt2}};
}

Json to_json(const mc::ConcentrationRow& r) {
  return Json{{"theta", r.theta}, {"empirical", r.empirical}, {"se", r.std_error}, {"bound", r.bound}, {"flag", r.flag}};
}

Csv::Csv(std::vector<std::string> header) : header_(std::move(header)) {}

Csv& Csv::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::invalid_argument("csv row width does not match header");
  rows_.push_back(std::move(cells));
  return *this;
}

std::string Csv::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

std::string distribution_csv(const exact::ExactPslSummary& s) {
  Csv csv({"value", "count"});
  for (const auto& [m, c] : s.distribution) csv.row({std::to_string(m), std::to_string(c)});
  return csv.str();
}

}  // namespace sidelobe::report
