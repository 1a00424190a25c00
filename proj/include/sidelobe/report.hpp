// Copyright 2026 The sidelobe Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Serialization of results to JSON and CSV. Floats are rendered with 17
// significant digits, '.' decimal point, LF line endings.

#include <json.hpp>
#include <string>
#include <vector>

#include "sidelobe/combin.hpp"
#include "sidelobe/correlation.hpp"
#include "sidelobe/exact.hpp"
#include "sidelobe/montecarlo.hpp"
#include "sidelobe/numeric.hpp"

namespace sidelobe::report {

using Json = nlohmann::ordered_json;

std::string format_double(double x);

/// Integer as a JSON number when it fits in 64 bits, else as a decimal string.
Json big_to_json(const BigInt& x);
/// {"exact": "p/q", "value": double}
Json rational_to_json(const Rational& x);

/// A named closed-form value.
struct BoundReport {
  std::string name;
  double n = 0.0;
  Json params = Json::object();
  double value = 0.0;
};

/// A named inequality lhs <= rhs.
struct InequalityCheck {
  std::string name;
  double n = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

Json to_json(const BoundReport& r);
Json to_json(const InequalityCheck& c);
Json to_json(const CorrelationProfile& p);
Json to_json(const CorrelationMeasureResult& r);
Json to_json(const combin::MomentReport& r);
Json to_json(const exact::MinPsl& r);
Json to_json(const exact::ExactPslSummary& s);
Json to_json(const exact::IndependenceReport& r);
Json to_json(const exact::BonferroniReport& r);
Json to_json(const mc::TailEstimate& t);
Json to_json(const mc::EmpiricalDistribution& d);
Json to_json(const mc::TrendRow& r);
Json to_json(const mc::ConcentrationRow& r);

/// Minimal CSV builder; cells are written verbatim.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  Csv& row(std::vector<std::string> cells);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// value,count rows.
std::string distribution_csv(const exact::ExactPslSummary& s);

}  // namespace sidelobe::report
