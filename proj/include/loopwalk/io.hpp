#pragma once

// JSON and CSV renderings of library values. Rationals are always strings
// ("p/q" or "p") so nothing passes through floating point.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "loopwalk/identities.hpp"
#include "loopwalk/montecarlo.hpp"
#include "loopwalk/report.hpp"
#include "loopwalk/series.hpp"

namespace loopwalk {

using json = nlohmann::json;

inline json series_to_json(const Series& s) {
  json out = json::array();
  for (const auto& c : s.coeffs()) out.push_back(to_string(c));
  return out;
}

inline Series series_from_json(const json& j) {
  std::vector<Rational> coeffs;
  for (const auto& c : j) coeffs.push_back(parse_rational(c.get<std::string>()));
  return Series(std::move(coeffs));
}

inline std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a JSON array of rational strings");
  std::vector<Rational> out;
  for (const auto& c : j) {
    if (!c.is_string()) throw ParseError("expected rational strings such as \"3/7\"");
    out.push_back(parse_rational(c.get<std::string>()));
  }
  return out;
}

/// {identity, m, order, pass, first_mismatch, details: {diffs}}
inline json report_to_json(const VerificationReport& r, const std::string& identity, std::size_t m) {
  json diffs = json::array();
  for (const auto& d : r.diffs) diffs.push_back(to_string(d));
  return {{"identity", identity},
          {"m", m},
          {"order", r.order()},
          {"pass", r.equal},
          {"first_mismatch", r.first_mismatch ? json(*r.first_mismatch) : json(nullptr)},
          {"details", {{"diffs", diffs}}}};
}

inline VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  r.diffs = rationals_from_json(j.at("details").at("diffs"));
  r.equal = j.at("pass").get<bool>();
  if (!j.at("first_mismatch").is_null()) r.first_mismatch = j.at("first_mismatch").get<std::size_t>();
  return r;
}

inline json sim_to_json(const SimReport& r) {
  return {{"model", r.model},   {"estimate", r.estimate}, {"std_error", r.std_error},
          {"target", r.target}, {"paths", r.paths},       {"dt", r.dt},
          {"seed", r.seed},     {"abs_floor", r.abs_floor}, {"pass", r.pass}};
}

inline SimReport sim_from_json(const json& j) {
  SimReport r;
  r.model = j.at("model").get<std::string>();
  r.estimate = j.at("estimate").get<double>();
  r.std_error = j.at("std_error").get<double>();
  r.target = j.at("target").get<double>();
  r.paths = j.at("paths").get<std::uint64_t>();
  r.dt = j.at("dt").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.abs_floor = j.at("abs_floor").get<double>();
  r.pass = j.at("pass").get<bool>();
  return r;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// k,partial_sum,target,abs_error[,partial_sum_alt,abs_error_alt]
inline void write_partial_csv(std::ostream& os, const PartialSums& sums) {
  const bool alt = !sums.partial_alt.empty();
  os << "k,partial_sum,target,abs_error";
  if (alt) os << ",partial_sum_alt,abs_error_alt";
  os << '\n';
  const double target = sums.target.get_d();
  for (std::size_t k = 0; k < sums.partial.size(); ++k) {
    os << k << ',' << format_double(sums.partial[k].get_d()) << ',' << format_double(target) << ','
       << format_double(Rational(abs(sums.partial[k] - sums.target)).get_d());
    if (alt) {
      os << ',' << format_double(sums.partial_alt[k].get_d()) << ','
         << format_double(Rational(abs(sums.partial_alt[k] - sums.target)).get_d());
    }
    os << '\n';
  }
}

}  // namespace loopwalk
