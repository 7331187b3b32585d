#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "loopwalk/series.hpp"

namespace loopwalk {

/// Coefficient-wise comparison of two series. `equal` holds exactly when
/// every entry of `diffs` is zero.
struct VerificationReport {
  bool equal = true;
  std::optional<std::size_t> first_mismatch;
  std::vector<Rational> diffs;  // lhs - rhs, one per coefficient

  std::size_t order() const { return diffs.empty() ? 0 : diffs.size() - 1; }
};

/// Compares lhs and rhs on their common prefix.
inline VerificationReport compare_series(const Series& lhs, const Series& rhs) {
  VerificationReport report;
  const std::size_t order = std::min(lhs.order(), rhs.order());
  report.diffs.reserve(order + 1);
  for (std::size_t j = 0; j <= order; ++j) {
    report.diffs.push_back(lhs[j] - rhs[j]);
    if (report.diffs.back() != 0 && !report.first_mismatch) report.first_mismatch = j;
  }
  report.equal = !report.first_mismatch.has_value();
  return report;
}

}  // namespace loopwalk
