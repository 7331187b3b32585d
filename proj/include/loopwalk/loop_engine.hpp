#pragma once

// Loop decomposition of a nearest-neighbour hitting time.
//
// For sites 0 < 1 < ... < n+1 with loops L_1..L_n,
//
//   phi_{0->n+1} = phi_{0->1} prod_j phi_{j->j+1 | not j-1} / D,
//   D = 1 + sum over nonempty nonadjacent S of (-1)^{|S|} prod_{j in S} L_j,
//
// where "nonadjacent" means indices pairwise at distance >= 2. The same sum
// also equals sum_k sum over loop words (i_1..i_k) with i_{t+1} >= i_t - 1 of
// prod L_{i_t}; transfer_expansion() evaluates that word sum directly.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "loopwalk/report.hpp"
#include "loopwalk/series.hpp"

namespace loopwalk {

/// Indices in {1..n}, strictly descending, consecutive entries at least 2 apart.
struct NonadjacentSubset {
  std::vector<std::size_t> indices;
  std::size_t n = 0;

  std::size_t size() const { return indices.size(); }
  /// Smallest index (the "initial state"); 0 for the empty subset.
  std::size_t initial() const { return indices.empty() ? 0 : indices.back(); }
  std::vector<std::size_t> ascending() const { return {indices.rbegin(), indices.rend()}; }

  bool valid() const {
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (indices[i] < 1 || indices[i] > n) return false;
      if (i + 1 < indices.size() && indices[i] < indices[i + 1] + 2) return false;
    }
    return true;
  }

  friend bool operator==(const NonadjacentSubset&, const NonadjacentSubset&) = default;
};

/// Visits every size-l nonadjacent subset of {1..n} in descending-lexicographic order.
inline void for_each_nonadjacent_subset(std::size_t n, std::size_t l,
                                        const std::function<void(const NonadjacentSubset&)>& visit) {
  NonadjacentSubset current{{}, n};
  current.indices.reserve(l);
  // Place entry `depth` at values <= top, leaving room for the remaining ones.
  std::function<void(std::size_t, std::size_t)> place = [&](std::size_t depth, std::size_t top) {
    if (depth == l) {
      visit(current);
      return;
    }
    const std::size_t remaining = l - depth;  // entries still to place, this one included
    const std::size_t lowest = 2 * remaining - 1;
    for (std::size_t i = top; i >= lowest && i >= 1; --i) {
      current.indices.push_back(i);
      place(depth + 1, i >= 2 ? i - 2 : 0);
      current.indices.pop_back();
    }
  };
  place(0, n);
}

inline std::vector<NonadjacentSubset> nonadjacent_subsets(std::size_t n, std::size_t l) {
  std::vector<NonadjacentSubset> out;
  for_each_nonadjacent_subset(n, l, [&](const NonadjacentSubset& s) { out.push_back(s); });
  return out;
}

/// N(l, n): number of nonadjacent subsets of size l in {1..n}, by enumeration.
inline std::size_t count_nonadjacent(std::size_t l, std::size_t n) {
  std::size_t count = 0;
  for_each_nonadjacent_subset(n, l, [&](const NonadjacentSubset&) { ++count; });
  return count;
}

/// n(a, l, n): nonadjacent subsets of size l in {1..n} whose smallest index is a.
inline std::size_t count_with_initial(std::size_t a, std::size_t l, std::size_t n) {
  std::size_t count = 0;
  for_each_nonadjacent_subset(n, l, [&](const NonadjacentSubset& s) {
    if (s.initial() == a) ++count;
  });
  return count;
}

struct SignedSubset {
  int sign = 1;
  NonadjacentSubset subset;

  friend bool operator==(const SignedSubset&, const SignedSubset&) = default;
};

/// Every nonempty nonadjacent subset with sign (-1)^{|S|}: singletons in
/// ascending order, then each larger size in descending-lexicographic order.
inline std::vector<SignedSubset> denominator_terms(std::size_t n) {
  if (n == 0) throw PreconditionError("denominator_terms needs n >= 1");
  std::vector<SignedSubset> terms;
  for (std::size_t j = 1; j <= n; ++j) terms.push_back({-1, {{j}, n}});
  for (std::size_t l = 2; 2 * l - 1 <= n; ++l) {
    const int sign = l % 2 == 0 ? 1 : -1;
    for_each_nonadjacent_subset(n, l, [&](const NonadjacentSubset& s) { terms.push_back({sign, s}); });
  }
  return terms;
}

/// "-L1 -L2 -L3 +L3*L1"
inline std::string render_terms(const std::vector<SignedSubset>& terms) {
  std::string out;
  for (const auto& term : terms) {
    if (!out.empty()) out += ' ';
    out += term.sign > 0 ? '+' : '-';
    for (std::size_t i = 0; i < term.subset.indices.size(); ++i) {
      if (i > 0) out += '*';
      out += "L" + std::to_string(term.subset.indices[i]);
    }
  }
  return out;
}

namespace detail {

inline std::size_t common_order(const std::vector<Series>& series) {
  if (series.empty()) throw PreconditionError("empty series list");
  const std::size_t order = series.front().order();
  for (const auto& s : series) {
    if (s.order() != order) {
      throw OrderMismatch("series orders differ: " + std::to_string(order) + " vs " +
                          std::to_string(s.order()));
    }
  }
  return order;
}

}  // namespace detail

/// D = 1 + sum of signed loop products over denominator_terms(n).
inline Series denominator_series(const std::vector<Series>& loops) {
  const std::size_t order = detail::common_order(loops);
  Series d = Series::one(order);
  for (const auto& term : denominator_terms(loops.size())) {
    Series product = Series::one(order);
    for (std::size_t j : term.subset.indices) product *= loops[j - 1];
    if (term.sign > 0) {
      d += product;
    } else {
      d -= product;
    }
  }
  return d;
}

/// Forward factors phi_{0->1}, phi_{j->j+1 | not j-1}; loops L_1..L_n; and the
/// independently computed phi_{0->n+1}.
struct LoopSystem {
  std::vector<Series> forward;
  std::vector<Series> loops;
  Series lhs;

  std::size_t order() const { return lhs.order(); }

  /// Throws unless all series share one order and every loop has constant
  /// term in [0, 1).
  void validate() const {
    std::vector<Series> all = forward;
    all.insert(all.end(), loops.begin(), loops.end());
    all.push_back(lhs);
    detail::common_order(all);
    for (std::size_t j = 0; j < loops.size(); ++j) {
      if (loops[j][0] < 0 || loops[j][0] >= 1) {
        throw PreconditionError("loop L" + std::to_string(j + 1) + " has constant term " +
                                to_string(loops[j][0]) + " outside [0, 1)");
      }
    }
  }
};

/// prod(forward) / D(loops). With no loops the denominator is 1.
inline Series rhs_series(const LoopSystem& system) {
  Series product = Series::one(system.order());
  for (const auto& f : system.forward) product *= f;
  if (system.loops.empty()) return product;
  return product * reciprocal(denominator_series(system.loops));
}

inline VerificationReport verify_loop(const LoopSystem& system) {
  system.validate();
  return compare_series(system.lhs, rhs_series(system));
}

struct TransferExpansion {
  Series sum;             // sum_{k<=K} over admissible loop words of length k
  Series last_increment;  // the k = K contribution alone
  std::size_t terms = 0;  // K
};

/// Sum over loop words (i_1..i_k), k <= K, where each step i -> j is allowed
/// iff j == i, j == i - 1 or j > i. Dynamic programming over the last index.
inline TransferExpansion transfer_expansion(const std::vector<Series>& loops, std::size_t max_length) {
  const std::size_t order = detail::common_order(loops);
  const std::size_t n = loops.size();
  TransferExpansion out{Series::one(order), Series::one(order), max_length};
  // ending[j]: total weight of admissible words of the current length ending in loop j.
  std::vector<Series> ending(loops);
  for (std::size_t k = 1; k <= max_length; ++k) {
    if (k > 1) {
      // Predecessors of j are i <= j + 1; accumulate them with a running prefix.
      std::vector<Series> next;
      next.reserve(n);
      Series prefix = Series::zero(order);
      for (std::size_t i = 0; i < n && i <= 1; ++i) prefix += ending[i];
      for (std::size_t j = 0; j < n; ++j) {
        next.push_back(loops[j] * prefix);
        if (j + 2 < n) prefix += ending[j + 2];
      }
      ending = std::move(next);
    }
    Series increment = Series::zero(order);
    for (const auto& e : ending) increment += e;
    out.sum += increment;
    out.last_increment = std::move(increment);
  }
  return out;
}

}  // namespace loopwalk
