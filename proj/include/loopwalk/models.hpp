#pragma once

// Hitting-time transforms for three nearest-neighbour models, packaged as
// LoopSystems.
//
// Reflected Brownian motion (series in w, lambda = w^2 / 2):
//   phi_{a->b}         = cosh(a w) / cosh(b w)
//   phi_{b->a | not c} = sinh((c-b) w) / sinh((c-a) w)
//   phi_{b->c | not a} = sinh((b-a) w) / sinh((c-a) w)
//
// Bessel(3) process:
//   phi_{a->b}         = b sinh(a w) / (a sinh(b w))      (a = 0: b w / sinh(b w))
//   phi_{b->a | not c} = a sinh((c-b) w) / (b sinh((c-a) w))
//   phi_{b->c | not a} = c sinh((b-a) w) / (b sinh((c-a) w))
//
// Birth-death chains (series in z): exact taboo probabilities by stepping
// the site distribution.
//
// Every sinh ratio goes through sinh(cw)/(cw) so no division by a series
// with zero constant term ever happens.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "loopwalk/loop_engine.hpp"
#include "loopwalk/series.hpp"

namespace loopwalk {

/// Strictly increasing rational sites starting at 0.
class SiteConfig {
 public:
  explicit SiteConfig(std::vector<Rational> sites) : sites_(std::move(sites)) {
    if (sites_.size() < 2) throw DegenerateSites("need at least two sites");
    if (sites_.front() != 0) throw DegenerateSites("first site must be 0");
    for (std::size_t i = 1; i < sites_.size(); ++i) {
      if (sites_[i] <= sites_[i - 1]) throw DegenerateSites("sites must be strictly increasing");
    }
  }

  /// Sites 0, 1, ..., count - 1.
  static SiteConfig equally_spaced(std::size_t count) {
    std::vector<Rational> sites;
    for (std::size_t i = 0; i < count; ++i) sites.emplace_back(static_cast<unsigned long>(i));
    return SiteConfig(std::move(sites));
  }

  std::size_t size() const { return sites_.size(); }
  const Rational& operator[](std::size_t i) const { return sites_.at(i); }
  const Rational& last() const { return sites_.back(); }
  const std::vector<Rational>& sites() const { return sites_; }

 private:
  std::vector<Rational> sites_;
};

namespace detail {

inline void require_increasing(const Rational& a, const Rational& b, const char* what) {
  if (!(a < b)) throw DegenerateSites(std::string(what) + ": sites must satisfy strict inequalities");
}

inline void require_increasing(const Rational& a, const Rational& b, const Rational& c, const char* what) {
  if (!(a < b && b < c)) throw DegenerateSites(std::string(what) + ": sites must satisfy a < b < c");
}

/// sinh(p w) / sinh(q w) for p >= 0, q > 0.
inline Series sinh_ratio(const Rational& p, const Rational& q, std::size_t order) {
  return sinh_over_w_series(p, order) * reciprocal(sinh_over_w_series(q, order));
}

}  // namespace detail

// ---- reflected Brownian motion ----

inline Series bm_phi(const Rational& a, const Rational& b, std::size_t order = kDefaultOrder) {
  if (a < 0) throw DegenerateSites("bm_phi: sites must be nonnegative");
  detail::require_increasing(a, b, "bm_phi");
  return cosh_series(a, order) * reciprocal(cosh_series(b, order));
}

/// From b down to a before reaching c (a < b < c).
inline Series bm_phi_down(const Rational& b, const Rational& a, const Rational& c,
                          std::size_t order = kDefaultOrder) {
  detail::require_increasing(a, b, c, "bm_phi_down");
  return detail::sinh_ratio(c - b, c - a, order);
}

/// From b up to c before reaching a (a < b < c).
inline Series bm_phi_up(const Rational& b, const Rational& c, const Rational& a,
                        std::size_t order = kDefaultOrder) {
  detail::require_increasing(a, b, c, "bm_phi_up");
  return detail::sinh_ratio(b - a, c - a, order);
}

/// Loop system for reflected BM started at sites[0] = 0 and stopped at the last site.
inline LoopSystem bm_system(const SiteConfig& cfg, std::size_t order = kDefaultOrder) {
  const std::size_t n = cfg.size() - 2;  // number of loops
  LoopSystem sys{{}, {}, bm_phi(0, cfg.last(), order)};
  sys.forward.push_back(bm_phi(0, cfg[1], order));
  for (std::size_t j = 1; j <= n; ++j) sys.forward.push_back(bm_phi_up(cfg[j], cfg[j + 1], cfg[j - 1], order));
  for (std::size_t j = 1; j <= n; ++j) {
    Series up = j == 1 ? bm_phi(0, cfg[1], order) : bm_phi_up(cfg[j - 1], cfg[j], cfg[j - 2], order);
    sys.loops.push_back(up * bm_phi_down(cfg[j], cfg[j - 1], cfg[j + 1], order));
  }
  return sys;
}

// ---- Bessel(3) ----

/// b sinh(aw) / (a sinh(bw)) = sinhc(a) / sinhc(b); the a = 0 limit is bw / sinh(bw).
inline Series bessel_phi(const Rational& a, const Rational& b, std::size_t order = kDefaultOrder) {
  if (a < 0) throw DegenerateSites("bessel_phi: sites must be nonnegative");
  detail::require_increasing(a, b, "bessel_phi");
  return sinhc_series(a, order) * reciprocal(sinhc_series(b, order));
}

/// From b down to a before reaching c; identically zero when a = 0.
inline Series bessel_phi_down(const Rational& b, const Rational& a, const Rational& c,
                              std::size_t order = kDefaultOrder) {
  if (a < 0) throw DegenerateSites("bessel_phi_down: sites must be nonnegative");
  detail::require_increasing(a, b, c, "bessel_phi_down");
  return detail::sinh_ratio(c - b, c - a, order) * Rational(a / b);
}

/// From b up to c before reaching a.
inline Series bessel_phi_up(const Rational& b, const Rational& c, const Rational& a,
                            std::size_t order = kDefaultOrder) {
  if (a < 0) throw DegenerateSites("bessel_phi_up: sites must be nonnegative");
  detail::require_increasing(a, b, c, "bessel_phi_up");
  return detail::sinh_ratio(b - a, c - a, order) * Rational(c / b);
}

/// Loop system for Bessel(3) from the origin. The loop between sites 0 and 1
/// vanishes (the process never returns to 0), so loops are indexed on the
/// interior sites: loop k sits between sites k and k+1, k = 1..size-3.
inline LoopSystem bessel_system(const SiteConfig& cfg, std::size_t order = kDefaultOrder) {
  if (cfg.size() < 3) throw DegenerateSites("bessel_system needs at least three sites");
  const std::size_t last = cfg.size() - 1;
  LoopSystem sys{{}, {}, bessel_phi(0, cfg.last(), order)};
  sys.forward.push_back(bessel_phi(0, cfg[1], order));
  for (std::size_t j = 1; j < last; ++j) sys.forward.push_back(bessel_phi_up(cfg[j], cfg[j + 1], cfg[j - 1], order));
  for (std::size_t j = 2; j < last; ++j) {
    sys.loops.push_back(bessel_phi_up(cfg[j - 1], cfg[j], cfg[j - 2], order) *
                        bessel_phi_down(cfg[j], cfg[j - 1], cfg[j + 1], order));
  }
  return sys;
}

// ---- birth-death chains ----

/// Sites 0..N. Site 0 moves to 1 with probability one; interior site i moves
/// up with probability up_probs[i-1], down otherwise; site N moves to N-1.
class BirthDeathChain {
 public:
  explicit BirthDeathChain(std::vector<Rational> up_probs) : up_(std::move(up_probs)) {
    if (up_.empty()) throw InvalidSites("chain needs at least one interior site");
    for (const auto& p : up_) {
      if (p <= 0 || p >= 1) throw InvalidSites("up probability " + to_string(p) + " not in (0, 1)");
    }
  }

  std::size_t site_count() const { return up_.size() + 2; }
  std::size_t top() const { return up_.size() + 1; }
  const std::vector<Rational>& up_probs() const { return up_; }
  const Rational& up(std::size_t site) const { return up_.at(site - 1); }

 private:
  std::vector<Rational> up_;
};

struct HittingDistribution {
  Series hits;        // coefficient t: P(first reach target at step t, taboo avoided)
  Rational survival;  // mass neither absorbed at the target nor at the taboo after T steps
};

inline HittingDistribution bd_hitting_distribution(const BirthDeathChain& chain, std::size_t from,
                                                   std::size_t to, std::optional<std::size_t> taboo,
                                                   std::size_t order) {
  const std::size_t top = chain.top();
  if (from > top || to > top) throw InvalidSites("site out of range");
  if (from == to) throw InvalidSites("from and to must differ");
  if (taboo && (*taboo > top || *taboo == from || *taboo == to)) {
    throw InvalidSites("taboo site must differ from both endpoints and lie in range");
  }
  std::vector<Rational> mass(top + 1), next(top + 1);
  mass[from] = 1;
  HittingDistribution out{Series(order), 0};
  for (std::size_t t = 1; t <= order; ++t) {
    for (auto& m : next) m = 0;
    for (std::size_t i = 0; i <= top; ++i) {
      if (mass[i] == 0) continue;
      if (i == 0) {
        next[1] += mass[i];
      } else if (i == top) {
        next[top - 1] += mass[i];
      } else {
        const Rational moved_up = mass[i] * chain.up(i);
        next[i + 1] += moved_up;
        next[i - 1] += mass[i] - moved_up;
      }
    }
    out.hits[t] = next[to];
    next[to] = 0;
    if (taboo) next[*taboo] = 0;
    std::swap(mass, next);
  }
  for (const auto& m : mass) out.survival += m;
  return out;
}

/// Probability generating function of the first hitting time of `to` from
/// `from`, restricted to paths avoiding `taboo` (absorbing failure).
inline Series bd_hitting_pgf(const BirthDeathChain& chain, std::size_t from, std::size_t to,
                             std::optional<std::size_t> taboo = std::nullopt,
                             std::size_t order = kDefaultOrder) {
  return bd_hitting_distribution(chain, from, to, taboo, order).hits;
}

inline LoopSystem bd_system(const BirthDeathChain& chain, std::size_t order = kDefaultOrder) {
  const std::size_t top = chain.top();
  if (chain.site_count() < 3) throw InvalidSites("chain needs at least three sites");
  LoopSystem sys{{}, {}, bd_hitting_pgf(chain, 0, top, std::nullopt, order)};
  sys.forward.push_back(bd_hitting_pgf(chain, 0, 1, std::nullopt, order));
  for (std::size_t j = 1; j < top; ++j) sys.forward.push_back(bd_hitting_pgf(chain, j, j + 1, j - 1, order));
  for (std::size_t j = 1; j < top; ++j) {
    Series up = j == 1 ? bd_hitting_pgf(chain, 0, 1, std::nullopt, order)
                       : bd_hitting_pgf(chain, j - 1, j, j - 2, order);
    sys.loops.push_back(up * bd_hitting_pgf(chain, j, j - 1, j + 1, order));
  }
  return sys;
}

}  // namespace loopwalk
