#pragma once

// Monte Carlo estimates of hitting-time transforms, for cross-checking the
// exact series in models.hpp. This is the only floating-point code in the
// library.
//
// Each path draws from its own Philox4x32-10 stream keyed by the seed, with
// the path index in the counter, so a path's randomness does not depend on
// which worker runs it. Paths are grouped in fixed-size chunks whose partial
// sums are reduced in chunk order: results are bit-identical for any worker
// count.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "loopwalk/models.hpp"

namespace loopwalk {

/// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block counter, Key key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{kMul0} * counter[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * counter[2];
      counter = {static_cast<std::uint32_t>(p1 >> 32) ^ counter[1] ^ key[0], static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ counter[3] ^ key[1], static_cast<std::uint32_t>(p0)};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return counter;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
};

/// Random stream of one path: counter = (path index, draw index).
class PathStream {
 public:
  PathStream(std::uint64_t seed, std::uint64_t path)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, path_(path) {}

  /// Uniform on (0, 1), 53-bit resolution.
  double uniform() {
    if (cursor_ == 2) refill();
    return uniforms_[cursor_++];
  }

  /// Standard normal by Box-Muller.
  double normal() {
    if (spare_) {
      const double out = *spare_;
      spare_.reset();
      return out;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * M_PI * uniform();
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
  }

 private:
  void refill() {
    const auto block = Philox4x32::generate({static_cast<std::uint32_t>(path_), static_cast<std::uint32_t>(path_ >> 32),
                                             static_cast<std::uint32_t>(draw_), static_cast<std::uint32_t>(draw_ >> 32)},
                                            key_);
    ++draw_;
    for (int i = 0; i < 2; ++i) {
      const std::uint64_t bits = (std::uint64_t{block[2 * i]} << 32 | block[2 * i + 1]) >> 11;
      uniforms_[i] = (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }
    cursor_ = 0;
  }

  Philox4x32::Key key_;
  std::uint64_t path_;
  std::uint64_t draw_ = 0;
  std::array<double, 2> uniforms_{};
  int cursor_ = 2;
  std::optional<double> spare_;
};

struct SimOptions {
  std::uint64_t step_cap = 10'000'000;
  unsigned workers = 0;  // 0: hardware concurrency
  double abs_floor = 0.01;
};

struct SimReport {
  std::string model;
  double estimate = 0;
  double std_error = 0;
  double target = 0;
  std::uint64_t paths = 0;
  double dt = 0;
  std::uint64_t seed = 0;
  double abs_floor = 0;
  bool pass = false;
};

namespace detail {

inline constexpr std::uint64_t kChunk = 1024;

struct Moments {
  double sum = 0;
  double sum_sq = 0;
};

/// Runs sample(path_index, stream) for every path; returns (mean, standard error).
inline std::pair<double, double> run_paths(std::uint64_t paths, std::uint64_t seed, unsigned workers,
                                           const std::function<double(PathStream&)>& sample) {
  if (paths == 0) throw PreconditionError("need at least one path");
  const std::uint64_t chunks = (paths + kChunk - 1) / kChunk;
  std::vector<Moments> partial(chunks);
  std::atomic<std::uint64_t> next_chunk{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (std::uint64_t c = next_chunk++; c < chunks; c = next_chunk++) {
        Moments m;
        const std::uint64_t end = std::min(paths, (c + 1) * kChunk);
        for (std::uint64_t p = c * kChunk; p < end; ++p) {
          PathStream stream(seed, p);
          const double x = sample(stream);
          m.sum += x;
          m.sum_sq += x * x;
        }
        partial[c] = m;
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next_chunk = chunks;
    }
  };

  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  Moments total;
  for (const auto& m : partial) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
  }
  const double n = static_cast<double>(paths);
  const double mean = total.sum / n;
  double variance = 0;
  if (paths > 1) variance = std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1));
  return {mean, std::sqrt(variance / n)};
}

inline void finish(SimReport& r) { r.pass = std::abs(r.estimate - r.target) <= std::max(3 * r.std_error, r.abs_floor); }

inline void check_diffusion_args(const Rational& level, double w, double dt) {
  if (level <= 0) throw PreconditionError("level must be positive");
  if (!(w >= 0)) throw PreconditionError("w must be nonnegative");
  if (!(dt > 0)) throw PreconditionError("dt must be positive");
}

}  // namespace detail

/// E[exp(-w^2 T / 2)] for reflected BM from 0, T the first grid time with |B| >= level.
/// Target 1 / cosh(level * w).
inline SimReport simulate_bm_hit(const Rational& level, double w, std::uint64_t paths, double dt,
                                 std::uint64_t seed, const SimOptions& options = {}) {
  detail::check_diffusion_args(level, w, dt);
  const double a = level.get_d();
  const double sd = std::sqrt(dt);
  const double rate = w * w / 2;
  SimReport r{"bm", 0, 0, 1 / std::cosh(a * w), paths, dt, seed, options.abs_floor, false};
  std::tie(r.estimate, r.std_error) = detail::run_paths(paths, seed, options.workers, [&](PathStream& rng) {
    double x = 0;
    for (std::uint64_t step = 1; step <= options.step_cap; ++step) {
      x += sd * rng.normal();
      if (std::abs(x) >= a) return std::exp(-rate * static_cast<double>(step) * dt);
    }
    throw BudgetExceeded("path exceeded " + std::to_string(options.step_cap) + " steps");
  });
  detail::finish(r);
  return r;
}

/// Same for Bessel(3) = |3-d Brownian motion|. Target level w / sinh(level w).
inline SimReport simulate_bessel_hit(const Rational& level, double w, std::uint64_t paths, double dt,
                                     std::uint64_t seed, const SimOptions& options = {}) {
  detail::check_diffusion_args(level, w, dt);
  const double a = level.get_d();
  const double sd = std::sqrt(dt);
  const double rate = w * w / 2;
  const double target = w == 0 ? 1.0 : a * w / std::sinh(a * w);
  SimReport r{"bessel", 0, 0, target, paths, dt, seed, options.abs_floor, false};
  const double a2 = a * a;
  std::tie(r.estimate, r.std_error) = detail::run_paths(paths, seed, options.workers, [&](PathStream& rng) {
    double x = 0, y = 0, z = 0;
    for (std::uint64_t step = 1; step <= options.step_cap; ++step) {
      x += sd * rng.normal();
      y += sd * rng.normal();
      z += sd * rng.normal();
      if (x * x + y * y + z * z >= a2) return std::exp(-rate * static_cast<double>(step) * dt);
    }
    throw BudgetExceeded("path exceeded " + std::to_string(options.step_cap) + " steps");
  });
  detail::finish(r);
  return r;
}

struct BdTarget {
  double value = 0;
  double tail_bound = 0;  // z^{T+1} times the mass still unabsorbed after T steps
  std::size_t order = 0;
};

/// Exact PGF evaluated at z; doubles the series order until the tail bound is below `tolerance`.
inline BdTarget bd_target(const BirthDeathChain& chain, std::size_t from, std::size_t to,
                          std::optional<std::size_t> taboo, double z, double tolerance = 1e-12,
                          std::size_t max_order = 2048) {
  for (std::size_t order = 64;; order *= 2) {
    const auto dist = bd_hitting_distribution(chain, from, to, taboo, order);
    BdTarget t{0, 0, order};
    double zt = 1;
    for (std::size_t j = 0; j <= order; ++j) {
      t.value += dist.hits[j].get_d() * zt;
      zt *= z;
    }
    t.tail_bound = dist.survival.get_d() * zt;
    if (t.tail_bound < tolerance || order >= max_order) return t;
  }
}

/// E[z^T ; target reached before taboo] for a birth-death chain. Paths still
/// running after step_cap steps contribute 0. No discretisation floor applies.
inline SimReport simulate_bd(const BirthDeathChain& chain, std::size_t from, std::size_t to,
                             std::optional<std::size_t> taboo, double z, std::uint64_t paths,
                             std::uint64_t seed, const SimOptions& options = {}) {
  if (!(z > 0 && z <= 1)) throw PreconditionError("z must lie in (0, 1]");
  const BdTarget target = bd_target(chain, from, to, taboo, z);
  std::vector<double> up;
  for (const auto& p : chain.up_probs()) up.push_back(p.get_d());
  const std::size_t top = chain.top();
  SimReport r{"bd", 0, 0, target.value, paths, 0, seed, 0, false};
  std::tie(r.estimate, r.std_error) = detail::run_paths(paths, seed, options.workers, [&](PathStream& rng) {
    std::size_t site = from;
    double weight = 1;
    for (std::uint64_t step = 1; step <= options.step_cap; ++step) {
      if (site == 0) {
        site = 1;
      } else if (site == top) {
        site = top - 1;
      } else {
        site = rng.uniform() < up[site - 1] ? site + 1 : site - 1;
      }
      weight *= z;
      if (site == to) return weight;
      if (taboo && site == *taboo) return 0.0;
    }
    return 0.0;
  });
  detail::finish(r);
  return r;
}

}  // namespace loopwalk
