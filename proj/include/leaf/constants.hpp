#pragma once

// Half-period constants pi_n and the hyperbolic domain limits zeta_n, eta_n.

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>

#include "leaf/config.hpp"
#include "leaf/numerics.hpp"

namespace leaf {

struct ConstantsSet {
  Basis n;
  double pi_n;
  std::optional<double> zeta_n;  // absent for n = 1 (sinh is unbounded)
  std::optional<double> eta_n;   // absent for n = 1
};

// pi_n = 2 * int_0^1 dt / sqrt(1 - t^2n).
inline double pi_n(Basis n, const EvalConfig& cfg = {}) {
  return 2.0 * numerics::integrate_singular_upper([](double) { return 1.0; }, n, 0.0, cfg);
}

// zeta_n = int_0^inf dt / sqrt(1 + t^2n); the tail t > 1 is mapped onto
// (0, 1] with t = 1/u.
inline std::optional<double> zeta_n(Basis n, const EvalConfig& cfg = {}) {
  if (n.value() == 1) return std::nullopt;
  const int p = n.power();
  const int k = n.value() - 2;
  const double head = numerics::integrate(
      [p](double t) { return 1.0 / std::sqrt(1.0 + numerics::ipow(t, p)); }, 0.0, 1.0, cfg);
  const double tail = numerics::integrate(
      [p, k](double u) { return numerics::ipow(u, k) / std::sqrt(1.0 + numerics::ipow(u, p)); },
      0.0, 1.0, cfg);
  return head + tail;
}

// eta_n = int_1^inf dt / sqrt(t^2n - 1) = int_0^1 u^(n-2) / sqrt(1 - u^2n) du.
inline std::optional<double> eta_n(Basis n, const EvalConfig& cfg = {}) {
  if (n.value() == 1) return std::nullopt;
  const int k = n.value() - 2;
  return numerics::integrate_singular_upper([k](double u) { return numerics::ipow(u, k); }, n,
                                            0.0, cfg);
}

// Second, independent evaluation route: double-exponential quadrature of the
// original integrals without any change of variable. Used to cross-check.
inline double pi_n_direct(Basis n, const EvalConfig& cfg = {}) {
  const double p = n.power();
  auto f = [p](double, double, double to_one) {
    return 1.0 / std::sqrt(-std::expm1(p * std::log1p(-to_one)));
  };
  return 2.0 * numerics::integrate_tanh_sinh(f, 0.0, 1.0, cfg);
}

inline std::optional<double> zeta_n_direct(Basis n, const EvalConfig& cfg = {}) {
  if (n.value() == 1) return std::nullopt;
  const int p = n.power();
  auto f = [p](double t, double) { return 1.0 / std::sqrt(1.0 + numerics::ipow(t, p)); };
  return numerics::integrate_exp_sinh(f, 0.0, cfg);
}

inline std::optional<double> eta_n_direct(Basis n, const EvalConfig& cfg = {}) {
  if (n.value() == 1) return std::nullopt;
  const double p = n.power();
  auto f = [p](double, double above_one) {
    return 1.0 / std::sqrt(std::expm1(p * std::log1p(above_one)));
  };
  return numerics::integrate_exp_sinh(f, 1.0, cfg);
}

namespace detail {

struct ConstantsCache {
  std::shared_mutex mutex;
  std::map<int, ConstantsSet> entries;
};

inline ConstantsCache& constants_cache() {
  static ConstantsCache cache;
  return cache;
}

}  // namespace detail

// Process-wide cached constants, computed with the default configuration on
// first use. Concurrent first calls may compute twice; the first insertion
// wins, so every caller observes the same bits.
inline ConstantsSet constants(Basis n) {
  auto& cache = detail::constants_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.entries.find(n.value()); it != cache.entries.end()) return it->second;
  }
  const EvalConfig cfg{};
  ConstantsSet fresh{n, pi_n(n, cfg), zeta_n(n, cfg), eta_n(n, cfg)};
  std::unique_lock lock(cache.mutex);
  return cache.entries.try_emplace(n.value(), fresh).first->second;
}

// Domain limit of the given hyperbolic kind (nullopt when unbounded).
inline std::optional<double> domain_limit(FunctionKind kind, Basis n) {
  const ConstantsSet c = constants(n);
  switch (kind) {
    case FunctionKind::Sleafh: return c.zeta_n;
    case FunctionKind::Cleafh: return c.eta_n;
    default: return std::nullopt;
  }
}

}  // namespace leaf
