#pragma once

// Forward evaluation of sleaf_n, cleaf_n, sleafh_n and cleafh_n with their
// first derivatives.
//
// Values come from inverting the defining integrals by bracketed Newton
// iteration. The argument is first reduced to a quarter period (leaf) or
// split at a fixed point (hyperbolic), and the unknown is chosen so that the
// integral is a smooth, strictly monotone function of it:
//   - small leaf values:      r itself,             arcsleaf(r) = y
//   - leaf values near +-1:   s with r = 1 - s^2,   int_0^s K(s') ds' = P/2 - y
//   - cleafh values near 1:   s with r = 1 + s^2
//   - large hyperbolic values: u = 1/r, measured from the domain limit
// None of these has a vanishing derivative, so Newton converges everywhere;
// find_root still falls back to bisection on any bad step.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "leaf/config.hpp"
#include "leaf/constants.hpp"
#include "leaf/error.hpp"
#include "leaf/inverse.hpp"
#include "leaf/numerics.hpp"

namespace leaf {

struct BranchInfo {
  long m = 0;               // period / quadrant index
  int derivative_sign = 1;  // sign of dr/dl
  double reduced_l = 0.0;   // argument in the fundamental interval
};

struct LeafValue {
  double value;
  double derivative;
  BranchInfo branch;
};

namespace detail {

// A root of an inversion: the value r and |dr/dl| there.
struct Inverted {
  double r;
  double slope;
};

inline void require_finite_argument(double l, const char* who) {
  if (!std::isfinite(l)) throw DomainError(std::string(who) + ": argument must be finite");
}

// Solve int_0^s K = z for s in [0, 1], K the t = 1 - s^2 kernel. Gives the
// leaf value r = 1 - s^2 whose arccleaf is z.
inline Inverted invert_upper(Basis n, double z, const EvalConfig& cfg) {
  const numerics::UpperKernel kernel = numerics::upper_kernel(n);
  auto f = [&](double s) { return numerics::integrate(kernel, 0.0, s, cfg) - z; };
  // K >= 2/sqrt(2n), so the root lies below z sqrt(2n) / 2.
  const double hi = std::min(1.0, 0.5 * z * std::sqrt(static_cast<double>(n.power())) * 1.0001);
  numerics::Bracket br{0.0, hi, -z, f(hi)};
  if (br.f_hi < 0.0) br = numerics::Bracket{0.0, 1.0, -z, f(1.0)};
  const double s = numerics::find_root(f, br, kernel, cfg);
  return {1.0 - s * s, s * std::sqrt(kernel.ratio(s))};
}

// Leaf value r in [0, 1] with arcsleaf(r) = y, y in [0, P/2].
inline Inverted invert_sleaf_quarter(Basis n, double y, const EvalConfig& cfg) {
  const double half_period = 0.5 * constants(n).pi_n;
  if (y <= 0.0) return {0.0, 1.0};
  if (y >= half_period) return {1.0, 0.0};
  if (y > 0.5 * half_period) return invert_upper(n, half_period - y, cfg);
  const int p = n.power();
  auto f = [&](double r) { return arcsleaf(n, r, cfg) - y; };
  auto df = [p](double r) { return 1.0 / std::sqrt(1.0 - numerics::ipow(r, p)); };
  // arcsleaf(r) >= r, so the root is at most y.
  const double hi = std::min(y, 1.0);
  const double r = numerics::find_root(f, numerics::Bracket{0.0, hi, -y, f(hi)}, df, cfg);
  return {r, std::sqrt(1.0 - numerics::ipow(r, p))};
}

// Leaf value r in [0, 1] with arccleaf(r) = z, z in [0, P/2].
inline Inverted invert_cleaf_quarter(Basis n, double z, const EvalConfig& cfg) {
  const double half_period = 0.5 * constants(n).pi_n;
  if (z <= 0.0) return {1.0, 0.0};
  if (z >= half_period) return {0.0, 1.0};
  return invert_upper(n, z, cfg);
}

inline void check_limit(double x, std::optional<double> limit, const EvalConfig& cfg,
                        const char* who) {
  if (!limit) return;
  if (x >= *limit)
    throw DomainExceeded(std::string(who) + ": |l| = " + std::to_string(x) +
                         " is outside the domain limit " + std::to_string(*limit));
  if (*limit - x < cfg.pole_guard)
    throw PoleProximity(std::string(who) + ": |l| is within pole_guard of the domain limit");
}

// sleafh_n(x) for x >= 0 inside the base domain.
inline Inverted invert_sleafh(Basis n, double x, const EvalConfig& cfg) {
  if (x <= 0.0) return {0.0, 1.0};
  const int p = n.power();
  auto regular = [p](double t) { return 1.0 / std::sqrt(1.0 + numerics::ipow(t, p)); };
  const double head = numerics::integrate(regular, 0.0, 1.0, cfg);
  if (x <= head) {
    auto f = [&](double r) { return numerics::integrate(regular, 0.0, r, cfg) - x; };
    // The integrand is below 1, so the root is at least x.
    const double r = numerics::find_root(f, numerics::Bracket{x, 1.0, f(x), head - x},
                                         [&](double r) { return 1.0 / regular(r); }, cfg);
    return {r, 1.0 / regular(r)};
  }
  if (n.value() == 1) {
    // r = e^y; the integrand 1/sqrt(1 + e^-2y) lies in [1/sqrt2, 1].
    auto g = [](double y) { return 1.0 / std::sqrt(1.0 + std::exp(-2.0 * y)); };
    auto f = [&](double y) { return head + numerics::integrate(g, 0.0, y, cfg) - x; };
    const double hi = std::sqrt(2.0) * (x - head) * 1.0001;
    const double y =
        numerics::find_root(f, numerics::Bracket{0.0, hi, head - x, f(hi)}, g, cfg);
    const double r = std::exp(y);
    return {r, r / g(y)};
  }
  // Measure from the limit: zeta - x = int_0^u v^(n-2) / sqrt(1 + v^2n) dv.
  const int k = n.value() - 2;
  auto g = [p, k](double v) { return numerics::ipow(v, k) / std::sqrt(1.0 + numerics::ipow(v, p)); };
  const double gap = *constants(n).zeta_n - x;
  auto f = [&](double u) { return numerics::integrate(g, 0.0, u, cfg) - gap; };
  const double u = numerics::find_root(f, numerics::Bracket{0.0, 1.0, -gap, f(1.0)}, g, cfg);
  return {1.0 / u, std::sqrt(1.0 + numerics::ipow(u, p)) / numerics::ipow(u, n.value())};
}

// cleafh_n(x) for x >= 0 inside the base domain.
inline Inverted invert_cleafh(Basis n, double x, const EvalConfig& cfg) {
  if (x <= 0.0) return {1.0, 0.0};
  const int p = n.power();
  const numerics::LowerKernel kernel = numerics::lower_kernel(n);
  // Arc length up to r = 2 (s = 1).
  const double head = numerics::integrate(kernel, 0.0, 1.0, cfg);
  if (x <= head) {
    auto f = [&](double s) { return numerics::integrate(kernel, 0.0, s, cfg) - x; };
    // The kernel is at most 2/sqrt(2n), so the root is at least x sqrt(2n) / 2.
    const double lo = std::min(1.0, 0.5 * x * std::sqrt(static_cast<double>(p)) * 0.9999);
    const double s = numerics::find_root(f, numerics::Bracket{lo, 1.0, f(lo), head - x},
                                         kernel, cfg);
    return {1.0 + s * s, s * std::sqrt(kernel.ratio(s))};
  }
  const double log2 = std::log(2.0);
  if (n.value() == 1) {
    // r = e^y; the integrand 1/sqrt(1 - e^-2y) lies in [1, 2/sqrt3] for r >= 2.
    auto g = [](double y) { return 1.0 / std::sqrt(-std::expm1(-2.0 * y)); };
    auto f = [&](double y) { return head + numerics::integrate(g, log2, y, cfg) - x; };
    const double hi = log2 + (x - head) * 1.0001;
    const double y =
        numerics::find_root(f, numerics::Bracket{log2, hi, head - x, f(hi)}, g, cfg);
    const double r = std::exp(y);
    return {r, r / g(y)};
  }
  const int k = n.value() - 2;
  auto g = [p, k](double v) { return numerics::ipow(v, k) / std::sqrt(1.0 - numerics::ipow(v, p)); };
  const double gap = *constants(n).eta_n - x;
  auto f = [&](double u) { return numerics::integrate(g, 0.0, u, cfg) - gap; };
  const double u = numerics::find_root(f, numerics::Bracket{0.0, 0.5, -gap, f(0.5)}, g, cfg);
  return {1.0 / u, std::sqrt(1.0 - numerics::ipow(u, p)) / numerics::ipow(u, n.value())};
}

inline double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace detail

// Quadrant / period classification of l. For the leaf functions the sign is
// that of the derivative on the closed quarter-period interval containing l;
// in extended mode the n = 2 hyperbolic functions are reduced by their
// periods 2 zeta_2 (sleafh) and 4 eta_2 (cleafh).
inline BranchInfo branch_of(FunctionKind kind, Basis n, double l, bool extended = false) {
  switch (kind) {
    case FunctionKind::Sleaf: {
      const double P = constants(n).pi_n;
      const double m = std::floor((l + 0.5 * P) / (2.0 * P));
      const double x = l - 2.0 * P * m;  // in [-P/2, 3P/2)
      return {static_cast<long>(m), x <= 0.5 * P ? 1 : -1, x};
    }
    case FunctionKind::Cleaf: {
      const double P = constants(n).pi_n;
      const double m = std::floor((l + P) / (2.0 * P));
      const double x = l - 2.0 * P * m;  // in [-P, P)
      return {static_cast<long>(m), x <= 0.0 ? 1 : -1, x};
    }
    case FunctionKind::Sleafh: {
      if (extended && n.value() == 2) {
        const double Z = *constants(n).zeta_n;
        const double m = std::nearbyint(l / (2.0 * Z));
        return {static_cast<long>(m), 1, l - 2.0 * Z * m};
      }
      return {0, 1, l};
    }
    case FunctionKind::Cleafh: {
      if (extended && n.value() == 2) {
        const double E = *constants(n).eta_n;
        const double k = std::nearbyint(l / (4.0 * E));
        const double x = l - 4.0 * E * k;  // in [-2 eta, 2 eta]
        return {static_cast<long>(k), x < 0.0 ? -1 : 1, x};
      }
      return {0, l < 0.0 ? -1 : 1, l};
    }
  }
  return {};
}

inline LeafValue sleaf(Basis n, double l, const EvalConfig& cfg = {}) {
  detail::require_finite_argument(l, "sleaf");
  const double P = constants(n).pi_n;
  const BranchInfo br = branch_of(FunctionKind::Sleaf, n, l);
  // Fold the falling half onto the rising quarter: sleaf(x) = sleaf(P - x).
  double y = br.reduced_l <= 0.5 * P ? br.reduced_l : P - br.reduced_l;
  y = std::clamp(y, -0.5 * P, 0.5 * P);
  const detail::Inverted root = detail::invert_sleaf_quarter(n, std::abs(y), cfg);
  return {detail::sign_of(y) * root.r, br.derivative_sign * root.slope, br};
}

inline LeafValue cleaf(Basis n, double l, const EvalConfig& cfg = {}) {
  detail::require_finite_argument(l, "cleaf");
  const double P = constants(n).pi_n;
  const BranchInfo br = branch_of(FunctionKind::Cleaf, n, l);
  const double ax = std::min(std::abs(br.reduced_l), P);
  // cleaf(x) = -cleaf(P - x) on the second quarter.
  const bool outer = ax > 0.5 * P;
  const detail::Inverted root = detail::invert_cleaf_quarter(n, outer ? P - ax : ax, cfg);
  return {outer ? -root.r : root.r, br.derivative_sign * root.slope, br};
}

// Periodic continuation of sleafh_2 beyond its poles: on every interval
// ((2m-1) zeta_2, (2m+1) zeta_2) the curve repeats sleafh_2(l - 2m zeta_2).
inline LeafValue sleafh2_extended(double l, const EvalConfig& cfg = {});
// Continuation of cleafh_2 with period 4 eta_2: the base curve on
// |x| < eta_2 and its negated mirror -cleafh_2(2 eta_2 - |x|) on
// eta_2 < |x| <= 2 eta_2, where x is l reduced modulo 4 eta_2.
inline LeafValue cleafh2_extended(double l, const EvalConfig& cfg = {});

inline LeafValue sleafh(Basis n, double l, const EvalConfig& cfg = {}) {
  detail::require_finite_argument(l, "sleafh");
  if (cfg.extended && n.value() == 2) return sleafh2_extended(l, cfg);
  detail::check_limit(std::abs(l), constants(n).zeta_n, cfg, "sleafh");
  const detail::Inverted root = detail::invert_sleafh(n, std::abs(l), cfg);
  return {detail::sign_of(l) * root.r, root.slope, branch_of(FunctionKind::Sleafh, n, l)};
}

inline LeafValue cleafh(Basis n, double l, const EvalConfig& cfg = {}) {
  detail::require_finite_argument(l, "cleafh");
  if (cfg.extended && n.value() == 2) return cleafh2_extended(l, cfg);
  detail::check_limit(std::abs(l), constants(n).eta_n, cfg, "cleafh");
  const BranchInfo br = branch_of(FunctionKind::Cleafh, n, l);
  const detail::Inverted root = detail::invert_cleafh(n, std::abs(l), cfg);
  return {root.r, br.derivative_sign * root.slope, br};
}

inline LeafValue sleafh2_extended(double l, const EvalConfig& cfg) {
  detail::require_finite_argument(l, "sleafh2_extended");
  const Basis two(2);
  const double Z = *constants(two).zeta_n;
  const BranchInfo br = branch_of(FunctionKind::Sleafh, two, l, true);
  if (Z - std::abs(br.reduced_l) < cfg.pole_guard)
    throw PoleProximity("sleafh2_extended: l is within pole_guard of an odd multiple of zeta_2");
  const detail::Inverted root = detail::invert_sleafh(two, std::abs(br.reduced_l), cfg);
  return {detail::sign_of(br.reduced_l) * root.r, root.slope, br};
}

inline LeafValue cleafh2_extended(double l, const EvalConfig& cfg) {
  detail::require_finite_argument(l, "cleafh2_extended");
  const Basis two(2);
  const double E = *constants(two).eta_n;
  const BranchInfo br = branch_of(FunctionKind::Cleafh, two, l, true);
  const double ax = std::min(std::abs(br.reduced_l), 2.0 * E);
  if (std::abs(ax - E) < cfg.pole_guard)
    throw PoleProximity("cleafh2_extended: l is within pole_guard of an odd multiple of eta_2");
  if (ax < E) {
    const detail::Inverted root = detail::invert_cleafh(two, ax, cfg);
    return {root.r, br.derivative_sign * root.slope, br};
  }
  const detail::Inverted root = detail::invert_cleafh(two, 2.0 * E - ax, cfg);
  return {-root.r, br.derivative_sign * root.slope, br};
}

inline LeafValue evaluate(FunctionKind kind, Basis n, double l, const EvalConfig& cfg = {}) {
  switch (kind) {
    case FunctionKind::Sleaf: return sleaf(n, l, cfg);
    case FunctionKind::Cleaf: return cleaf(n, l, cfg);
    case FunctionKind::Sleafh: return sleafh(n, l, cfg);
    case FunctionKind::Cleafh: return cleafh(n, l, cfg);
  }
  throw std::invalid_argument("evaluate: unknown function kind");
}

// Independent evaluation by integrating the defining second-order ODE from
// l = 0. Always uses the base-mode domains.
inline LeafValue evaluate_by_ode(FunctionKind kind, Basis n, double l, const EvalConfig& cfg = {}) {
  detail::require_finite_argument(l, "evaluate_by_ode");
  const bool hyperbolic = is_hyperbolic(kind);
  if (hyperbolic) detail::check_limit(std::abs(l), domain_limit(kind, n), cfg, "evaluate_by_ode");
  const bool sine_like = kind == FunctionKind::Sleaf || kind == FunctionKind::Sleafh;
  const numerics::OdeState state = numerics::ode_integrate(
      hyperbolic ? 1 : -1, n, sine_like ? 0.0 : 1.0, sine_like ? 1.0 : 0.0, l, cfg);
  return {state.r, state.v, branch_of(kind, n, l)};
}

}  // namespace leaf
