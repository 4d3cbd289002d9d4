#pragma once

// The four inverse functions, each an integral of the basis-n integrand.

#include <cmath>
#include <string>

#include "leaf/config.hpp"
#include "leaf/constants.hpp"
#include "leaf/error.hpp"
#include "leaf/numerics.hpp"

namespace leaf {

namespace detail {

inline void require_finite(double r, const char* who) {
  if (!std::isfinite(r)) throw DomainError(std::string(who) + ": argument must be finite");
}

inline auto leaf_integrand(Basis n) {
  const int p = n.power();
  return [p](double t) { return 1.0 / std::sqrt(1.0 - numerics::ipow(t, p)); };
}

// Below this argument the regular quadrature is used; above it the
// singular-endpoint kernel takes over.
inline constexpr double kRegularLimit = 0.5;

}  // namespace detail

// int_0^r dt / sqrt(1 - t^2n), |r| <= 1.
inline double arcsleaf(Basis n, double r, const EvalConfig& cfg = {}) {
  detail::require_finite(r, "arcsleaf");
  if (std::abs(r) > 1.0) throw DomainError("arcsleaf: |r| must not exceed 1");
  if (r < 0.0) return -arcsleaf(n, -r, cfg);
  const double half_period = 0.5 * constants(n).pi_n;
  if (r == 1.0) return half_period;
  if (r <= detail::kRegularLimit) return numerics::integrate(detail::leaf_integrand(n), 0.0, r, cfg);
  return half_period -
         numerics::integrate_singular_upper([](double) { return 1.0; }, n, r, cfg);
}

// int_r^1 dt / sqrt(1 - t^2n), |r| <= 1. For r < 0 the integral is split at
// 0; the piece over [r, 0] equals the one over [0, |r|] because the
// integrand is even in t.
inline double arccleaf(Basis n, double r, const EvalConfig& cfg = {}) {
  detail::require_finite(r, "arccleaf");
  if (std::abs(r) > 1.0) throw DomainError("arccleaf: |r| must not exceed 1");
  if (r == 1.0) return 0.0;
  if (r >= 0.0) return numerics::integrate_singular_upper([](double) { return 1.0; }, n, r, cfg);
  const double half_period = 0.5 * constants(n).pi_n;
  if (r == -1.0) return 2.0 * half_period;
  return half_period + arcsleaf(n, -r, cfg);
}

// int_0^r dt / sqrt(1 + t^2n) for any finite r.
inline double asleafh(Basis n, double r, const EvalConfig& cfg = {}) {
  detail::require_finite(r, "asleafh");
  if (r < 0.0) return -asleafh(n, -r, cfg);
  if (r == 0.0) return 0.0;
  const int p = n.power();
  auto regular = [p](double t) { return 1.0 / std::sqrt(1.0 + numerics::ipow(t, p)); };
  if (r <= 1.0) return numerics::integrate(regular, 0.0, r, cfg);
  const double head = numerics::integrate(regular, 0.0, 1.0, cfg);
  if (n.value() == 1) {
    // t = e^y keeps the integrand bounded: 1 / sqrt(1 + e^-2y).
    auto grow = [](double y) { return 1.0 / std::sqrt(1.0 + std::exp(-2.0 * y)); };
    return head + numerics::integrate(grow, 0.0, std::log(r), cfg);
  }
  // t = 1/u maps (1, r] onto [1/r, 1).
  const int k = n.value() - 2;
  auto inverted = [p, k](double u) {
    return numerics::ipow(u, k) / std::sqrt(1.0 + numerics::ipow(u, p));
  };
  return head + numerics::integrate(inverted, 1.0 / r, 1.0, cfg);
}

// int_1^r dt / sqrt(t^2n - 1), r >= 1.
inline double acleafh(Basis n, double r, const EvalConfig& cfg = {}) {
  detail::require_finite(r, "acleafh");
  if (r < 1.0) throw DomainError("acleafh: r must be >= 1");
  constexpr double kSplit = 2.0;
  auto one = [](double) { return 1.0; };
  if (r <= kSplit) return numerics::integrate_singular_lower(one, n, r, cfg);
  const double head = numerics::integrate_singular_lower(one, n, kSplit, cfg);
  if (n.value() == 1) {
    auto grow = [](double y) { return 1.0 / std::sqrt(-std::expm1(-2.0 * y)); };
    return head + numerics::integrate(grow, std::log(kSplit), std::log(r), cfg);
  }
  const int p = n.power();
  const int k = n.value() - 2;
  auto inverted = [p, k](double u) {
    return numerics::ipow(u, k) / std::sqrt(1.0 - numerics::ipow(u, p));
  };
  return head + numerics::integrate(inverted, 1.0 / r, 1.0 / kSplit, cfg);
}

}  // namespace leaf
