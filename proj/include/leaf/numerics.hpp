#pragma once

// Generic numerical kernels: adaptive Gauss-Kronrod quadrature, endpoint
// substitutions for inverse-square-root singularities, double-exponential
// rules, a safeguarded Newton solver and an embedded Runge-Kutta integrator.
// Nothing in here knows about leaf functions beyond the integrand shapes
// 1/sqrt(1 - t^2n) and 1/sqrt(t^2n - 1).

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "leaf/config.hpp"
#include "leaf/error.hpp"

namespace leaf::numerics {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// x^k for small non-negative integer k, by repeated squaring.
constexpr double ipow(double x, int k) noexcept {
  double result = 1.0;
  while (k > 0) {
    if (k & 1) result *= x;
    x *= x;
    k >>= 1;
  }
  return result;
}

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double abs_value;
  int depth;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gk15(F& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  const double error = std::abs((kronrod - gauss) * half);
  if (!std::isfinite(value)) throw NonConvergence("integrate: non-finite integrand value");
  return {a, b, value, error, std::abs(abs_sum * half), depth};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) quadrature of a regular integrand.
// Panels with the largest error estimate are bisected until the summed
// estimate drops below quad_abs_tol (or the floating-point noise floor of
// the integral). b < a integrates in reverse.
template <class F>
double integrate(F&& f, double a, double b, const EvalConfig& cfg = {}) {
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw std::invalid_argument("integrate: limits must be finite");
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, cfg);

  std::priority_queue<detail::Panel> panels;
  panels.push(detail::gk15(f, a, b, 0));
  double total = panels.top().value;
  double total_error = panels.top().error;
  double total_abs = panels.top().abs_value;
  // Bounded re-summation keeps the running totals from drifting.
  int recompute_counter = 0;
  while (true) {
    const double floor = 64.0 * kEps * total_abs;
    if (total_error <= std::max(cfg.quad_abs_tol, floor)) break;
    detail::Panel worst = panels.top();
    if (worst.depth >= cfg.quad_max_depth)
      throw NonConvergence("integrate: maximum subdivision depth exceeded");
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const detail::Panel left = detail::gk15(f, worst.a, mid, worst.depth + 1);
    const detail::Panel right = detail::gk15(f, mid, worst.b, worst.depth + 1);
    panels.push(left);
    panels.push(right);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    if (++recompute_counter == 64) {
      recompute_counter = 0;
      auto copy = panels;
      total = total_error = total_abs = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_error += copy.top().error;
        total_abs += copy.top().abs_value;
        copy.pop();
      }
    }
  }
  double sum = 0.0;
  while (!panels.empty()) {
    sum += panels.top().value;
    panels.pop();
  }
  return sum;
}

// Regular kernels of the endpoint substitutions. With t = 1 - s^2,
//   dt / sqrt(1 - t^2n) = upper_kernel(s) ds,
// and with t = 1 + s^2,
//   dt / sqrt(t^2n - 1) = lower_kernel(s) ds,
// both analytic in s. 1 -+ (1 -+ s^2)^2n is formed with expm1/log1p so the
// kernels stay exact near s = 0, where they tend to 2 / sqrt(2n).
struct UpperKernel {
  double p;
  // (1 - t^2n) / s^2 at t = 1 - s^2.
  double ratio(double s) const {
    const double s2 = s * s;
    return s2 > 0.0 ? -std::expm1(p * std::log1p(-s2)) / s2 : p;
  }
  double operator()(double s) const { return 2.0 / std::sqrt(ratio(s)); }
};

struct LowerKernel {
  double p;
  // (t^2n - 1) / s^2 at t = 1 + s^2.
  double ratio(double s) const {
    const double s2 = s * s;
    return s2 > 0.0 ? std::expm1(p * std::log1p(s2)) / s2 : p;
  }
  double operator()(double s) const { return 2.0 / std::sqrt(ratio(s)); }
};

inline UpperKernel upper_kernel(Basis n) { return {static_cast<double>(n.power())}; }
inline LowerKernel lower_kernel(Basis n) { return {static_cast<double>(n.power())}; }

// Integral of w(t) / sqrt(1 - t^2n) over [r, 1], evaluated as
// int_0^sqrt(1-r) w(1 - s^2) upper_kernel(s) ds.
template <class W>
double integrate_singular_upper(W&& w, Basis n, double r, const EvalConfig& cfg = {}) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::invalid_argument("integrate_singular_upper: r must lie in [0, 1]");
  if (r == 1.0) return 0.0;
  const UpperKernel kernel = upper_kernel(n);
  auto g = [&](double s) { return w(1.0 - s * s) * kernel(s); };
  return integrate(g, 0.0, std::sqrt(1.0 - r), cfg);
}

// Integral of w(t) / sqrt(t^2n - 1) over [1, r], via t = 1 + s^2.
template <class W>
double integrate_singular_lower(W&& w, Basis n, double r, const EvalConfig& cfg = {}) {
  if (!(r >= 1.0) || !std::isfinite(r))
    throw std::invalid_argument("integrate_singular_lower: r must be finite and >= 1");
  if (r == 1.0) return 0.0;
  const LowerKernel kernel = lower_kernel(n);
  auto g = [&](double s) { return w(1.0 + s * s) * kernel(s); };
  return integrate(g, 0.0, std::sqrt(r - 1.0), cfg);
}

// Tanh-sinh quadrature on [a, b]. The integrand is called as
// f(x, x - a, b - x) with both distances computed without cancellation, so
// it can resolve singularities that sit exactly on an endpoint.
template <class F>
double integrate_tanh_sinh(F&& f, double a, double b, const EvalConfig& cfg = {}) {
  if (!(a < b)) throw std::invalid_argument("integrate_tanh_sinh: require a < b");
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  constexpr double kTmax = 4.0;
  const double half = 0.5 * (b - a);
  const double width = b - a;

  auto node_pair = [&](double t) {
    const double u = kHalfPi * std::sinh(t);
    const double ch = std::cosh(u);
    const double weight = kHalfPi * std::cosh(t) / (ch * ch);
    const double d = half / (std::exp(u) * ch);  // distance of the node to b
    if (!(d > 0.0) || weight == 0.0) return 0.0;
    const double right = f(b - d, width - d, d);
    const double left = f(a + d, d, width - d);
    return weight * half * (left + right);
  };

  double h = 1.0;
  double sum = kHalfPi * half * f(a + half, half, half);
  for (double t = h; t <= kTmax; t += h) sum += node_pair(t);
  double estimate = h * sum;
  for (int level = 1; level <= 12; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTmax; t += 2.0 * h) sum += node_pair(t);
    const double next = h * sum;
    const double change = std::abs(next - estimate);
    estimate = next;
    if (!std::isfinite(estimate)) throw NonConvergence("integrate_tanh_sinh: non-finite sum");
    if (level >= 4 && change <= std::max(cfg.quad_abs_tol, 16.0 * kEps * std::abs(estimate)))
      return estimate;
  }
  throw NonConvergence("integrate_tanh_sinh: level budget exhausted");
}

// Exp-sinh quadrature on [a, inf). The integrand is called as f(x, x - a).
template <class F>
double integrate_exp_sinh(F&& f, double a, const EvalConfig& cfg = {}) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  constexpr double kTmax = 4.5;
  auto point = [&](double t) {
    const double d = std::exp(kHalfPi * std::sinh(t));
    if (!(d > 0.0) || !std::isfinite(d)) return 0.0;
    const double value = f(a + d, d);
    if (value == 0.0) return 0.0;
    return kHalfPi * std::cosh(t) * d * value;
  };
  double h = 1.0;
  double sum = point(0.0);
  for (double t = h; t <= kTmax; t += h) sum += point(t) + point(-t);
  double estimate = h * sum;
  for (int level = 1; level <= 12; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTmax; t += 2.0 * h) sum += point(t) + point(-t);
    const double next = h * sum;
    const double change = std::abs(next - estimate);
    estimate = next;
    if (!std::isfinite(estimate)) throw NonConvergence("integrate_exp_sinh: non-finite sum");
    if (level >= 4 && change <= std::max(cfg.quad_abs_tol, 16.0 * kEps * std::abs(estimate)))
      return estimate;
  }
  throw NonConvergence("integrate_exp_sinh: level budget exhausted");
}

// A sign-change interval for find_root.
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;

  bool valid() const noexcept {
    return lo < hi && std::isfinite(f_lo) && std::isfinite(f_hi) &&
           ((f_lo <= 0.0 && f_hi >= 0.0) || (f_lo >= 0.0 && f_hi <= 0.0));
  }
};

template <class F>
Bracket make_bracket(F&& f, double lo, double hi) {
  Bracket br{lo, hi, f(lo), f(hi)};
  if (!br.valid()) throw std::invalid_argument("make_bracket: no sign change on interval");
  return br;
}

namespace detail {
struct NoDerivative {
  double operator()(double) const noexcept { return std::numeric_limits<double>::quiet_NaN(); }
};
}  // namespace detail

// Newton iteration confined to a bracket. Steps that leave the bracket, stall,
// or come with a non-finite (or zero) derivative are replaced by bisection.
// Terminates when |f(x)| <= newton_tol (followed by one polishing Newton step
// when it stays inside the bracket) or when the bracket has collapsed to a
// few ulps.
template <class F, class DF = detail::NoDerivative>
  requires std::invocable<DF&, double>
double find_root(F&& f, Bracket br, DF&& df = DF{}, const EvalConfig& cfg = {}) {
  if (!br.valid()) throw std::invalid_argument("find_root: invalid bracket");
  if (br.f_lo == 0.0) return br.lo;
  if (br.f_hi == 0.0) return br.hi;
  // Orient so that f(lo) < 0 < f(hi).
  double lo = br.lo;
  double hi = br.hi;
  const bool increasing = br.f_lo < 0.0;

  auto inside = [&](double x) { return x > lo && x < hi; };
  double x = std::abs(br.f_lo) < std::abs(br.f_hi) ? lo : hi;
  double fx = std::abs(br.f_lo) < std::abs(br.f_hi) ? br.f_lo : br.f_hi;
  double dx_old = hi - lo;
  double dx = dx_old;
  bool have_point = false;

  for (int iter = 0; iter < cfg.newton_max_iter; ++iter) {
    double candidate = std::numeric_limits<double>::quiet_NaN();
    if (have_point) {
      const double d = df(x);
      if (std::isfinite(d) && d != 0.0) {
        const double step = fx / d;
        const double trial = x - step;
        if (inside(trial) && std::abs(2.0 * step) <= std::abs(dx_old)) {
          candidate = trial;
          dx_old = dx;
          dx = step;
        }
      }
    }
    if (!std::isfinite(candidate)) {
      dx_old = dx;
      dx = 0.5 * (hi - lo);
      candidate = lo + dx;
    }
    x = candidate;
    fx = f(x);
    have_point = true;
    if (!std::isfinite(fx)) throw NonConvergence("find_root: non-finite function value");
    if (std::abs(fx) <= cfg.newton_tol) {
      const double d = df(x);
      if (std::isfinite(d) && d != 0.0) {
        const double polished = x - fx / d;
        if (polished >= std::min(lo, hi) && polished <= std::max(lo, hi)) return polished;
      }
      return x;
    }
    const bool below = increasing ? fx < 0.0 : fx > 0.0;
    if (below)
      lo = x;
    else
      hi = x;
    if (hi - lo <= 4.0 * kEps * std::max(std::abs(lo), std::abs(hi))) return x;
  }
  throw NonConvergence("find_root: iteration budget exhausted");
}

template <class F>
double find_root(F&& f, Bracket br, const EvalConfig& cfg) {
  return find_root(std::forward<F>(f), br, detail::NoDerivative{}, cfg);
}

// State (r, dr/dl) of the second-order system r'' = s n r^(2n-1).
struct OdeState {
  double r;
  double v;
};

// Integrates r'' = sign * n * r^(2n-1) from l = 0 with r(0) = r0, r'(0) = v0
// to l_target using the Dormand-Prince 5(4) pair with local extrapolation and
// mixed absolute/relative error control at ode_rel_tol.
inline OdeState ode_integrate(int sign, Basis n, double r0, double v0, double l_target,
                              const EvalConfig& cfg = {}) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("ode_integrate: sign must be +-1");
  if (!std::isfinite(l_target)) throw std::invalid_argument("ode_integrate: non-finite target");
  if (l_target == 0.0) return {r0, v0};

  const int k = n.value();
  const int odd_power = 2 * k - 1;
  auto accel = [&](double r) { return sign * k * ipow(r, odd_power); };

  // Dormand-Prince coefficients.
  constexpr double a21 = 1.0 / 5.0;
  constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                   a54 = -212.0 / 729.0;
  constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                   a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                   b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                   e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

  const double direction = l_target > 0.0 ? 1.0 : -1.0;
  const double span = std::abs(l_target);
  const double tol = cfg.ode_rel_tol;
  double l = 0.0;
  double r = r0;
  double v = v0;
  double h = std::min(span, 1e-3);
  // First-same-as-last derivative of the accepted step.
  double kr1 = v;
  double kv1 = accel(r);
  constexpr long kMaxSteps = 50'000'000;

  for (long step = 0; step < kMaxSteps; ++step) {
    if (span - l <= 0.0) return {r, v};
    bool last = false;
    if (h >= span - l) {
      h = span - l;
      last = true;
    }
    const double hs = direction * h;
    const double r2 = r + hs * (a21 * kr1);
    const double v2 = v + hs * (a21 * kv1);
    const double kr2 = v2, kv2 = accel(r2);
    const double r3 = r + hs * (a31 * kr1 + a32 * kr2);
    const double v3 = v + hs * (a31 * kv1 + a32 * kv2);
    const double kr3 = v3, kv3 = accel(r3);
    const double r4 = r + hs * (a41 * kr1 + a42 * kr2 + a43 * kr3);
    const double v4 = v + hs * (a41 * kv1 + a42 * kv2 + a43 * kv3);
    const double kr4 = v4, kv4 = accel(r4);
    const double r5 = r + hs * (a51 * kr1 + a52 * kr2 + a53 * kr3 + a54 * kr4);
    const double v5 = v + hs * (a51 * kv1 + a52 * kv2 + a53 * kv3 + a54 * kv4);
    const double kr5 = v5, kv5 = accel(r5);
    const double r6 = r + hs * (a61 * kr1 + a62 * kr2 + a63 * kr3 + a64 * kr4 + a65 * kr5);
    const double v6 = v + hs * (a61 * kv1 + a62 * kv2 + a63 * kv3 + a64 * kv4 + a65 * kv5);
    const double kr6 = v6, kv6 = accel(r6);
    const double r_new = r + hs * (b1 * kr1 + b3 * kr3 + b4 * kr4 + b5 * kr5 + b6 * kr6);
    const double v_new = v + hs * (b1 * kv1 + b3 * kv3 + b4 * kv4 + b5 * kv5 + b6 * kv6);
    const double kr7 = v_new, kv7 = accel(r_new);
    const double err_r =
        hs * (e1 * kr1 + e3 * kr3 + e4 * kr4 + e5 * kr5 + e6 * kr6 + e7 * kr7);
    const double err_v =
        hs * (e1 * kv1 + e3 * kv3 + e4 * kv4 + e5 * kv5 + e6 * kv6 + e7 * kv7);
    const double scale_r = tol * (1.0 + std::max(std::abs(r), std::abs(r_new)));
    const double scale_v = tol * (1.0 + std::max(std::abs(v), std::abs(v_new)));
    const double err = std::max(std::abs(err_r) / scale_r, std::abs(err_v) / scale_v);
    if (!std::isfinite(err)) {
      h *= 0.25;
    } else if (err <= 1.0) {
      l = last ? span : l + h;
      r = r_new;
      v = v_new;
      kr1 = kr7;
      kv1 = kv7;
      if (last) return {r, v};
      const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= grow;
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
    if (h < cfg.ode_min_step)
      throw NonConvergence("ode_integrate: step size underflow at l = " +
                           std::to_string(direction * l));
  }
  throw NonConvergence("ode_integrate: step budget exhausted");
}

}  // namespace leaf::numerics
