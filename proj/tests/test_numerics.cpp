#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "leaf/numerics.hpp"

namespace nm = leaf::numerics;
using leaf::Basis;
using leaf::EvalConfig;

TEST(Integrate, PolynomialIsExact) {
  const double v = nm::integrate([](double x) { return 3 * x * x - 2 * x + 1; }, -1.0, 2.0);
  EXPECT_NEAR(v, 9.0 - 3.0 + 3.0, 1e-13);
}

TEST(Integrate, SineOverHalfPeriod) {
  EXPECT_NEAR(nm::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi), 2.0, 1e-13);
}

TEST(Integrate, ReversedLimitsNegate) {
  auto f = [](double x) { return std::exp(x); };
  EXPECT_NEAR(nm::integrate(f, 1.0, 0.0), -(std::numbers::e - 1.0), 1e-13);
  EXPECT_EQ(nm::integrate(f, 0.5, 0.5), 0.0);
}

TEST(Integrate, RejectsNonFiniteLimits) {
  auto f = [](double) { return 1.0; };
  EXPECT_THROW(nm::integrate(f, 0.0, INFINITY), std::invalid_argument);
  EXPECT_THROW(nm::integrate(f, NAN, 1.0), std::invalid_argument);
}

TEST(Integrate, DepthBudgetRaisesNonConvergence) {
  EvalConfig cfg;
  cfg.quad_max_depth = 2;
  auto wild = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
  EXPECT_THROW(nm::integrate(wild, 0.0, 1.0, cfg), leaf::NonConvergence);
}

TEST(Integrate, NonFiniteIntegrandRaises) {
  EXPECT_THROW(nm::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0), leaf::NonConvergence);
}

TEST(SingularUpper, RecoversArcsine) {
  // n = 1: int_r^1 dt / sqrt(1 - t^2) = acos(r).
  for (double r : {0.0, 0.3, 0.9, 0.999999}) {
    const double v = nm::integrate_singular_upper([](double) { return 1.0; }, Basis(1), r);
    EXPECT_NEAR(v, std::acos(r), 1e-14) << r;
  }
  EXPECT_EQ(nm::integrate_singular_upper([](double) { return 1.0; }, Basis(2), 1.0), 0.0);
  EXPECT_THROW(nm::integrate_singular_upper([](double) { return 1.0; }, Basis(2), 1.5),
               std::invalid_argument);
}

TEST(SingularLower, RecoversArccosh) {
  for (double r : {1.0, 1.000001, 1.5, 2.0}) {
    const double v = nm::integrate_singular_lower([](double) { return 1.0; }, Basis(1), r);
    EXPECT_NEAR(v, std::acosh(r), 1e-14) << r;
  }
  EXPECT_THROW(nm::integrate_singular_lower([](double) { return 1.0; }, Basis(1), 0.5),
               std::invalid_argument);
}

TEST(Kernels, RatioLimitAtZero) {
  EXPECT_DOUBLE_EQ(nm::upper_kernel(Basis(3)).ratio(0.0), 6.0);
  EXPECT_DOUBLE_EQ(nm::lower_kernel(Basis(2)).ratio(0.0), 4.0);
  EXPECT_NEAR(nm::upper_kernel(Basis(3)).ratio(1e-9), 6.0, 1e-12);
}

TEST(TanhSinh, EndpointSingularity) {
  auto f = [](double, double from_a, double to_b) { return 1.0 / std::sqrt(from_a * to_b); };
  EXPECT_NEAR(nm::integrate_tanh_sinh(f, 0.0, 1.0), std::numbers::pi, 1e-12);
}

TEST(ExpSinh, SemiInfinite) {
  auto f = [](double x, double) { return std::exp(-x); };
  EXPECT_NEAR(nm::integrate_exp_sinh(f, 0.0), 1.0, 1e-13);
  auto g = [](double x, double) { return 1.0 / (1.0 + x * x); };
  EXPECT_NEAR(nm::integrate_exp_sinh(g, 0.0), 0.5 * std::numbers::pi, 1e-12);
}

TEST(FindRoot, NewtonAndBisectionAgree) {
  auto f = [](double x) { return x * x - 2.0; };
  auto df = [](double x) { return 2.0 * x; };
  const nm::Bracket br = nm::make_bracket(f, 0.0, 2.0);
  EXPECT_NEAR(nm::find_root(f, br, df), std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(nm::find_root(f, br, EvalConfig{}), std::numbers::sqrt2, 1e-13);
}

TEST(FindRoot, FlatDerivativeFallsBackToBisection) {
  // f' vanishes at the root; Newton steps are rejected near it.
  auto f = [](double x) { return std::pow(x - 0.3, 3); };
  auto df = [](double x) { return 3 * std::pow(x - 0.3, 2); };
  EXPECT_NEAR(nm::find_root(f, nm::make_bracket(f, 0.0, 1.0), df), 0.3, 1e-4);
}

TEST(FindRoot, InvalidBracketAndBudget) {
  auto f = [](double x) { return x * x + 1.0; };
  EXPECT_THROW(nm::make_bracket(f, -1.0, 1.0), std::invalid_argument);
  EvalConfig cfg;
  cfg.newton_max_iter = 2;
  cfg.newton_tol = 1e-300;
  auto g = [](double x) { return std::cos(x) - x; };
  EXPECT_THROW(nm::find_root(g, nm::make_bracket(g, 0.0, 1.0), cfg), leaf::NonConvergence);
}

TEST(Ode, HarmonicOscillator) {
  // sign -1, n = 1: r'' = -r, sin-like start.
  const nm::OdeState s = nm::ode_integrate(-1, Basis(1), 0.0, 1.0, 2.5);
  EXPECT_NEAR(s.r, std::sin(2.5), 1e-10);
  EXPECT_NEAR(s.v, std::cos(2.5), 1e-10);
  const nm::OdeState back = nm::ode_integrate(-1, Basis(1), 0.0, 1.0, -1.0);
  EXPECT_NEAR(back.r, -std::sin(1.0), 1e-10);
}

TEST(Ode, RejectsBadArguments) {
  EXPECT_THROW(nm::ode_integrate(0, Basis(1), 0.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(nm::ode_integrate(1, Basis(1), 0.0, 1.0, INFINITY), std::invalid_argument);
}

TEST(Ode, PoleUnderflowsStep) {
  // r'' = 2 r^3 from (0, 1) blows up at zeta_2 ~ 1.854.
  EXPECT_THROW(nm::ode_integrate(1, Basis(2), 0.0, 1.0, 2.5), leaf::NonConvergence);
}

TEST(Ipow, SmallPowers) {
  EXPECT_EQ(nm::ipow(2.0, 0), 1.0);
  EXPECT_EQ(nm::ipow(2.0, 6), 64.0);
  EXPECT_EQ(nm::ipow(-1.5, 3), -3.375);
}
