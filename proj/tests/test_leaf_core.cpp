#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "leaf/leaf_core.hpp"
#include "support.hpp"

using leaf::Basis;
using leaf::EvalConfig;
using leaf::FunctionKind;
namespace lt = leaf::testing;

namespace {

double rel_or_abs(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST(LeafTable, MatchesExactOracle) {
  for (const auto& row : lt::kExactLeafTable) {
    for (int c = 0; c < 6; ++c) {
      const FunctionKind kind = lt::column_kind(c, false);
      const double got = leaf::evaluate(kind, Basis(lt::column_basis(c)), row[0]).value;
      EXPECT_NEAR(got, row[c + 1], 1e-12) << leaf::name(kind) << lt::column_basis(c) << "(" << row[0] << ")";
    }
  }
}

TEST(HyperbolicTable, MatchesExactOracle) {
  for (const auto& row : lt::kExactHyperbolicTable) {
    for (int c = 0; c < 6; ++c) {
      const FunctionKind kind = lt::column_kind(c, true);
      const Basis n(lt::column_basis(c));
      if (std::isnan(row[c + 1])) {
        EXPECT_THROW(leaf::evaluate(kind, n, row[0]), leaf::DomainExceeded);
        continue;
      }
      EXPECT_LE(rel_or_abs(leaf::evaluate(kind, n, row[0]).value, row[c + 1]), 1e-12)
          << leaf::name(kind) << n.value() << "(" << row[0] << ")";
    }
  }
}

// The printed tables agree with the exact values to every digit for n = 1;
// the n >= 2 columns carry errors of up to a few 1e-7 (leaf) and about 1e-4
// relative (largest hyperbolic entries). These bounds document that spread.
TEST(LeafTable, PrintedValuesWithinTheirDemonstratedAccuracy) {
  for (const auto& row : lt::kPrintedLeafTable) {
    for (int c = 0; c < 6; ++c) {
      const double printed = lt::parse_cell(row.cells[c]);
      const double got = leaf::evaluate(lt::column_kind(c, false), Basis(lt::column_basis(c)), row.l).value;
      const double bound = lt::column_basis(c) == 1 ? 1e-9 : 1e-6;
      EXPECT_NEAR(got, printed, bound) << c << " at " << row.l;
    }
  }
}

TEST(HyperbolicTable, PrintedValuesWithinTheirDemonstratedAccuracy) {
  for (const auto& row : lt::kPrintedHyperbolicTable) {
    for (int c = 0; c < 6; ++c) {
      const FunctionKind kind = lt::column_kind(c, true);
      const Basis n(lt::column_basis(c));
      if (lt::is_dash(row.cells[c])) {
        EXPECT_THROW(leaf::evaluate(kind, n, row.l), leaf::DomainExceeded) << c << " at " << row.l;
        continue;
      }
      const double bound = n.value() == 1 ? 1e-9 : 2e-4;
      EXPECT_LE(rel_or_abs(leaf::evaluate(kind, n, row.l).value, lt::parse_cell(row.cells[c])), bound)
          << c << " at " << row.l;
    }
  }
}

TEST(LeafCore, AgreesWithRk4Oracle) {
  for (int n : {1, 2, 3}) {
    for (double l : {-2.7, -0.4, 0.3, 1.1, 2.9, 4.4}) {
      for (FunctionKind kind : {FunctionKind::Sleaf, FunctionKind::Cleaf}) {
        const lt::Rk4Result ref = lt::rk4_oracle(kind, n, l);
        const leaf::LeafValue got = leaf::evaluate(kind, Basis(n), l);
        EXPECT_NEAR(got.value, ref.r, 1e-10) << leaf::name(kind) << n << "(" << l << ")";
        EXPECT_NEAR(got.derivative, ref.v, 1e-10) << leaf::name(kind) << n << "(" << l << ")";
      }
    }
    for (FunctionKind kind : {FunctionKind::Sleafh, FunctionKind::Cleafh}) {
      const double limit = n == 1 ? 3.0 : *leaf::domain_limit(kind, Basis(n));
      for (double frac : {-0.85, -0.3, 0.2, 0.6, 0.85}) {
        const double l = frac * limit;
        const lt::Rk4Result ref = lt::rk4_oracle(kind, n, l);
        const leaf::LeafValue got = leaf::evaluate(kind, Basis(n), l);
        EXPECT_LE(rel_or_abs(got.value, ref.r), 1e-10) << leaf::name(kind) << n << "(" << l << ")";
        EXPECT_LE(rel_or_abs(got.derivative, ref.v), 1e-10) << leaf::name(kind) << n << "(" << l << ")";
      }
    }
  }
}

TEST(LeafCore, BasisOneIsTrigonometric) {
  for (double l = -3.0; l <= 3.0; l += 0.37) {
    EXPECT_NEAR(leaf::sleaf(Basis(1), l).value, std::sin(l), 1e-14);
    EXPECT_NEAR(leaf::cleaf(Basis(1), l).value, std::cos(l), 1e-14);
    EXPECT_NEAR(leaf::sleafh(Basis(1), l).value, std::sinh(l), 1e-13 * std::cosh(l));
    EXPECT_NEAR(leaf::cleafh(Basis(1), l).value, std::cosh(l), 1e-13 * std::cosh(l));
    EXPECT_NEAR(leaf::cleaf(Basis(1), l).derivative, -std::sin(l), 1e-14);
  }
}

TEST(LeafCore, SymmetryPeriodAndShift) {
  for (int n : {1, 2, 3}) {
    const Basis b(n);
    const double P = leaf::constants(b).pi_n;
    for (double l : {0.13, 0.8, 1.9, 3.3}) {
      EXPECT_NEAR(leaf::sleaf(b, -l).value, -leaf::sleaf(b, l).value, 1e-15);
      EXPECT_NEAR(leaf::cleaf(b, -l).value, leaf::cleaf(b, l).value, 1e-15);
      EXPECT_NEAR(leaf::sleaf(b, l + 2 * P).value, leaf::sleaf(b, l).value, 1e-13);
      EXPECT_NEAR(leaf::cleaf(b, l - 4 * P).value, leaf::cleaf(b, l).value, 1e-13);
      EXPECT_NEAR(leaf::cleaf(b, l).value, leaf::sleaf(b, 0.5 * P - l).value, 1e-14);
    }
  }
}

TEST(LeafCore, FirstIntegralHolds) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int n : {1, 2, 3}) {
    const Basis b(n);
    const int p = 2 * n;
    for (int i = 0; i < 200; ++i) {
      const double l = 8.0 * unit(rng);
      for (FunctionKind kind : {FunctionKind::Sleaf, FunctionKind::Cleaf}) {
        const leaf::LeafValue v = leaf::evaluate(kind, b, l);
        EXPECT_NEAR(v.derivative * v.derivative + std::pow(v.value, p), 1.0, 1e-14);
      }
      const double Z = n == 1 ? 3.0 : 0.95 * *leaf::constants(b).zeta_n;
      const leaf::LeafValue s = leaf::sleafh(b, Z * unit(rng));
      EXPECT_NEAR((s.derivative * s.derivative - std::pow(s.value, p)) / (1 + std::pow(s.value, p)),
                  1.0 / (1 + std::pow(s.value, p)), 1e-14);
      const double E = n == 1 ? 3.0 : 0.95 * *leaf::constants(b).eta_n;
      const leaf::LeafValue c = leaf::cleafh(b, E * unit(rng));
      EXPECT_NEAR((c.derivative * c.derivative + 1.0) / std::pow(c.value, p), 1.0, 1e-13);
    }
  }
}

TEST(LeafCore, SignedDerivativeMatchesBranch) {
  const Basis b(2);
  const double P = leaf::constants(b).pi_n;
  EXPECT_EQ(leaf::branch_of(FunctionKind::Sleaf, b, 0.25 * P).derivative_sign, 1);
  EXPECT_EQ(leaf::branch_of(FunctionKind::Sleaf, b, 0.75 * P).derivative_sign, -1);
  EXPECT_EQ(leaf::branch_of(FunctionKind::Sleaf, b, 1.75 * P).derivative_sign, 1);
  EXPECT_EQ(leaf::branch_of(FunctionKind::Sleaf, b, 2.25 * P).m, 1);
  EXPECT_EQ(leaf::branch_of(FunctionKind::Cleaf, b, 0.5 * P).derivative_sign, -1);
  EXPECT_EQ(leaf::branch_of(FunctionKind::Cleaf, b, -0.5 * P).derivative_sign, 1);
  EXPECT_EQ(leaf::branch_of(FunctionKind::Cleafh, b, -0.3).derivative_sign, -1);
  EXPECT_GT(leaf::sleaf(b, 0.9 * P).value, 0.0);
  EXPECT_LT(leaf::sleaf(b, 0.9 * P).derivative, 0.0);
  EXPECT_LT(leaf::cleafh(b, -0.3).derivative, 0.0);
}

TEST(LeafCore, DomainRefusals) {
  const Basis two(2), three(3);
  const double Z2 = *leaf::constants(two).zeta_n;
  EXPECT_THROW(leaf::sleafh(two, Z2), leaf::DomainExceeded);
  EXPECT_THROW(leaf::sleafh(two, -2.0), leaf::DomainExceeded);
  EXPECT_THROW(leaf::sleafh(two, Z2 - 1e-7), leaf::PoleProximity);
  EXPECT_THROW(leaf::cleafh(three, 0.8), leaf::DomainExceeded);
  EXPECT_THROW(leaf::sleaf(two, NAN), leaf::DomainError);
  EXPECT_NO_THROW(leaf::sleafh(two, Z2 - 1e-5));
  EXPECT_NO_THROW(leaf::sleafh(Basis(1), 20.0));
  EvalConfig loose;
  loose.pole_guard = 1e-9;
  EXPECT_NO_THROW(leaf::sleafh(two, Z2 - 1e-7, loose));
}

TEST(LeafCore, NearLimitGrowth) {
  // sleafh_2 ~ 1/(zeta - l) next to its pole; cleafh_2 ~ 1/(eta - l).
  const Basis two(2);
  const double Z = *leaf::constants(two).zeta_n, E = *leaf::constants(two).eta_n;
  EXPECT_NEAR(leaf::sleafh(two, Z - 1e-5).value * 1e-5, 1.0, 1e-6);
  EXPECT_NEAR(leaf::cleafh(two, E - 1e-5).value * 1e-5, 1.0, 1e-6);
}

TEST(LeafCore, OdePathAgrees) {
  for (int n : {1, 2, 3}) {
    for (FunctionKind kind : {FunctionKind::Sleaf, FunctionKind::Cleaf, FunctionKind::Sleafh, FunctionKind::Cleafh}) {
      const auto limit = leaf::domain_limit(kind, Basis(n));
      const double span = limit ? 0.9 * *limit : 3.0;
      for (double frac : {-1.0, -0.5, 0.1, 0.7, 1.0}) {
        const double l = frac * span;
        const double a = leaf::evaluate(kind, Basis(n), l).value;
        const double b = leaf::evaluate_by_ode(kind, Basis(n), l).value;
        EXPECT_LE(rel_or_abs(a, b), 1e-9) << leaf::name(kind) << n << "(" << l << ")";
      }
    }
  }
  EXPECT_THROW(leaf::evaluate_by_ode(FunctionKind::Cleafh, Basis(3), 0.9), leaf::DomainExceeded);
}

// ----- extension mode -----

TEST(Extension, ZerosAndUnitSlopeAtEvenMultiples) {
  EvalConfig ext;
  ext.extended = true;
  const double Z = *leaf::constants(Basis(2)).zeta_n;
  for (int m = -2; m <= 2; ++m) {
    const leaf::LeafValue v = leaf::sleafh(Basis(2), 2.0 * m * Z, ext);
    EXPECT_NEAR(v.value, 0.0, 1e-10) << m;
    EXPECT_NEAR(v.derivative, 1.0, 1e-10) << m;
  }
}

TEST(Extension, CleafhAnchorValues) {
  EvalConfig ext;
  ext.extended = true;
  const double E = *leaf::constants(Basis(2)).eta_n;
  for (int m = -2; m <= 2; ++m) {
    EXPECT_NEAR(leaf::cleafh(Basis(2), 4.0 * m * E, ext).value, 1.0, 1e-10) << m;
    EXPECT_NEAR(leaf::cleafh(Basis(2), (4.0 * m - 2.0) * E, ext).value, -1.0, 1e-10) << m;
    EXPECT_NEAR(leaf::cleafh(Basis(2), 2.0 * m * E, ext).derivative, 0.0, 1e-10) << m;
  }
}

TEST(Extension, PeriodicityAndPoles) {
  EvalConfig ext;
  ext.extended = true;
  const Basis two(2);
  const double Z = *leaf::constants(two).zeta_n, E = *leaf::constants(two).eta_n;
  for (double l : {-2.9, -0.7, 0.4, 1.2, 1.7, 3.1, 4.0}) {
    EXPECT_NEAR(leaf::sleafh(two, l + 2 * Z, ext).value, leaf::sleafh(two, l, ext).value,
                1e-9 * std::max(1.0, std::abs(leaf::sleafh(two, l, ext).value)));
    EXPECT_NEAR(leaf::cleafh(two, l + 4 * E, ext).value, leaf::cleafh(two, l, ext).value,
                1e-9 * std::max(1.0, std::abs(leaf::cleafh(two, l, ext).value)));
  }
  EXPECT_THROW(leaf::sleafh(two, 3 * Z, ext), leaf::PoleProximity);
  EXPECT_THROW(leaf::cleafh(two, -E, ext), leaf::PoleProximity);
  // Inside the base domain the extension changes nothing.
  EXPECT_EQ(leaf::sleafh(two, 1.1, ext).value, leaf::sleafh(two, 1.1).value);
  EXPECT_EQ(leaf::cleafh(two, -0.6, ext).value, leaf::cleafh(two, -0.6).value);
  // Beyond the first pole sleafh_2 rises from -infinity again.
  EXPECT_LT(leaf::sleafh(two, Z + 0.1, ext).value, -1.0);
  EXPECT_GT(leaf::sleafh(two, Z + 0.1, ext).derivative, 0.0);
  // The extension is only defined for n = 2.
  EvalConfig ext3 = ext;
  EXPECT_THROW(leaf::sleafh(Basis(3), 1.5, ext3), leaf::DomainExceeded);
}

TEST(Extension, SatisfiesTheOdeAcrossAPeriod) {
  // Away from the poles the extended curves still solve r'' = 2 r^3: check
  // with a centred second difference.
  EvalConfig ext;
  ext.extended = true;
  const Basis two(2);
  const double h = 1e-4;
  for (double l : {2.5, 3.0, 4.4, -2.6}) {
    for (FunctionKind kind : {FunctionKind::Sleafh, FunctionKind::Cleafh}) {
      const double r = leaf::evaluate(kind, two, l, ext).value;
      const double d2 = (leaf::evaluate(kind, two, l + h, ext).value - 2 * r +
                         leaf::evaluate(kind, two, l - h, ext).value) / (h * h);
      EXPECT_NEAR(d2, 2 * r * r * r, 1e-5 * std::max(1.0, std::abs(2 * r * r * r))) << leaf::name(kind) << " " << l;
    }
  }
}
