#pragma once

// Addition, double-angle, half-angle and relation formulas. Every evaluator
// returns the closed-form right-hand side together with the value obtained
// by evaluating the left-hand side directly, so each call is a self-check.
//
// Sign cases are selected from BranchInfo (the derivative sign on the
// quadrant containing the argument), never by trying both signs. Wherever a
// formula contains sqrt(1 - f^2n), sqrt(1 + f^2n) or sqrt(f^2n - 1) of a
// computed value f, the magnitude of the derivative reported by leaf_core is
// used instead: it is the same quantity, but it stays accurate where
// 1 - f^2n suffers cancellation.
//
// Squared formulas (n = 3 additions, all half-angle formulas) return the
// square; no sign is recovered.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "leaf/config.hpp"
#include "leaf/constants.hpp"
#include "leaf/error.hpp"
#include "leaf/leaf_core.hpp"

namespace leaf {

struct FormulaReport {
  std::string formula_id;  // case-specific identifier, e.g. "2.1.6"
  std::vector<double> inputs;
  double rhs;
  double direct;
  double residual;          // |rhs - direct|
  std::string branch_case;  // "i" .. "iiii", empty when the formula has no cases
};

namespace detail {

inline FormulaReport report(std::string id, std::vector<double> inputs, double rhs, double direct,
                            std::string branch_case = {}) {
  return {std::move(id), std::move(inputs), rhs, direct, std::abs(rhs - direct),
          std::move(branch_case)};
}

inline void guard_denominator(double value, const EvalConfig& cfg, const char* id) {
  if (!(std::abs(value) >= cfg.pole_guard))
    throw PoleProximity(std::string(id) + ": denominator within pole_guard of zero");
}

inline void guard_radicand(double value, const EvalConfig& cfg, const char* id) {
  if (!(value >= cfg.pole_guard))
    throw PoleProximity(std::string(id) + ": radicand within pole_guard of zero");
}

inline const char* quadrant_case(int first_sign, int second_sign, const char* pp, const char* pm,
                                 const char* mp, const char* mm) {
  if (first_sign > 0) return second_sign > 0 ? pp : pm;
  return second_sign > 0 ? mp : mm;
}

inline void require_basis(Basis n, const char* who) {
  if (n.value() != 2 && n.value() != 3)
    throw std::invalid_argument(std::string(who) + ": only bases 2 and 3 have these formulas");
}

inline double sq(double x) { return x * x; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Addition formulas
// ---------------------------------------------------------------------------

// sleaf_2(l1 + l2) with cases (i) ++, (ii) +-, (iii) -+, (iiii) -- of the
// derivative signs at l1, l2.
inline FormulaReport add_sleaf2(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(2);
  const double direct = sleaf(n, l1 + l2, cfg).value;
  const LeafValue f1 = sleaf(n, l1, cfg);
  const LeafValue f2 = sleaf(n, l2, cfg);
  const double a = f1.value, b = f2.value;
  const int s1 = f1.branch.derivative_sign, s2 = f2.branch.derivative_sign;
  const double rhs =
      (s2 * a * std::abs(f2.derivative) + s1 * b * std::abs(f1.derivative)) / (1.0 + a * a * b * b);
  const char* id = detail::quadrant_case(s1, s2, "2.1.4", "2.1.5", "2.1.6", "2.1.7");
  const char* label = detail::quadrant_case(s1, s2, "i", "ii", "iii", "iiii");
  return detail::report(id, {l1, l2}, rhs, direct, label);
}

// cleaf_2(l1 + l2) from cleaf_2(l1) and sleaf_2(l2). Cases by the derivative
// signs (cleaf' at l1, sleaf' at l2): (i) -+, (ii) ++, (iii) +-, (iiii) --.
inline FormulaReport add_cleaf2(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(2);
  const double direct = cleaf(n, l1 + l2, cfg).value;
  const LeafValue c1 = cleaf(n, l1, cfg);
  const LeafValue f2 = sleaf(n, l2, cfg);
  const double a = c1.value, b = f2.value;
  const int sc = c1.branch.derivative_sign, s2 = f2.branch.derivative_sign;
  const double rhs =
      (s2 * a * std::abs(f2.derivative) + sc * b * std::abs(c1.derivative)) / (1.0 + a * a * b * b);
  const char* id = detail::quadrant_case(sc, s2, "2.1.10", "2.1.11", "2.1.9", "2.1.12");
  const char* label = detail::quadrant_case(sc, s2, "ii", "iii", "i", "iiii");
  return detail::report(id, {l1, l2}, rhs, direct, label);
}

// The g, p1, p2, p3 decomposition of the squared sleaf_3 addition formula:
// g^2 = (p1^2 + p2^2) / p3.
struct AppendixIState {
  double p1;
  double p2;
  double p3;
  double g_squared;
};

inline AppendixIState appendix_i_state(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(3);
  const LeafValue f1 = sleaf(n, l1, cfg);
  const LeafValue f2 = sleaf(n, l2, cfg);
  const double a = f1.value, b = f2.value;
  const double p1 = a * f2.derivative + b * f1.derivative;
  const double p2 = a * a * a * b - a * b * b * b;
  const double p3 = 1.0 + 4.0 * a * a * a * a * b * b + 4.0 * a * a * b * b * b * b;
  return {p1, p2, p3, (p1 * p1 + p2 * p2) / p3};
}

// sleaf_3(l1 + l2)^2. Case (i) when the derivative signs agree.
inline FormulaReport add_sleaf3_sq(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(3);
  const double direct = detail::sq(sleaf(n, l1 + l2, cfg).value);
  const AppendixIState state = appendix_i_state(l1, l2, cfg);
  const bool same = branch_of(FunctionKind::Sleaf, n, l1).derivative_sign ==
                    branch_of(FunctionKind::Sleaf, n, l2).derivative_sign;
  return detail::report(same ? "2.1.14" : "2.1.15", {l1, l2}, state.g_squared, direct,
                        same ? "i" : "ii");
}

// cleaf_3(l1 + l2)^2 from cleaf_3(l1) and sleaf_3(l2). Case (i) (the minus
// form) when cleaf' at l1 and sleaf' at l2 have opposite signs.
inline FormulaReport add_cleaf3_sq(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(3);
  const double direct = detail::sq(cleaf(n, l1 + l2, cfg).value);
  const LeafValue c1 = cleaf(n, l1, cfg);
  const LeafValue f2 = sleaf(n, l2, cfg);
  const double a = c1.value, b = f2.value;
  const double p1 = a * f2.derivative + b * c1.derivative;
  const double p2 = b * b * b * a - b * a * a * a;
  const double p3 = 1.0 + 4.0 * b * b * b * b * a * a + 4.0 * b * b * a * a * a * a;
  const bool opposite = c1.branch.derivative_sign * f2.branch.derivative_sign < 0;
  return detail::report(opposite ? "2.1.17" : "2.1.18", {l1, l2}, (p1 * p1 + p2 * p2) / p3,
                        direct, opposite ? "i" : "ii");
}

inline FormulaReport add_sleafh2(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(2);
  const double direct = sleafh(n, l1 + l2, cfg).value;
  const LeafValue f1 = sleafh(n, l1, cfg);
  const LeafValue f2 = sleafh(n, l2, cfg);
  const double a = f1.value, b = f2.value;
  const double den = 1.0 - a * a * b * b;
  detail::guard_denominator(den, cfg, "2.2.10");
  const double rhs = (a * std::abs(f2.derivative) + b * std::abs(f1.derivative)) / den;
  return detail::report("2.2.10", {l1, l2}, rhs, direct);
}

// cleafh_2(l1 + l2); case (i) when l1 and l2 lie on the same side of zero.
inline FormulaReport add_cleafh2(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(2);
  const double direct = cleafh(n, l1 + l2, cfg).value;
  const LeafValue c1 = cleafh(n, l1, cfg);
  const LeafValue c2 = cleafh(n, l2, cfg);
  const double a = c1.value, b = c2.value;
  const double den = 1.0 + a * a + b * b - a * a * b * b;
  detail::guard_denominator(den, cfg, "2.2.11");
  const bool same = c1.branch.derivative_sign * c2.branch.derivative_sign > 0;
  const double cross = std::abs(c1.derivative) * std::abs(c2.derivative);
  const double rhs = (2.0 * a * b + (same ? cross : -cross)) / den;
  return detail::report(same ? "2.2.12" : "2.2.13", {l1, l2}, rhs, direct, same ? "i" : "ii");
}

inline FormulaReport add_sleafh3_sq(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(3);
  const double direct = detail::sq(sleafh(n, l1 + l2, cfg).value);
  const LeafValue f1 = sleafh(n, l1, cfg);
  const LeafValue f2 = sleafh(n, l2, cfg);
  const double a = f1.value, b = f2.value;
  const double den = 1.0 - 4.0 * a * a * a * a * b * b - 4.0 * a * a * b * b * b * b;
  detail::guard_denominator(den, cfg, "2.2.16");
  const double p1 = a * std::abs(f2.derivative) + b * std::abs(f1.derivative);
  const double p2 = a * a * a * b - a * b * b * b;
  return detail::report("2.2.16", {l1, l2}, (p1 * p1 - p2 * p2) / den, direct);
}

// cleafh_3(l1 + l2)^2 from cleafh_3(l1) and sleafh_3(l2), following the two
// cased forms: (i) l1 <= 0 takes the minus sign, (ii) l1 >= 0 the plus sign.
// The uncased generic statement of this formula pairs sleafh_3(l1)^3 with
// cleafh_3(l2) in its second fraction; the cased forms pair sleafh_3(l2)^3
// with cleafh_3(l1), which is the version that matches direct evaluation.
inline FormulaReport add_cleafh3_sq(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(3);
  const double direct = detail::sq(cleafh(n, l1 + l2, cfg).value);
  const LeafValue c1 = cleafh(n, l1, cfg);
  const LeafValue f2 = sleafh(n, l2, cfg);
  const double a = c1.value, b = f2.value;
  const double den = 1.0 + 4.0 * b * b * b * b * a * a - 4.0 * b * b * a * a * a * a;
  detail::guard_denominator(den, cfg, "2.2.17");
  const bool negative = c1.branch.derivative_sign < 0;
  const double cross = b * std::abs(c1.derivative);
  const double p1 = a * std::abs(f2.derivative) + (negative ? -cross : cross);
  const double q = b * b * b * a + b * a * a * a;
  return detail::report(negative ? "2.2.18" : "2.2.19", {l1, l2}, (p1 * p1 - q * q) / den, direct,
                        negative ? "i" : "ii");
}

// The lemniscate addition theorem in Euler's original form, on values u, v
// of sl on the rising quarter period.
inline double euler_lemniscate_addition(double u, double v) {
  if (std::abs(u) > 1.0 || std::abs(v) > 1.0)
    throw DomainError("euler_lemniscate_addition: |u|, |v| must not exceed 1");
  return (u * std::sqrt(1.0 - v * v * v * v) + v * std::sqrt(1.0 - u * u * u * u)) /
         (1.0 + u * u * v * v);
}

// n = 1 addition theorems (sin, cos, sinh, cosh) expressed with the leaf
// functions of basis 1.
inline FormulaReport add_sleaf1(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(1);
  const double rhs =
      sleaf(n, l1, cfg).value * cleaf(n, l2, cfg).value + cleaf(n, l1, cfg).value * sleaf(n, l2, cfg).value;
  return detail::report("sin-add", {l1, l2}, rhs, sleaf(n, l1 + l2, cfg).value);
}

inline FormulaReport add_cleaf1(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(1);
  const double rhs =
      cleaf(n, l1, cfg).value * cleaf(n, l2, cfg).value - sleaf(n, l1, cfg).value * sleaf(n, l2, cfg).value;
  return detail::report("cos-add", {l1, l2}, rhs, cleaf(n, l1 + l2, cfg).value);
}

inline FormulaReport add_sleafh1(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(1);
  const double rhs = sleafh(n, l1, cfg).value * cleafh(n, l2, cfg).value +
                     cleafh(n, l1, cfg).value * sleafh(n, l2, cfg).value;
  return detail::report("sinh-add", {l1, l2}, rhs, sleafh(n, l1 + l2, cfg).value);
}

inline FormulaReport add_cleafh1(double l1, double l2, const EvalConfig& cfg = {}) {
  const Basis n(1);
  const double rhs = cleafh(n, l1, cfg).value * cleafh(n, l2, cfg).value +
                     sleafh(n, l1, cfg).value * sleafh(n, l2, cfg).value;
  return detail::report("cosh-add", {l1, l2}, rhs, cleafh(n, l1 + l2, cfg).value);
}

// ---------------------------------------------------------------------------
// Double-angle formulas: f(2l) from f(l)
// ---------------------------------------------------------------------------

inline FormulaReport double_angle(FunctionKind kind, Basis n, double l, const EvalConfig& cfg = {}) {
  detail::require_basis(n, "double_angle");
  // The direct side goes first so that an out-of-domain 2l is reported as
  // such rather than as a formula failure.
  const double direct = evaluate(kind, n, 2.0 * l, cfg).value;
  const LeafValue f = evaluate(kind, n, l, cfg);
  const double a = f.value;
  const double a2 = a * a;
  const bool two = n.value() == 2;
  switch (kind) {
    case FunctionKind::Sleaf: {
      const bool rising = f.branch.derivative_sign > 0;
      const double rhs = two ? 2.0 * a * f.derivative / (1.0 + a2 * a2)
                             : 2.0 * a * f.derivative / std::sqrt(1.0 + 8.0 * a2 * a2 * a2);
      const char* id = two ? (rising ? "3.1.4" : "3.1.5") : (rising ? "3.1.8" : "3.1.9");
      return detail::report(id, {l}, rhs, direct, rising ? "i" : "ii");
    }
    case FunctionKind::Cleaf: {
      if (two) {
        const double rhs = (1.0 - 2.0 * a2 - a2 * a2) / (-1.0 - 2.0 * a2 + a2 * a2);
        return detail::report("3.1.6", {l}, rhs, direct);
      }
      const double radicand = 1.0 + 8.0 * a2 + 8.0 * a2 * a2 * a2 - 8.0 * a2 * a2 * a2 * a2;
      detail::guard_radicand(radicand, cfg, "3.1.10");
      return detail::report("3.1.10", {l}, (2.0 * a2 + 2.0 * a2 * a2 - 1.0) / std::sqrt(radicand),
                            direct);
    }
    case FunctionKind::Sleafh: {
      if (two) {
        const double den = 1.0 - a2 * a2;
        detail::guard_denominator(den, cfg, "3.3.3");
        return detail::report("3.3.3", {l}, 2.0 * a * std::abs(f.derivative) / den, direct);
      }
      const double radicand = 1.0 - 8.0 * a2 * a2 * a2;
      detail::guard_radicand(radicand, cfg, "3.3.5");
      return detail::report("3.3.5", {l}, 2.0 * a * std::abs(f.derivative) / std::sqrt(radicand),
                            direct);
    }
    case FunctionKind::Cleafh: {
      if (two) {
        const double den = -a2 * a2 + 2.0 * a2 + 1.0;
        detail::guard_denominator(den, cfg, "3.3.4");
        return detail::report("3.3.4", {l}, (a2 * a2 + 2.0 * a2 - 1.0) / den, direct);
      }
      const double radicand = 1.0 + 8.0 * a2 + 8.0 * a2 * a2 * a2 - 8.0 * a2 * a2 * a2 * a2;
      detail::guard_radicand(radicand, cfg, "3.3.6");
      return detail::report("3.3.6", {l}, (2.0 * a2 + 2.0 * a2 * a2 - 1.0) / std::sqrt(radicand),
                            direct);
    }
  }
  throw std::invalid_argument("double_angle: unknown function kind");
}

// ---------------------------------------------------------------------------
// Half-angle formulas: f(l/2)^2 from f(l)
// ---------------------------------------------------------------------------

namespace detail {

// Shared by the cleaf_3 and cleafh_3 half-angle formulas, which have the same
// closed form in c = f(l).
inline double cleaf3_half_sq(double c) {
  const double A = c * c;
  const double Q = std::sqrt(1.0 + A + A * A);
  const double T = 1.0 + 2.0 * A;
  const double sqrt3 = std::numbers::sqrt3;
  const double inner = std::max(0.0, T * (2.0 * sqrt3 * Q - 3.0));
  return (A - 1.0) / (4.0 * A + 2.0) + sqrt3 * Q / (2.0 * T) +
         sqrt3 * c * std::sqrt(inner) / (2.0 * T * std::sqrt(T));
}

// Distance-to-centre test used by the hyperbolic n = 2 half-angle cases:
// whether l, reduced modulo 4 * limit, lies within one limit of zero.
inline bool within_first_limit(double l, double limit) {
  const double period = 4.0 * limit;
  const double x = l - period * std::nearbyint(l / period);
  return std::abs(x) <= limit;
}

}  // namespace detail

inline FormulaReport half_angle_sq(FunctionKind kind, Basis n, double l, const EvalConfig& cfg = {}) {
  detail::require_basis(n, "half_angle_sq");
  const double direct = detail::sq(evaluate(kind, n, 0.5 * l, cfg).value);
  const LeafValue f = evaluate(kind, n, l, cfg);
  const double a = f.value;
  const double A = a * a;
  const bool two = n.value() == 2;
  switch (kind) {
    case FunctionKind::Sleaf: {
      const bool rising = f.branch.derivative_sign > 0;
      if (two) {
        // Printed with sleaf_2(l)^2 in the denominator; evaluated in the
        // algebraically identical forms that stay finite as sleaf_2(l) -> 0.
        if (A < cfg.pole_guard)
          throw DivisionNearZero("3.2.3: sleaf_2(l)^2 below pole_guard");
        const double s = std::abs(f.derivative) / std::sqrt(1.0 + A);  // sqrt(1 - a^2)
        const double root = std::sqrt(1.0 + A);
        if (rising)
          return detail::report("3.2.4", {l}, A / ((root + 1.0) * (1.0 + s)), direct, "ii");
        return detail::report("3.2.3", {l}, (1.0 + s) / (root + 1.0), direct, "i");
      }
      const double Q = std::sqrt(1.0 + A + A * A);
      const double R = std::max(0.0, -1.0 - A + 2.0 * A * A + (2.0 - 2.0 * A * A * A) / Q);
      const double base = -0.5 * A + 0.5 * Q;
      if (rising) return detail::report("3.2.6", {l}, base - 0.5 * std::sqrt(R), direct, "i");
      return detail::report("3.2.7", {l}, base + 0.5 * std::sqrt(R), direct, "ii");
    }
    case FunctionKind::Cleaf: {
      if (two) {
        // (-1 + c + sqrt2 sqrt(1 + c^2)) / (1 + c), with the removable 0/0 at
        // c = -1 cancelled.
        const double rhs = (1.0 + a) / (std::sqrt(2.0 * (1.0 + A)) + 1.0 - a);
        return detail::report("3.2.5", {l}, rhs, direct);
      }
      return detail::report("3.2.8", {l}, detail::cleaf3_half_sq(a), direct);
    }
    case FunctionKind::Sleafh: {
      if (two) {
        const double S = std::abs(f.derivative);  // sqrt(1 + a^4)
        const double root = std::sqrt(S + 1.0);
        if (detail::within_first_limit(l, *constants(n).zeta_n)) {
          return detail::report("3.4.3", {l}, A / (root * (root + std::numbers::sqrt2)), direct,
                                "i");
        }
        if (A < cfg.pole_guard) throw DivisionNearZero("3.4.4: sleafh_2(l)^2 below pole_guard");
        return detail::report("3.4.4", {l}, root * (root + std::numbers::sqrt2) / A, direct, "ii");
      }
      const double Q = std::sqrt(1.0 - A + A * A);
      const double R = std::max(0.0, -1.0 + A + 2.0 * A * A + (2.0 + 2.0 * A * A * A) / Q);
      return detail::report("3.4.7", {l}, -0.5 * A - 0.5 * Q + 0.5 * std::sqrt(R), direct);
    }
    case FunctionKind::Cleafh: {
      if (two) {
        const double den = 1.0 + a;
        detail::guard_denominator(den, cfg, "3.4.5");
        const double root = std::numbers::sqrt2 * std::sqrt(1.0 + A);
        if (detail::within_first_limit(l, *constants(n).eta_n))
          return detail::report("3.4.5", {l}, (-1.0 + a + root) / den, direct, "i");
        return detail::report("3.4.6", {l}, (-1.0 + a - root) / den, direct, "ii");
      }
      return detail::report("3.4.8", {l}, detail::cleaf3_half_sq(a), direct);
    }
  }
  throw std::invalid_argument("half_angle_sq: unknown function kind");
}

// ---------------------------------------------------------------------------
// Relation identities
// ---------------------------------------------------------------------------

enum class RelationId { A1, A2, B1, B2, B3, B4, C1, C2 };

inline constexpr std::string_view name(RelationId id) noexcept {
  switch (id) {
    case RelationId::A1: return "A1";
    case RelationId::A2: return "A2";
    case RelationId::B1: return "B1";
    case RelationId::B2: return "B2";
    case RelationId::B3: return "B3";
    case RelationId::B4: return "B4";
    case RelationId::C1: return "C1";
    case RelationId::C2: return "C2";
  }
  return "?";
}

// Basis the identity is stated for.
inline constexpr int basis_of(RelationId id) noexcept {
  switch (id) {
    case RelationId::A1:
    case RelationId::A2: return 1;
    case RelationId::C1:
    case RelationId::C2: return 3;
    default: return 2;
  }
}

inline std::optional<RelationId> parse_relation(std::string_view text) {
  for (RelationId id : {RelationId::A1, RelationId::A2, RelationId::B1, RelationId::B2,
                        RelationId::B3, RelationId::B4, RelationId::C1, RelationId::C2})
    if (name(id) == text) return id;
  return std::nullopt;
}

// Both sides of an identity at l; rhs holds the left-hand side expression and
// direct the right-hand side, so residual = |LHS - RHS|.
inline FormulaReport identity_report(RelationId id, Basis n, double l, const EvalConfig& cfg = {}) {
  if (n.value() != basis_of(id))
    throw std::invalid_argument("identity_report: identity " + std::string(name(id)) +
                                " is stated for basis " + std::to_string(basis_of(id)));
  const std::string label(name(id));
  switch (id) {
    case RelationId::A1:
    case RelationId::B1:
    case RelationId::C1: {
      const double s = sleaf(n, l, cfg).value, c = cleaf(n, l, cfg).value;
      const double weight = id == RelationId::A1 ? 0.0 : (id == RelationId::B1 ? 1.0 : 2.0);
      return detail::report(label, {l}, s * s + c * c + weight * s * s * c * c, 1.0);
    }
    case RelationId::A2:
    case RelationId::C2: {
      const double s = sleafh(n, l, cfg).value, c = cleafh(n, l, cfg).value;
      const double weight = id == RelationId::A2 ? 0.0 : 2.0;
      return detail::report(label, {l}, c * c - s * s - weight * s * s * c * c, 1.0);
    }
    case RelationId::B2: {
      const double lhs = cleafh(n, std::numbers::sqrt2 * l, cfg).value;
      const double s2 = detail::sq(sleafh(n, l, cfg).value);
      detail::guard_denominator(1.0 - s2, cfg, "B2");
      return detail::report(label, {l}, lhs, (1.0 + s2) / (1.0 - s2));
    }
    case RelationId::B3:
      return detail::report(label, {l}, cleaf(n, l, cfg).value * cleafh(n, l, cfg).value, 1.0);
    case RelationId::B4: {
      const double lhs = detail::sq(sleaf(n, std::numbers::sqrt2 * l, cfg).value);
      const double s2 = detail::sq(sleafh(n, l, cfg).value);
      return detail::report(label, {l}, lhs, 2.0 * s2 / (1.0 + s2 * s2));
    }
  }
  throw std::invalid_argument("identity_report: unknown identity");
}

inline double identity_residual(RelationId id, Basis n, double l, const EvalConfig& cfg = {}) {
  return identity_report(id, n, l, cfg).residual;
}

// ---------------------------------------------------------------------------
// Invariance of g(l1, l2)
// ---------------------------------------------------------------------------

struct InvarianceCheck {
  double d_l1;           // central difference of g in l1
  double d_l2;           // central difference of g in l2
  double g_squared;      // g(l1, l2)^2
  double g_squared_sum;  // g(l1 + l2, 0)^2
};

// g = sqrt(g^2) is differentiated numerically in each argument; the two
// partial derivatives coincide when g depends on l1 + l2 only.
inline InvarianceCheck appendix_i_invariance_check(double l1, double l2, double h,
                                                   const EvalConfig& cfg = {}) {
  if (!(h >= 1e-6 && h <= 1e-4))
    throw std::invalid_argument("appendix_i_invariance_check: h must lie in [1e-6, 1e-4]");
  auto g = [&](double x, double y) { return std::sqrt(appendix_i_state(x, y, cfg).g_squared); };
  const double g_squared = appendix_i_state(l1, l2, cfg).g_squared;
  if (std::sqrt(g_squared) < 1e-6)
    throw DegenerateBranch("appendix_i_invariance_check: g vanishes, sqrt not differentiable");
  const double d1 = (g(l1 + h, l2) - g(l1 - h, l2)) / (2.0 * h);
  const double d2 = (g(l1, l2 + h) - g(l1, l2 - h)) / (2.0 * h);
  return {d1, d2, g_squared, appendix_i_state(l1 + l2, 0.0, cfg).g_squared};
}

}  // namespace leaf
