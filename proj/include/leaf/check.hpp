#pragma once

// Seeded residual suites over the formula evaluators. Each formula family is
// sampled uniformly over an in-domain box; samples that violate a formula's
// preconditions (near a pole, out of the domain) are redrawn.

#include <fnmatch.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "leaf/config.hpp"
#include "leaf/constants.hpp"
#include "leaf/error.hpp"
#include "leaf/formulas.hpp"

namespace leaf {

struct CheckReport {
  std::string formula_id;
  std::size_t samples = 0;
  double max_residual = 0.0;   // scaled, see scaled_residual()
  double mean_residual = 0.0;
  double max_abs_residual = 0.0;  // unscaled |rhs - direct|
  std::vector<double> worst_inputs;
  std::uint64_t seed = 0;
  std::map<std::string, std::size_t> case_counts;  // by case-specific formula id
  std::size_t rejected = 0;
};

// Absolute residual while |direct| <= 10, beyond that the residual relative
// to |direct| / 10; a tolerance of 1e-9 therefore means 1e-9 absolute for
// moderate values and 1e-8 relative for large ones.
inline double scaled_residual(const FormulaReport& r) {
  return r.residual / std::max(1.0, std::abs(r.direct) / 10.0);
}

struct FormulaFamily {
  std::string id;
  std::vector<std::string> members;  // case-specific ids reported by the evaluator
  std::function<FormulaReport(std::mt19937_64&, const EvalConfig&)> draw;
  bool extended = false;
};

namespace detail {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline void require_inside(double l, double bound) {
  if (!(std::abs(l) < bound)) throw DomainExceeded("sample outside the sampling box");
}

inline double period_of(int n) { return 2.0 * constants(Basis(n)).pi_n; }
inline double zeta_of(int n) { return *constants(Basis(n)).zeta_n; }
inline double eta_of(int n) { return *constants(Basis(n)).eta_n; }

using Binary = FormulaReport (*)(double, double, const EvalConfig&);

// Both arguments (and their sum) in the open box (-bound1, bound1) x
// (-bound2, bound2), sum inside (-sum_bound, sum_bound).
inline auto pair_sampler(Binary f, double bound1, double bound2, double sum_bound) {
  return [=](std::mt19937_64& rng, const EvalConfig& cfg) {
    const double l1 = uniform(rng, -bound1, bound1);
    const double l2 = uniform(rng, -bound2, bound2);
    require_inside(l1 + l2, sum_bound);
    return f(l1, l2, cfg);
  };
}

inline auto double_sampler(FunctionKind kind, int n, double bound) {
  return [=](std::mt19937_64& rng, const EvalConfig& cfg) {
    return double_angle(kind, Basis(n), uniform(rng, -bound, bound), cfg);
  };
}

inline auto half_sampler(FunctionKind kind, int n, double bound) {
  return [=](std::mt19937_64& rng, const EvalConfig& cfg) {
    return half_angle_sq(kind, Basis(n), uniform(rng, -bound, bound), cfg);
  };
}

inline auto identity_sampler(RelationId id, double bound) {
  return [=](std::mt19937_64& rng, const EvalConfig& cfg) {
    return identity_report(id, Basis(basis_of(id)), uniform(rng, -bound, bound), cfg);
  };
}

inline constexpr double kInteriorLo = 0.05;
inline constexpr double kInteriorHi = 1.15;
inline constexpr double kInvarianceStep = 1e-5;

inline std::vector<FormulaFamily> build_registry() {
  constexpr double kBox = 0.95;  // fraction of a hyperbolic domain limit
  using K = FunctionKind;
  const double P2 = period_of(2), P3 = period_of(3);
  const double Z2 = zeta_of(2), Z3 = zeta_of(3), E2 = eta_of(2), E3 = eta_of(3);
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<FormulaFamily> r;
  r.push_back({"2.1.3", {"2.1.4", "2.1.5", "2.1.6", "2.1.7"}, pair_sampler(add_sleaf2, P2, P2, inf)});
  r.push_back({"2.1.8", {"2.1.9", "2.1.10", "2.1.11", "2.1.12"}, pair_sampler(add_cleaf2, P2, P2, inf)});
  r.push_back({"2.1.13", {"2.1.14", "2.1.15"}, pair_sampler(add_sleaf3_sq, P3, P3, inf)});
  r.push_back({"2.1.16", {"2.1.17", "2.1.18"}, pair_sampler(add_cleaf3_sq, P3, P3, inf)});
  r.push_back({"2.2.10", {"2.2.10"}, pair_sampler(add_sleafh2, kBox * Z2, kBox * Z2, kBox * Z2)});
  r.push_back({"2.2.11", {"2.2.12", "2.2.13"}, pair_sampler(add_cleafh2, kBox * E2, kBox * E2, kBox * E2)});
  r.push_back({"2.2.16", {"2.2.16"}, pair_sampler(add_sleafh3_sq, kBox * Z3, kBox * Z3, kBox * Z3)});
  r.push_back({"2.2.17", {"2.2.18", "2.2.19"}, pair_sampler(add_cleafh3_sq, kBox * E3, kBox * Z3, kBox * E3)});

  r.push_back({"3.1.3", {"3.1.4", "3.1.5"}, double_sampler(K::Sleaf, 2, P2)});
  r.push_back({"3.1.6", {"3.1.6"}, double_sampler(K::Cleaf, 2, P2)});
  r.push_back({"3.1.7", {"3.1.8", "3.1.9"}, double_sampler(K::Sleaf, 3, P3)});
  r.push_back({"3.1.10", {"3.1.10"}, double_sampler(K::Cleaf, 3, P3)});
  r.push_back({"3.3.3", {"3.3.3"}, double_sampler(K::Sleafh, 2, 0.5 * kBox * Z2)});
  r.push_back({"3.3.4", {"3.3.4"}, double_sampler(K::Cleafh, 2, 0.5 * kBox * E2)});
  r.push_back({"3.3.5", {"3.3.5"}, double_sampler(K::Sleafh, 3, 0.5 * kBox * Z3)});
  r.push_back({"3.3.6", {"3.3.6"}, double_sampler(K::Cleafh, 3, 0.5 * kBox * E3)});

  r.push_back({"3.2.3", {"3.2.3", "3.2.4"}, half_sampler(K::Sleaf, 2, 2.0 * P2)});
  r.push_back({"3.2.5", {"3.2.5"}, half_sampler(K::Cleaf, 2, 2.0 * P2)});
  r.push_back({"3.2.6", {"3.2.6", "3.2.7"}, half_sampler(K::Sleaf, 3, 2.0 * P3)});
  r.push_back({"3.2.8", {"3.2.8"}, half_sampler(K::Cleaf, 3, 2.0 * P3)});
  // The second cases of the n = 2 hyperbolic half-angle formulas only occur
  // beyond the first pole, so these two families run in extension mode.
  r.push_back({"3.4.3", {"3.4.3", "3.4.4"}, half_sampler(K::Sleafh, 2, 3.8 * Z2), true});
  r.push_back({"3.4.5", {"3.4.5", "3.4.6"}, half_sampler(K::Cleafh, 2, 3.8 * E2), true});
  r.push_back({"3.4.7", {"3.4.7"}, half_sampler(K::Sleafh, 3, kBox * Z3)});
  r.push_back({"3.4.8", {"3.4.8"}, half_sampler(K::Cleafh, 3, kBox * E3)});

  r.push_back({"A1", {"A1"}, identity_sampler(RelationId::A1, 3.0)});
  r.push_back({"A2", {"A2"}, identity_sampler(RelationId::A2, 3.0)});
  r.push_back({"B1", {"B1"}, identity_sampler(RelationId::B1, P2)});
  r.push_back({"B2", {"B2"}, identity_sampler(RelationId::B2, kBox * E2 / std::numbers::sqrt2)});
  r.push_back({"B3", {"B3"}, identity_sampler(RelationId::B3, kBox * E2)});
  r.push_back({"B4", {"B4"}, identity_sampler(RelationId::B4, kBox * Z2)});
  r.push_back({"C1", {"C1"}, identity_sampler(RelationId::C1, P3)});
  r.push_back({"C2", {"C2"}, identity_sampler(RelationId::C2, kBox * E3)});

  // Partial derivatives of g agree; the report's direct side is d/dl2.
  r.push_back({"I15", {"I15"}, [](std::mt19937_64& rng, const EvalConfig& cfg) {
                 const double l1 = uniform(rng, kInteriorLo, kInteriorHi);
                 const double l2 = uniform(rng, kInteriorLo, kInteriorHi);
                 const InvarianceCheck c = appendix_i_invariance_check(l1, l2, kInvarianceStep, cfg);
                 return report("I15", {l1, l2}, c.d_l1, c.d_l2);
               }});
  // g(l1, l2)^2 = g(l1 + l2, 0)^2.
  r.push_back({"I16", {"I16"}, [](std::mt19937_64& rng, const EvalConfig& cfg) {
                 const double l1 = uniform(rng, kInteriorLo, kInteriorHi);
                 const double l2 = uniform(rng, kInteriorLo, kInteriorHi);
                 return report("I16", {l1, l2}, appendix_i_state(l1, l2, cfg).g_squared,
                               appendix_i_state(l1 + l2, 0.0, cfg).g_squared);
               }});
  return r;
}

inline std::uint64_t id_hash(const std::string& id) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char ch : id) h = (h ^ ch) * 1099511628211ull;
  return h;
}

}  // namespace detail

inline const std::vector<FormulaFamily>& formula_registry() {
  static const std::vector<FormulaFamily> registry = detail::build_registry();
  return registry;
}

// Families whose id or any case id matches the shell-style pattern.
inline std::vector<const FormulaFamily*> match_families(const std::string& pattern) {
  std::vector<const FormulaFamily*> out;
  auto hit = [&](const std::string& id) { return fnmatch(pattern.c_str(), id.c_str(), 0) == 0; };
  for (const FormulaFamily& f : formula_registry())
    if (hit(f.id) || std::any_of(f.members.begin(), f.members.end(), hit)) out.push_back(&f);
  return out;
}

// Draws `samples` accepted samples. The stream for each family depends on
// the seed and the family id only, so results do not depend on which other
// families run alongside.
inline CheckReport run_check(const FormulaFamily& family, std::size_t samples, std::uint64_t seed,
                             EvalConfig cfg = {}) {
  cfg.extended = cfg.extended || family.extended;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(detail::id_hash(family.id)),
                    static_cast<std::uint32_t>(detail::id_hash(family.id) >> 32)};
  std::mt19937_64 rng(seq);

  CheckReport rep;
  rep.formula_id = family.id;
  rep.seed = seed;
  double total = 0.0;
  const std::size_t max_attempts = 50 * samples + 100;
  std::size_t attempts = 0;
  while (rep.samples < samples) {
    if (++attempts > max_attempts)
      throw NonConvergence("run_check(" + family.id + "): too many rejected samples");
    FormulaReport r;
    try {
      r = family.draw(rng, cfg);
    } catch (const PreconditionError&) {
      ++rep.rejected;
      continue;
    }
    // A non-finite residual counts as an infinitely bad sample.
    const double raw = scaled_residual(r);
    const double score = std::isnan(raw) ? std::numeric_limits<double>::infinity() : raw;
    ++rep.samples;
    ++rep.case_counts[r.formula_id];
    total += score;
    rep.max_abs_residual = std::max(rep.max_abs_residual, std::isnan(r.residual) ? score : r.residual);
    if (!(score <= rep.max_residual) || rep.samples == 1) {
      rep.max_residual = score;
      rep.worst_inputs = r.inputs;
    }
  }
  rep.mean_residual = rep.samples ? total / static_cast<double>(rep.samples) : 0.0;
  return rep;
}

}  // namespace leaf
