#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace leaf {

// Exponent parameter of the leaf-function family. n = 1 recovers the
// circular / hyperbolic functions, n = 2 the lemniscate family.
class Basis {
 public:
  constexpr explicit Basis(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("basis must be >= 1");
  }
  constexpr int value() const noexcept { return n_; }
  // Exponent 2n appearing under the square roots.
  constexpr int power() const noexcept { return 2 * n_; }
  constexpr bool operator==(const Basis&) const = default;

 private:
  int n_;
};

enum class FunctionKind { Sleaf, Cleaf, Sleafh, Cleafh };

inline constexpr std::string_view name(FunctionKind kind) noexcept {
  switch (kind) {
    case FunctionKind::Sleaf: return "sleaf";
    case FunctionKind::Cleaf: return "cleaf";
    case FunctionKind::Sleafh: return "sleafh";
    case FunctionKind::Cleafh: return "cleafh";
  }
  return "?";
}

inline constexpr bool is_hyperbolic(FunctionKind kind) noexcept {
  return kind == FunctionKind::Sleafh || kind == FunctionKind::Cleafh;
}

// Tolerances and budgets shared by every evaluation path.
struct EvalConfig {
  double quad_abs_tol = 1e-13;
  int quad_max_depth = 48;
  double newton_tol = 1e-13;
  int newton_max_iter = 200;
  double ode_rel_tol = 1e-12;
  double ode_min_step = 1e-13;
  // Minimum distance from a domain limit (or from a vanishing formula
  // denominator) before a refusal is raised.
  double pole_guard = 1e-6;
  // Appendix-style periodic extension of the n = 2 hyperbolic functions.
  bool extended = false;

  void validate() const {
    if (!(quad_abs_tol > 0 && newton_tol > 0 && ode_rel_tol > 0 && ode_min_step > 0))
      throw std::invalid_argument("EvalConfig: tolerances must be strictly positive");
    if (!(pole_guard > 0)) throw std::invalid_argument("EvalConfig: pole_guard must be > 0");
    if (quad_max_depth < 1 || newton_max_iter < 1)
      throw std::invalid_argument("EvalConfig: iteration budgets must be >= 1");
  }

  bool operator==(const EvalConfig&) const = default;
};

}  // namespace leaf
