#pragma once

// Test-side oracles, independent of the library's quadrature, root finding
// and adaptive ODE code.

#include <cmath>
#include <cstdlib>
#include <string_view>

#include "leaf/config.hpp"

namespace leaf::testing {

// Fixed-step classical RK4 for r'' = sign * n * r^(2n-1), started at l = 0.
// The last step is shortened to land exactly on l.
struct Rk4Result {
  double r;
  double v;
};

inline Rk4Result rk4_leaf(int sign, int n, double r0, double v0, double l, double h = 1e-5) {
  auto accel = [=](double r) { return sign * n * std::pow(r, 2 * n - 1); };
  double r = r0, v = v0;
  const double dir = l < 0.0 ? -1.0 : 1.0;
  const double span = std::abs(l);
  const long steps = static_cast<long>(std::ceil(span / h));
  for (long i = 0; i < steps; ++i) {
    const double dt = dir * (i + 1 == steps ? span - h * static_cast<double>(steps - 1) : h);
    const double k1r = v, k1v = accel(r);
    const double k2r = v + 0.5 * dt * k1v, k2v = accel(r + 0.5 * dt * k1r);
    const double k3r = v + 0.5 * dt * k2v, k3v = accel(r + 0.5 * dt * k2r);
    const double k4r = v + dt * k3v, k4v = accel(r + dt * k3r);
    r += dt / 6.0 * (k1r + 2 * k2r + 2 * k3r + k4r);
    v += dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
  }
  return {r, v};
}

inline Rk4Result rk4_oracle(FunctionKind kind, int n, double l, double h = 1e-5) {
  const bool sine_like = kind == FunctionKind::Sleaf || kind == FunctionKind::Sleafh;
  return rk4_leaf(is_hyperbolic(kind) ? 1 : -1, n, sine_like ? 0.0 : 1.0, sine_like ? 1.0 : 0.0, l, h);
}

// One printed row: the argument and the cell texts in column order
// f_1, c_1, f_2, c_2, f_3, c_3.
struct PrintedRow {
  double l;
  const char* cells[6];
};

#include "data/printed_tables.inc"
#include "data/reference_tables.inc"

inline bool is_dash(const char* cell) { return std::string_view(cell) == "-"; }

inline double parse_cell(const char* cell) { return std::strtod(cell, nullptr); }

// Column c of the tables -> (kind, basis).
inline FunctionKind column_kind(int c, bool hyperbolic) {
  const bool sine = c % 2 == 0;
  if (hyperbolic) return sine ? FunctionKind::Sleafh : FunctionKind::Cleafh;
  return sine ? FunctionKind::Sleaf : FunctionKind::Cleaf;
}
inline int column_basis(int c) { return c / 2 + 1; }

}  // namespace leaf::testing
