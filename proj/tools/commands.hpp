#pragma once

// Subcommands of the leaf CLI. Each returns a process exit code and writes
// CSV to `out`, diagnostics to `err`:
//   0 success, 1 residual failure, 2 usage error, 3 numerical failure.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leaf/config.hpp"

namespace leaf::cli {

enum ExitCode : int { kOk = 0, kResidualFailure = 1, kUsage = 2, kNumerical = 3 };

struct FunctionSpec {
  FunctionKind kind;
  Basis n;
};

// "sleaf2", "cleafh3", ... (name followed by the basis).
std::optional<FunctionSpec> parse_function(std::string_view text);
std::string function_label(const FunctionSpec& f);

struct TableSpec {
  std::vector<FunctionSpec> functions;
  double start = 0.0;
  double stop = 3.0;
  double step = 0.1;
  int decimals = 9;

  // Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

// Fixed-point text with `decimals` digits. glibc's printf rounds the exact
// binary value to nearest, ties to even.
std::string format_fixed(double value, int decimals);

// Header `l,<func1>,...`; cells outside a hyperbolic domain print `-`.
int cmd_table(const TableSpec& spec, std::ostream& out, std::ostream& err, const EvalConfig& cfg = {});

// Header `n,pi_n,zeta_n,eta_n`; the n = 1 limits print `NA`.
int cmd_constants(int n_max, std::ostream& out, std::ostream& err);

// One CSV line per matching formula family.
int cmd_check(const std::string& suite, std::size_t samples, std::uint64_t seed, double tol,
              std::ostream& out, std::ostream& err, const EvalConfig& cfg = {});

// Long-format CSV `series,l,r`; gaps (poles, out-of-domain points) print `-`.
int cmd_plot_data(const std::string& figure, std::ostream& out, std::ostream& err,
                  const EvalConfig& cfg = {});

std::vector<std::string> figure_ids();

}  // namespace leaf::cli
