#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

// --func accepts full names ("sleaf2") or bare names combined with --n.
bool collect_functions(const std::vector<std::string>& names, const std::vector<int>& bases,
                       std::vector<leaf::cli::FunctionSpec>& out) {
  for (const std::string& name : names) {
    if (auto full = leaf::cli::parse_function(name)) {
      out.push_back(*full);
      continue;
    }
    if (bases.empty()) return false;
    for (int n : bases) {
      auto spec = leaf::cli::parse_function(name + std::to_string(n));
      if (!spec) return false;
      out.push_back(*spec);
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leaf functions: tables, constants, formula residual checks and figure data"};
  app.require_subcommand(1);
  std::string format = "csv";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv"}));
  bool extended = false;
  app.add_flag("--extended", extended, "Periodic extension of sleafh2/cleafh2 beyond their poles");

  auto* table = app.add_subcommand("table", "Values of leaf functions on a grid");
  std::vector<std::string> funcs;
  std::vector<int> bases;
  leaf::cli::TableSpec spec;
  table->add_option("--func", funcs, "Functions, e.g. sleaf2 or sleaf (with --n)")->delimiter(',');
  table->add_option("--n", bases, "Bases for bare function names")->delimiter(',');
  table->add_option("--start", spec.start);
  table->add_option("--stop", spec.stop);
  table->add_option("--step", spec.step);
  table->add_option("--decimals", spec.decimals);

  auto* consts = app.add_subcommand("constants", "pi_n, zeta_n and eta_n for n = 1..n_max");
  int n_max = 3;
  consts->add_option("--n", n_max, "Largest basis");

  auto* check = app.add_subcommand("check", "Seeded residual suites of the formulas");
  std::string suite = "*";
  std::size_t samples = 1000;
  std::uint64_t seed = 20240229;
  double tol = 1e-9;
  check->add_option("--suite", suite, "Formula id or glob pattern, e.g. 2.2.*");
  check->add_option("--samples", samples);
  check->add_option("--seed", seed);
  check->add_option("--tol", tol);

  auto* plot = app.add_subcommand("plot", "Series data of a figure");
  std::string figure;
  plot->add_option("--figure", figure, "Figure id, e.g. 4.1.6 or H.1")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : leaf::cli::kUsage;
  }

  leaf::EvalConfig cfg;
  cfg.extended = extended;
  if (*table) {
    if (!collect_functions(funcs, bases, spec.functions)) {
      std::cerr << "error: unrecognised function name\n";
      return leaf::cli::kUsage;
    }
    return leaf::cli::cmd_table(spec, std::cout, std::cerr, cfg);
  }
  if (*consts) return leaf::cli::cmd_constants(n_max, std::cout, std::cerr);
  if (*check) return leaf::cli::cmd_check(suite, samples, seed, tol, std::cout, std::cerr, cfg);
  return leaf::cli::cmd_plot_data(figure, std::cout, std::cerr, cfg);
}
