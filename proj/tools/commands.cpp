#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>

#include "leaf/leaf.hpp"

namespace leaf::cli {

namespace {

constexpr FunctionKind kKinds[] = {FunctionKind::Sleafh, FunctionKind::Cleafh, FunctionKind::Sleaf,
                                   FunctionKind::Cleaf};

std::string format_general(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_sci(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", value);
  return buf;
}

// Grid start, start + step, ..., up to stop (inclusive within rounding).
std::vector<double> grid(double start, double stop, double step) {
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(count) + 1);
  for (long i = 0; i <= count; ++i) points.push_back(start + static_cast<double>(i) * step);
  return points;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> points;
  for (int i = 0; i < count; ++i) points.push_back(lo + (hi - lo) * i / (count - 1));
  return points;
}

}  // namespace

std::optional<FunctionSpec> parse_function(std::string_view text) {
  // Hyperbolic names first: "sleaf" is a prefix of "sleafh".
  for (FunctionKind kind : kKinds) {
    const std::string_view stem = name(kind);
    if (text.substr(0, stem.size()) != stem) continue;
    const std::string_view rest = text.substr(stem.size());
    if (rest.empty() || rest.size() > 2) return std::nullopt;
    int n = 0;
    for (char ch : rest) {
      if (ch < '0' || ch > '9') return std::nullopt;
      n = 10 * n + (ch - '0');
    }
    if (n < 1) return std::nullopt;
    return FunctionSpec{kind, Basis(n)};
  }
  return std::nullopt;
}

std::string function_label(const FunctionSpec& f) {
  return std::string(name(f.kind)) + std::to_string(f.n.value());
}

void TableSpec::validate() const {
  if (functions.empty()) throw std::invalid_argument("table: at least one function is required");
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
    throw std::invalid_argument("table: start, stop and step must be finite");
  if (!(step > 0.0)) throw std::invalid_argument("table: step must be > 0");
  if (!(start <= stop)) throw std::invalid_argument("table: start must not exceed stop");
  if (decimals < 1 || decimals > 15) throw std::invalid_argument("table: decimals must lie in [1, 15]");
}

std::string format_fixed(double value, int decimals) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

int cmd_table(const TableSpec& spec, std::ostream& out, std::ostream& err, const EvalConfig& cfg) {
  try {
    spec.validate();
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  try {
    std::string text = "l";
    for (const FunctionSpec& f : spec.functions) text += "," + function_label(f);
    text += '\n';
    for (double l : grid(spec.start, spec.stop, spec.step)) {
      text += format_general(l);
      for (const FunctionSpec& f : spec.functions) {
        text += ',';
        try {
          text += format_fixed(evaluate(f.kind, f.n, l, cfg).value, spec.decimals);
        } catch (const PreconditionError&) {
          text += '-';
        }
      }
      text += '\n';
    }
    out << text;
    return kOk;
  } catch (const NonConvergence& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

int cmd_constants(int n_max, std::ostream& out, std::ostream& err) {
  if (n_max < 1) {
    err << "error: n_max must be >= 1\n";
    return kUsage;
  }
  try {
    std::string text = "n,pi_n,zeta_n,eta_n\n";
    auto optional_cell = [](const std::optional<double>& v) {
      return v ? format_fixed(*v, 15) : std::string("NA");
    };
    for (int n = 1; n <= n_max; ++n) {
      const ConstantsSet c = constants(Basis(n));
      text += std::to_string(n) + "," + format_fixed(c.pi_n, 15) + "," + optional_cell(c.zeta_n) +
              "," + optional_cell(c.eta_n) + "\n";
    }
    out << text;
    return kOk;
  } catch (const NonConvergence& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

int cmd_check(const std::string& suite, std::size_t samples, std::uint64_t seed, double tol,
              std::ostream& out, std::ostream& err, const EvalConfig& cfg) {
  if (samples == 0 || !(tol >= 0.0)) {
    err << "error: samples must be >= 1 and tol >= 0\n";
    return kUsage;
  }
  const auto families = match_families(suite);
  if (families.empty()) {
    err << "error: no formula matches '" << suite << "'\n";
    return kUsage;
  }
  try {
    bool all_pass = true;
    std::string text = "formula_id,samples,max_residual,mean_residual,worst_inputs,seed,cases,status\n";
    for (const FormulaFamily* family : families) {
      const CheckReport rep = run_check(*family, samples, seed, cfg);
      const bool pass = rep.max_residual <= tol;
      all_pass = all_pass && pass;
      std::string inputs, cases;
      for (double x : rep.worst_inputs) inputs += (inputs.empty() ? "" : ";") + format_general(x);
      for (const auto& [id, count] : rep.case_counts)
        cases += (cases.empty() ? "" : ";") + id + ":" + std::to_string(count);
      text += rep.formula_id + "," + std::to_string(rep.samples) + "," + format_sci(rep.max_residual) +
              "," + format_sci(rep.mean_residual) + "," + inputs + "," + std::to_string(rep.seed) +
              "," + cases + "," + (pass ? "pass" : "FAIL") + "\n";
    }
    out << text;
    return all_pass ? kOk : kResidualFailure;
  } catch (const NonConvergence& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

// ---------------------------------------------------------------------------
// Figure data
// ---------------------------------------------------------------------------

namespace {

using Point = std::function<double(double)>;

struct Series {
  std::string label;
  Point eval;
};

struct Figure {
  std::vector<double> abscissae;
  std::vector<Series> series;
};

using Addition = FormulaReport (*)(double, double, const EvalConfig&);

std::string shift_label(const std::string& f, const std::string& shift, bool squared) {
  return f + "(l+" + shift + ")" + (squared ? "^2" : "") + " by addition";
}

// Base curve and curves shifted through the addition formula; nothing is
// re-evaluated at the shifted argument.
Figure translation(FunctionKind kind, int n, Addition add, bool squared, std::vector<double> shifts,
                   std::vector<std::string> shift_names, std::vector<double> abscissae,
                   const EvalConfig& cfg) {
  Figure fig;
  fig.abscissae = std::move(abscissae);
  const std::string f = std::string(name(kind)) + std::to_string(n);
  fig.series.push_back({f + "(l)", [=](double l) { return evaluate(kind, Basis(n), l, cfg).value; }});
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    const double s = shifts[i];
    fig.series.push_back({shift_label(f, shift_names[i], squared), [=](double l) { return add(l, s, cfg).rhs; }});
  }
  return fig;
}

Figure phase_scaling(FunctionKind kind, int n, std::vector<double> abscissae, const EvalConfig& cfg) {
  Figure fig;
  fig.abscissae = std::move(abscissae);
  const std::string f = std::string(name(kind)) + std::to_string(n);
  fig.series.push_back({f + "(l)", [=](double l) { return evaluate(kind, Basis(n), l, cfg).value; }});
  fig.series.push_back({f + "(2l) by double-angle",
                        [=](double l) { return double_angle(kind, Basis(n), l, cfg).rhs; }});
  fig.series.push_back({f + "(l/2)^2 by half-angle",
                        [=](double l) { return half_angle_sq(kind, Basis(n), l, cfg).rhs; }});
  return fig;
}

std::optional<Figure> build_figure(const std::string& id, EvalConfig cfg) {
  using K = FunctionKind;
  const double P2 = constants(Basis(2)).pi_n, P3 = constants(Basis(3)).pi_n;
  const double Z2 = *constants(Basis(2)).zeta_n, Z3 = *constants(Basis(3)).zeta_n;
  const double E2 = *constants(Basis(2)).eta_n, E3 = *constants(Basis(3)).eta_n;
  constexpr int kPoints = 401;
  auto quarter_shifts = [](double P) { return std::vector<double>{0.5 * P, P, 1.5 * P}; };
  const std::vector<std::string> quarter_names{"pi/2", "pi", "3pi/2"};
  auto open = [](double limit) { return linspace(-limit, limit, kPoints); };

  if (id == "4.1.4") return translation(K::Sleaf, 2, add_sleaf2, false, quarter_shifts(P2), quarter_names, linspace(-2 * P2, 2 * P2, kPoints), cfg);
  if (id == "4.1.5") return translation(K::Cleaf, 2, add_cleaf2, false, quarter_shifts(P2), quarter_names, linspace(-2 * P2, 2 * P2, kPoints), cfg);
  if (id == "4.1.8") return translation(K::Sleaf, 3, add_sleaf3_sq, true, quarter_shifts(P3), quarter_names, linspace(-2 * P3, 2 * P3, kPoints), cfg);
  if (id == "4.1.9") return translation(K::Cleaf, 3, add_cleaf3_sq, true, quarter_shifts(P3), quarter_names, linspace(-2 * P3, 2 * P3, kPoints), cfg);
  if (id == "4.2.12") return translation(K::Sleafh, 2, add_sleafh2, false, {0.3, 0.6}, {"0.3", "0.6"}, open(Z2), cfg);
  if (id == "4.2.13") return translation(K::Cleafh, 2, add_cleafh2, false, {0.2, 0.4}, {"0.2", "0.4"}, open(E2), cfg);
  if (id == "4.2.16") return translation(K::Sleafh, 3, add_sleafh3_sq, true, {0.2, 0.4}, {"0.2", "0.4"}, open(Z3), cfg);
  if (id == "4.2.17") return translation(K::Cleafh, 3, add_cleafh3_sq, true, {0.1, 0.2}, {"0.1", "0.2"}, open(E3), cfg);

  if (id == "4.1.6") return phase_scaling(K::Sleaf, 2, linspace(0.0, 2 * P2, kPoints), cfg);
  if (id == "4.1.7") return phase_scaling(K::Cleaf, 2, linspace(0.0, 2 * P2, kPoints), cfg);
  if (id == "4.1.10") return phase_scaling(K::Sleaf, 3, linspace(0.0, 2 * P3, kPoints), cfg);
  if (id == "4.1.11") return phase_scaling(K::Cleaf, 3, linspace(0.0, 2 * P3, kPoints), cfg);
  if (id == "4.2.14") return phase_scaling(K::Sleafh, 2, open(Z2), cfg);
  if (id == "4.2.15") return phase_scaling(K::Cleafh, 2, open(E2), cfg);
  if (id == "4.2.18") return phase_scaling(K::Sleafh, 3, open(Z3), cfg);
  if (id == "4.2.19") return phase_scaling(K::Cleafh, 3, open(E3), cfg);

  cfg.extended = true;
  if (id == "H.1") {
    return Figure{linspace(-3 * Z2, 3 * Z2, 601),
                  {{"sleafh2_ext(l)", [=](double l) { return sleafh(Basis(2), l, cfg).value; }}}};
  }
  if (id == "H.2") {
    return Figure{linspace(-6 * E2, 6 * E2, 601),
                  {{"cleafh2_ext(l)", [=](double l) { return cleafh(Basis(2), l, cfg).value; }}}};
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> figure_ids() {
  return {"4.1.4",  "4.1.5",  "4.1.6",  "4.1.7",  "4.1.8",  "4.1.9",  "4.1.10", "4.1.11", "4.2.12", "4.2.13",
          "4.2.14", "4.2.15", "4.2.16", "4.2.17", "4.2.18", "4.2.19", "H.1",    "H.2"};
}

int cmd_plot_data(const std::string& figure, std::ostream& out, std::ostream& err, const EvalConfig& cfg) {
  try {
    const std::optional<Figure> fig = build_figure(figure, cfg);
    if (!fig) {
      err << "error: unknown figure '" << figure << "'\n";
      return kUsage;
    }
    std::string text = "series,l,r\n";
    for (const Series& s : fig->series) {
      for (double l : fig->abscissae) {
        text += '"' + s.label + "\"," + format_general(l) + ",";
        try {
          const double r = s.eval(l);
          text += std::isfinite(r) ? format_general(r) : std::string("-");
        } catch (const PreconditionError&) {
          text += '-';
        }
        text += '\n';
      }
    }
    out << text;
    return kOk;
  } catch (const NonConvergence& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace leaf::cli
