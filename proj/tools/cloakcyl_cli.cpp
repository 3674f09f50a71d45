// cloakcyl: sweeps, patterns, moments, optima, figure datasets and the
// invariant suite for the coated-cylinder cloak.
//
// Exit status: 0 success, 1 solver failure, 2 argument error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cloakcyl/sweep_opt.hpp"
#include "cloakcyl/validation.hpp"

using namespace cloak;

namespace {

constexpr int kArgError = 2;
constexpr int kSolverError = 1;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  double g = 0.05;
  double a = 0.08;
  bool si = false;
  double eps = 60.0;
  double f0 = kReferenceFrequency;
  std::string var = "freq";
  double from = 0.8;
  double to = 1.2;
  int steps = 400;
  double freq_ratio = 1.0;
  std::string model = "both";
  int angles = kDefaultPatternAngles;
  std::string target = "freq";
  std::string figure;
  int threads = 0;
  std::string out;
  std::string format = "csv";
};

StudySetup setup_from(const RunConfig& cfg) {
  if (!(cfg.f0 > 0.0)) throw UsageError("--f0 must be positive");
  StudySetup s;
  const double scale = cfg.si ? free_space_wavelength(cfg.f0) : 1.0;
  s.g_over_lambda = cfg.g / scale;
  s.a_over_lambda = cfg.a / scale;
  s.eps_r = cfg.eps;
  s.f0 = cfg.f0;
  s.frequency_ratio = cfg.freq_ratio;
  try {
    s.geometry().validate();
    s.excitation_at(cfg.freq_ratio).validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return s;
}

void echo_config(Table& t, const std::string& command, const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> head = {
      {"command", command},
      {"g", format_number(cfg.g)},
      {"a", format_number(cfg.a)},
      {"units", cfg.si ? "m" : "lambda0"},
      {"eps", format_number(cfg.eps)},
      {"f0", format_number(cfg.f0)},
  };
  auto add = [&](const char* k, std::string v) { head.emplace_back(k, std::move(v)); };
  if (command == "sweep") {
    add("var", cfg.var);
    add("from", format_number(cfg.from));
    add("to", format_number(cfg.to));
    add("steps", std::to_string(cfg.steps));
    add("model", cfg.model);
    if (cfg.var == "eps") add("freq-ratio", format_number(cfg.freq_ratio));
  } else if (command == "pattern") {
    add("freq-ratio", format_number(cfg.freq_ratio));
    add("model", cfg.model);
    add("angles", std::to_string(cfg.angles));
  } else if (command == "moments") {
    add("from", format_number(cfg.from));
    add("to", format_number(cfg.to));
    add("steps", std::to_string(cfg.steps));
  } else if (command == "optimize") {
    add("target", cfg.target);
    add("from", format_number(cfg.from));
    add("to", format_number(cfg.to));
    add("steps", std::to_string(cfg.steps));
    if (cfg.target == "eps") add("freq-ratio", format_number(cfg.freq_ratio));
  } else if (command == "figure") {
    add("figure", cfg.figure);
    add("steps", std::to_string(cfg.steps));
    add("angles", std::to_string(cfg.angles));
  }
  for (auto& kv : t.meta) {
    const bool seen = std::any_of(head.begin(), head.end(),
                                  [&](const auto& h) { return h.first == kv.first; });
    if (!seen) head.push_back(std::move(kv));
  }
  t.meta = std::move(head);
}

void emit(const Table& t, const RunConfig& cfg) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw UsageError("cannot open " + cfg.out + " for writing");
    out = &file;
  }
  if (cfg.format == "json") {
    write_json(*out, t);
  } else {
    write_csv(*out, t);
  }
}

SweepModel parse_model(const std::string& m) {
  if (m == "exact") return SweepModel::exact;
  if (m == "moments") return SweepModel::moments;
  return SweepModel::both;
}

int cmd_sweep(const RunConfig& cfg) {
  SweepSpec spec;
  spec.variable = cfg.var == "eps" ? SweepVariable::eps_r : SweepVariable::frequency;
  spec.lo = cfg.from;
  spec.hi = cfg.to;
  spec.n_points = cfg.steps;
  spec.setup = setup_from(cfg);
  spec.model = parse_model(cfg.model);
  spec.threads = cfg.threads;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const SweepResult res = run_sweep(spec);
  Table t = sweep_table(spec, res);
  echo_config(t, "sweep", cfg);
  emit(t, cfg);
  if (!res.all_ok()) {
    std::cerr << "cloakcyl: some sweep points failed; see the status column\n";
    return kSolverError;
  }
  return 0;
}

int cmd_pattern(const RunConfig& cfg) {
  const StudySetup setup = setup_from(cfg);
  if (cfg.angles < 8) throw UsageError("--angles must be at least 8");
  if (!(cfg.freq_ratio > 0.0)) throw UsageError("--freq-ratio must be positive");
  Table t;
  t.columns = {"phi"};
  std::vector<std::vector<double>> series;
  auto add = [&](Model model) {
    const double f_opt = optimal_frequency_ratio(setup, model);
    const double ratio = cfg.freq_ratio * f_opt;
    t.add_meta(std::string(model == Model::exact ? "f_opt" : "f_opt_moments") + "_over_f0",
               format_number(f_opt));
    const Excitation exc = setup.excitation_at(ratio);
    const ModalSolution sol = solve_modes(setup.geometry(), exc);
    const ModalSolution ref = bare_reference(setup.geometry().g, exc);
    const FarFieldPattern p =
        model == Model::exact
            ? pattern_exact(sol, ref, cfg.angles)
            : pattern_moments(dipole_moments(sol), dipole_moments(ref), exc.k0(), cfg.angles);
    t.columns.push_back(std::string(to_string(model)));
    series.push_back(p.ratios());
  };
  if (cfg.model != "moments") add(Model::exact);
  if (cfg.model != "exact") add(Model::moments);
  for (int i = 0; i < cfg.angles; ++i) {
    std::vector<Cell> row{2.0 * std::numbers::pi * i / cfg.angles};
    for (const auto& s : series) row.emplace_back(s[i]);
    t.rows.push_back(std::move(row));
  }
  echo_config(t, "pattern", cfg);
  emit(t, cfg);
  return 0;
}

int cmd_moments(const RunConfig& cfg) {
  SweepSpec spec;
  spec.variable = SweepVariable::frequency;
  spec.lo = cfg.from;
  spec.hi = cfg.to;
  spec.n_points = cfg.steps;
  spec.setup = setup_from(cfg);
  spec.model = SweepModel::moments;
  spec.threads = cfg.threads;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const SweepResult res = run_sweep(spec);
  Table t;
  t.columns = {"f_over_f0", "abs_cpz", "abs_my", "re_cpz", "im_cpz", "re_my", "im_my", "status"};
  for (const SweepPoint& p : res.points) {
    t.rows.push_back({p.x, std::abs(p.cp_z), std::abs(p.m_y), p.cp_z.real(), p.cp_z.imag(),
                      p.m_y.real(), p.m_y.imag(), p.ok ? std::string("ok") : "error: " + p.error});
  }
  echo_config(t, "moments", cfg);
  emit(t, cfg);
  return res.all_ok() ? 0 : kSolverError;
}

int cmd_optimize(const RunConfig& cfg) {
  const StudySetup setup = setup_from(cfg);
  if (!(cfg.from < cfg.to) || cfg.steps < 3) throw UsageError("optimize needs from < to and steps >= 3");
  Table t;
  t.columns = {"model", cfg.target == "eps" ? "eps_opt" : "f_opt_over_f0"};
  for (Model m : {Model::exact, Model::moments}) {
    const double x = cfg.target == "eps"
                         ? optimal_permittivity(setup, m, cfg.from, cfg.to, cfg.steps)
                         : optimal_frequency_ratio(setup, m, cfg.from, cfg.to, cfg.steps);
    t.rows.push_back({std::string(to_string(m)), x});
  }
  echo_config(t, "optimize", cfg);
  emit(t, cfg);
  return 0;
}

int cmd_figure(const RunConfig& cfg) {
  const auto id = parse_figure_id(cfg.figure);
  if (!id) throw UsageError("unknown figure id '" + cfg.figure + "'");
  if (cfg.steps < 3 || cfg.angles < 8) throw UsageError("figure needs steps >= 3 and angles >= 8");
  FigureOptions opts;
  opts.setup = setup_from(cfg);
  opts.n_points = cfg.steps;
  opts.n_angles = cfg.angles;
  Table t = figure_dataset(*id, opts);
  echo_config(t, "figure", cfg);
  emit(t, cfg);
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  const std::vector<CheckResult> results = run_validation(setup_from(cfg));
  for (const CheckResult& r : results) {
    const char* tag = r.passed ? "PASS" : (r.advisory ? "WARN" : "FAIL");
    std::printf("%s %s: %s\n", tag, r.name.c_str(), r.detail.c_str());
  }
  return all_passed(results) ? 0 : kSolverError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coated-cylinder cloak: modal solution, dipole moments and cloaking sweeps"};
  app.set_config("--config", "", "flat key = value file mirroring the long flags");
  app.require_subcommand(1);
  RunConfig cfg;
  const auto positive = CLI::PositiveNumber;
  app.add_option("--g", cfg.g, "PEC core radius (lambda0 units unless --si)")->check(positive);
  app.add_option("--a", cfg.a, "cladding outer radius (lambda0 units unless --si)")->check(positive);
  app.add_flag("--si", cfg.si, "read --g and --a in metres");
  app.add_option("--eps", cfg.eps, "cladding relative permittivity")->check(CLI::Range(1.0, 1e6));
  app.add_option("--f0", cfg.f0, "reference frequency [Hz]")->check(positive);
  app.add_option("--var", cfg.var, "sweep variable")->check(CLI::IsMember({"eps", "freq"}));
  app.add_option("--from", cfg.from, "range start (eps_r or f/f0)");
  app.add_option("--to", cfg.to, "range end (eps_r or f/f0)");
  app.add_option("--steps", cfg.steps, "grid points");
  app.add_option("--freq-ratio", cfg.freq_ratio,
                 "f/f0 for eps sweeps; f/f_opt of each model for patterns");
  app.add_option("--model", cfg.model)->check(CLI::IsMember({"exact", "moments", "both"}));
  app.add_option("--angles", cfg.angles, "pattern samples over [0, 2 pi)");
  app.add_option("--target", cfg.target, "optimize over")->check(CLI::IsMember({"freq", "eps"}));
  app.add_option("--threads", cfg.threads, "worker threads, 0 for all cores")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", cfg.out, "output file (stdout if omitted)");
  app.add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  std::string command;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->callback([&command, name] { command = name; });
    return s;
  };
  sub("sweep", "sweep eps_r or f/f0 and tabulate every observable");
  sub("pattern", "normalised far-field pattern");
  sub("moments", "dipole moments against f/f0");
  sub("optimize", "cloaking frequency or permittivity of both models");
  sub("figure", "dataset of a standard study figure")
      ->add_option("id", cfg.figure, "fig2a fig2b fig3 fig4 fig5 fig6 fig7 fig8")
      ->required();
  sub("validate", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kArgError;
  }
  // range defaults follow the command unless given explicitly
  const bool eps_range = (command == "sweep" && cfg.var == "eps") ||
                         (command == "optimize" && cfg.target == "eps");
  if (eps_range) {
    if (app.get_option("--from")->count() == 0) cfg.from = 1.0;
    if (app.get_option("--to")->count() == 0) cfg.to = 120.0;
  }

  try {
    if (command == "sweep") return cmd_sweep(cfg);
    if (command == "pattern") return cmd_pattern(cfg);
    if (command == "moments") return cmd_moments(cfg);
    if (command == "optimize") return cmd_optimize(cfg);
    if (command == "figure") return cmd_figure(cfg);
    return cmd_validate(cfg);
  } catch (const UsageError& e) {
    std::cerr << "cloakcyl: " << e.what() << '\n';
    return kArgError;
  } catch (const std::exception& e) {
    std::cerr << "cloakcyl: " << e.what() << '\n';
    return kSolverError;
  }
}
