#include "cloakcyl/sweep_opt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cloak {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct AxisPoint {
  Geometry geometry;
  Excitation excitation;
};

AxisPoint axis_point(const SweepSpec& spec, double x) {
  const StudySetup& s = spec.setup;
  if (spec.variable == SweepVariable::eps_r) {
    return {s.geometry_with(x), s.excitation_at(s.frequency_ratio)};
  }
  return {s.geometry(), s.excitation_at(x)};
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  }
}

// Grid scan followed by golden-section refinement in the lowest basin.
std::optional<double> locate_minimum(const std::vector<double>& xs,
                                     const std::vector<double>& values,
                                     const std::function<double(double)>& objective) {
  const auto idx = lowest_basin(values);
  if (!idx) return std::nullopt;
  const std::size_t i = *idx;
  if (i == 0 || i + 1 == xs.size()) return xs[i];
  const double tol = kRefineFraction * (xs.back() - xs.front());
  try {
    return refine_minimum(objective, {xs[i - 1], xs[i], xs[i + 1]}, tol);
  } catch (const std::exception&) {
    return xs[i];
  }
}

std::string ratio_label(const char* prefix, double r) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << prefix << r;
  return os.str();
}

}  // namespace

Geometry StudySetup::geometry_with(double eps) const {
  return Geometry::in_wavelengths(g_over_lambda, a_over_lambda, eps, f0);
}

std::string_view to_string(SweepVariable v) {
  return v == SweepVariable::eps_r ? "eps" : "freq";
}

std::string_view to_string(SweepModel m) {
  switch (m) {
    case SweepModel::exact: return "exact";
    case SweepModel::moments: return "moments";
    case SweepModel::both: return "both";
  }
  return "both";
}

void SweepSpec::validate() const {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw std::invalid_argument("sweep range requires lo < hi");
  }
  if (n_points < 3) throw std::invalid_argument("sweep requires at least 3 points");
  if (variable == SweepVariable::eps_r && lo < 1.0) {
    throw std::invalid_argument("permittivity sweep requires eps_r >= 1");
  }
  if (variable == SweepVariable::frequency && lo <= 0.0) {
    throw std::invalid_argument("frequency sweep requires positive frequencies");
  }
  setup.geometry().validate();
  setup.excitation_at(setup.frequency_ratio).validate();
}

double SweepSpec::x_at(int i) const { return lo + (hi - lo) * i / (n_points - 1); }

bool SweepResult::all_ok() const {
  return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.ok; });
}

SweepPoint evaluate_point(const Geometry& geom, const Excitation& exc) {
  SweepPoint p;
  try {
    const ModalSolution sol = solve_modes(geom, exc);
    const ModalSolution ref = bare_reference(geom.g, exc);
    const DipoleMoments mom = dipole_moments(sol);
    const DipoleMoments ref_mom = dipole_moments(ref);
    const ForwardAmplitudes fwd = forward_amplitudes(sol, mom);
    p.sigma_norm = sigma_norm(sol, ref);
    p.sigma_norm_moments = sigma_norm_moments(mom, ref_mom);
    p.cp_z = mom.cp_z;
    p.m_y = mom.m_y;
    p.forward_exact = fwd.exact;
    p.forward_moments = fwd.moments;
    p.ok = true;
  } catch (const std::exception& e) {
    p.ok = false;
    p.error = e.what();
    p.sigma_norm = p.sigma_norm_moments = kNaN;
    p.cp_z = p.m_y = p.forward_exact = p.forward_moments = Complex{kNaN, kNaN};
  }
  return p;
}

double sigma_at(Model model, const Geometry& geom, const Excitation& exc) {
  const ModalSolution sol = solve_modes(geom, exc);
  const ModalSolution ref = bare_reference(geom.g, exc);
  if (model == Model::exact) return sigma_norm(sol, ref);
  return sigma_norm_moments(dipole_moments(sol), dipole_moments(ref));
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  result.points.resize(spec.n_points);
  parallel_for(spec.n_points, spec.threads, [&](int i) {
    const double x = spec.x_at(i);
    const AxisPoint ap = axis_point(spec, x);
    SweepPoint p = evaluate_point(ap.geometry, ap.excitation);
    p.x = x;
    result.points[i] = std::move(p);
  });

  std::vector<double> xs, exact, moments;
  for (const SweepPoint& p : result.points) {
    xs.push_back(p.x);
    exact.push_back(p.ok ? p.sigma_norm : kNaN);
    moments.push_back(p.ok ? p.sigma_norm_moments : kNaN);
  }
  auto objective = [&spec](Model m) {
    return [&spec, m](double x) {
      const AxisPoint ap = axis_point(spec, x);
      return sigma_at(m, ap.geometry, ap.excitation);
    };
  };
  if (spec.model != SweepModel::moments) {
    result.argmin_exact = locate_minimum(xs, exact, objective(Model::exact));
  }
  if (spec.model != SweepModel::exact) {
    result.argmin_moments = locate_minimum(xs, moments, objective(Model::moments));
  }
  return result;
}

double refine_minimum(const std::function<double(double)>& objective, Bracket bracket,
                      double tol) {
  if (!(bracket.lo < bracket.mid && bracket.mid < bracket.hi)) {
    throw std::invalid_argument("bracket requires lo < mid < hi");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double f_mid = objective(bracket.mid);
  if (!(f_mid < objective(bracket.lo) && f_mid < objective(bracket.hi))) {
    throw std::invalid_argument("bracket does not enclose a minimum");
  }

  constexpr double kInvPhi = 0.6180339887498949;  // 1/golden ratio
  double a = bracket.lo;
  double b = bracket.hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = objective(x2);
    }
  }
  return 0.5 * (a + b);
}

std::optional<std::size_t> lowest_basin(const std::vector<double>& values) {
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    const double l = values[i - 1], c = values[i], r = values[i + 1];
    if (std::isfinite(l) && std::isfinite(c) && std::isfinite(r) && c < l && c < r) return i;
  }
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isfinite(values[i]) && (!best || values[i] < values[*best])) best = i;
  }
  return best;
}

double optimal_frequency_ratio(const StudySetup& setup, Model model, double lo, double hi,
                               int n_points) {
  SweepSpec spec;
  spec.variable = SweepVariable::frequency;
  spec.lo = lo;
  spec.hi = hi;
  spec.n_points = n_points;
  spec.setup = setup;
  spec.model = model == Model::exact ? SweepModel::exact : SweepModel::moments;
  const SweepResult r = run_sweep(spec);
  const auto& best = model == Model::exact ? r.argmin_exact : r.argmin_moments;
  if (!best) throw std::runtime_error("frequency sweep produced no valid points");
  return *best;
}

double optimal_permittivity(const StudySetup& setup, Model model, double lo, double hi,
                            int n_points) {
  SweepSpec spec;
  spec.variable = SweepVariable::eps_r;
  spec.lo = lo;
  spec.hi = hi;
  spec.n_points = n_points;
  spec.setup = setup;
  spec.model = model == Model::exact ? SweepModel::exact : SweepModel::moments;
  const SweepResult r = run_sweep(spec);
  const auto& best = model == Model::exact ? r.argmin_exact : r.argmin_moments;
  if (!best) throw std::runtime_error("permittivity sweep produced no valid points");
  return *best;
}

std::optional<FigureId> parse_figure_id(std::string_view name) {
  static constexpr std::pair<std::string_view, FigureId> names[] = {
      {"fig2a", FigureId::fig2a}, {"fig2b", FigureId::fig2b}, {"fig3", FigureId::fig3},
      {"fig4", FigureId::fig4},   {"fig5", FigureId::fig5},   {"fig6", FigureId::fig6},
      {"fig7", FigureId::fig7},   {"fig8", FigureId::fig8}};
  for (const auto& [n, id] : names) {
    if (n == name) return id;
  }
  return std::nullopt;
}

std::string_view to_string(FigureId id) {
  switch (id) {
    case FigureId::fig2a: return "fig2a";
    case FigureId::fig2b: return "fig2b";
    case FigureId::fig3: return "fig3";
    case FigureId::fig4: return "fig4";
    case FigureId::fig5: return "fig5";
    case FigureId::fig6: return "fig6";
    case FigureId::fig7: return "fig7";
    case FigureId::fig8: return "fig8";
  }
  return "unknown";
}

Table figure_dataset(FigureId id, const FigureOptions& opts) {
  const StudySetup& setup = opts.setup;
  Table t;
  t.add_meta("figure", std::string(to_string(id)));
  t.add_meta("g_over_lambda0", format_number(setup.g_over_lambda));
  t.add_meta("a_over_lambda0", format_number(setup.a_over_lambda));
  t.add_meta("f0", format_number(setup.f0));

  auto point_at = [&](double f_ratio) {
    return evaluate_point(setup.geometry(), setup.excitation_at(f_ratio));
  };
  auto require_ok = [](const SweepPoint& p) {
    if (!p.ok) throw std::runtime_error("figure point failed: " + p.error);
    return p;
  };

  switch (id) {
    case FigureId::fig2a: {
      t.add_meta("f_over_f0", format_number(setup.frequency_ratio));
      t.columns = {"eps_r", "sigma_norm"};
      for (double eps : linspace(1.0, 120.0, opts.n_points)) {
        const SweepPoint p = require_ok(
            evaluate_point(setup.geometry_with(eps), setup.excitation_at(setup.frequency_ratio)));
        t.rows.push_back({eps, p.sigma_norm});
      }
      return t;
    }
    case FigureId::fig2b:
    case FigureId::fig4: {
      const double f_opt = optimal_frequency_ratio(setup, Model::exact);
      t.add_meta("eps_r", format_number(setup.eps_r));
      t.add_meta("f_opt_over_f0", format_number(f_opt));
      if (id == FigureId::fig2b) {
        t.columns = {"f_over_fopt", "f_over_f0", "sigma_norm"};
      } else {
        t.columns = {"f_over_fopt", "f_over_f0", "sigma_norm", "sigma_norm_moments"};
      }
      for (double r : linspace(0.8, 1.2, opts.n_points)) {
        const SweepPoint p = require_ok(point_at(r * f_opt));
        if (id == FigureId::fig2b) {
          t.rows.push_back({r, r * f_opt, p.sigma_norm});
        } else {
          t.rows.push_back({r, r * f_opt, p.sigma_norm, p.sigma_norm_moments});
        }
      }
      return t;
    }
    case FigureId::fig3:
    case FigureId::fig5: {
      const Model model = id == FigureId::fig3 ? Model::exact : Model::moments;
      const double f_opt = optimal_frequency_ratio(setup, model);
      t.add_meta("eps_r", format_number(setup.eps_r));
      t.add_meta(model == Model::exact ? "f_opt_over_f0" : "f_opt_moments_over_f0",
                 format_number(f_opt));
      constexpr double ratios[] = {0.95, 0.98, 1.00, 1.02, 1.05};
      t.columns = {"phi"};
      std::vector<std::vector<double>> series;
      for (double r : ratios) {
        t.columns.push_back(ratio_label("ratio_", r));
        const Excitation exc = setup.excitation_at(r * f_opt);
        const ModalSolution sol = solve_modes(setup.geometry(), exc);
        const ModalSolution ref = bare_reference(setup.geometry().g, exc);
        const FarFieldPattern pat =
            model == Model::exact
                ? pattern_exact(sol, ref, opts.n_angles)
                : pattern_moments(dipole_moments(sol), dipole_moments(ref), exc.k0(),
                                  opts.n_angles);
        series.push_back(pat.ratios());
      }
      const double step = 2.0 * std::numbers::pi / opts.n_angles;
      for (int i = 0; i < opts.n_angles; ++i) {
        std::vector<Cell> row{i * step};
        for (const auto& s : series) row.emplace_back(s[i]);
        t.rows.push_back(std::move(row));
      }
      return t;
    }
    case FigureId::fig6:
    case FigureId::fig7:
    case FigureId::fig8: {
      const double f_opt = optimal_frequency_ratio(setup, Model::moments);
      t.add_meta("eps_r", format_number(setup.eps_r));
      t.add_meta("f_opt_moments_over_f0", format_number(f_opt));
      if (id == FigureId::fig6) {
        t.columns = {"f_over_fopt_moments", "abs_cpz", "abs_my"};
      } else if (id == FigureId::fig7) {
        t.columns = {"f_over_fopt_moments", "re_cpz", "re_neg_my", "im_cpz", "im_neg_my"};
      } else {
        t.columns = {"f_over_fopt_moments", "re_F0_exact", "im_F0_exact", "re_F0_moments",
                     "im_F0_moments"};
      }
      for (double r : linspace(0.5, 1.2, opts.n_points)) {
        const SweepPoint p = require_ok(point_at(r * f_opt));
        if (id == FigureId::fig6) {
          t.rows.push_back({r, std::abs(p.cp_z), std::abs(p.m_y)});
        } else if (id == FigureId::fig7) {
          t.rows.push_back({r, p.cp_z.real(), -p.m_y.real(), p.cp_z.imag(), -p.m_y.imag()});
        } else {
          t.rows.push_back({r, p.forward_exact.real(), p.forward_exact.imag(),
                            p.forward_moments.real(), p.forward_moments.imag()});
        }
      }
      return t;
    }
  }
  throw std::invalid_argument("unknown figure id");
}

Table sweep_table(const SweepSpec& spec, const SweepResult& result) {
  Table t;
  t.columns = {"x",         "sigma_norm",  "sigma_norm_moments", "re_cpz",
               "im_cpz",    "re_my",       "im_my",              "re_F0_exact",
               "im_F0_exact", "re_F0_moments", "im_F0_moments",  "status"};
  t.add_meta("var", std::string(to_string(spec.variable)));
  t.add_meta("x", spec.variable == SweepVariable::eps_r ? "eps_r" : "f/f0");
  if (result.argmin_exact) t.add_meta("argmin_exact", format_number(*result.argmin_exact));
  if (result.argmin_moments) t.add_meta("argmin_moments", format_number(*result.argmin_moments));
  for (const SweepPoint& p : result.points) {
    t.rows.push_back({p.x, p.sigma_norm, p.sigma_norm_moments, p.cp_z.real(), p.cp_z.imag(),
                      p.m_y.real(), p.m_y.imag(), p.forward_exact.real(), p.forward_exact.imag(),
                      p.forward_moments.real(), p.forward_moments.imag(),
                      p.ok ? std::string("ok") : "error: " + p.error});
  }
  return t;
}

}  // namespace cloak
