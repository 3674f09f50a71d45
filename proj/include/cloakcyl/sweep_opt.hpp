#pragma once

// Parameter sweeps over eps_r or frequency, cloaking-point search, and the
// datasets behind the standard study figures.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloakcyl/mode_match.hpp"
#include "cloakcyl/moments.hpp"
#include "cloakcyl/observables.hpp"
#include "cloakcyl/table.hpp"

namespace cloak {

/// Fixed parameters of the study: geometry, permittivity and frequencies.
struct StudySetup {
  double g_over_lambda = 0.05;
  double a_over_lambda = 0.08;
  double eps_r = 60.0;
  double f0 = kReferenceFrequency;  ///< reference frequency; lengths scale with c/f0
  double frequency_ratio = 1.0;     ///< operating f/f0 for permittivity sweeps

  Geometry geometry() const { return geometry_with(eps_r); }
  Geometry geometry_with(double eps) const;
  Excitation excitation_at(double ratio) const { return {ratio * f0}; }
};

enum class SweepVariable { eps_r, frequency };
enum class SweepModel { exact, moments, both };

std::string_view to_string(SweepVariable v);
std::string_view to_string(SweepModel m);

struct SweepSpec {
  SweepVariable variable = SweepVariable::frequency;
  double lo = 0.8;  ///< eps_r, or f/f0 for frequency sweeps
  double hi = 1.2;
  int n_points = 400;
  StudySetup setup;
  SweepModel model = SweepModel::both;
  int threads = 0;  ///< 0 selects std::thread::hardware_concurrency()

  /// Throws std::invalid_argument unless lo < hi and n_points >= 3.
  void validate() const;
  double x_at(int i) const;
};

struct SweepPoint {
  double x = 0.0;
  bool ok = false;
  std::string error;  ///< set when ok is false
  double sigma_norm = 0.0;
  double sigma_norm_moments = 0.0;
  Complex cp_z;
  Complex m_y;
  Complex forward_exact;
  Complex forward_moments;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::optional<double> argmin_exact;
  std::optional<double> argmin_moments;

  bool all_ok() const;
};

/// Everything observable at one (eps_r, frequency) pair.
SweepPoint evaluate_point(const Geometry& geom, const Excitation& exc);

/// Evaluate every grid point (in parallel), then refine the minimum of each
/// requested model in its lowest-x basin. Failed points carry an error and do
/// not abort the sweep.
SweepResult run_sweep(const SweepSpec& spec);

struct Bracket {
  double lo, mid, hi;
};

/// Golden-section search. Requires lo < mid < hi with f(mid) below both ends.
double refine_minimum(const std::function<double(double)>& objective, Bracket bracket,
                      double tol);

/// Index of the first interior grid point that is a strict local minimum, or
/// the global minimum's index when none exists. Non-finite values are skipped.
std::optional<std::size_t> lowest_basin(const std::vector<double>& values);

/// sigma for one model at a given geometry and frequency.
double sigma_at(Model model, const Geometry& geom, const Excitation& exc);

/// Optimal f/f0 of the given model for a frequency sweep over [lo, hi].
double optimal_frequency_ratio(const StudySetup& setup, Model model, double lo = 0.8,
                               double hi = 1.2, int n_points = 400);

/// Optimal eps_r of the given model at setup.frequency_ratio, over [lo, hi].
double optimal_permittivity(const StudySetup& setup, Model model, double lo = 1.0,
                            double hi = 120.0, int n_points = 400);

/// Relative refinement tolerance, as a fraction of the sweep span.
inline constexpr double kRefineFraction = 1e-5;

enum class FigureId { fig2a, fig2b, fig3, fig4, fig5, fig6, fig7, fig8 };

std::optional<FigureId> parse_figure_id(std::string_view name);
std::string_view to_string(FigureId id);

struct FigureOptions {
  StudySetup setup;
  int n_points = 400;
  int n_angles = kDefaultPatternAngles;
};

/// Table with exactly the series plotted in the named figure.
Table figure_dataset(FigureId id, const FigureOptions& opts = {});

/// Sweep result in the CSV column contract of the command-line tool.
Table sweep_table(const SweepSpec& spec, const SweepResult& result);

}  // namespace cloak
