#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cloakcyl/sweep_opt.hpp"

using namespace cloak;

TEST_CASE("golden-section refinement") {
  const double x = refine_minimum([](double t) { return (t - 2.0) * (t - 2.0); }, {0.0, 1.5, 5.0},
                                  1e-8);
  CHECK(std::abs(x - 2.0) <= 1e-8);
  const double v = refine_minimum([](double t) { return std::abs(t - std::numbers::pi); },
                                  {0.0, 3.0, 5.0}, 1e-9);
  CHECK(std::abs(v - std::numbers::pi) <= 1e-9);
  CHECK_THROWS_AS(refine_minimum([](double t) { return t; }, {0.0, 1.0, 2.0}, 1e-8),
                  std::invalid_argument);
  CHECK_THROWS_AS(refine_minimum([](double t) { return t * t; }, {1.0, 0.0, 2.0}, 1e-8),
                  std::invalid_argument);
  CHECK_THROWS_AS(refine_minimum([](double t) { return t * t; }, {-1.0, 0.0, 2.0}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("lowest basin picks the first interior minimum") {
  CHECK(lowest_basin({3.0, 1.0, 2.0, 0.5, 4.0}) == 1u);
  CHECK(lowest_basin({1.0, 2.0, 3.0}) == 0u);
  CHECK(lowest_basin({3.0, NAN, 1.0, 2.0}) == 2u);
  CHECK_FALSE(lowest_basin({NAN, NAN}).has_value());
}

TEST_CASE("sweep specification validation") {
  SweepSpec spec;
  spec.variable = SweepVariable::eps_r;
  spec.lo = 1.0;
  spec.hi = 1.0;
  spec.n_points = 3;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.hi = 120.0;
  spec.n_points = 2;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.n_points = 400;
  CHECK_NOTHROW(spec.validate());
  CHECK(spec.x_at(0) == 1.0);
  CHECK(spec.x_at(399) == 120.0);
  spec.lo = 0.5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("cloaking points of the standard study") {
  const StudySetup setup;
  const double f_exact = optimal_frequency_ratio(setup, Model::exact);
  const double f_moments = optimal_frequency_ratio(setup, Model::moments);
  CHECK(std::abs(f_exact - 0.992) <= 0.002);
  CHECK(f_moments < f_exact);
  const double eps = optimal_permittivity(setup, Model::exact);
  CHECK(eps >= 58.0);
  CHECK(eps <= 62.0);
}

TEST_CASE("refined minimum is stable under grid doubling") {
  const StudySetup setup;
  const double coarse = optimal_frequency_ratio(setup, Model::exact, 0.8, 1.2, 200);
  const double fine = optimal_frequency_ratio(setup, Model::exact, 0.8, 1.2, 400);
  CHECK(std::abs(coarse - fine) < 1e-4);
}

TEST_CASE("sweeps are deterministic across thread counts") {
  SweepSpec spec;
  spec.lo = 0.9;
  spec.hi = 1.1;
  spec.n_points = 23;
  spec.threads = 1;
  const Table one = sweep_table(spec, run_sweep(spec));
  spec.threads = 3;
  const Table three = sweep_table(spec, run_sweep(spec));
  CHECK(same_contents(one, three));
  CHECK(one.rows.size() == 23);
  CHECK(one.columns.front() == "x");
  CHECK(one.columns.back() == "status");
}

TEST_CASE("failed points carry an error marker") {
  SweepSpec spec;
  spec.variable = SweepVariable::eps_r;
  spec.lo = 1.0;
  spec.hi = 60.0;
  spec.n_points = 5;
  spec.setup.a_over_lambda = 30.0;
  spec.setup.g_over_lambda = 0.05;
  const SweepResult res = run_sweep(spec);
  REQUIRE(res.points.size() == 5);
  CHECK_FALSE(res.all_ok());
  const Table t = sweep_table(spec, res);
  const std::string status = std::get<std::string>(t.rows.back()[t.column("status")]);
  CHECK(status.rfind("error", 0) == 0);
  CHECK(std::isnan(t.number(4, "sigma_norm")));
}

TEST_CASE("figure datasets") {
  CHECK(parse_figure_id("fig7") == FigureId::fig7);
  CHECK_FALSE(parse_figure_id("fig9").has_value());
  FigureOptions opts;
  opts.n_points = 40;
  opts.n_angles = 73;
  const Table f2a = figure_dataset(FigureId::fig2a, opts);
  CHECK(f2a.number(0, "eps_r") == 1.0);
  CHECK(f2a.number(0, "sigma_norm") == doctest::Approx(1.0).epsilon(1e-12));
  const Table f3 = figure_dataset(FigureId::fig3, opts);
  CHECK(f3.rows.size() == 73);
  CHECK(f3.columns.front() == "phi");
  const Table f6 = figure_dataset(FigureId::fig6, opts);
  CHECK(f6.rows.size() == 40);
  CHECK_NOTHROW(f6.column("abs_cpz"));
  CHECK_NOTHROW(f6.column("abs_my"));
}

TEST_CASE("moments model tracks the exact curve below the cloaking frequency") {
  const StudySetup setup;
  const double f_opt = optimal_frequency_ratio(setup, Model::exact);
  std::vector<double> exact, moments;
  for (int i = 0; i <= 100; ++i) {
    const SweepPoint p =
        evaluate_point(setup.geometry(), setup.excitation_at((0.8 + 0.002 * i) * f_opt));
    REQUIRE(p.ok);
    exact.push_back(p.sigma_norm);
    moments.push_back(p.sigma_norm_moments);
  }
  auto rescale = [](std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double a = *lo, span = *hi - *lo;
    for (double& x : v) x = (x - a) / span;
  };
  rescale(exact);
  rescale(moments);
  double worst = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    worst = std::max(worst, std::abs(exact[i] - moments[i]));
  }
  CHECK(worst <= 0.25);
}
