#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cloakcyl/observables.hpp"
#include "cloakcyl/validation.hpp"

using namespace cloak;

namespace {

const Geometry kStudy = Geometry::in_wavelengths(0.05, 0.08, 60.0);
const Excitation kF0{kReferenceFrequency};

}  // namespace

TEST_CASE("modal power sum weights the zeroth mode twice") {
  CHECK(modal_power_sum({Complex(1.0, 0.0)}) == 2.0);
  CHECK(modal_power_sum({Complex(0.0, 1.0), Complex(3.0, 4.0)}) == 27.0);
}

TEST_CASE("sigma_norm is one for an uncoated core") {
  const ModalSolution ref = bare_reference(kStudy.g, kF0);
  CHECK(sigma_norm(ref, ref) == doctest::Approx(1.0).epsilon(1e-15));
  const ModalSolution shell = solve_modes(Geometry{kStudy.g, kStudy.a, 1.0}, kF0);
  CHECK(sigma_norm(shell, ref) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sigma_norm_moments(dipole_moments(shell), dipole_moments(ref)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("sigma_norm agrees with angular quadrature of the patterns") {
  const ModalSolution sol = solve_modes(kStudy, kF0);
  const ModalSolution ref = bare_reference(kStudy.g, kF0);
  const double s = sigma_norm(sol, ref);
  CHECK(std::abs(s - oracle::sigma_norm_by_angle_quadrature(sol, ref, 2048)) < 1e-10 * s);
  const DipoleMoments mom = dipole_moments(sol), ref_mom = dipole_moments(ref);
  const double sm = sigma_norm_moments(mom, ref_mom);
  CHECK(std::abs(sm - oracle::sigma_norm_moments_by_angle_quadrature(mom, ref_mom, kF0.k0(),
                                                                     2048)) < 1e-10 * sm);
}

TEST_CASE("references at a different frequency are rejected") {
  const ModalSolution sol = solve_modes(kStudy, kF0);
  const ModalSolution ref = bare_reference(kStudy.g, Excitation{1.1 * kReferenceFrequency});
  CHECK_THROWS_AS(sigma_norm(sol, ref), std::invalid_argument);
}

TEST_CASE("optical theorem with the derived constant") {
  for (double eps : {1.0, 10.0, 60.0, 120.0}) {
    for (double r : {0.8, 1.0, 1.2}) {
      const ModalSolution sol = solve_modes(Geometry{kStudy.g, kStudy.a, eps},
                                            Excitation{r * kReferenceFrequency});
      const double integrated = oracle::far_field_power_by_angle_quadrature(sol, 2048);
      CHECK(std::abs(integrated - optical_theorem_power(sol)) < 1e-9 * integrated);
      CHECK(std::abs(integrated - scattered_power(sol)) < 1e-9 * integrated);
    }
  }
}

TEST_CASE("sqrt(2) forward power differs from the optical-theorem power by a fixed factor") {
  const ModalSolution sol = solve_modes(kStudy, kF0);
  CHECK(forward_power_exact(sol) / optical_theorem_power(sol) ==
        doctest::Approx(std::numbers::sqrt2 / 2.0).epsilon(1e-12));
}

TEST_CASE("patterns are uniform, even in phi, and normalised to the bare core") {
  const ModalSolution sol = solve_modes(kStudy, kF0);
  const ModalSolution ref = bare_reference(kStudy.g, kF0);
  const FarFieldPattern p = pattern_exact(sol, ref, 360);
  REQUIRE(p.angles.size() == 360);
  CHECK(p.angles.front() == 0.0);
  CHECK(p.angles[1] == doctest::Approx(2.0 * std::numbers::pi / 360.0));
  for (std::size_t i = 1; i < 360; ++i) {
    CHECK(p.ratio(i) == doctest::Approx(p.ratio(360 - i)).epsilon(1e-12));
  }
  CHECK(p.ratio(0) == doctest::Approx(std::abs(far_amplitude(sol, 0.0)) /
                                      std::abs(far_amplitude(ref, 0.0))));
  const FarFieldPattern pm =
      pattern_moments(dipole_moments(sol), dipole_moments(ref), kF0.k0(), 8);
  CHECK(pm.model == Model::moments);
  CHECK(pm.ratios().size() == 8);
  CHECK_THROWS_AS(pattern_exact(sol, ref, 4), std::invalid_argument);
}

TEST_CASE("summary bundles the individual observables") {
  const ModalSolution sol = solve_modes(kStudy, kF0);
  const ModalSolution ref = bare_reference(kStudy.g, kF0);
  const ScatteringSummary s = summarize(sol, ref);
  CHECK(s.sigma_norm == sigma_norm(sol, ref));
  CHECK(s.forward_exact == far_amplitude(sol, 0.0));
  CHECK(s.forward_moments == dipole_far_amplitude(dipole_moments(sol), kF0.k0(), 0.0));
}
