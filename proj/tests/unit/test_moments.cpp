#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cloakcyl/moments.hpp"
#include "cloakcyl/sweep_opt.hpp"
#include "cloakcyl/validation.hpp"

using namespace cloak;

namespace {

const Geometry kStudy = Geometry::in_wavelengths(0.05, 0.08, 60.0);
const Excitation kF0{kReferenceFrequency};
const double kShellK = 2.0 * std::numbers::pi * std::sqrt(60.0);

bool near(Complex got, Complex want, double rel) {
  return std::abs(got - want) <= rel * std::abs(want);
}

}  // namespace

TEST_CASE("shell integrals match 40-digit values") {
  CHECK(v_j(0.05, 0.08, kShellK) == doctest::Approx(-5.674371591288294259e-4).epsilon(1e-12));
  CHECK(near(v_h(0.05, 0.08, kShellK), {-5.674371591288294259e-4, -5.520164436070323974e-4}, 1e-12));
  CHECK(w_j(0.05, 0.08, kShellK) == doctest::Approx(2.878477621568826395e-5).epsilon(1e-12));
  CHECK(near(w_h(0.05, 0.08, kShellK), {2.878477621568826395e-5, -4.529653484994953627e-5}, 1e-10));
}

TEST_CASE("shell integrals on an empty interval and bad input") {
  CHECK(v_j(0.05, 0.05, kShellK) == 0.0);
  CHECK(w_h(0.05, 0.05, kShellK) == Complex(0.0, 0.0));
  CHECK_THROWS_AS(v_j(0.0, 0.08, kShellK), std::domain_error);
  CHECK_THROWS_AS(v_h(0.08, 0.05, kShellK), std::domain_error);
  CHECK_THROWS_AS(w_j(0.05, 0.08, 0.0), std::domain_error);
}

TEST_CASE("moments match a 40-digit integration of the currents") {
  const DipoleMoments mom = dipole_moments(solve_modes(kStudy, kF0));
  CHECK(near(mom.cp_z, {2.752726547350180262e-5, 2.4339220132868799816e-7}, 1e-10));
  CHECK(near(mom.m_y, {-4.0614266205063283575e-5, 5.9479432112269729287e-6}, 1e-10));
  CHECK(mom.cp_z == phys::c * mom.p_z);
}

TEST_CASE("closed forms agree with direct current quadrature") {
  for (double r : {0.8, 0.95, 1.0, 1.2}) {
    const ModalSolution sol = solve_modes(kStudy, Excitation{r * kReferenceFrequency});
    const DipoleMoments closed = dipole_moments(sol);
    const DipoleMoments quad = oracle::moments_by_current_quadrature(sol);
    CHECK(near(quad.p_z, closed.p_z, 1e-8));
    CHECK(near(quad.m_y, closed.m_y, 1e-8));
  }
}

TEST_CASE("bare core moments come from the surface current alone") {
  const ModalSolution ref = bare_reference(kStudy.g, kF0);
  const DipoleMoments closed = dipole_moments(ref);
  const DipoleMoments quad = oracle::moments_by_current_quadrature(ref);
  CHECK(near(quad.p_z, closed.p_z, 1e-8));
  CHECK(near(quad.m_y, closed.m_y, 1e-8));
}

TEST_CASE("dipole near field tends to the far amplitude") {
  const DipoleMoments mom = dipole_moments(solve_modes(kStudy, kF0));
  const double k0 = kF0.k0();
  const double rho = 5000.0;
  for (double phi : {0.0, 0.9, std::numbers::pi}) {
    const Complex far = dipole_far_amplitude(mom, k0, phi) * far_field_factor(k0, rho);
    CHECK(std::abs(dipole_field(mom, k0, rho, phi) - far) < 1e-3 * std::abs(far));
  }
  CHECK_THROWS_AS(dipole_field(mom, k0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("far amplitude of the pair is a constant plus a cosine") {
  const DipoleMoments mom = dipole_moments(solve_modes(kStudy, kF0));
  const double k0 = kF0.k0();
  const Complex f0 = dipole_far_amplitude(mom, k0, 0.0);
  const Complex fpi = dipole_far_amplitude(mom, k0, std::numbers::pi);
  for (double phi : {0.3, 1.2, 2.5}) {
    CHECK(std::abs(dipole_far_amplitude(mom, k0, phi) - dipole_far_amplitude(mom, k0, -phi)) <
          1e-15 * std::abs(f0));
    const Complex expected = 0.5 * (f0 + fpi) + 0.5 * (f0 - fpi) * std::cos(phi);
    CHECK(std::abs(dipole_far_amplitude(mom, k0, phi) - expected) < 1e-12 * std::abs(f0));
  }
}

TEST_CASE("dispersion of the moments below and around the cloaking point") {
  const StudySetup setup;
  const double fm = optimal_frequency_ratio(setup, Model::moments);
  std::vector<double> re_cp, re_neg_m;
  for (int i = 0; i <= 140; ++i) {
    const double r = 0.5 + 0.005 * i;
    const DipoleMoments m = dipole_moments(solve_modes(setup.geometry(), setup.excitation_at(r * fm)));
    re_cp.push_back(m.cp_z.real());
    re_neg_m.push_back(-m.m_y.real());
  }
  // plasma-like: rising from large negative values up to just past the cloaking point
  CHECK(re_cp.front() < -3.0 * std::abs(re_cp[100]));
  for (int i = 1; i <= 110; ++i) CHECK(re_cp[i] > re_cp[i - 1]);
  // Lorentz-like: one swing in Re[-m_y]
  int flips = 0;
  for (std::size_t i = 2; i < re_neg_m.size(); ++i) {
    flips += (re_neg_m[i] - re_neg_m[i - 1] > 0) != (re_neg_m[i - 1] - re_neg_m[i - 2] > 0);
  }
  CHECK(flips == 1);
}
