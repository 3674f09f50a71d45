#include "cloakcyl/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cloakcyl/specfun.hpp"

namespace cloak {
namespace {

using specfun::bessel_j;
using specfun::hankel2;

void check_interval(double chi, double psi, double k) {
  if (!(std::isfinite(chi) && std::isfinite(psi) && chi > 0.0 && chi <= psi)) {
    throw std::domain_error("shell integral requires 0 < chi <= psi");
  }
  if (!(std::isfinite(k) && k > 0.0)) throw std::domain_error("shell integral requires k > 0");
}

}  // namespace

double v_j(double chi, double psi, double k) {
  check_interval(chi, psi, k);
  if (chi == psi) return 0.0;
  return (psi * bessel_j(1, k * psi) - chi * bessel_j(1, k * chi)) / k;
}

Complex v_h(double chi, double psi, double k) {
  check_interval(chi, psi, k);
  if (chi == psi) return Complex{0.0};
  return (psi * hankel2(1, k * psi) - chi * hankel2(1, k * chi)) / k;
}

double w_j(double chi, double psi, double k) {
  check_interval(chi, psi, k);
  if (chi == psi) return 0.0;
  return (psi * psi * bessel_j(2, k * psi) - chi * chi * bessel_j(2, k * chi)) / k;
}

Complex w_h(double chi, double psi, double k) {
  check_interval(chi, psi, k);
  if (chi == psi) return Complex{0.0};
  const double y_part = specfun::integrate_real(
      [k](double r) { return specfun::bessel_y(1, k * r) * r * r; }, chi, psi);
  return Complex{w_j(chi, psi, k), -y_part};
}

Complex electric_moment(const ModalSolution& sol) {
  const Geometry& geo = sol.geometry();
  const double k0 = sol.k0();
  const double k = sol.k();
  const Complex a1 = sol.a1()[0];
  const Complex b1 = sol.b1()[0];

  Complex shell{0.0};
  if (geo.eps_r != 1.0) {
    shell = k0 * k0 * (geo.eps_r - 1.0) * (a1 * v_j(geo.g, geo.a, k) + b1 * v_h(geo.g, geo.a, k));
  }
  const double kg = k * geo.g;
  const Complex core = k * geo.g * (a1 * specfun::bessel_j_prime(0, kg) +
                                    b1 * specfun::hankel2_prime(0, kg));
  const double prefactor = 2.0 * std::numbers::pi / (k0 * k0 * phys::zeta0 * phys::c);
  return prefactor * (shell - core);
}

Complex magnetic_moment(const ModalSolution& sol) {
  const Geometry& geo = sol.geometry();
  const double k0 = sol.k0();
  const double k = sol.k();
  const Complex a1 = sol.a1().size() > 1 ? sol.a1()[1] : Complex{0.0};
  const Complex b1 = sol.b1().size() > 1 ? sol.b1()[1] : Complex{0.0};

  Complex shell{0.0};
  if (geo.eps_r != 1.0) {
    shell = k0 * k0 * (geo.eps_r - 1.0) * (a1 * w_j(geo.g, geo.a, k) + b1 * w_h(geo.g, geo.a, k));
  }
  const double kg = k * geo.g;
  const Complex core = k * geo.g * geo.g *
                       (a1 * specfun::bessel_j_prime(1, kg) + b1 * specfun::hankel2_prime(1, kg));
  const Complex prefactor = -kJ * std::numbers::pi / (2.0 * k0 * phys::zeta0);
  return prefactor * (shell - core);
}

DipoleMoments dipole_moments(const ModalSolution& sol) {
  return DipoleMoments::from(electric_moment(sol), magnetic_moment(sol));
}

Complex dipole_field(const DipoleMoments& mom, double k0, double rho, double phi) {
  if (!(std::isfinite(rho) && rho > 0.0)) throw std::domain_error("dipole_field requires rho > 0");
  const double x = k0 * rho;
  return 0.25 * k0 * k0 * phys::zeta0 *
         (mom.m_y * hankel2(1, x) * std::cos(phi) - kJ * mom.cp_z * hankel2(0, x));
}

Complex dipole_far_amplitude(const DipoleMoments& mom, double k0, double phi) {
  return (k0 * k0 * phys::zeta0 / (4.0 * kJ)) * (mom.cp_z - mom.m_y * std::cos(phi));
}

}  // namespace cloak
