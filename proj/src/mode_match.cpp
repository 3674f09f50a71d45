#include "cloakcyl/mode_match.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cloakcyl/specfun.hpp"

namespace cloak {
namespace {

using specfun::CylinderSequence;
using specfun::cylinder_sequence;

constexpr double kTailRatio = 1e-12;
constexpr double kSingularDet = 1e-300;

// j^n for integer n >= 0
Complex j_power(int n) {
  static constexpr std::array<Complex, 4> table = {Complex{1, 0}, Complex{0, 1}, Complex{-1, 0},
                                                   Complex{0, -1}};
  return table[n % 4];
}

bool all_finite(const std::vector<Complex>& v) {
  return std::all_of(v.begin(), v.end(), [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

int initial_truncation(double ka) {
  return std::max(12, static_cast<int>(std::ceil(ka)) + 10);
}

using Row = std::array<Complex, 3>;

// Gaussian elimination with scaled partial pivoting on a 3x3 complex system.
std::array<Complex, 3> solve3(std::array<Row, 3> m, std::array<Complex, 3> rhs, int mode) {
  for (int r = 0; r < 3; ++r) {
    double scale = 0.0;
    for (const Complex& v : m[r]) scale = std::max(scale, std::abs(v));
    if (scale == 0.0 || !std::isfinite(scale)) {
      throw SingularModeError(mode, "degenerate row in mode system");
    }
    for (Complex& v : m[r]) v /= scale;
    rhs[r] /= scale;
  }

  double det = 1.0;
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    det *= std::abs(m[col][col]);
    if (det < kSingularDet) throw SingularModeError(mode, "singular mode system");
    for (int r = col + 1; r < 3; ++r) {
      const Complex factor = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }

  std::array<Complex, 3> x{};
  for (int r = 2; r >= 0; --r) {
    Complex acc = rhs[r];
    for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * x[c];
    x[r] = acc / m[r][r];
  }
  return x;
}

struct ModeCoefficients {
  Complex b0, a1, b1;
};

// Unknowns (B0, A1, B1) from: E_z = 0 at rho = g; E_z and H_phi continuous at rho = a.
ModeCoefficients solve_mode(int n, const CylinderSequence& at_kg, const CylinderSequence& at_ka,
                            const CylinderSequence& at_k0a, double k0, double k) {
  const Complex a0 = incident_coefficient(n);
  std::array<Row, 3> m = {
      Row{Complex{0.0}, Complex{at_kg.j[n]}, at_kg.h2(n)},
      Row{at_k0a.h2(n), Complex{-at_ka.j[n]}, -at_ka.h2(n)},
      Row{k0 * at_k0a.h2_prime(n), Complex{-k * at_ka.j_prime(n)}, -k * at_ka.h2_prime(n)},
  };
  std::array<Complex, 3> rhs = {Complex{0.0}, -a0 * at_k0a.j[n], -k0 * a0 * at_k0a.j_prime(n)};
  const auto x = solve3(m, rhs, n);
  return {x[0], x[1], x[2]};
}

double tail_ratio(const std::vector<Complex>& b0) {
  double peak = 0.0;
  for (const Complex& b : b0) peak = std::max(peak, std::abs(b));
  return peak == 0.0 ? 0.0 : std::abs(b0.back()) / peak;
}

void require_radius(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

void Geometry::validate() const {
  if (!(std::isfinite(g) && std::isfinite(a) && g > 0.0 && g < a)) {
    throw std::invalid_argument("geometry requires 0 < g < a");
  }
  if (!(std::isfinite(eps_r) && eps_r >= 1.0)) {
    throw std::invalid_argument("geometry requires real eps_r >= 1");
  }
}

Geometry Geometry::in_wavelengths(double g_over_lambda, double a_over_lambda, double eps_r,
                                  double reference_frequency) {
  const double lambda = free_space_wavelength(reference_frequency);
  return {g_over_lambda * lambda, a_over_lambda * lambda, eps_r};
}

void Excitation::validate() const {
  if (!(std::isfinite(frequency) && frequency > 0.0)) {
    throw std::invalid_argument("excitation requires frequency > 0");
  }
}

double Excitation::k0() const { return 2.0 * std::numbers::pi * frequency / phys::c; }

double Excitation::k(double eps_r) const { return k0() * std::sqrt(eps_r); }

SingularModeError::SingularModeError(int mode, const std::string& what)
    : std::runtime_error(what + " (mode n=" + std::to_string(mode) + ")"), mode_(mode) {}

ModalSolution::ModalSolution(Geometry geometry, Excitation excitation, std::vector<Complex> a0,
                             std::vector<Complex> b0, std::vector<Complex> a1,
                             std::vector<Complex> b1)
    : geometry_(geometry),
      excitation_(excitation),
      k0_(excitation.k0()),
      k_(excitation.k(geometry.eps_r)),
      a0_(std::move(a0)),
      b0_(std::move(b0)),
      a1_(std::move(a1)),
      b1_(std::move(b1)) {
  if (b0_.empty() || a0_.size() != b0_.size() || a1_.size() != b0_.size() ||
      b1_.size() != b0_.size()) {
    throw std::invalid_argument("modal coefficient sequences must be non-empty and equal length");
  }
  if (!all_finite(a0_) || !all_finite(b0_) || !all_finite(a1_) || !all_finite(b1_)) {
    throw std::runtime_error("non-finite modal coefficient");
  }
}

Complex incident_coefficient(int n) {
  // j^-n = conj(j^n)
  return (n == 0 ? 1.0 : 2.0) * std::conj(j_power(n));
}

ModalSolution solve_modes(const Geometry& geom, const Excitation& exc) {
  return solve_modes(geom, exc, 0);
}

ModalSolution solve_modes(const Geometry& geom, const Excitation& exc, int min_truncation) {
  geom.validate();
  exc.validate();
  const double k0 = exc.k0();
  const double k = exc.k(geom.eps_r);
  constexpr int kMaxN = specfun::kMaxOrder;

  const int n_initial =
      std::min(std::max(initial_truncation(k * geom.a), min_truncation), kMaxN);

  // one order of headroom for the derivatives; regrown if the tail is slow
  int cap = n_initial + 1;
  CylinderSequence at_kg, at_ka, at_k0a;
  auto evaluate = [&] {
    at_kg = cylinder_sequence(cap, k * geom.g);
    at_ka = cylinder_sequence(cap, k * geom.a);
    at_k0a = cylinder_sequence(cap, k0 * geom.a);
  };
  evaluate();

  std::vector<Complex> a0, b0, a1, b1;
  for (int n = 0;; ++n) {
    if (n + 1 > cap) {
      cap = std::min(2 * cap, kMaxN + 1);
      evaluate();
    }
    const ModeCoefficients c = solve_mode(n, at_kg, at_ka, at_k0a, k0, k);
    a0.push_back(incident_coefficient(n));
    b0.push_back(c.b0);
    a1.push_back(c.a1);
    b1.push_back(c.b1);
    if (n >= n_initial && tail_ratio(b0) < kTailRatio) break;
    if (n == kMaxN) throw std::runtime_error("modal series did not converge by the maximum order");
  }
  return ModalSolution(geom, exc, std::move(a0), std::move(b0), std::move(a1), std::move(b1));
}

ModalSolution bare_reference(double g, const Excitation& exc) {
  if (!(std::isfinite(g) && g > 0.0)) throw std::invalid_argument("bare reference requires g > 0");
  exc.validate();
  const double k0 = exc.k0();
  constexpr int kMaxN = specfun::kMaxOrder;
  const int n_initial = std::min(initial_truncation(k0 * g), kMaxN);

  std::vector<Complex> a0, b0;
  for (int n = 0;; ++n) {
    const Complex inc = incident_coefficient(n);
    a0.push_back(inc);
    b0.push_back(-inc * specfun::bessel_j(n, k0 * g) / specfun::hankel2(n, k0 * g));
    if (n >= n_initial && tail_ratio(b0) < kTailRatio) break;
    if (n == kMaxN) throw std::runtime_error("modal series did not converge by the maximum order");
  }
  std::vector<Complex> a1 = a0;
  std::vector<Complex> b1 = b0;
  // zero-thickness shell: the exterior region starts at the core surface
  return ModalSolution(Geometry{g, g, 1.0}, exc, std::move(a0), std::move(b0), std::move(a1),
                       std::move(b1));
}

ShellField field_region1(const ModalSolution& sol, double rho, double phi) {
  const Geometry& geo = sol.geometry();
  require_radius(rho >= geo.g && rho <= geo.a, "field_region1 requires g <= rho <= a");
  const int nmax = sol.truncation();
  const CylinderSequence s = cylinder_sequence(nmax + 1, sol.k() * rho);
  Complex e{0.0}, dh{0.0};
  for (int n = 0; n <= nmax; ++n) {
    const double c = std::cos(n * phi);
    e += (sol.a1()[n] * s.j[n] + sol.b1()[n] * s.h2(n)) * c;
    dh += (sol.a1()[n] * s.j_prime(n) + sol.b1()[n] * s.h2_prime(n)) * c;
  }
  const Complex h = -kJ * sol.k() / (sol.k0() * phys::zeta0) * dh;
  return {e, h};
}

ShellField field_region0(const ModalSolution& sol, double rho, double phi) {
  require_radius(rho >= sol.geometry().a && std::isfinite(rho), "field_region0 requires rho >= a");
  const int nmax = sol.truncation();
  const CylinderSequence s = cylinder_sequence(nmax + 1, sol.k0() * rho);
  Complex e{0.0}, dh{0.0};
  for (int n = 0; n <= nmax; ++n) {
    const double c = std::cos(n * phi);
    e += (sol.a0()[n] * s.j[n] + sol.b0()[n] * s.h2(n)) * c;
    dh += (sol.a0()[n] * s.j_prime(n) + sol.b0()[n] * s.h2_prime(n)) * c;
  }
  return {e, -kJ / phys::zeta0 * dh};
}

Complex incident_field(const ModalSolution& sol, double rho, double phi) {
  require_radius(rho >= 0.0 && std::isfinite(rho), "incident_field requires rho >= 0");
  Complex e{0.0};
  for (int n = 0; n <= sol.truncation(); ++n) {
    e += sol.a0()[n] * specfun::bessel_j(n, sol.k0() * rho) * std::cos(n * phi);
  }
  return e;
}

Complex scattered_exterior(const ModalSolution& sol, double rho, double phi) {
  require_radius(rho >= sol.geometry().a && std::isfinite(rho),
                 "scattered_exterior requires rho >= a");
  const int nmax = sol.truncation();
  const CylinderSequence s = cylinder_sequence(nmax, sol.k0() * rho);
  Complex e{0.0};
  for (int n = 0; n <= nmax; ++n) e += sol.b0()[n] * s.h2(n) * std::cos(n * phi);
  return e;
}

Complex far_amplitude(const ModalSolution& sol, double phi) {
  Complex f{0.0};
  for (int n = 0; n <= sol.truncation(); ++n) f += sol.b0()[n] * j_power(n) * std::cos(n * phi);
  return f;
}

Complex far_field_factor(double k0, double rho) {
  return std::sqrt(2.0 / (std::numbers::pi * k0 * rho)) *
         std::exp(-kJ * (k0 * rho - 0.25 * std::numbers::pi));
}

Complex surface_current(const ModalSolution& sol, double phi) {
  return field_region1(sol, sol.geometry().g, phi).h_phi;
}

Complex polarization_current(const ModalSolution& sol, double rho, double phi) {
  const double eps_r = sol.geometry().eps_r;
  if (eps_r == 1.0) {
    require_radius(rho >= sol.geometry().g && rho <= sol.geometry().a,
                   "polarization_current requires g <= rho <= a");
    return Complex{0.0};
  }
  return kJ * (sol.k0() / phys::zeta0) * (eps_r - 1.0) * field_region1(sol, rho, phi).e_z;
}

InducedCurrents induced_currents(const ModalSolution& sol, double rho, double phi) {
  return {surface_current(sol, phi), polarization_current(sol, rho, phi)};
}

}  // namespace cloak
