#pragma once

// Modal solution of a plane wave (E along z, travelling along +x) scattered by a
// PEC cylinder of radius g wrapped in a lossless dielectric shell out to radius a.
//
//   incident   E_z = sum_n A0(n) J_n(k0 rho) cos(n phi),  A0(n) = 2/(1+delta_n0) j^-n
//   scattered  E_z = sum_n B0(n) H2_n(k0 rho) cos(n phi)           (rho >= a)
//   shell      E_z = sum_n [A1(n) J_n(k rho) + B1(n) H2_n(k rho)] cos(n phi)
//
// with k = k0 sqrt(eps_r). Incident amplitude is fixed at 1 V/m.

#include <stdexcept>
#include <string>
#include <vector>

#include "cloakcyl/constants.hpp"

namespace cloak {

struct Geometry {
  double g = 0.0;      ///< PEC core radius [m]
  double a = 0.0;      ///< cladding outer radius [m]
  double eps_r = 1.0;  ///< cladding relative permittivity

  /// Throws std::invalid_argument unless 0 < g < a and eps_r >= 1 (finite).
  void validate() const;

  /// Geometry with radii given in free-space wavelengths at `reference_frequency`.
  static Geometry in_wavelengths(double g_over_lambda, double a_over_lambda, double eps_r,
                                 double reference_frequency = kReferenceFrequency);
};

struct Excitation {
  double frequency = 0.0;  ///< [Hz]

  void validate() const;
  double k0() const;
  double k(double eps_r) const;
};

/// Raised when a per-mode system is numerically singular (a resonant parameter set).
class SingularModeError : public std::runtime_error {
 public:
  SingularModeError(int mode, const std::string& what);
  int mode() const { return mode_; }

 private:
  int mode_;
};

class ModalSolution {
 public:
  ModalSolution(Geometry geometry, Excitation excitation, std::vector<Complex> a0,
                std::vector<Complex> b0, std::vector<Complex> a1, std::vector<Complex> b1);

  const Geometry& geometry() const { return geometry_; }
  const Excitation& excitation() const { return excitation_; }
  double k0() const { return k0_; }
  double k() const { return k_; }
  /// Highest retained order (inclusive).
  int truncation() const { return static_cast<int>(b0_.size()) - 1; }

  const std::vector<Complex>& a0() const { return a0_; }
  const std::vector<Complex>& b0() const { return b0_; }
  const std::vector<Complex>& a1() const { return a1_; }
  const std::vector<Complex>& b1() const { return b1_; }

 private:
  Geometry geometry_;
  Excitation excitation_;
  double k0_;
  double k_;
  std::vector<Complex> a0_, b0_, a1_, b1_;
};

/// Incident-wave coefficient A0(n) = 2/(1+delta_n0) j^-n.
Complex incident_coefficient(int n);

/// Solve the boundary-value problem mode by mode. Truncation starts at
/// max(12, ceil(k a) + 10) and grows until |B0(N)| / max|B0| < 1e-12.
ModalSolution solve_modes(const Geometry& geom, const Excitation& exc);

/// As above, but never truncates below `min_truncation` (used for convergence checks).
ModalSolution solve_modes(const Geometry& geom, const Excitation& exc, int min_truncation);

/// Bare PEC cylinder of radius g, solved in closed form. The shell
/// coefficients mirror the exterior ones (A1 = A0, B1 = B0), as for eps_r = 1.
ModalSolution bare_reference(double g, const Excitation& exc);

struct ShellField {
  Complex e_z;    ///< [V/m]
  Complex h_phi;  ///< [A/m]
};

/// Fields inside the cladding, g <= rho <= a.
ShellField field_region1(const ModalSolution& sol, double rho, double phi);

/// Total (incident + scattered) field outside the cylinder, rho >= a.
ShellField field_region0(const ModalSolution& sol, double rho, double phi);

/// Incident plane wave from its cylindrical expansion, truncated at the solution's order.
Complex incident_field(const ModalSolution& sol, double rho, double phi);

/// Scattered field outside the cylinder, rho >= a.
Complex scattered_exterior(const ModalSolution& sol, double rho, double phi);

/// F(phi) = sum_n B0(n) j^n cos(n phi): the far field with the common radial factor
/// sqrt(2/(pi k0 rho)) exp(-j(k0 rho - pi/4)) removed. Forward is phi = 0.
Complex far_amplitude(const ModalSolution& sol, double phi);

/// Common radial factor that multiplies far_amplitude at distance rho.
Complex far_field_factor(double k0, double rho);

struct InducedCurrents {
  Complex k_z;    ///< PEC surface current at rho = g [A/m]
  Complex j_pol;  ///< polarisation current density in the shell [A/m^2]
};

/// Surface current on the core, K_z(phi) = H_phi1(g, phi).
Complex surface_current(const ModalSolution& sol, double phi);

/// Polarisation current J_pol = j (k0/zeta0)(eps_r - 1) E_z1(rho, phi), g <= rho <= a.
Complex polarization_current(const ModalSolution& sol, double rho, double phi);

/// Both currents: K_z on the core at this phi, and J_pol at (rho, phi).
InducedCurrents induced_currents(const ModalSolution& sol, double rho, double phi);

}  // namespace cloak
