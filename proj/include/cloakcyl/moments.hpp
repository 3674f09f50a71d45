#pragma once

// Equivalent line-dipole model of the coated cylinder. The total induced current
// (PEC surface current plus shell polarisation current) is reduced to one
// electric dipole line p_z and one magnetic dipole line m_y on the axis.

#include "cloakcyl/constants.hpp"
#include "cloakcyl/mode_match.hpp"

namespace cloak {

/// Per-unit-length moments. p_z in C/m-per-length units (C), m_y in A*m.
struct DipoleMoments {
  Complex p_z;
  Complex m_y;
  Complex cp_z;  ///< c * p_z, same units as m_y

  static DipoleMoments from(Complex p_z, Complex m_y) { return {p_z, m_y, phys::c * p_z}; }
};

/// Integrals of the shell field profiles, chi <= psi, k > 0.
///   V_J = int J0(k r) r dr          V_H = int H2_0(k r) r dr
///   W_J = int J1(k r) r^2 dr        W_H = int H2_1(k r) r^2 dr
double v_j(double chi, double psi, double k);
Complex v_h(double chi, double psi, double k);
double w_j(double chi, double psi, double k);
/// W_J minus j times the Y1 r^2 integral, the latter by adaptive quadrature (tol 1e-11).
Complex w_h(double chi, double psi, double k);

/// p_z from the n = 0 shell coefficients.
Complex electric_moment(const ModalSolution& sol);

/// m_y from the n = 1 shell coefficients.
Complex magnetic_moment(const ModalSolution& sol);

DipoleMoments dipole_moments(const ModalSolution& sol);

/// Total field radiated by the dipole pair,
/// (k0^2 zeta0 / 4) [m_y H2_1(k0 rho) cos(phi) - j c p_z H2_0(k0 rho)].
Complex dipole_field(const DipoleMoments& mom, double k0, double rho, double phi);

/// Far-field amplitude of the pair with the radial factor removed,
/// F'(phi) = (k0^2 zeta0 / (4j)) [c p_z - m_y cos(phi)].
Complex dipole_far_amplitude(const DipoleMoments& mom, double k0, double phi);

}  // namespace cloak
