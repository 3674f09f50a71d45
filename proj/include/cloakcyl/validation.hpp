#pragma once

#include <string>
#include <vector>

#include "cloakcyl/moments.hpp"
#include "cloakcyl/sweep_opt.hpp"

namespace cloak {

namespace oracle {

/// Dipole moments by direct 2-D quadrature of the induced currents:
///   p = (1/(j omega)) int J dS,     m_y = -(1/2) int rho J_z cos(phi) dS,
/// with J the PEC surface current on rho = g plus the shell polarisation current.
/// Independent of the closed-form shell integrals.
DipoleMoments moments_by_current_quadrature(const ModalSolution& sol, double tol = 1e-14);

/// sigma_norm from a uniform phi-grid of |F|^2 (n samples over [0, 2 pi)).
double sigma_norm_by_angle_quadrature(const ModalSolution& sol, const ModalSolution& ref, int n);

/// sigma'_norm from a uniform phi-grid of |F'|^2.
double sigma_norm_moments_by_angle_quadrature(const DipoleMoments& mom,
                                              const DipoleMoments& ref_mom, double k0, int n);

/// Scattered power per unit length from the far field integrated over angle:
/// (1/(2 zeta0)) * (2/(pi k0)) * int |F(phi)|^2 dphi.
double far_field_power_by_angle_quadrature(const ModalSolution& sol, int n);

}  // namespace oracle

struct CheckResult {
  std::string name;
  bool passed = false;
  bool advisory = false;  ///< reported but not counted as a violation
  std::string detail;
};

/// The invariant suite for every module at the given study parameters.
std::vector<CheckResult> run_validation(const StudySetup& setup = {});

/// True when every non-advisory check passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace cloak
