#include "cloakcyl/observables.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cloak {
namespace {

std::vector<double> uniform_angles(int n_angles) {
  if (n_angles < 8) throw std::invalid_argument("pattern requires at least 8 angles");
  std::vector<double> out(n_angles);
  const double step = 2.0 * std::numbers::pi / n_angles;
  for (int i = 0; i < n_angles; ++i) out[i] = i * step;
  return out;
}

void require_same_excitation(const ModalSolution& sol, const ModalSolution& ref) {
  if (sol.excitation().frequency != ref.excitation().frequency) {
    throw std::invalid_argument("solution and reference must share the excitation");
  }
}

}  // namespace

std::string_view to_string(Model m) { return m == Model::exact ? "exact" : "moments"; }

double FarFieldPattern::ratio(std::size_t i) const {
  return std::abs(amplitude.at(i)) / std::abs(normalization.at(i));
}

std::vector<double> FarFieldPattern::ratios() const {
  std::vector<double> out(angles.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ratio(i);
  return out;
}

double modal_power_sum(const std::vector<Complex>& b0) {
  double s = 0.0;
  for (std::size_t n = 0; n < b0.size(); ++n) s += (n == 0 ? 2.0 : 1.0) * std::norm(b0[n]);
  return s;
}

double sigma_norm(const ModalSolution& sol, const ModalSolution& ref) {
  require_same_excitation(sol, ref);
  const double denom = modal_power_sum(ref.b0());
  if (!(denom > 0.0)) throw std::invalid_argument("reference cylinder does not scatter");
  return modal_power_sum(sol.b0()) / denom;
}

double sigma_norm_moments(const DipoleMoments& mom, const DipoleMoments& ref_mom) {
  const double denom = 2.0 * std::norm(ref_mom.cp_z) + std::norm(ref_mom.m_y);
  if (!(denom > 0.0)) throw std::invalid_argument("reference moments are zero");
  return (2.0 * std::norm(mom.cp_z) + std::norm(mom.m_y)) / denom;
}

FarFieldPattern pattern_exact(const ModalSolution& sol, const ModalSolution& ref, int n_angles) {
  require_same_excitation(sol, ref);
  FarFieldPattern p;
  p.model = Model::exact;
  p.angles = uniform_angles(n_angles);
  p.amplitude.reserve(p.angles.size());
  p.normalization.reserve(p.angles.size());
  for (double phi : p.angles) {
    p.amplitude.push_back(far_amplitude(sol, phi));
    p.normalization.push_back(far_amplitude(ref, phi));
  }
  return p;
}

FarFieldPattern pattern_moments(const DipoleMoments& mom, const DipoleMoments& ref_mom, double k0,
                                int n_angles) {
  FarFieldPattern p;
  p.model = Model::moments;
  p.angles = uniform_angles(n_angles);
  p.amplitude.reserve(p.angles.size());
  p.normalization.reserve(p.angles.size());
  for (double phi : p.angles) {
    p.amplitude.push_back(dipole_far_amplitude(mom, k0, phi));
    p.normalization.push_back(dipole_far_amplitude(ref_mom, k0, phi));
  }
  return p;
}

double forward_power_exact(const ModalSolution& sol) {
  return -(std::numbers::sqrt2 / (sol.k0() * phys::zeta0)) * far_amplitude(sol, 0.0).real();
}

double forward_power_moments(const DipoleMoments& mom, double k0) {
  return -(k0 / (2.0 * std::numbers::sqrt2)) * (mom.cp_z - mom.m_y).imag();
}

double optical_theorem_power(const ModalSolution& sol) {
  return -(2.0 / (sol.k0() * phys::zeta0)) * far_amplitude(sol, 0.0).real();
}

double scattered_power(const ModalSolution& sol) {
  return modal_power_sum(sol.b0()) / (sol.k0() * phys::zeta0);
}

ForwardAmplitudes forward_amplitudes(const ModalSolution& sol, const DipoleMoments& mom) {
  return {far_amplitude(sol, 0.0), dipole_far_amplitude(mom, sol.k0(), 0.0)};
}

ScatteringSummary summarize(const ModalSolution& sol, const ModalSolution& ref) {
  const DipoleMoments mom = dipole_moments(sol);
  const DipoleMoments ref_mom = dipole_moments(ref);
  const ForwardAmplitudes fwd = forward_amplitudes(sol, mom);
  return {sigma_norm(sol, ref),        sigma_norm_moments(mom, ref_mom),
          forward_power_exact(sol),    forward_power_moments(mom, sol.k0()),
          fwd.exact,                   fwd.moments};
}

}  // namespace cloak
