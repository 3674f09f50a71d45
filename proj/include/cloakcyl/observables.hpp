#pragma once

#include <string_view>
#include <vector>

#include "cloakcyl/mode_match.hpp"
#include "cloakcyl/moments.hpp"

namespace cloak {

enum class Model { exact, moments };

std::string_view to_string(Model m);

/// Normalised far-field pattern sampled on a uniform grid over [0, 2*pi).
struct FarFieldPattern {
  Model model = Model::exact;
  std::vector<double> angles;        ///< [rad], strictly increasing, uniform
  std::vector<Complex> amplitude;    ///< far amplitude of the cloaked cylinder
  std::vector<Complex> normalization;  ///< far amplitude of the bare cylinder

  /// |amplitude| / |normalization| at sample i.
  double ratio(std::size_t i) const;
  std::vector<double> ratios() const;
};

inline constexpr int kDefaultPatternAngles = 721;

/// sum-of-squares weight of a cosine series: 2|c_0|^2 + sum_{n>=1} |c_n|^2.
double modal_power_sum(const std::vector<Complex>& b0);

/// Normalised total scattering width of the full modal solution against the bare core.
double sigma_norm(const ModalSolution& sol, const ModalSolution& ref);

/// Same ratio for the dipole-pair model: (2|c p|^2 + |m|^2) / (2|c p~|^2 + |m~|^2).
double sigma_norm_moments(const DipoleMoments& mom, const DipoleMoments& ref_mom);

FarFieldPattern pattern_exact(const ModalSolution& sol, const ModalSolution& ref,
                              int n_angles = kDefaultPatternAngles);
FarFieldPattern pattern_moments(const DipoleMoments& mom, const DipoleMoments& ref_mom, double k0,
                                int n_angles = kDefaultPatternAngles);

/// Forward-scattering power of the modal solution in the sqrt(2) normalisation,
/// -(sqrt(2)/(k0 zeta0)) Re[sum B0(n) j^n]  [W/m].
double forward_power_exact(const ModalSolution& sol);

/// Same for the dipole pair, -(k0/(2 sqrt(2))) Im[c p_z - m_y]  [W/m].
double forward_power_moments(const DipoleMoments& mom, double k0);

/// Optical-theorem power with the constant derived from the far-field normalisation:
/// -(2/(k0 zeta0)) Re[F(0)]  [W/m]. Equals scattered_power() for lossless shells.
double optical_theorem_power(const ModalSolution& sol);

/// Scattered power per unit length from the modal sum, (1/(k0 zeta0)) * modal_power_sum.
double scattered_power(const ModalSolution& sol);

struct ForwardAmplitudes {
  Complex exact;    ///< F(0)
  Complex moments;  ///< F'(0)
};

ForwardAmplitudes forward_amplitudes(const ModalSolution& sol, const DipoleMoments& mom);

struct ScatteringSummary {
  double sigma_norm = 0.0;
  double sigma_norm_moments = 0.0;
  double p_scat = 0.0;
  double p_scat_moments = 0.0;
  Complex forward_exact;
  Complex forward_moments;
};

ScatteringSummary summarize(const ModalSolution& sol, const ModalSolution& ref);

}  // namespace cloak
