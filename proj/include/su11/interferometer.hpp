#pragma once

#include <complex>

#include "su11/states.hpp"

namespace su11 {

/// First nonlinear beam splitter: a = u a0 + v b0^dag with u = cosh g, v = e^{i theta_g} sinh g.
struct GainConfig {
  double g = 0.0;
  double theta_g = 0.0;

  double u() const;
  std::complex<double> v() const;
};

void validate(const GainConfig& gain);

/// theta_G = theta_beta - theta_g.
double theta_G(const CoherentParams& beta, const GainConfig& gain);

/// Photon-number statistics of the two arms after the first NBS.
struct ArmMoments {
  double n_a = 0.0;
  double n_b = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  double cov = 0.0;
};

/// Throws InconsistentMoments on negative means/variances or cov^2 > var_a var_b
/// (relative slack 1e-10 for rounding).
void validate(const ArmMoments& m);

struct CatCorrelations {
  double n_q = 0.0;
  double n_Q = 0.0;
};

CatCorrelations cat_correlations(const CatParams& cat, const CoherentParams& beta, const GainConfig& gain);

ArmMoments arm_moments_cat(const CatParams& cat, const CoherentParams& beta, const GainConfig& gain);

/// Valid for any squeezing phase. At the phase-matched angle
/// eta_sq = pi - 2 theta_G (see matched_squeezing_phase) the |beta|^2 terms carry e^{2r}.
ArmMoments arm_moments_sv(const SqueezedVacuumParams& sv, const CoherentParams& beta, const GainConfig& gain);

/// Squeezing phase that maximizes the QFI for a given theta_G, wrapped to [0, 2pi).
double matched_squeezing_phase(double theta_G);

/// Dispatch on the supported input pairs: port a in {cat, squeezed vacuum, vacuum},
/// port b in {coherent, vacuum}. Anything else throws UnsupportedConfiguration.
ArmMoments arm_moments(const InputStateSpec& a, const InputStateSpec& b, const GainConfig& gain);

/// Total photons inside the interferometer, N = cosh(2g)(|beta|^2 + nbar) + 2 sinh^2 g (+ 2 n_q for cats).
double total_photons(const InputStateSpec& a, const InputStateSpec& b, const GainConfig& gain);

}  // namespace su11
