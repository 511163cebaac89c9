#pragma once

#include "su11/interferometer.hpp"

namespace su11 {

/// QFIM over (phi_s, phi_d) with generators g_{s,d} = (n_a +- n_b)/2:
/// F_ij = 4(<g_i g_j> - <g_i><g_j>).
struct Qfim {
  double f_ss = 0.0;
  double f_sd = 0.0;
  double f_ds = 0.0;
  double f_dd = 0.0;

  bool is_symmetric(double tol = 1e-12) const;
  bool is_psd(double tol = 1e-10) const;
};

/// Phase-sensitivity bound for `repeats_m` independent repetitions.
struct Sensitivity {
  double qfi = 0.0;
  double delta_phi = 0.0;  // +inf when qfi == 0
  int repeats_m = 1;
};

Qfim qfim_from_moments(const ArmMoments& mom);

/// F = F_ss - F_sd F_ds / F_dd. Throws DegenerateQfim when F_dd == 0.
double phase_sum_qfi(const Qfim& q);

/// 4(var_a var_b - cov^2) / (var_a + var_b - 2 cov), the same quantity as above.
double phase_sum_qfi(const ArmMoments& mom);

/// Same value written through the Mandel parameters of the arms, var_i = n_i (Q_i + 1).
double phase_sum_qfi_mandel(double n_a, double n_b, double q_a, double q_b, double cov);

/// Like phase_sum_qfi but returns F_ss when F_dd vanishes (then F_sd = 0 as well and
/// phi_d carries no information). `rel_tol` is relative to max(F_ss, 1).
double effective_phase_sum_qfi(const Qfim& q, double rel_tol = 1e-13);

/// Closed-form QFI for |cat>_a |beta>_b.
double qfi_cat_closed(const CatParams& cat, const CoherentParams& beta, const GainConfig& gain);

/// Closed-form QFI for |0,xi>_a |beta>_b. Requires the phase-matched squeezing angle
/// unless beta = 0 or r = 0; otherwise throws UnsupportedConfiguration.
double qfi_sv_closed(const SqueezedVacuumParams& sv, const CoherentParams& beta, const GainConfig& gain);

/// Closed form and moment-pipeline value side by side. `value` is the pipeline result.
struct CheckedQfi {
  double closed = 0.0;
  double pipeline = 0.0;
  double rel_residual = 0.0;
  double value = 0.0;
  bool consistent = true;
};

inline constexpr double kClosedFormTolerance = 1e-8;

CheckedQfi checked_qfi(const InputStateSpec& a, const InputStateSpec& b, const GainConfig& gain);

Sensitivity qcrb(double qfi, int m = 1);

/// 1/sqrt(N).
double sql(double total_photons);

}  // namespace su11
