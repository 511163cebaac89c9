#pragma once

#include "su11/qfi.hpp"

namespace su11 {

/// Photon loss in the arms. eta is the transmission (1: lossless, 0: complete absorption).
/// gamma places the loss relative to the phase shift (0: before, -1: after);
/// the Kraus family is parameterized by Gamma = gamma + 1.
struct LossConfig {
  double eta_a = 1.0;
  double eta_b = 1.0;
  double gamma_a = 0.0;
  double gamma_b = 0.0;

  double shifted_gamma_a() const { return gamma_a + 1.0; }
  double shifted_gamma_b() const { return gamma_b + 1.0; }
};

void validate(const LossConfig& loss);

/// Second moments of the enlarged system-environment description for a given Gamma pair.
struct BarredMoments {
  double var_a = 0.0;
  double var_b = 0.0;
  double cov = 0.0;
};

BarredMoments barred_moments(const ArmMoments& mom, const LossConfig& loss);

/// QFIM of the extended state, C_sd = var_a_bar - var_b_bar.
Qfim two_arm_qfim(const ArmMoments& mom, const LossConfig& loss);

/// Phase-sum reduction with the cross element taken as var_a_bar + var_b_bar instead.
/// Kept for comparison only.
double printed_cross_term_qfi(const ArmMoments& mom, const LossConfig& loss);

/// Tightest bound for loss in arm a only (eta_b = 1), minimized over Gamma_a in closed form.
double single_arm_optimal(const ArmMoments& mom, double eta_a);

struct LossyBound {
  double c_value = 0.0;
  double gamma_a_opt = 0.0;  // optimal Gamma_a = gamma_a + 1 (may be +-inf)
  double gamma_b_opt = 0.0;
  bool converged = false;
  int iterations = 0;
};

struct MinimizerOptions {
  int coarse_points = 64;
  double angle_tol = 1e-11;
  double rel_tol = 1e-9;
  int max_sweeps = 200;
};

/// Extended-state phase-sum QFI as a function of Gamma = tan(t) for each arm. Finite for
/// every real (t_a, t_b), including Gamma = +-inf.
double extended_qfi_angular(const ArmMoments& mom, double eta_a, double eta_b, double t_a, double t_b);

/// Minimizes the extended-state phase-sum QFI over real (Gamma_a, Gamma_b).
LossyBound minimize_over_gammas(const ArmMoments& mom, double eta_a, double eta_b,
                                const MinimizerOptions& opts = {});

}  // namespace su11
