#pragma once

#include <variant>

namespace su11 {

/// Schroedinger cat (|alpha> + e^{i theta}|-alpha>)/sqrt(N) with real alpha >= 0.
struct CatParams {
  double alpha = 0.0;
  double theta = 0.0;

  /// N = 2 + 2 e^{-2 alpha^2} cos(theta).
  double norm() const;
  /// z_s = 1 + e^{-2 alpha^2} cos(theta), evaluated without cancellation.
  double z_s() const;
  /// z_d = 1 - e^{-2 alpha^2} cos(theta), evaluated without cancellation.
  double z_d() const;
};

/// Squeezed vacuum S(xi)|0> with xi = r e^{i eta_sq} and
/// S(xi) = exp((xi^* a^2 - xi a^{dag 2}) / 2).
struct SqueezedVacuumParams {
  double r = 0.0;
  double eta_sq = 0.0;
};

struct CoherentParams {
  double beta_abs = 0.0;
  double theta_beta = 0.0;
};

struct Vacuum {};

using InputStateSpec = std::variant<Vacuum, CoherentParams, CatParams, SqueezedVacuumParams>;

/// Mean and variance of the photon number of a single-mode input.
struct PhotonStatistics {
  double mean = 0.0;
  double variance = 0.0;
};

// Cat states with N below this are treated as the null vector.
inline constexpr double kNullCatThreshold = 1e-12;

void validate(const CatParams& p);
void validate(const SqueezedVacuumParams& p);
void validate(const CoherentParams& p);
void validate(const InputStateSpec& spec);

double cat_mean_photon(const CatParams& p);
/// Mandel Q from the exact moments <a^dag2 a^2> = alpha^4 and <n> = nbar_alpha.
double cat_mandel_q(const CatParams& p);

double sv_mean_photon(const SqueezedVacuumParams& p);
/// Squeezing strength r with sinh^2 r = n_target.
double match_squeezing(double n_target);

PhotonStatistics photon_statistics(const InputStateSpec& spec);
/// Q = Var(n)/<n> - 1 for any supported input; throws UndefinedQ when <n> = 0.
double mandel_q(const InputStateSpec& spec);

}  // namespace su11
