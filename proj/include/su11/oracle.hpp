#pragma once

#include <complex>

#include <Eigen/Dense>

#include "su11/interferometer.hpp"
#include "su11/qfi.hpp"
#include "su11/states.hpp"

/// Brute-force two-mode Fock-space reference. Independent of the closed forms: states are
/// expanded in the number basis, the NBS is applied as a unitary, and every statistic is
/// summed over the truncated basis.
namespace su11::oracle {

enum class Mode { kA, kB };

enum class Propagator {
  kChebyshev,  // exp(K) v per sector, O(cutoff^3)
  kDensePade,  // dense scaling-and-squaring expm per sector, O(cutoff^4)
};

/// Pure two-mode state, amplitude of |n_a, n_b> at n_a * (cutoff + 1) + n_b.
class FockVector {
 public:
  explicit FockVector(int cutoff);

  int cutoff() const { return cutoff_; }
  int modes_dim() const { return cutoff_ + 1; }
  std::complex<double>& operator()(int n_a, int n_b) { return amp_[index(n_a, n_b)]; }
  std::complex<double> operator()(int n_a, int n_b) const { return amp_[index(n_a, n_b)]; }
  Eigen::VectorXcd& amplitudes() { return amp_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  double norm() const { return amp_.norm(); }

 private:
  Eigen::Index index(int n_a, int n_b) const { return static_cast<Eigen::Index>(n_a) * (cutoff_ + 1) + n_b; }
  int cutoff_;
  Eigen::VectorXcd amp_;
};

/// Dense two-mode density matrix in the same ordering as FockVector.
class FockDensity {
 public:
  explicit FockDensity(int cutoff);

  int cutoff() const { return cutoff_; }
  Eigen::MatrixXcd& matrix() { return rho_; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  double trace() const { return rho_.trace().real(); }
  bool is_hermitian(double tol = 1e-12) const;
  double min_eigenvalue() const;

 private:
  int cutoff_;
  Eigen::MatrixXcd rho_;
};

inline constexpr double kLeakageTolerance = 1e-10;
inline constexpr int kMinCutoff = 8;

/// Number-basis amplitudes of one input mode, normalized analytically (not renormalized),
/// so `leakage` = 1 - sum |c_n|^2 is the truncated tail mass.
Eigen::VectorXcd single_mode_amplitudes(const InputStateSpec& spec, int cutoff, double* leakage = nullptr);

/// Product state |a>|b>, renormalized. Throws InsufficientCutoff when the tail mass of
/// either mode exceeds kLeakageTolerance.
FockVector build_input(const InputStateSpec& spec_a, const InputStateSpec& spec_b, int cutoff);

/// Population on the outermost `shells` number states of either mode.
double edge_population(const FockVector& state, int shells = 4);

/// Two-mode squeezing unitary exp(g (e^{i theta_g} a^dag b^dag - e^{-i theta_g} a b)), whose
/// Heisenberg action is a -> cosh(g) a + e^{i theta_g} sinh(g) b^dag. Throws
/// InsufficientCutoff when the output edge population exceeds `leakage_tol`.
FockVector apply_nbs(const FockVector& state, const GainConfig& gain, Propagator prop = Propagator::kChebyshev,
                     double leakage_tol = kLeakageTolerance);

ArmMoments moments(const FockVector& state);

/// F_ij = 4(<g_i g_j> - <g_i><g_j>) with g_{s,d} = (n_a +- n_b)/2, summed directly.
Qfim pure_qfim(const FockVector& state);

/// <a> and <b>, used to pin the phase convention.
std::complex<double> mean_field(const FockVector& state, Mode mode);

FockDensity to_density(const FockVector& state);

/// Kraus sum with Pi_l = sqrt((1-eta)^l / l!) eta^{n/2} a^l on the chosen mode.
FockDensity loss_channel(const FockDensity& rho, double eta, Mode mode);

ArmMoments moments(const FockDensity& rho);

/// Number-basis populations, P(n_a, n_b) at row n_a and column n_b.
Eigen::MatrixXd populations(const FockVector& state);
Eigen::MatrixXd populations(const FockDensity& rho);
ArmMoments moments_from_populations(const Eigen::MatrixXd& p);

/// Loss acting on the populations only. Pure loss maps diagonals to diagonals, so this is the
/// diagonal of loss_channel without forming the density matrix.
Eigen::MatrixXd loss_populations(const Eigen::MatrixXd& p, double eta, Mode mode);

struct OracleOptions {
  int start_cutoff = 0;  // 0: pick from the input statistics
  int step = 12;
  int cap = 1200;
  double rel_tol = 1e-8;
  Propagator propagator = Propagator::kChebyshev;
};

struct OracleResult {
  ArmMoments moments;
  Qfim qfim;
  double phase_sum_qfi = 0.0;
  int cutoff = 0;
  double rel_change = 0.0;
};

/// ceil(mean + 8 sigma) of an estimate of the most energetic output mode, at least 40.
int suggested_cutoff(const InputStateSpec& spec_a, const InputStateSpec& spec_b, const GainConfig& gain);

/// Evaluates at cutoffs c and c + step and escalates c until every statistic changes by less
/// than `rel_tol` (relative). Throws InsufficientCutoff past `cap`.
OracleResult converged_statistics(const InputStateSpec& spec_a, const InputStateSpec& spec_b,
                                  const GainConfig& gain, const OracleOptions& opts = {});

/// Moments after loss eta_a, eta_b on the post-NBS state, escalated until converged like
/// converged_statistics.
ArmMoments converged_lossy_moments(const InputStateSpec& spec_a, const InputStateSpec& spec_b,
                                   const GainConfig& gain, double eta_a, double eta_b,
                                   const OracleOptions& opts = {});

/// Single evaluation at a fixed cutoff.
OracleResult statistics_at_cutoff(const InputStateSpec& spec_a, const InputStateSpec& spec_b,
                                  const GainConfig& gain, int cutoff,
                                  Propagator prop = Propagator::kChebyshev);

}  // namespace su11::oracle
