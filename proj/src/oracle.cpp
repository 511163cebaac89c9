#include "su11/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "su11/errors.hpp"
#include "su11/expm.hpp"

namespace su11::oracle {

namespace {

using cd = std::complex<double>;

constexpr double kNegligibleSectorWeight = 1e-32;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void require_cutoff(int cutoff) {
  if (cutoff < kMinCutoff) throw InvalidParameter("Fock cutoff must be >= " + std::to_string(kMinCutoff));
}

Eigen::VectorXcd coherent_amplitudes(cd beta, int cutoff) {
  Eigen::VectorXcd c(cutoff + 1);
  c[0] = std::exp(-0.5 * std::norm(beta));
  for (int n = 1; n <= cutoff; ++n) c[n] = c[n - 1] * beta / std::sqrt(static_cast<double>(n));
  return c;
}

Eigen::VectorXcd amplitudes_for(const InputStateSpec& spec, int cutoff) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(cutoff + 1);
  if (std::holds_alternative<Vacuum>(spec)) {
    c[0] = 1.0;
  } else if (const auto* coh = std::get_if<CoherentParams>(&spec)) {
    c = coherent_amplitudes(std::polar(coh->beta_abs, coh->theta_beta), cutoff);
  } else if (const auto* cat = std::get_if<CatParams>(&spec)) {
    const Eigen::VectorXcd plus = coherent_amplitudes(cat->alpha, cutoff);
    const cd rel = std::polar(1.0, cat->theta);
    const double inv_norm = 1.0 / std::sqrt(cat->norm());
    for (int n = 0; n <= cutoff; ++n) c[n] = (n % 2 == 0 ? 1.0 + rel : 1.0 - rel) * plus[n] * inv_norm;
    // Exact parity: the odd/even cat has identically zero amplitudes on the other parity.
    if (std::cos(cat->theta) == 1.0)
      for (int n = 1; n <= cutoff; n += 2) c[n] = 0.0;
    if (std::cos(cat->theta) == -1.0)
      for (int n = 0; n <= cutoff; n += 2) c[n] = 0.0;
  } else {
    const auto& sv = std::get<SqueezedVacuumParams>(spec);
    const cd ratio = -std::polar(std::tanh(sv.r), sv.eta_sq);
    c[0] = 1.0 / std::sqrt(std::cosh(sv.r));
    for (int n = 2; n <= cutoff; n += 2) c[n] = c[n - 2] * ratio * std::sqrt((n - 1.0) / n);
  }
  return c;
}

}  // namespace

FockVector::FockVector(int cutoff) : cutoff_(cutoff), amp_(Eigen::VectorXcd::Zero((cutoff + 1) * (cutoff + 1))) {
  require_cutoff(cutoff);
}

FockDensity::FockDensity(int cutoff) : cutoff_(cutoff) {
  require_cutoff(cutoff);
  const Eigen::Index d = static_cast<Eigen::Index>(cutoff + 1) * (cutoff + 1);
  rho_ = Eigen::MatrixXcd::Zero(d, d);
}

bool FockDensity::is_hermitian(double tol) const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() <= tol; }

double FockDensity::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::VectorXcd single_mode_amplitudes(const InputStateSpec& spec, int cutoff, double* leakage) {
  require_cutoff(cutoff);
  validate(spec);
  Eigen::VectorXcd c = amplitudes_for(spec, cutoff);
  if (leakage) *leakage = std::max(0.0, 1.0 - c.squaredNorm());
  return c;
}

FockVector build_input(const InputStateSpec& spec_a, const InputStateSpec& spec_b, int cutoff) {
  double leak_a = 0.0, leak_b = 0.0;
  Eigen::VectorXcd ca = single_mode_amplitudes(spec_a, cutoff, &leak_a);
  Eigen::VectorXcd cb = single_mode_amplitudes(spec_b, cutoff, &leak_b);
  if (leak_a > kLeakageTolerance || leak_b > kLeakageTolerance) {
    int need = cutoff;
    double la = leak_a, lb = leak_b;
    while ((la > kLeakageTolerance || lb > kLeakageTolerance) && need < 64 * cutoff) {
      need = need + need / 4 + 1;
      single_mode_amplitudes(spec_a, need, &la);
      single_mode_amplitudes(spec_b, need, &lb);
    }
    throw InsufficientCutoff("input truncation leaks " + sci(std::max(leak_a, leak_b)) + " at cutoff " +
                                 std::to_string(cutoff),
                             need);
  }
  ca.normalize();
  cb.normalize();
  FockVector psi(cutoff);
  for (int na = 0; na <= cutoff; ++na)
    for (int nb = 0; nb <= cutoff; ++nb) psi(na, nb) = ca[na] * cb[nb];
  return psi;
}

double edge_population(const FockVector& state, int shells) {
  const int c = state.cutoff();
  const int lo = std::max(0, c - shells + 1);
  double p = 0.0;
  for (int na = 0; na <= c; ++na)
    for (int nb = 0; nb <= c; ++nb)
      if (na >= lo || nb >= lo) p += std::norm(state(na, nb));
  return p;
}

FockVector apply_nbs(const FockVector& state, const GainConfig& gain, Propagator prop, double leakage_tol) {
  validate(gain);
  const int c = state.cutoff();
  FockVector out(c);
  if (gain.g == 0.0) {
    out.amplitudes() = state.amplitudes();
    return out;
  }
  const cd phase = std::polar(gain.g, gain.theta_g);
  std::vector<cd> lower, block;
  // a^dag b^dag conserves n_a - n_b: propagate each sector |k+p, k+q> separately.
  for (int delta = -c; delta <= c; ++delta) {
    const int p = std::max(delta, 0);
    const int q = std::max(-delta, 0);
    const int len = c - std::abs(delta) + 1;
    block.resize(len);
    lower.resize(len - 1);
    double weight = 0.0;
    for (int k = 0; k < len; ++k) {
      block[k] = state(k + p, k + q);
      weight += std::norm(block[k]);
    }
    // The propagator is unitary on each sector, so a sector without input weight stays negligible.
    if (weight < kNegligibleSectorWeight) {
      for (int k = 0; k < len; ++k) out(k + p, k + q) = block[k];
      continue;
    }
    for (int k = 0; k + 1 < len; ++k) lower[k] = phase * std::sqrt((k + p + 1.0) * (k + q + 1.0));
    if (prop == Propagator::kChebyshev) {
      linalg::expmv_antihermitian_tridiagonal(lower, block);
    } else {
      Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(len, len);
      for (int k = 0; k + 1 < len; ++k) {
        gen(k + 1, k) = lower[k];
        gen(k, k + 1) = -std::conj(lower[k]);
      }
      const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(block.data(), len);
      const Eigen::VectorXcd w = linalg::expm(gen) * v;
      for (int k = 0; k < len; ++k) block[k] = w[k];
    }
    for (int k = 0; k < len; ++k) out(k + p, k + q) = block[k];
  }
  const double edge = edge_population(out);
  if (edge > leakage_tol)
    throw InsufficientCutoff("NBS output population " + sci(edge) + " on the truncation edge at cutoff " +
                                 std::to_string(c),
                             c + c / 4 + 12);
  return out;
}

ArmMoments moments(const FockVector& state) { return moments_from_populations(populations(state)); }

Qfim pure_qfim(const FockVector& state) {
  const int c = state.cutoff();
  const double total = state.amplitudes().squaredNorm();
  double ms = 0, md = 0;
  for (int na = 0; na <= c; ++na)
    for (int nb = 0; nb <= c; ++nb) {
      const double p = std::norm(state(na, nb));
      ms += p * 0.5 * (na + nb);
      md += p * 0.5 * (na - nb);
    }
  ms /= total;
  md /= total;
  double ss = 0, dd = 0, sd = 0;
  for (int na = 0; na <= c; ++na)
    for (int nb = 0; nb <= c; ++nb) {
      const double p = std::norm(state(na, nb));
      const double gs = 0.5 * (na + nb) - ms;
      const double gd = 0.5 * (na - nb) - md;
      ss += p * gs * gs;
      dd += p * gd * gd;
      sd += p * gs * gd;
    }
  Qfim q;
  q.f_ss = 4.0 * ss / total;
  q.f_dd = 4.0 * dd / total;
  q.f_sd = 4.0 * sd / total;
  q.f_ds = q.f_sd;
  return q;
}

std::complex<double> mean_field(const FockVector& state, Mode mode) {
  const int c = state.cutoff();
  cd acc = 0.0;
  for (int na = 0; na <= c; ++na)
    for (int nb = 0; nb <= c; ++nb) {
      if (mode == Mode::kA && na + 1 <= c)
        acc += std::conj(state(na, nb)) * std::sqrt(na + 1.0) * state(na + 1, nb);
      if (mode == Mode::kB && nb + 1 <= c)
        acc += std::conj(state(na, nb)) * std::sqrt(nb + 1.0) * state(na, nb + 1);
    }
  return acc / state.amplitudes().squaredNorm();
}

FockDensity to_density(const FockVector& state) {
  FockDensity rho(state.cutoff());
  rho.matrix().noalias() = state.amplitudes() * state.amplitudes().adjoint();
  return rho;
}

namespace {

// Reorders |n_a, n_b> to |n_b, n_a> on both sides of the density matrix.
Eigen::MatrixXcd swap_modes(const Eigen::MatrixXcd& m, int dim) {
  Eigen::VectorXi perm(static_cast<Eigen::Index>(dim) * dim);
  for (int na = 0; na < dim; ++na)
    for (int nb = 0; nb < dim; ++nb) perm[nb * dim + na] = na * dim + nb;
  const Eigen::PermutationMatrix<Eigen::Dynamic> p(perm);
  return p * m * p.transpose();
}

}  // namespace

FockDensity loss_channel(const FockDensity& rho, double eta, Mode mode) {
  if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0) throw InvalidParameter("transmission eta must lie in [0, 1]");
  const int c = rho.cutoff();
  const int dim = c + 1;
  // kraus(l, n) = <n-l| Pi_l |n> = sqrt(C(n,l) (1-eta)^l eta^(n-l)).
  Eigen::MatrixXd kraus = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n <= c; ++n)
    for (int l = 0; l <= n; ++l) {
      const double log_binom = std::lgamma(n + 1.0) - std::lgamma(l + 1.0) - std::lgamma(n - l + 1.0);
      const double lost = l == 0 ? 1.0 : std::pow(1.0 - eta, l);
      const double kept = n - l == 0 ? 1.0 : std::pow(eta, n - l);
      kraus(l, n) = std::sqrt(std::exp(log_binom) * lost * kept);
    }
  // With mode a leading, Pi_l maps the (n1, n2) block of dim x dim spectator entries to (n1-l, n2-l).
  const Eigen::MatrixXcd in = mode == Mode::kA ? rho.matrix() : swap_modes(rho.matrix(), dim);
  Eigen::MatrixXcd res = Eigen::MatrixXcd::Zero(in.rows(), in.cols());
  for (int l = 0; l <= c; ++l)
    for (int n1 = l; n1 <= c; ++n1)
      for (int n2 = l; n2 <= c; ++n2) {
        const double w = kraus(l, n1) * kraus(l, n2);
        if (w == 0.0) continue;
        res.block((n1 - l) * dim, (n2 - l) * dim, dim, dim) += w * in.block(n1 * dim, n2 * dim, dim, dim);
      }
  FockDensity out(c);
  out.matrix() = mode == Mode::kA ? std::move(res) : swap_modes(res, dim);
  if (std::abs(out.trace() - rho.trace()) > 1e-8)
    throw NumericalFailure("loss channel changed the trace by " + sci(out.trace() - rho.trace()));
  return out;
}

ArmMoments moments(const FockDensity& rho) { return moments_from_populations(populations(rho)); }

Eigen::MatrixXd populations(const FockVector& state) {
  const int dim = state.modes_dim();
  Eigen::MatrixXd p(dim, dim);
  for (int na = 0; na < dim; ++na)
    for (int nb = 0; nb < dim; ++nb) p(na, nb) = std::norm(state(na, nb));
  return p;
}

Eigen::MatrixXd populations(const FockDensity& rho) {
  const int dim = rho.cutoff() + 1;
  Eigen::MatrixXd p(dim, dim);
  for (int na = 0; na < dim; ++na)
    for (int nb = 0; nb < dim; ++nb) p(na, nb) = rho.matrix()(na * dim + nb, na * dim + nb).real();
  return p;
}

ArmMoments moments_from_populations(const Eigen::MatrixXd& p) {
  const Eigen::Index dim = p.rows();
  const Eigen::VectorXd n = Eigen::VectorXd::LinSpaced(dim, 0.0, static_cast<double>(dim - 1));
  const double total = p.sum();
  const Eigen::VectorXd pa = p.rowwise().sum() / total;
  const Eigen::VectorXd pb = p.colwise().sum().transpose() / total;
  const double ma = pa.dot(n), mb = pb.dot(n);
  const Eigen::VectorXd da = n.array() - ma;
  const Eigen::VectorXd db = n.array() - mb;
  ArmMoments m;
  m.n_a = ma;
  m.n_b = mb;
  m.var_a = pa.dot(da.cwiseProduct(da));
  m.var_b = pb.dot(db.cwiseProduct(db));
  m.cov = da.dot(p * db) / total;
  return m;
}

Eigen::MatrixXd loss_populations(const Eigen::MatrixXd& p, double eta, Mode mode) {
  if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0) throw InvalidParameter("transmission eta must lie in [0, 1]");
  const Eigen::Index dim = p.rows();
  // Binomial thinning matrix T(k, n) = C(n, k) eta^k (1-eta)^(n-k).
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n)
    for (Eigen::Index k = 0; k <= n; ++k) {
      const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
      const double kept = k == 0 ? 1.0 : std::pow(eta, static_cast<double>(k));
      const double lost = n - k == 0 ? 1.0 : std::pow(1.0 - eta, static_cast<double>(n - k));
      t(k, n) = std::exp(log_binom) * kept * lost;
    }
  return mode == Mode::kA ? Eigen::MatrixXd(t * p) : Eigen::MatrixXd(p * t.transpose());
}

int suggested_cutoff(const InputStateSpec& spec_a, const InputStateSpec& spec_b, const GainConfig& gain) {
  const PhotonStatistics a = photon_statistics(spec_a);
  const PhotonStatistics b = photon_statistics(spec_b);
  const double amp = std::cosh(2.0 * gain.g);
  const double mean = amp * (a.mean + b.mean) + 2.0 * std::pow(std::sinh(gain.g), 2);
  const double var = amp * amp * (a.variance + b.variance) + mean * (mean + 1.0);
  return std::max(40, static_cast<int>(std::ceil(mean + 8.0 * std::sqrt(var))));
}

OracleResult statistics_at_cutoff(const InputStateSpec& spec_a, const InputStateSpec& spec_b, const GainConfig& gain,
                                  int cutoff, Propagator prop) {
  const FockVector out = apply_nbs(build_input(spec_a, spec_b, cutoff), gain, prop);
  OracleResult r;
  r.moments = moments(out);
  r.qfim = pure_qfim(out);
  r.phase_sum_qfi = effective_phase_sum_qfi(r.qfim, 1e-11);
  r.cutoff = cutoff;
  return r;
}

namespace {

ArmMoments lossy_moments_at(const InputStateSpec& spec_a, const InputStateSpec& spec_b, const GainConfig& gain,
                            double eta_a, double eta_b, int cutoff, Propagator prop) {
  const FockVector out = apply_nbs(build_input(spec_a, spec_b, cutoff), gain, prop);
  return moments_from_populations(loss_populations(loss_populations(populations(out), eta_a, Mode::kA), eta_b, Mode::kB));
}

double rel_diff(double x, double y) {
  const double d = std::abs(x - y);
  if (d == 0.0) return 0.0;
  return d / std::max({std::abs(x), std::abs(y), 1e-12});
}

double max_rel_change(const ArmMoments& a, const ArmMoments& b) {
  return std::max({rel_diff(a.n_a, b.n_a), rel_diff(a.n_b, b.n_b), rel_diff(a.var_a, b.var_a),
                   rel_diff(a.var_b, b.var_b), rel_diff(a.cov, b.cov)});
}

double max_rel_change(const OracleResult& lo, const OracleResult& hi) {
  return std::max(max_rel_change(lo.moments, hi.moments), rel_diff(lo.phase_sum_qfi, hi.phase_sum_qfi));
}

// Cutoff escalation shared by the converged entry points. eval(c) returns {result, change vs c - step}.
template <class Eval>
auto escalate(const InputStateSpec& spec_a, const InputStateSpec& spec_b, const GainConfig& gain,
              const OracleOptions& opts, Eval&& eval) {
  validate(spec_a);
  validate(spec_b);
  validate(gain);
  int c = opts.start_cutoff > 0 ? opts.start_cutoff : suggested_cutoff(spec_a, spec_b, gain);
  c = std::min(std::max(c, kMinCutoff), opts.cap - opts.step);
  while (true) {
    try {
      auto [result, change] = eval(c);
      if (change < opts.rel_tol) return result;
    } catch (const InsufficientCutoff&) {
    }
    if (c + opts.step >= opts.cap)
      throw InsufficientCutoff("oracle did not converge below cutoff cap " + std::to_string(opts.cap),
                               opts.cap + opts.cap / 4);
    c = std::min(std::max(c + opts.step, static_cast<int>(std::ceil(1.25 * c))), opts.cap - opts.step);
  }
}

}  // namespace

OracleResult converged_statistics(const InputStateSpec& spec_a, const InputStateSpec& spec_b, const GainConfig& gain,
                                  const OracleOptions& opts) {
  return escalate(spec_a, spec_b, gain, opts, [&](int c) {
    const OracleResult lo = statistics_at_cutoff(spec_a, spec_b, gain, c, opts.propagator);
    OracleResult hi = statistics_at_cutoff(spec_a, spec_b, gain, c + opts.step, opts.propagator);
    hi.rel_change = max_rel_change(lo, hi);
    return std::pair{hi, hi.rel_change};
  });
}

ArmMoments converged_lossy_moments(const InputStateSpec& spec_a, const InputStateSpec& spec_b, const GainConfig& gain,
                                   double eta_a, double eta_b, const OracleOptions& opts) {
  return escalate(spec_a, spec_b, gain, opts, [&](int c) {
    const ArmMoments lo = lossy_moments_at(spec_a, spec_b, gain, eta_a, eta_b, c, opts.propagator);
    const ArmMoments hi = lossy_moments_at(spec_a, spec_b, gain, eta_a, eta_b, c + opts.step, opts.propagator);
    return std::pair{hi, max_rel_change(lo, hi)};
  });
}

}  // namespace su11::oracle
