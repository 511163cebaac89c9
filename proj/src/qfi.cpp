#include "su11/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "su11/errors.hpp"

namespace su11 {

bool Qfim::is_symmetric(double tol) const {
  return std::abs(f_sd - f_ds) <= tol * std::max({1.0, std::abs(f_sd), std::abs(f_ds)});
}

bool Qfim::is_psd(double tol) const {
  const double scale = std::max({1.0, std::abs(f_ss), std::abs(f_dd)});
  return f_ss >= -tol * scale && f_dd >= -tol * scale && f_ss * f_dd - f_sd * f_ds >= -tol * scale * scale;
}

Qfim qfim_from_moments(const ArmMoments& mom) {
  validate(mom);
  Qfim q;
  q.f_ss = mom.var_a + mom.var_b + 2.0 * mom.cov;
  q.f_dd = mom.var_a + mom.var_b - 2.0 * mom.cov;
  q.f_sd = mom.var_a - mom.var_b;
  q.f_ds = q.f_sd;
  return q;
}

double phase_sum_qfi(const Qfim& q) {
  if (!(q.f_dd > 0.0))
    throw DegenerateQfim("F_dd = " + std::to_string(q.f_dd) + ": phase-sum QFI not reducible", q.f_ss);
  return q.f_ss - q.f_sd * q.f_ds / q.f_dd;
}

double phase_sum_qfi(const ArmMoments& mom) {
  validate(mom);
  const double den = mom.var_a + mom.var_b - 2.0 * mom.cov;
  if (!(den > 0.0))
    throw DegenerateQfim("F_dd vanishes: phase-sum QFI not reducible", mom.var_a + mom.var_b + 2.0 * mom.cov);
  return 4.0 * (mom.var_a * mom.var_b - mom.cov * mom.cov) / den;
}

double phase_sum_qfi_mandel(double n_a, double n_b, double q_a, double q_b, double cov) {
  if (!(n_a > 0.0) || !(n_b > 0.0)) throw UndefinedQ("Mandel Q needs non-zero mean photons in both arms");
  const double var_a = n_a * (q_a + 1.0);
  const double var_b = n_b * (q_b + 1.0);
  const double den = var_b + var_a - 2.0 * cov;
  if (!(den > 0.0)) throw DegenerateQfim("F_dd vanishes: phase-sum QFI not reducible", var_a + var_b + 2.0 * cov);
  return 4.0 * (n_a * n_b * (q_a + 1.0) * (q_b + 1.0) - cov * cov) / den;
}

double effective_phase_sum_qfi(const Qfim& q, double rel_tol) {
  if (q.f_dd <= rel_tol * std::max(1.0, std::abs(q.f_ss))) return q.f_ss;
  return phase_sum_qfi(q);
}

double qfi_cat_closed(const CatParams& cat, const CoherentParams& beta, const GainConfig& gain) {
  const CatCorrelations corr = cat_correlations(cat, beta, gain);
  const double n = cat_mean_photon(cat);
  const double a2 = cat.alpha * cat.alpha;
  const double b2 = beta.beta_abs * beta.beta_abs;
  const double s2g = std::sinh(2.0 * gain.g);
  const double c2g = std::cosh(2.0 * gain.g);
  const double den = a2 * a2 + n - n * n + b2;
  if (!(den > 0.0)) throw DegenerateInput("closed-form cat QFI: input photon-number variance vanishes");
  const double cross = c2g * b2 + (a2 + n) * corr.n_q;
  return s2g * s2g * (n + (1.0 + 2.0 * n) * b2 + 1.0) + 4.0 * c2g * c2g * b2 + 4.0 * c2g * corr.n_q +
         4.0 * (corr.n_Q - corr.n_q * corr.n_q) - 4.0 * cross * cross / den;
}

double qfi_sv_closed(const SqueezedVacuumParams& sv, const CoherentParams& beta, const GainConfig& gain) {
  validate(sv);
  validate(beta);
  validate(gain);
  const double b2 = beta.beta_abs * beta.beta_abs;
  const double s2g2 = std::pow(std::sinh(2.0 * gain.g), 2);
  if (b2 == 0.0) return s2g2 * (1.0 + sv_mean_photon(sv));
  if (sv.r > 0.0) {
    const double phi = sv.eta_sq + 2.0 * theta_G(beta, gain);
    if (std::abs(std::cos(phi) + 1.0) > 1e-9)
      throw UnsupportedConfiguration(
          "closed-form squeezed-vacuum QFI assumes eta_sq = pi - 2 theta_G; use the moment pipeline");
  }
  const double sh2r2 = std::pow(std::sinh(2.0 * sv.r), 2);
  const double c2g2 = std::pow(std::cosh(2.0 * gain.g), 2);
  return s2g2 * (b2 * std::exp(2.0 * sv.r) + std::pow(std::cosh(sv.r), 2)) +
         c2g2 * 8.0 * b2 * sh2r2 / (4.0 * b2 + 2.0 * sh2r2);
}

CheckedQfi checked_qfi(const InputStateSpec& a, const InputStateSpec& b, const GainConfig& gain) {
  CheckedQfi out;
  out.pipeline = effective_phase_sum_qfi(qfim_from_moments(arm_moments(a, b, gain)));
  const CoherentParams beta = std::holds_alternative<CoherentParams>(b) ? std::get<CoherentParams>(b) : CoherentParams{};
  out.closed = std::numeric_limits<double>::quiet_NaN();
  if (const auto* cat = std::get_if<CatParams>(&a)) {
    try {
      out.closed = qfi_cat_closed(*cat, beta, gain);
    } catch (const DegenerateInput&) {
    }
  } else {
    const SqueezedVacuumParams sv =
        std::holds_alternative<SqueezedVacuumParams>(a) ? std::get<SqueezedVacuumParams>(a) : SqueezedVacuumParams{};
    try {
      out.closed = qfi_sv_closed(sv, beta, gain);
    } catch (const UnsupportedConfiguration&) {
    }
  }
  out.value = out.pipeline;
  if (std::isnan(out.closed)) return out;
  out.rel_residual = std::abs(out.closed - out.pipeline) / std::max(std::abs(out.pipeline), 1e-300);
  if (out.closed == out.pipeline) out.rel_residual = 0.0;
  out.consistent = out.rel_residual <= kClosedFormTolerance || std::abs(out.closed - out.pipeline) <= 1e-12;
  return out;
}

Sensitivity qcrb(double qfi, int m) {
  if (m < 1) throw InvalidParameter("number of repetitions m must be >= 1");
  if (std::isnan(qfi) || qfi < 0.0) throw InvalidParameter("QFI must be >= 0");
  Sensitivity s;
  s.qfi = qfi;
  s.repeats_m = m;
  s.delta_phi = qfi == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::sqrt(m * qfi);
  return s;
}

double sql(double total_photons) {
  if (!(total_photons > 0.0)) throw InvalidParameter("SQL needs a positive total photon number");
  return 1.0 / std::sqrt(total_photons);
}

}  // namespace su11
