#include "su11/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "su11/errors.hpp"

namespace su11 {

double GainConfig::u() const { return std::cosh(g); }

std::complex<double> GainConfig::v() const { return std::polar(std::sinh(g), theta_g); }

void validate(const GainConfig& gain) {
  if (!std::isfinite(gain.g) || !std::isfinite(gain.theta_g)) throw InvalidParameter("gain parameters must be finite");
  if (gain.g < 0.0) throw InvalidParameter("NBS gain g must be >= 0");
}

double theta_G(const CoherentParams& beta, const GainConfig& gain) { return beta.theta_beta - gain.theta_g; }

void validate(const ArmMoments& m) {
  const double vals[] = {m.n_a, m.n_b, m.var_a, m.var_b, m.cov};
  for (double x : vals)
    if (!std::isfinite(x)) throw InconsistentMoments("arm moments must be finite");
  const double tol = 1e-10;
  const double scale = std::max({1.0, m.var_a, m.var_b, std::abs(m.cov)});
  if (m.n_a < -tol * std::max(1.0, m.n_a) || m.n_b < -tol * std::max(1.0, m.n_b))
    throw InconsistentMoments("negative mean photon number");
  if (m.var_a < -tol * scale || m.var_b < -tol * scale) throw InconsistentMoments("negative variance");
  if (m.cov * m.cov > m.var_a * m.var_b + tol * scale * scale)
    throw InconsistentMoments("covariance violates Cauchy-Schwarz: cov^2 = " + std::to_string(m.cov * m.cov) +
                              " > var_a var_b = " + std::to_string(m.var_a * m.var_b));
}

CatCorrelations cat_correlations(const CatParams& cat, const CoherentParams& beta, const GainConfig& gain) {
  validate(cat);
  validate(beta);
  validate(gain);
  const double tg = theta_G(beta, gain);
  const double a2 = cat.alpha * cat.alpha;
  const double s2g = std::sinh(2.0 * gain.g);
  CatCorrelations c;
  c.n_q = std::exp(-2.0 * a2) * std::sin(cat.theta) / cat.z_s() * s2g * cat.alpha * beta.beta_abs * std::sin(tg);
  c.n_Q = 0.5 * s2g * s2g * a2 * beta.beta_abs * beta.beta_abs * std::cos(2.0 * tg);
  return c;
}

ArmMoments arm_moments_cat(const CatParams& cat, const CoherentParams& beta, const GainConfig& gain) {
  const CatCorrelations corr = cat_correlations(cat, beta, gain);
  const double n = cat_mean_photon(cat);
  const double a2 = cat.alpha * cat.alpha;
  const double b2 = beta.beta_abs * beta.beta_abs;
  const double ch2 = std::pow(std::cosh(gain.g), 2);
  const double sh2 = std::pow(std::sinh(gain.g), 2);
  const double s2g2 = std::pow(std::sinh(2.0 * gain.g), 2);
  const double nq = corr.n_q;
  const double nQ = corr.n_Q;
  const double input_var = a2 * a2 + n - n * n;
  const double spont = 0.25 * s2g2 * (2.0 * n * b2 + n + b2 + 1.0);

  ArmMoments m;
  m.n_a = ch2 * n + sh2 * (1.0 + b2) + nq;
  m.n_b = ch2 * b2 + sh2 * (1.0 + n) + nq;
  m.var_a = sh2 * sh2 * b2 + sh2 * nq + spont + ch2 * (1.0 - 2.0 * a2 - 2.0 * n) * nq + ch2 * ch2 * input_var + nQ -
            nq * nq;
  m.var_b = ch2 * ch2 * b2 + ch2 * nq + spont + sh2 * (1.0 - 2.0 * a2 - 2.0 * n) * nq + sh2 * sh2 * input_var + nQ -
            nq * nq;
  m.cov = std::cosh(2.0 * gain.g) * (1.0 - n - a2) * nq + nQ - nq * nq +
          0.25 * s2g2 * (a2 * a2 + 2.0 * b2 + 1.0 + n * (2.0 + 2.0 * b2 - n));
  return m;
}

ArmMoments arm_moments_sv(const SqueezedVacuumParams& sv, const CoherentParams& beta, const GainConfig& gain) {
  validate(sv);
  validate(beta);
  validate(gain);
  const double S = std::pow(std::sinh(sv.r), 2);
  const double C = std::pow(std::cosh(sv.r), 2);
  const double b2 = beta.beta_abs * beta.beta_abs;
  const double ch2 = std::pow(std::cosh(gain.g), 2);
  const double sh2 = std::pow(std::sinh(gain.g), 2);
  const double s2g2 = std::pow(std::sinh(2.0 * gain.g), 2);
  // Quadrature weight seen by the coherent amplitude; e^{2r} when phase matched.
  const double phi = sv.eta_sq + 2.0 * theta_G(beta, gain);
  const double quad = std::cosh(2.0 * sv.r) - std::sinh(2.0 * sv.r) * std::cos(phi);

  ArmMoments m;
  m.n_a = ch2 * S + sh2 * (b2 + 1.0);
  m.n_b = ch2 * b2 + sh2 * C;
  m.var_a = sh2 * sh2 * b2 + 2.0 * ch2 * ch2 * S * C + 0.25 * s2g2 * (b2 * quad + C);
  m.var_b = ch2 * ch2 * b2 + 2.0 * sh2 * sh2 * S * C + 0.25 * s2g2 * (b2 * quad + C);
  m.cov = 0.25 * s2g2 * (b2 + b2 * quad + 2.0 * S * C + C);
  return m;
}

double matched_squeezing_phase(double theta_G) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double phase = std::fmod(std::numbers::pi - 2.0 * theta_G, two_pi);
  if (phase < 0.0) phase += two_pi;
  return phase;
}

namespace {

CoherentParams port_b(const InputStateSpec& b) {
  if (std::holds_alternative<Vacuum>(b)) return CoherentParams{};
  if (const auto* c = std::get_if<CoherentParams>(&b)) return *c;
  throw UnsupportedConfiguration("port b must hold a coherent state or vacuum");
}

}  // namespace

ArmMoments arm_moments(const InputStateSpec& a, const InputStateSpec& b, const GainConfig& gain) {
  const CoherentParams beta = port_b(b);
  if (const auto* cat = std::get_if<CatParams>(&a)) return arm_moments_cat(*cat, beta, gain);
  if (const auto* sv = std::get_if<SqueezedVacuumParams>(&a)) return arm_moments_sv(*sv, beta, gain);
  if (std::holds_alternative<Vacuum>(a)) return arm_moments_sv(SqueezedVacuumParams{}, beta, gain);
  throw UnsupportedConfiguration("port a must hold a cat state, squeezed vacuum or vacuum");
}

double total_photons(const InputStateSpec& a, const InputStateSpec& b, const GainConfig& gain) {
  const CoherentParams beta = port_b(b);
  validate(gain);
  validate(beta);
  const double b2 = beta.beta_abs * beta.beta_abs;
  const double amp = std::cosh(2.0 * gain.g);
  const double spont = 2.0 * std::pow(std::sinh(gain.g), 2);
  if (const auto* cat = std::get_if<CatParams>(&a))
    return amp * (b2 + cat_mean_photon(*cat)) + spont + 2.0 * cat_correlations(*cat, beta, gain).n_q;
  if (const auto* sv = std::get_if<SqueezedVacuumParams>(&a)) return amp * (b2 + sv_mean_photon(*sv)) + spont;
  if (std::holds_alternative<Vacuum>(a)) return amp * b2 + spont;
  throw UnsupportedConfiguration("port a must hold a cat state, squeezed vacuum or vacuum");
}

}  // namespace su11
