#include "su11/states.hpp"

#include <cmath>
#include <string>

#include "su11/errors.hpp"

namespace su11 {

namespace {

// e^{-2 alpha^2} - 1, kept separate so z_s and z_d avoid cancellation near alpha = 0.
double overlap_m1(double alpha) { return std::expm1(-2.0 * alpha * alpha); }

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw InvalidParameter(std::string(name) + " must be finite");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double CatParams::z_s() const {
  const double c = std::cos(theta);
  const double half = std::cos(0.5 * theta);
  return 2.0 * half * half + c * overlap_m1(alpha);
}

double CatParams::z_d() const {
  const double c = std::cos(theta);
  const double half = std::sin(0.5 * theta);
  return 2.0 * half * half - c * overlap_m1(alpha);
}

double CatParams::norm() const { return 2.0 * z_s(); }

void validate(const CatParams& p) {
  require_finite(p.alpha, "alpha");
  require_finite(p.theta, "theta");
  if (p.alpha < 0.0) throw InvalidParameter("cat amplitude alpha must be >= 0");
  if (p.norm() < kNullCatThreshold)
    throw InvalidParameter("cat state is null (alpha = 0 with theta = pi)");
}

void validate(const SqueezedVacuumParams& p) {
  require_finite(p.r, "r");
  require_finite(p.eta_sq, "eta_sq");
  if (p.r < 0.0) throw InvalidParameter("squeezing strength r must be >= 0");
}

void validate(const CoherentParams& p) {
  require_finite(p.beta_abs, "|beta|");
  require_finite(p.theta_beta, "theta_beta");
  if (p.beta_abs < 0.0) throw InvalidParameter("|beta| must be >= 0");
}

void validate(const InputStateSpec& spec) {
  std::visit(Overloaded{[](const Vacuum&) {}, [](const auto& p) { validate(p); }}, spec);
}

double cat_mean_photon(const CatParams& p) {
  validate(p);
  return p.alpha * p.alpha * p.z_d() / p.z_s();
}

double cat_mandel_q(const CatParams& p) {
  validate(p);
  if (cat_mean_photon(p) <= 0.0) throw UndefinedQ("Mandel Q undefined for a cat with zero mean photons");
  // (alpha^4 - nbar^2) / nbar reduces to 4 alpha^2 e^{-2alpha^2} cos(theta) / (z_s z_d).
  const double a2 = p.alpha * p.alpha;
  return 4.0 * a2 * std::exp(-2.0 * a2) * std::cos(p.theta) / (p.z_s() * p.z_d());
}

double sv_mean_photon(const SqueezedVacuumParams& p) {
  validate(p);
  const double s = std::sinh(p.r);
  return s * s;
}

double match_squeezing(double n_target) {
  require_finite(n_target, "target photon number");
  if (n_target < 0.0) throw InvalidParameter("target photon number must be >= 0");
  return std::asinh(std::sqrt(n_target));
}

PhotonStatistics photon_statistics(const InputStateSpec& spec) {
  validate(spec);
  return std::visit(
      Overloaded{
          [](const Vacuum&) { return PhotonStatistics{}; },
          [](const CoherentParams& p) {
            const double n = p.beta_abs * p.beta_abs;
            return PhotonStatistics{n, n};
          },
          [](const CatParams& p) {
            const double n = cat_mean_photon(p);
            const double a2 = p.alpha * p.alpha;
            // alpha^4 - nbar^2 written in the same cancellation-free form as cat_mandel_q.
            const double excess = n > 0.0 ? n * 4.0 * a2 * std::exp(-2.0 * a2) * std::cos(p.theta) /
                                                 (p.z_s() * p.z_d())
                                           : 0.0;
            return PhotonStatistics{n, n + excess};
          },
          [](const SqueezedVacuumParams& p) {
            const double s = std::sinh(p.r);
            const double c = std::cosh(p.r);
            return PhotonStatistics{s * s, 2.0 * s * s * c * c};
          },
      },
      spec);
}

double mandel_q(const InputStateSpec& spec) {
  if (const auto* cat = std::get_if<CatParams>(&spec)) return cat_mandel_q(*cat);
  const PhotonStatistics st = photon_statistics(spec);
  if (st.mean <= 0.0) throw UndefinedQ("Mandel Q undefined for zero mean photon number");
  return st.variance / st.mean - 1.0;
}

}  // namespace su11
