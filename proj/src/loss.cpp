#include "su11/loss.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "su11/errors.hpp"

namespace su11 {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_eta(double eta) {
  if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0) throw InvalidParameter("transmission eta must lie in [0, 1]");
}

// Golden-section search for a minimum of f on [lo, hi].
template <class F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

// One-dimensional minimization over the projective line t in [-pi/2, pi/2).
template <class F>
std::pair<double, double> minimize_angle(F&& f, const MinimizerOptions& opts) {
  const int n = std::max(8, opts.coarse_points);
  const double h = kPi / n;
  double best_t = 0.0;
  double best_f = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double t = -0.5 * kPi + (k + 0.5) * h;
    const double v = f(t);
    if (v < best_f) {
      best_f = v;
      best_t = t;
    }
  }
  auto [t, v] = golden_section(f, best_t - h, best_t + h, opts.angle_tol);
  // Parabolic step through t-e, t, t+e.
  const double e = std::max(1e3 * opts.angle_tol, 1e-7);
  const double fl = f(t - e);
  const double fr = f(t + e);
  const double curv = fl - 2.0 * v + fr;
  if (curv > 0.0) {
    const double tp = t + 0.5 * e * (fl - fr) / curv;
    const double vp = f(tp);
    if (vp < v) {
      t = tp;
      v = vp;
    }
  }
  if (best_f < v) return {best_t, best_f};
  return {t, v};
}

double wrap_angle(double t) {
  // Map to [-pi/2, pi/2); tan has period pi.
  t = std::fmod(t + 0.5 * kPi, kPi);
  if (t < 0.0) t += kPi;
  return t - 0.5 * kPi;
}

double angle_to_gamma(double t) {
  const double c = std::cos(t);
  if (std::abs(c) < 1e-300) return std::sin(t) > 0 ? std::numeric_limits<double>::infinity()
                                                    : -std::numeric_limits<double>::infinity();
  return std::tan(t);
}

}  // namespace

void validate(const LossConfig& loss) {
  validate_eta(loss.eta_a);
  validate_eta(loss.eta_b);
  if (!std::isfinite(loss.gamma_a) || !std::isfinite(loss.gamma_b))
    throw InvalidParameter("loss placement parameters must be finite");
}

BarredMoments barred_moments(const ArmMoments& mom, const LossConfig& loss) {
  validate(mom);
  validate(loss);
  const double ga = loss.shifted_gamma_a();
  const double gb = loss.shifted_gamma_b();
  const double la = 1.0 - loss.eta_a;
  const double lb = 1.0 - loss.eta_b;
  const double fa = 1.0 - ga * la;
  const double fb = 1.0 - gb * lb;
  BarredMoments b;
  b.var_a = fa * fa * mom.var_a + ga * ga * la * loss.eta_a * mom.n_a;
  b.var_b = fb * fb * mom.var_b + gb * gb * lb * loss.eta_b * mom.n_b;
  b.cov = fa * fb * mom.cov;
  return b;
}

Qfim two_arm_qfim(const ArmMoments& mom, const LossConfig& loss) {
  const BarredMoments b = barred_moments(mom, loss);
  Qfim q;
  q.f_ss = b.var_a + b.var_b + 2.0 * b.cov;
  q.f_dd = b.var_a + b.var_b - 2.0 * b.cov;
  q.f_sd = b.var_a - b.var_b;
  q.f_ds = q.f_sd;
  return q;
}

double printed_cross_term_qfi(const ArmMoments& mom, const LossConfig& loss) {
  const BarredMoments b = barred_moments(mom, loss);
  const double c_ss = b.var_a + b.var_b + 2.0 * b.cov;
  const double c_dd = b.var_a + b.var_b - 2.0 * b.cov;
  const double c_sd = b.var_a + b.var_b;
  if (!(c_dd > 0.0)) throw DegenerateQfim("C_dd vanishes", c_ss);
  return c_ss - c_sd * c_sd / c_dd;
}

double single_arm_optimal(const ArmMoments& mom, double eta_a) {
  validate(mom);
  validate_eta(eta_a);
  if (eta_a == 0.0) return 0.0;
  if (eta_a > 1.0 - 1e-9) return phase_sum_qfi(mom);
  const double x = eta_a / (1.0 - eta_a);
  const double zeta = mom.var_a * mom.var_b - mom.cov * mom.cov;
  const double kappa = mom.var_b - mom.cov;
  const double xn = x * mom.n_a;
  const double upsilon = xn * xn * kappa * kappa * (mom.var_a + mom.var_b - 2.0 * mom.cov) +
                         xn * zeta * (2.0 * kappa * kappa + zeta) + zeta * zeta * mom.var_b;
  if (!(upsilon > 0.0)) throw DegenerateQfim("single-arm bound: Upsilon vanishes", 0.0);
  return 4.0 / upsilon * (xn * zeta * zeta * mom.var_b + xn * xn * kappa * kappa * zeta);
}

double extended_qfi_angular(const ArmMoments& mom, double eta_a, double eta_b, double t_a, double t_b) {
  const double ca = std::cos(t_a), sa = std::sin(t_a);
  const double cb = std::cos(t_b), sb = std::sin(t_b);
  const double la = 1.0 - eta_a, lb = 1.0 - eta_b;
  // Every quantity below is the Gamma-form one multiplied by cos^2 (or cos) of its angles.
  const double wa = ca - sa * la;
  const double wb = cb - sb * lb;
  const double va = wa * wa * mom.var_a + sa * sa * la * eta_a * mom.n_a;
  const double vb = wb * wb * mom.var_b + sb * sb * lb * eta_b * mom.n_b;
  const double cv = wa * wb * mom.cov;
  const double num = va * vb - cv * cv;
  const double den = va * cb * cb + vb * ca * ca - 2.0 * ca * cb * cv;
  const double ss = va * cb * cb + vb * ca * ca + 2.0 * ca * cb * cv;
  if (den <= 1e-13 * std::max(std::abs(ss), 1e-300)) {
    const double w = ca * ca * cb * cb;
    return w > 0.0 ? ss / w : std::numeric_limits<double>::infinity();
  }
  return 4.0 * num / den;
}

LossyBound minimize_over_gammas(const ArmMoments& mom, double eta_a, double eta_b, const MinimizerOptions& opts) {
  validate(mom);
  validate_eta(eta_a);
  validate_eta(eta_b);
  LossyBound out;
  const bool free_a = eta_a < 1.0;
  const bool free_b = eta_b < 1.0;
  if (!free_a && !free_b) {
    out.c_value = effective_phase_sum_qfi(qfim_from_moments(mom));
    out.converged = true;
    return out;
  }
  if (eta_a == 0.0 || eta_b == 0.0) {
    // A fully absorbed arm: Gamma = 1 already yields zero information.
    out.c_value = 0.0;
    out.gamma_a_opt = free_a ? 1.0 : 0.0;
    out.gamma_b_opt = free_b ? 1.0 : 0.0;
    out.converged = true;
    return out;
  }

  double t_a = 0.0, t_b = 0.0;
  double value = extended_qfi_angular(mom, eta_a, eta_b, t_a, t_b);
  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    const double previous = value;
    if (free_a) {
      auto [t, v] = minimize_angle([&](double t) { return extended_qfi_angular(mom, eta_a, eta_b, t, t_b); }, opts);
      if (v <= value) {
        t_a = wrap_angle(t);
        value = v;
      }
    }
    if (free_b) {
      auto [t, v] = minimize_angle([&](double t) { return extended_qfi_angular(mom, eta_a, eta_b, t_a, t); }, opts);
      if (v <= value) {
        t_b = wrap_angle(t);
        value = v;
      }
    }
    out.iterations = sweep;
    if (!(free_a && free_b) || std::abs(previous - value) <= opts.rel_tol * std::max(std::abs(value), 1e-300)) {
      out.converged = true;
      break;
    }
  }
  out.c_value = std::max(value, 0.0);
  out.gamma_a_opt = free_a ? angle_to_gamma(t_a) : 0.0;
  out.gamma_b_opt = free_b ? angle_to_gamma(t_b) : 0.0;
  return out;
}

}  // namespace su11
