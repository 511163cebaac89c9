#include "su11/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "su11/errors.hpp"
#include "su11/loss.hpp"
#include "su11/oracle.hpp"

namespace su11 {

namespace {

constexpr double kPi = std::numbers::pi;
using oracle::Mode;

struct Check {
  std::string name;
  std::function<CheckResult()> run;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string describe(const InputStateSpec& s) {
  if (const auto* c = std::get_if<CatParams>(&s)) return "cat(alpha=" + fmt(c->alpha) + ",theta=" + fmt(c->theta) + ")";
  if (const auto* v = std::get_if<SqueezedVacuumParams>(&s)) return "sv(r=" + fmt(v->r) + ",eta=" + fmt(v->eta_sq) + ")";
  if (const auto* b = std::get_if<CoherentParams>(&s))
    return "coh(abs=" + fmt(b->beta_abs) + ",phase=" + fmt(b->theta_beta) + ")";
  return "vac";
}

std::string describe(const InputStateSpec& a, const InputStateSpec& b, const GainConfig& gain) {
  return describe(a) + " x " + describe(b) + " g=" + fmt(gain.g) + " theta_g=" + fmt(gain.theta_g);
}

double moments_error(const ArmMoments& m, const ArmMoments& ref) {
  return std::max({rel_error(m.n_a, ref.n_a), rel_error(m.n_b, ref.n_b), rel_error(m.var_a, ref.var_a),
                   rel_error(m.var_b, ref.var_b), rel_error(m.cov, ref.cov)});
}

CheckResult make(std::string name, double residual, double tol, std::string config, std::string note = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.residual = residual;
  r.tol = tol;
  r.pass = std::isfinite(residual) && residual <= tol;
  r.config = std::move(config);
  r.note = std::move(note);
  return r;
}

struct Sampler {
  std::mt19937_64 rng;
  bool quick;

  double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  GainConfig gain() { return GainConfig{uni(0.05, quick ? 0.5 : 1.2), uni(0.0, 2.0 * kPi)}; }
  CoherentParams beta() { return CoherentParams{uni(0.0, quick ? 1.0 : 2.0), uni(0.0, 2.0 * kPi)}; }
  CatParams cat() { return CatParams{uni(0.1, quick ? 1.0 : 2.0), uni(0.0, 2.0 * kPi)}; }
  SqueezedVacuumParams sv(const CoherentParams& b, const GainConfig& g) {
    const double r = uni(0.0, quick ? 0.5 : 1.5);
    return SqueezedVacuumParams{r, matched_squeezing_phase(theta_G(b, g))};
  }
};

oracle::OracleOptions oracle_options(bool quick) {
  oracle::OracleOptions o;
  if (quick) o.cap = 300;
  return o;
}

CheckResult equivalence_check(const std::string& name, const InputStateSpec& a, const InputStateSpec& b,
                              const GainConfig& gain, bool quick) {
  const oracle::OracleResult ref = oracle::converged_statistics(a, b, gain, oracle_options(quick));
  const ArmMoments mom = arm_moments(a, b, gain);
  const CheckedQfi q = checked_qfi(a, b, gain);
  double res = moments_error(mom, ref.moments);
  res = std::max(res, rel_error(q.pipeline, ref.phase_sum_qfi));
  if (!std::isnan(q.closed)) res = std::max(res, rel_error(q.closed, ref.phase_sum_qfi));
  return make(name, res, 1e-6, describe(a, b, gain), "cutoff=" + std::to_string(ref.cutoff));
}

double single_mode_mean(const Eigen::VectorXcd& c, double* var = nullptr) {
  double s0 = 0, s1 = 0, s2 = 0;
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    const double p = std::norm(c[n]);
    s0 += p;
    s1 += p * n;
    s2 += p * n * n;
  }
  if (var) *var = s2 / s0 - (s1 / s0) * (s1 / s0);
  return s1 / s0;
}

std::vector<Check> build_checks(const VerifyOptions& opts) {
  std::vector<Check> checks;
  const bool quick = opts.quick;

  checks.push_back({"nbs_phase", [] {
    const CoherentParams ba{0.7, 0.3}, bb{0.4, 1.1};
    const GainConfig gain{0.5, 0.8};
    const oracle::FockVector out = oracle::apply_nbs(oracle::build_input(ba, bb, 60), gain);
    const std::complex<double> ea = std::polar(ba.beta_abs, ba.theta_beta);
    const std::complex<double> eb = std::polar(bb.beta_abs, bb.theta_beta);
    const std::complex<double> want_a = gain.u() * ea + gain.v() * std::conj(eb);
    const std::complex<double> want_b = gain.u() * eb + gain.v() * std::conj(ea);
    const double res = std::max(std::abs(oracle::mean_field(out, Mode::kA) - want_a),
                                std::abs(oracle::mean_field(out, Mode::kB) - want_b));
    return make("nbs_phase", res, 1e-9, describe(ba, bb, gain));
  }});

  checks.push_back({"vacuum_nbs", [quick] {
    const GainConfig gain{1.2, 0.0};
    const oracle::OracleResult r = oracle::converged_statistics(Vacuum{}, Vacuum{}, gain, oracle_options(quick));
    const double s2 = std::pow(std::sinh(gain.g), 2);
    return make("vacuum_nbs", std::max(rel_error(r.moments.n_a, s2), rel_error(r.moments.n_b, s2)), 1e-8,
                describe(Vacuum{}, Vacuum{}, gain));
  }});

  checks.push_back({"unitarity", [] {
    const CatParams cat{1.0, 0.5 * kPi};
    const CoherentParams b{0.8, 0.4};
    const GainConfig gain{0.7, 0.2};
    const oracle::FockVector out = oracle::apply_nbs(oracle::build_input(cat, b, 80), gain);
    return make("unitarity", std::abs(out.norm() - 1.0), 1e-10, describe(cat, b, gain));
  }});

  checks.push_back({"propagators", [] {
    const CatParams cat{1.0, 0.5 * kPi};
    const CoherentParams b{0.8, 0.4};
    const GainConfig gain{0.7, 0.2};
    const oracle::FockVector in = oracle::build_input(cat, b, 60);
    const oracle::FockVector x = oracle::apply_nbs(in, gain, oracle::Propagator::kChebyshev);
    const oracle::FockVector y = oracle::apply_nbs(in, gain, oracle::Propagator::kDensePade);
    return make("propagators", (x.amplitudes() - y.amplitudes()).cwiseAbs().maxCoeff(), 1e-11,
                describe(cat, b, gain));
  }});

  checks.push_back({"cat_mean", [] {
    const CatParams cat{2.0, kPi};
    const double n = single_mode_mean(oracle::single_mode_amplitudes(cat, 80));
    return make("cat_mean", rel_error(n, cat_mean_photon(cat)), 1e-10, describe(cat));
  }});

  for (const auto& [label, theta] : {std::pair{"even", 0.0}, {"ys", 0.5 * kPi}, {"odd", kPi}}) {
    const std::string name = std::string("mandel_") + label;
    checks.push_back({name, [name, theta] {
      const CatParams cat{1.0, theta};
      double var = 0.0;
      const double n = single_mode_mean(oracle::single_mode_amplitudes(cat, 60), &var);
      const double q = var / n - 1.0;
      return make(name, std::abs(q - cat_mandel_q(cat)), 1e-10, describe(cat), "Q=" + fmt(q));
    }});
  }

  checks.push_back({"sv_mean", [] {
    const SqueezedVacuumParams sv{1.0, 0.3};
    double var = 0.0;
    const double n = single_mode_mean(oracle::single_mode_amplitudes(sv, 200), &var);
    const double res = std::max(rel_error(n, sv_mean_photon(sv)), rel_error(var, photon_statistics(sv).variance));
    return make("sv_mean", res, 1e-10, describe(sv));
  }});

  checks.push_back({"cat_anchor", [quick] {
    const CatParams cat{2.0, kPi};
    const GainConfig gain{1.2, 0.0};
    const oracle::OracleResult r = oracle::converged_statistics(cat, Vacuum{}, gain, oracle_options(quick));
    const double closed = std::pow(std::sinh(2.0 * gain.g), 2) * (1.0 + cat_mean_photon(cat));
    const double res = std::max(rel_error(r.phase_sum_qfi, closed), rel_error(r.phase_sum_qfi, 149.4785240703459));
    return make("cat_anchor", res, 1e-8, describe(cat, Vacuum{}, gain), "F=" + fmt(r.phase_sum_qfi));
  }});

  checks.push_back({"sv_matched_oracle", [quick] {
    const CatParams cat{2.0, kPi};
    const SqueezedVacuumParams sv{match_squeezing(cat_mean_photon(cat)), 0.0};
    const GainConfig gain{quick ? 0.6 : 1.2, 0.0};
    const oracle::OracleResult r = oracle::converged_statistics(sv, Vacuum{}, gain, oracle_options(quick));
    const double cat_f = qfi_cat_closed(cat, CoherentParams{}, gain);
    return make("sv_matched_oracle", rel_error(r.phase_sum_qfi, cat_f), 1e-8, describe(sv, Vacuum{}, gain),
                "F=" + fmt(r.phase_sum_qfi));
  }});

  // Random closed-form versus oracle configurations.
  Sampler s{std::mt19937_64(opts.seed), quick};
  const int per_family = quick ? 2 : 8;
  for (int k = 1; k <= per_family; ++k) {
    const GainConfig gain = s.gain();
    const CoherentParams b = s.beta();
    const CatParams cat = s.cat();
    const std::string name = "cat_oracle_" + std::to_string(k);
    checks.push_back({name, [=] { return equivalence_check(name, cat, b, gain, quick); }});
  }
  for (int k = 1; k <= per_family; ++k) {
    const GainConfig gain = s.gain();
    const CoherentParams b = s.beta();
    const SqueezedVacuumParams sv = s.sv(b, gain);
    const std::string name = "sv_oracle_" + std::to_string(k);
    checks.push_back({name, [=] { return equivalence_check(name, sv, b, gain, quick); }});
  }

  checks.push_back({"loss_composition", [] {
    const CatParams cat{0.8, 0.3};
    const CoherentParams b{0.5, 1.0};
    const oracle::FockVector psi = oracle::apply_nbs(oracle::build_input(cat, b, 12), GainConfig{0.2, 0.4},
                                                     oracle::Propagator::kChebyshev, 1.0);
    const oracle::FockDensity rho = oracle::to_density(psi);
    const oracle::FockDensity twice =
        oracle::loss_channel(oracle::loss_channel(rho, 0.7, Mode::kA), 0.6, Mode::kA);
    const oracle::FockDensity once = oracle::loss_channel(rho, 0.42, Mode::kA);
    return make("loss_composition", (twice.matrix() - once.matrix()).cwiseAbs().maxCoeff(), 1e-8,
                describe(cat, b, GainConfig{0.2, 0.4}) + " cutoff=12");
  }});

  checks.push_back({"loss_state", [] {
    const CatParams cat{0.8, 0.3};
    const CoherentParams b{0.5, 1.0};
    const oracle::FockVector psi = oracle::apply_nbs(oracle::build_input(cat, b, 12), GainConfig{0.2, 0.4},
                                                     oracle::Propagator::kChebyshev, 1.0);
    const oracle::FockDensity out =
        oracle::loss_channel(oracle::loss_channel(oracle::to_density(psi), 0.5, Mode::kA), 0.3, Mode::kB);
    const double herm = (out.matrix() - out.matrix().adjoint()).cwiseAbs().maxCoeff();
    const double res = std::max({std::abs(out.trace() - 1.0), herm, std::max(0.0, -out.min_eigenvalue())});
    return make("loss_state", res, 1e-10, describe(cat, b, GainConfig{0.2, 0.4}) + " cutoff=12");
  }});

  for (const double eta : {0.3, 0.5, 0.8}) {
    const std::string name = "eq26_eta" + fmt(eta);
    checks.push_back({name, [name, eta, quick] {
      // Gamma = 1 in both arms: the barred moments are the moments of the lossy state.
      const CatParams cat{1.0, kPi};
      const GainConfig gain{quick ? 0.5 : 1.2, 0.0};
      const ArmMoments mom = arm_moments(cat, Vacuum{}, gain);
      const LossConfig loss{eta, eta, 0.0, 0.0};
      const BarredMoments bar = barred_moments(mom, loss);
      const ArmMoments ref = oracle::converged_lossy_moments(cat, Vacuum{}, gain, eta, eta, oracle_options(quick));
      const double res =
          std::max({rel_error(bar.var_a, ref.var_a), rel_error(bar.var_b, ref.var_b), rel_error(bar.cov, ref.cov)});
      const Qfim q = two_arm_qfim(mom, loss);
      std::string note = "C_corrected=" + fmt(phase_sum_qfi(q));
      try {
        note += " C_printed=" + fmt(printed_cross_term_qfi(mom, loss));
      } catch (const Error&) {
        note += " C_printed=nan";
      }
      return make(name, res, 1e-6, describe(cat, Vacuum{}, gain) + " eta_a=eta_b=" + fmt(eta), note);
    }});
  }

  checks.push_back({"eq26_density", [] {
    // Same identity on the full density matrix at a small cutoff (exact in the truncated space).
    const CatParams cat{0.6, kPi};
    const GainConfig gain{0.15, 0.0};
    const oracle::FockVector psi = oracle::apply_nbs(oracle::build_input(cat, Vacuum{}, 16), gain,
                                                     oracle::Propagator::kChebyshev, 1e-6);
    const oracle::FockDensity out =
        oracle::loss_channel(oracle::loss_channel(oracle::to_density(psi), 0.8, Mode::kA), 0.8, Mode::kB);
    const ArmMoments ref = oracle::moments(out);
    const ArmMoments mom = oracle::moments(psi);
    const BarredMoments bar = barred_moments(mom, LossConfig{0.8, 0.8, 0.0, 0.0});
    const double res =
        std::max({rel_error(bar.var_a, ref.var_a), rel_error(bar.var_b, ref.var_b), rel_error(bar.cov, ref.cov)});
    return make("eq26_density", res, 1e-10, describe(cat, Vacuum{}, gain) + " eta=0.8 cutoff=16");
  }});

  checks.push_back({"single_arm_minimizer", [seed = opts.seed, quick] {
    Sampler s2{std::mt19937_64(seed ^ 0x9e3779b97f4a7c15ULL), quick};
    double worst = 0.0;
    std::string where;
    for (int k = 0; k < (quick ? 10 : 40); ++k) {
      const GainConfig gain = s2.gain();
      const CoherentParams b = s2.beta();
      const CatParams cat = s2.cat();
      const double eta = s2.uni(0.05, 0.95);
      const ArmMoments mom = arm_moments(cat, b, gain);
      const double closed = single_arm_optimal(mom, eta);
      const double numeric = minimize_over_gammas(mom, eta, 1.0).c_value;
      const double e = rel_error(numeric, closed);
      if (e >= worst) {
        worst = e;
        where = describe(cat, b, gain) + " eta_a=" + fmt(eta);
      }
    }
    return make("single_arm_minimizer", worst, 1e-4, where);
  }});

  checks.push_back({"matched_equality", [] {
    double worst = 0.0;
    for (const double alpha : {0.5, 1.0, 2.0, 3.0})
      for (const double theta : {0.0, 0.5 * kPi, kPi}) {
        const CatParams cat{alpha, theta};
        const GainConfig gain{1.2, 0.0};
        const double fc = qfi_cat_closed(cat, CoherentParams{}, gain);
        const double fs =
            qfi_sv_closed(SqueezedVacuumParams{match_squeezing(cat_mean_photon(cat)), 0.0}, CoherentParams{}, gain);
        worst = std::max(worst, rel_error(fc, fs));
      }
    return make("matched_equality", worst, 1e-10, "alpha in {0.5,1,2,3} theta in {0,pi/2,pi} beta=0 g=1.2");
  }});

  checks.push_back({"closed_identity", [seed = opts.seed, quick] {
    Sampler s3{std::mt19937_64(seed + 7), false};
    double worst = 0.0;
    std::string where;
    for (int k = 0; k < (quick ? 50 : 400); ++k) {
      const GainConfig gain = s3.gain();
      const CoherentParams b = s3.beta();
      const CheckedQfi c1 = checked_qfi(s3.cat(), b, gain);
      const CheckedQfi c2 = checked_qfi(s3.sv(b, gain), b, gain);
      for (const CheckedQfi& c : {c1, c2})
        if (!std::isnan(c.closed) && c.rel_residual >= worst) {
          worst = c.rel_residual;
          where = "sample " + std::to_string(k) + " " + describe(b) + " g=" + fmt(gain.g);
        }
    }
    return make("closed_identity", worst, kClosedFormTolerance, where);
  }});

  return checks;
}

}  // namespace

double rel_error(double value, double reference, double floor) {
  if (value == reference) return 0.0;
  return std::abs(value - reference) / std::max(std::abs(reference), floor);
}

std::string format_check(const CheckResult& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, " residual=%.3e tol=%.1e", r.residual, r.tol);
  std::string line = "check=" + r.name + " status=" + (r.pass ? "PASS" : "FAIL") + buf;
  if (!r.config.empty()) line += " config=\"" + r.config + "\"";
  if (!r.note.empty()) line += " note=\"" + r.note + "\"";
  return line;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  for (const Check& c : build_checks(opts)) {
    if (!opts.only.empty() && c.name.rfind(opts.only, 0) != 0) continue;
    try {
      out.push_back(c.run());
    } catch (const Error& e) {
      CheckResult r = make(c.name, std::numeric_limits<double>::infinity(), 0.0, "", e.what());
      r.pass = false;
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace su11
