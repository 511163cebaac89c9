#include "helpers.hpp"
#include "su11/errors.hpp"
#include "su11/oracle.hpp"

using namespace su11;
using namespace su11::oracle;
using su11::test::kPi;

TEST_CASE("input construction") {
  const FockVector vac = build_input(Vacuum{}, Vacuum{}, 10);
  CHECK(vac(0, 0) == std::complex<double>(1.0));
  CHECK(vac.norm() == doctest::Approx(1.0));

  const FockVector odd = build_input(CatParams{1.0, kPi}, Vacuum{}, 40);
  for (int n = 0; n <= 40; n += 2) CHECK(odd(n, 0) == std::complex<double>(0.0));
  const FockVector even = build_input(CatParams{1.0, 0.0}, Vacuum{}, 40);
  for (int n = 1; n <= 40; n += 2) CHECK(even(n, 0) == std::complex<double>(0.0));
  CHECK(std::abs(odd.norm() - 1.0) < 1e-12);

  CHECK_REL(moments(build_input(CatParams{2.0, kPi}, Vacuum{}, 60)).n_a, cat_mean_photon({2.0, kPi}), 1e-12);

  CHECK_THROWS_AS(build_input(Vacuum{}, Vacuum{}, 4), InvalidParameter);
  try {
    build_input(CoherentParams{5.0, 0.0}, Vacuum{}, 20);
    FAIL("expected InsufficientCutoff");
  } catch (const InsufficientCutoff& e) {
    CHECK(e.required_cutoff() > 20);
  }
}

TEST_CASE("single-mode amplitudes carry the analytic normalization") {
  double leak = 1.0;
  const Eigen::VectorXcd c = single_mode_amplitudes(SqueezedVacuumParams{0.5, 0.4}, 120, &leak);
  CHECK(leak < 1e-14);
  for (int n = 1; n <= 120; n += 2) CHECK(c[n] == std::complex<double>(0.0));
  single_mode_amplitudes(CoherentParams{3.0, 0.0}, 10, &leak);
  CHECK(leak > 0.1);
}

TEST_CASE("NBS action") {
  const FockVector in = build_input(CatParams{0.8, 0.4}, CoherentParams{0.6, 1.0}, 40);
  const FockVector same = apply_nbs(in, {0.0, 0.3});
  CHECK((same.amplitudes() - in.amplitudes()).norm() == 0.0);

  const FockVector tmsv = apply_nbs(build_input(Vacuum{}, Vacuum{}, 160), {1.2, 0.0});
  const double s2 = std::pow(std::sinh(1.2), 2);
  CHECK_REL(moments(tmsv).n_a, s2, 1e-9);
  CHECK_REL(moments(tmsv).n_b, s2, 1e-9);
  CHECK(std::abs(tmsv.norm() - 1.0) < 1e-10);

  // Heisenberg picture: <a> = u beta_a + v conj(beta_b).
  const CoherentParams ba{0.7, 0.3}, bb{0.4, 1.1};
  const GainConfig gain{0.5, 0.8};
  const FockVector out = apply_nbs(build_input(ba, bb, 60), gain);
  const auto ea = std::polar(ba.beta_abs, ba.theta_beta), eb = std::polar(bb.beta_abs, bb.theta_beta);
  CHECK(std::abs(mean_field(out, Mode::kA) - (gain.u() * ea + gain.v() * std::conj(eb))) < 1e-10);
  CHECK(std::abs(mean_field(out, Mode::kB) - (gain.u() * eb + gain.v() * std::conj(ea))) < 1e-10);

  CHECK_THROWS_AS(apply_nbs(build_input(Vacuum{}, Vacuum{}, 20), {1.2, 0.0}), InsufficientCutoff);
}

TEST_CASE("propagators agree") {
  const FockVector in = build_input(CatParams{1.1, 2.0}, CoherentParams{0.9, 0.4}, 70);
  const FockVector a = apply_nbs(in, {0.8, 1.3}, Propagator::kChebyshev);
  const FockVector b = apply_nbs(in, {0.8, 1.3}, Propagator::kDensePade);
  CHECK((a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("moments and QFIM of simple states") {
  const ArmMoments coh = moments(build_input(CoherentParams{1.3, 0.2}, CoherentParams{0.8, 2.0}, 50));
  CHECK(coh.var_a == doctest::Approx(coh.n_a));
  CHECK(coh.var_b == doctest::Approx(coh.n_b));
  CHECK(std::abs(coh.cov) < 1e-12);

  const Qfim zero = pure_qfim(build_input(Vacuum{}, Vacuum{}, 10));
  CHECK(zero.f_ss == 0.0);
  CHECK(zero.f_dd == 0.0);
  CHECK(zero.f_sd == 0.0);

  const FockVector out = apply_nbs(build_input(CatParams{1.0, 1.0}, CoherentParams{1.0, 0.5}, 80), {0.6, 0.1});
  const Qfim direct = pure_qfim(out);
  const Qfim via = qfim_from_moments(moments(out));
  CHECK_REL(direct.f_ss, via.f_ss, 1e-11);
  CHECK_REL(direct.f_dd, via.f_dd, 1e-11);
  CHECK_REL(direct.f_sd, via.f_sd, 1e-10);
}

TEST_CASE("converged oracle against frozen values") {
  const OracleResult cat = converged_statistics(CatParams{2.0, kPi}, Vacuum{}, {1.2, 0.0});
  CHECK_REL(cat.phase_sum_qfi, 149.4785240703459, 1e-9);
  CHECK(cat.rel_change < 1e-8);
  su11::test::check_moments(cat.moments,
                            {15.401169312863617, 11.398484711256883, 80.16112370604213, 58.03780241262575,
                             67.10886276850047},
                            1e-9);

  const OracleResult ys = converged_statistics(CatParams{1.2, 0.5 * kPi}, CoherentParams{1.8, 0.0}, {1.2, 0.0});
  su11::test::check_moments(ys.moments,
                            {14.381729954182026, 16.18172995418203, 214.13362182513634, 224.13612672567416,
                             216.79487427540522},
                            1e-9);

  const SqueezedVacuumParams sv{match_squeezing(cat_mean_photon({2.0, kPi})), 0.0};
  CHECK_REL(converged_statistics(sv, Vacuum{}, {1.2, 0.0}).phase_sum_qfi, cat.phase_sum_qfi, 1e-8);

  const OracleResult svb = converged_statistics(SqueezedVacuumParams{1.0, kPi}, CoherentParams{1.0, 0.0}, {1.2, 0.0});
  CHECK_REL(svb.phase_sum_qfi, 399.14588031010703, 1e-8);

  OracleOptions tight;
  tight.cap = 60;
  CHECK_THROWS_AS(converged_statistics(CatParams{2.0, kPi}, Vacuum{}, {1.2, 0.0}, tight), InsufficientCutoff);
}

TEST_CASE("loss channel") {
  const FockVector psi =
      apply_nbs(build_input(CatParams{0.8, 0.3}, CoherentParams{0.5, 1.0}, 12), {0.2, 0.4}, Propagator::kChebyshev, 1.0);
  const FockDensity rho = to_density(psi);
  CHECK(rho.is_hermitian());
  CHECK(rho.trace() == doctest::Approx(1.0));

  CHECK((loss_channel(rho, 1.0, Mode::kA).matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-15);

  const FockDensity absorbed = loss_channel(rho, 0.0, Mode::kB);
  const ArmMoments m0 = moments(absorbed);
  CHECK(m0.n_b == doctest::Approx(0.0));
  CHECK(m0.var_b == doctest::Approx(0.0));

  for (const Mode mode : {Mode::kA, Mode::kB}) {
    const FockDensity twice = loss_channel(loss_channel(rho, 0.7, mode), 0.6, mode);
    const FockDensity once = loss_channel(rho, 0.42, mode);
    CHECK((twice.matrix() - once.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }

  const FockDensity lossy = loss_channel(loss_channel(rho, 0.5, Mode::kA), 0.3, Mode::kB);
  CHECK(lossy.is_hermitian());
  CHECK(std::abs(lossy.trace() - 1.0) < 1e-10);
  CHECK(lossy.min_eigenvalue() > -1e-10);

  const Eigen::MatrixXd pop =
      loss_populations(loss_populations(populations(psi), 0.5, Mode::kA), 0.3, Mode::kB);
  CHECK((pop - populations(lossy)).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(loss_channel(rho, 1.2, Mode::kA), InvalidParameter);
  CHECK_THROWS_AS(loss_populations(populations(psi), -0.1, Mode::kA), InvalidParameter);
}

TEST_CASE("lossy moments match thinned statistics") {
  const CatParams cat{1.0, kPi};
  const GainConfig gain{0.6, 0.0};
  const ArmMoments raw = converged_statistics(cat, Vacuum{}, gain).moments;
  const ArmMoments lossy = converged_lossy_moments(cat, Vacuum{}, gain, 0.8, 0.3);
  CHECK_REL(lossy.n_a, 0.8 * raw.n_a, 1e-10);
  CHECK_REL(lossy.n_b, 0.3 * raw.n_b, 1e-10);
  CHECK_REL(lossy.var_a, 0.64 * raw.var_a + 0.8 * 0.2 * raw.n_a, 1e-10);
  CHECK_REL(lossy.cov, 0.24 * raw.cov, 1e-10);
}
