#include "helpers.hpp"
#include "su11/errors.hpp"
#include "su11/interferometer.hpp"

using namespace su11;
using su11::test::kPi;

namespace {

// Converged values of an independent truncated-Fock computation (cutoffs 300 and 600).
const ArmMoments kCatYs{14.381729954182026, 16.18172995418203, 214.13362182513634, 224.13612672567416,
                        216.79487427540522};
const ArmMoments kCatOddVac{15.401169312863617, 11.398484711256883, 80.16112370604213, 58.03780241262575,
                            67.10886276850047};
const ArmMoments kSvMatched{9.084839969779296, 8.703742124237477, 148.86644616277115, 117.87502834824397,
                            129.58220815100552};

}  // namespace

TEST_CASE("Bogoliubov condition") {
  for (double g = 0.0; g <= 5.0; g += 0.05) {
    const GainConfig gain{g, 0.7};
    const double u = gain.u();
    CHECK(std::abs(u * u - std::norm(gain.v()) - 1.0) <= 1e-12 * u * u);
    CHECK(std::abs(gain.v()) == doctest::Approx(std::sinh(g)));
  }
  CHECK_THROWS_AS(validate(GainConfig{-0.1, 0.0}), InvalidParameter);
}

TEST_CASE("theta_G is theta_beta - theta_g") {
  CHECK(theta_G(CoherentParams{1.0, 2.0}, GainConfig{1.0, 0.5}) == doctest::Approx(1.5));
}

TEST_CASE("cat correlations") {
  const CoherentParams b{1.8, 0.3};
  CHECK(cat_correlations({1.2, kPi}, b, {1.2, 0.0}).n_q == doctest::Approx(0.0));
  const CatCorrelations zero = cat_correlations({1.2, 0.5 * kPi}, b, {0.0, 0.0});
  CHECK(zero.n_q == 0.0);
  CHECK(zero.n_Q == 0.0);
  const CatCorrelations c = cat_correlations({1.2, 0.5 * kPi}, CoherentParams{1.8, 0.5 * kPi}, {1.2, 0.0});
  CHECK(c.n_q == doctest::Approx(0.663).epsilon(1e-3));
  CHECK(c.n_Q == doctest::Approx(-69.69).epsilon(1e-3));
  su11::test::Rng rng;
  for (int i = 0; i < 200; ++i)
    CHECK(std::abs(cat_correlations({rng(0.1, 3.0), kPi}, {rng(0.0, 3.0), rng(0.0, 6.3)}, {rng(0.0, 1.5), 0.0}).n_q) <
          1e-12);
}

TEST_CASE("cat arm moments") {
  const ArmMoments g0 = arm_moments_cat({2.0, kPi}, {}, {0.0, 0.0});
  CHECK(g0.n_a == doctest::Approx(4.002685).epsilon(1e-6));
  CHECK(g0.n_b == 0.0);
  CHECK(g0.var_b == 0.0);
  CHECK(g0.cov == doctest::Approx(0.0));

  const ArmMoments m = arm_moments_cat({2.0, kPi}, {}, {1.2, 0.0});
  CHECK(m.n_b == doctest::Approx(11.3985).epsilon(1e-5));
  su11::test::check_moments(m, kCatOddVac, 1e-10);

  su11::test::check_moments(arm_moments_cat({1.2, 0.5 * kPi}, {1.8, 0.0}, {1.2, 0.0}), kCatYs, 1e-10);
}

TEST_CASE("squeezed vacuum arm moments") {
  const ArmMoments zero = arm_moments_sv({0.0, 0.0}, {}, {0.0, 0.0});
  CHECK(zero.n_a == 0.0);
  CHECK(zero.n_b == 0.0);
  CHECK(zero.var_a == 0.0);
  CHECK(zero.var_b == 0.0);
  CHECK(zero.cov == 0.0);

  const double c12 = std::cosh(1.2), s12 = std::sinh(1.2), s1 = std::sinh(1.0), c1 = std::cosh(1.0);
  CHECK_REL(arm_moments_sv({1.0, 0.0}, {}, {1.2, 0.0}).n_a, c12 * c12 * s1 * s1 + s12 * s12, 1e-13);

  const ArmMoments m = arm_moments_sv({1.0, kPi}, {1.0, 0.0}, {1.2, 0.0});
  const double s24 = std::sinh(2.4);
  CHECK_REL(m.cov, 0.25 * s24 * s24 * (1.0 + std::exp(2.0) + 2.0 * s1 * s1 * c1 * c1 + c1 * c1), 1e-13);
  su11::test::check_moments(m, kSvMatched, 1e-10);
  CHECK(matched_squeezing_phase(0.0) == doctest::Approx(kPi));
  CHECK(matched_squeezing_phase(kPi) == doctest::Approx(kPi));
  CHECK(matched_squeezing_phase(0.5 * kPi) == doctest::Approx(0.0));
}

TEST_CASE("dispatch and unsupported pairs") {
  CHECK_THROWS_AS(arm_moments(CoherentParams{1.0, 0.0}, CoherentParams{1.0, 0.0}, {1.0, 0.0}),
                  UnsupportedConfiguration);
  CHECK_THROWS_AS(arm_moments(CatParams{1.0, 0.0}, CatParams{1.0, 0.0}, {1.0, 0.0}), UnsupportedConfiguration);
  CHECK_THROWS_AS(total_photons(CoherentParams{1.0, 0.0}, Vacuum{}, {1.0, 0.0}), UnsupportedConfiguration);
  su11::test::check_moments(arm_moments(Vacuum{}, Vacuum{}, {0.9, 0.0}), arm_moments_sv({0.0, 0.0}, {}, {0.9, 0.0}),
                            1e-15);
}

TEST_CASE("total photons") {
  CHECK(total_photons(CatParams{2.0, kPi}, Vacuum{}, {0.0, 0.0}) == doctest::Approx(4.002685).epsilon(1e-6));
  CHECK(total_photons(Vacuum{}, Vacuum{}, {1.2, 0.0}) == doctest::Approx(4.55695).epsilon(1e-5));
  su11::test::Rng rng;
  for (int i = 0; i < 1000; ++i) {
    const GainConfig gain{rng(0.0, 1.5), rng(0.0, 6.3)};
    const CoherentParams b{rng(0.0, 3.0), rng(0.0, 6.3)};
    const CatParams cat{rng(0.05, 3.0), rng(0.0, 6.3)};
    const SqueezedVacuumParams sv{rng(0.0, 1.5), rng(0.0, 6.3)};
    const ArmMoments mc = arm_moments(cat, b, gain);
    const ArmMoments ms = arm_moments(sv, b, gain);
    CHECK_REL(total_photons(cat, b, gain), mc.n_a + mc.n_b, 1e-10);
    CHECK_REL(total_photons(sv, b, gain), ms.n_a + ms.n_b, 1e-10);
    CHECK_NOTHROW(validate(mc));
    CHECK_NOTHROW(validate(ms));
  }
}

TEST_CASE("moment validation") {
  CHECK_THROWS_AS(validate(ArmMoments{1.0, 1.0, 1.0, 1.0, 2.0}), InconsistentMoments);
  CHECK_THROWS_AS(validate(ArmMoments{-1.0, 1.0, 1.0, 1.0, 0.0}), InconsistentMoments);
  CHECK_THROWS_AS(validate(ArmMoments{1.0, 1.0, -1.0, 1.0, 0.0}), InconsistentMoments);
  CHECK_NOTHROW(validate(ArmMoments{1.0, 1.0, 1.0, 1.0, 1.0}));
}
