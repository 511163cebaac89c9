#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "su11/interferometer.hpp"

namespace su11::test {

constexpr double kPi = std::numbers::pi;

inline double rel(double value, double reference) {
  if (value == reference) return 0.0;
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

#define CHECK_REL(value, reference, tol) CHECK(::su11::test::rel((value), (reference)) <= (tol))

inline void check_moments(const ArmMoments& m, const ArmMoments& ref, double tol) {
  CHECK_REL(m.n_a, ref.n_a, tol);
  CHECK_REL(m.n_b, ref.n_b, tol);
  CHECK_REL(m.var_a, ref.var_a, tol);
  CHECK_REL(m.var_b, ref.var_b, tol);
  CHECK_REL(m.cov, ref.cov, tol);
}

struct Rng {
  std::mt19937_64 gen{12345};
  double operator()(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
};

}  // namespace su11::test
