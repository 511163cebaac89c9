#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace su11::linalg {

/// Matrix exponential by scaling and squaring with diagonal Pade approximants
/// of degree 3, 5, 7, 9 or 13 chosen from the 1-norm.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

/// J_0(x) ... J_n(x) by Miller's backward recurrence, normalized with
/// J_0 + 2 sum J_2k = 1. Requires x >= 0.
std::vector<double> bessel_j_sequence(int n, double x);

/// In-place v <- exp(K) v for an anti-Hermitian tridiagonal K with zero diagonal,
/// K(k+1, k) = lower[k] and K(k, k+1) = -conj(lower[k]). Chebyshev expansion of
/// exp(iH) with H = -iK scaled by a Gershgorin bound. Returns the number of terms used.
int expmv_antihermitian_tridiagonal(std::span<const std::complex<double>> lower,
                                    std::span<std::complex<double>> v);

}  // namespace su11::linalg
