#include "su11/expm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace su11::linalg {

namespace {

using Mat = Eigen::MatrixXcd;

double norm1(const Mat& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// Returns (U, V) with exp(A) ~ (V - U)^{-1} (V + U).
template <std::size_t N>
std::pair<Mat, Mat> pade_low(const Mat& a, const std::array<double, N>& b) {
  const Mat ident = Mat::Identity(a.rows(), a.cols());
  const Mat a2 = a * a;
  Mat odd = b[1] * ident;
  Mat even = b[0] * ident;
  Mat power = ident;
  for (std::size_t k = 2; k + 1 < N; k += 2) {
    power = power * a2;
    odd += b[k + 1] * power;
    even += b[k] * power;
  }
  return {a * odd, even};
}

std::pair<Mat, Mat> pade13(const Mat& a) {
  static constexpr std::array<double, 14> b = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                               670442572800.0,      33522128640.0,       1323241920.0,
                                               40840800.0,          960960.0,            16380.0,
                                               182.0,               1.0};
  const Mat ident = Mat::Identity(a.rows(), a.cols());
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a4 * a2;
  const Mat inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const Mat u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Mat inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const Mat v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  return {u, v};
}

Mat solve_pade(const std::pair<Mat, Mat>& uv) {
  const auto& [u, v] = uv;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Mat expm(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  if (a.size() == 0) return a;
  const double nrm = norm1(a);
  static constexpr std::array<double, 4> theta = {1.495585217958292e-2, 2.539398330063230e-1,
                                                  9.504178996162932e-1, 2.097847961257068e0};
  if (nrm <= theta[0]) return solve_pade(pade_low(a, std::array<double, 4>{120.0, 60.0, 12.0, 1.0}));
  if (nrm <= theta[1])
    return solve_pade(pade_low(a, std::array<double, 6>{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0}));
  if (nrm <= theta[2])
    return solve_pade(pade_low(
        a, std::array<double, 8>{17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0}));
  if (nrm <= theta[3])
    return solve_pade(pade_low(a, std::array<double, 10>{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                                         30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0}));
  constexpr double theta13 = 5.371920351148152;
  const int s = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / theta13))));
  Mat r = solve_pade(pade13(a / std::ldexp(1.0, s)));
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

std::vector<double> bessel_j_sequence(int n, double x) {
  if (n < 0 || !(x >= 0.0)) throw std::invalid_argument("bessel_j_sequence: need n >= 0 and x >= 0");
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  // Start well above both n and the turning point so the seed error has decayed.
  const int start = std::max(n, static_cast<int>(std::ceil(x))) + 40 + static_cast<int>(std::ceil(10.0 * std::cbrt(x)));
  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[start] = 1e-300;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = (2.0 * k / x) * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > 1e250) {
      for (int i = k - 1; i <= start; ++i) j[i] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j[k];
  for (int k = 0; k <= n; ++k) out[k] = j[k] / norm;
  return out;
}

int expmv_antihermitian_tridiagonal(std::span<const std::complex<double>> lower, std::span<std::complex<double>> v) {
  using cd = std::complex<double>;
  const std::size_t dim = v.size();
  if (dim == 0) return 0;
  if (lower.size() + 1 != dim) throw std::invalid_argument("expmv: lower diagonal must have size dim - 1");
  double radius = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double left = k > 0 ? std::abs(lower[k - 1]) : 0.0;
    const double right = k + 1 < dim ? std::abs(lower[k]) : 0.0;
    radius = std::max(radius, left + right);
  }
  if (radius == 0.0) return 0;

  // X w = (-i/R) K w has its spectrum in [-1, 1]. Row k of X: lo[k] w[k-1] + up[k] w[k+1].
  const cd scale = cd(0.0, -1.0 / radius);
  std::vector<cd> lo(dim, 0.0), up(dim, 0.0);
  for (std::size_t k = 0; k + 1 < dim; ++k) {
    lo[k + 1] = scale * lower[k];
    up[k] = -scale * std::conj(lower[k]);
  }
  // Plain complex products; the NaN/inf recovery of the library operator* is not needed here.
  const auto mul = [](cd x, cd y) {
    return cd(x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real());
  };

  const int n_terms = static_cast<int>(std::ceil(radius + 12.0 * std::cbrt(radius) + 30.0));
  const std::vector<double> bessel = bessel_j_sequence(n_terms, radius);

  // Padded buffers: index k + 1 holds entry k, so the stencil needs no boundary branches.
  std::vector<cd> t_prev(dim + 2, 0.0), t_cur(dim + 2, 0.0), t_next(dim + 2, 0.0);
  std::vector<cd> result(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    t_prev[k + 1] = v[k];
    result[k] = bessel[0] * v[k];
  }
  for (std::size_t k = 0; k < dim; ++k) t_cur[k + 1] = mul(lo[k], t_prev[k]) + mul(up[k], t_prev[k + 2]);
  // c_m = 2 i^m J_m(R)
  int used = 1;
  for (int m = 1; m <= n_terms; ++m) {
    const double c = 2.0 * bessel[m];
    switch (m % 4) {
      case 0: for (std::size_t k = 0; k < dim; ++k) result[k] += c * t_cur[k + 1]; break;
      case 1: for (std::size_t k = 0; k < dim; ++k) result[k] += cd(-c * t_cur[k + 1].imag(), c * t_cur[k + 1].real()); break;
      case 2: for (std::size_t k = 0; k < dim; ++k) result[k] -= c * t_cur[k + 1]; break;
      default: for (std::size_t k = 0; k < dim; ++k) result[k] += cd(c * t_cur[k + 1].imag(), -c * t_cur[k + 1].real()); break;
    }
    used = m + 1;
    if (m > radius && std::abs(bessel[m]) < 1e-18 && std::abs(bessel[m - 1]) < 1e-18) break;
    for (std::size_t k = 0; k < dim; ++k)
      t_next[k + 1] = 2.0 * (mul(lo[k], t_cur[k]) + mul(up[k], t_cur[k + 2])) - t_prev[k + 1];
    std::swap(t_prev, t_cur);
    std::swap(t_cur, t_next);
  }
  std::copy(result.begin(), result.end(), v.begin());
  return used;
}

}  // namespace su11::linalg
