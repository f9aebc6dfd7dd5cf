#pragma once

// Reference implementations used only by the tests. Each one takes a route
// that is independent of the production code it checks.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

namespace mp = boost::multiprecision;
using Rational = mp::cpp_rational;
using Float300 = mp::number<mp::cpp_bin_float<300>>;

/// ln(n!) from the exact integer product.
inline double log_factorial_exact(unsigned n) {
  mp::cpp_int f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return static_cast<double>(mp::log(Float300(f)));
}

/// J1 by its power series in long double.
inline long double bessel_j1_series(long double x) {
  const long double half = x / 2;
  long double term = half;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -(half * half) / (static_cast<long double>(k) * (k + 1));
    sum += term;
    if (std::fabs(term) < 1e-22L) break;
  }
  return sum;
}

/// Coefficients c_m of J1(z)^2 = sum_m c_m (z/2)^{2m+2}, from the Cauchy
/// product of the J1 series with itself.
template <class Real>
std::vector<Real> j1_squared_coefficients(int m_max) {
  std::vector<Real> single(static_cast<std::size_t>(m_max) + 1);  // 1 / (k! (k+1)!)
  Real fact_k = 1;
  for (int k = 0; k <= m_max; ++k) {
    if (k > 0) fact_k *= k;
    single[static_cast<std::size_t>(k)] = Real(1) / (fact_k * fact_k * (k + 1));
  }
  std::vector<Real> c(single.size());
  for (int m = 0; m <= m_max; ++m) {
    Real acc = 0;
    for (int k = 0; k <= m; ++k) acc += single[static_cast<std::size_t>(k)] * single[static_cast<std::size_t>(m - k)];
    c[static_cast<std::size_t>(m)] = (m % 2 == 0) ? acc : Real(-acc);
  }
  return c;
}

/// <n| :J1(w sqrt(a^dagger a))^2 / (4 a^dagger a): |n> by expanding the
/// normally ordered series term by term:
///   J1(z)^2/(4 z^2/w^2) with z^2 = w^2 N  ->  sum_m c_m (w^2/4)^{m+1} N^m / 4,
///   :N^m: -> (a^dagger)^m a^m,  <n|(a^dagger)^m a^m|n> = n!/(n-m)!.
template <class Real>
std::vector<Real> normal_ordered_kernel(const Real& w, int n_max) {
  const auto c = j1_squared_coefficients<Real>(n_max);
  const Real x = w * w / 4;
  std::vector<Real> omega(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    Real acc = 0;
    Real x_pow = x / 4;   // (w^2/4)^{m+1} / 4
    Real falling = 1;     // n!/(n-m)!
    for (int m = 0; m <= n; ++m) {
      acc += c[static_cast<std::size_t>(m)] * x_pow * falling;
      x_pow *= x;
      falling *= (n - m);
    }
    omega[static_cast<std::size_t>(n)] = acc;
  }
  return omega;
}

/// Exact-rational kernel for a width given as a double (converted exactly).
inline std::vector<double> kernel_rational(double w, int n_max) {
  const Rational wr(w);
  const auto exact = normal_ordered_kernel<Rational>(wr, n_max);
  std::vector<double> out;
  for (const auto& v : exact) out.push_back(static_cast<double>(v));
  return out;
}

/// Truncation error sum_{n > n_res} Poisson(n; b^2) Omega_n, all in 300-digit
/// arithmetic, summed to n_max.
inline double tail_high_precision(double w, double b, int n_res, int n_max) {
  const auto omega = normal_ordered_kernel<Float300>(Float300(w), n_max);
  const Float300 mean = Float300(b) * Float300(b);
  Float300 weight = mp::exp(-mean);  // Poisson(0)
  Float300 acc = 0;
  for (int n = 1; n <= n_max; ++n) {
    weight *= mean / n;
    if (n > n_res) acc += weight * omega[static_cast<std::size_t>(n)];
  }
  return static_cast<double>(acc);
}

/// Poisson CDF P(X <= n_res) at mean b^2 via the regularised incomplete gamma.
inline double poisson_cdf(double b, int n_res) {
  if (b == 0.0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(n_res) + 1.0, b * b);
}

/// exp(alpha a^dagger - conj(alpha) a) with a truncated to `dim` levels.
inline Eigen::MatrixXcd displacement_matrix(std::complex<double> alpha, int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXcd gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return gen.exp();
}

/// diag(D(-alpha) rho D(alpha)) from the brute-force displacement matrix.
inline std::vector<double> displaced_statistics(const Eigen::MatrixXcd& rho, std::complex<double> alpha,
                                                int dim) {
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(dim, dim);
  const auto m = std::min<Eigen::Index>(rho.rows(), dim);
  big.topLeftCorner(m, m) = rho.topLeftCorner(m, m);
  const Eigen::MatrixXcd d = displacement_matrix(-alpha, dim);
  const Eigen::MatrixXcd out = d * big * d.adjoint();
  std::vector<double> p(static_cast<std::size_t>(dim));
  for (int n = 0; n < dim; ++n) p[static_cast<std::size_t>(n)] = out(n, n).real();
  return p;
}

}  // namespace oracle
