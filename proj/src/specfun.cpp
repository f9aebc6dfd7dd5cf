#include "ncwit/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ncwit::specfun {

namespace {

constexpr int kFactorialTableSize = 1025;

const std::array<double, kFactorialTableSize>& factorial_table() {
  static const auto table = [] {
    std::array<double, kFactorialTableSize> t{};
    long double acc = 0.0L;
    t[0] = 0.0;
    for (int k = 1; k < kFactorialTableSize; ++k) {
      acc += std::log(static_cast<long double>(k));
      t[k] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

double stirling_log_factorial(double n) {
  // ln Gamma(n+1) = (n+1/2) ln(n+1) - (n+1) + ln(2 pi)/2 + series in 1/(n+1)
  const double z = n + 1.0;
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  const double series =
      inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

double j1_series(double x) {
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = half;
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's backward recurrence normalised by J0 + 2 sum J_{2k} = 1.
double j1_miller(double x) {
  const int start = 2 * ((static_cast<int>(x) + 20 + static_cast<int>(std::sqrt(40.0 * x))) / 2);
  double j_next = 0.0;
  double j_cur = 1e-30;
  double norm = 0.0;
  double j1 = 0.0;
  for (int k = start; k > 0; --k) {
    const double j_prev = 2.0 * k / x * j_cur - j_next;
    j_next = j_cur;
    j_cur = j_prev;  // now J_{k-1}
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j_cur;
    if (k - 1 == 1) j1 = j_cur;
    if (std::abs(j_cur) > 1e250) {
      j_cur *= 1e-250;
      j_next *= 1e-250;
      norm *= 1e-250;
      j1 *= 1e-250;
    }
  }
  norm += j_cur;  // J0
  return j1 / norm;
}

// Hankel asymptotic expansion, valid for large x.
double j1_asymptotic(double x) {
  constexpr double mu = 4.0;
  const double z8 = 8.0 * x;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * z8);
    if (std::abs(term) > last) break;
    last = std::abs(term);
    if (k % 2 == 1) {
      q += (k % 4 == 1 ? 1.0 : -1.0) * term;
    } else {
      p += (k % 4 == 2 ? -1.0 : 1.0) * term;
    }
    if (last < 1e-17) break;
  }
  const double chi = x - 0.75 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double log_factorial(long long n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  if (n < kFactorialTableSize) return factorial_table()[static_cast<std::size_t>(n)];
  return stirling_log_factorial(static_cast<double>(n));
}

double log_binomial(long long n, long long k) {
  if (k < 0 || k > n) throw std::invalid_argument("log_binomial: k outside [0, n]");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double SignedLog::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

SignedLog laguerre(int n, int k, double x) {
  if (n < 0 || k < 0) throw std::invalid_argument("laguerre: negative degree or order");
  constexpr double kRescale = 1e150;
  const double log_rescale = std::log(kRescale);

  double prev = 1.0;
  double cur = 1.0 + k - x;
  double log_scale = 0.0;
  if (n == 0) {
    return {0.0, 1};
  }
  for (int i = 1; i < n; ++i) {
    const double next = ((2.0 * i + 1.0 + k - x) * cur - (i + k) * prev) / (i + 1.0);
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += log_rescale;
    }
  }
  if (cur == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {std::log(std::abs(cur)) + log_scale, cur > 0.0 ? 1 : -1};
}

double poisson_log_pmf(long long n, double mean) {
  if (n < 0) return -std::numeric_limits<double>::infinity();
  if (mean == 0.0) return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return static_cast<double>(n) * std::log(mean) - mean - log_factorial(n);
}

double bessel_j1(double x) {
  const double ax = std::abs(x);
  double value;
  if (ax < 8.0) {
    value = j1_series(ax);
  } else if (ax < 25.0) {
    value = j1_miller(ax);
  } else {
    value = j1_asymptotic(ax);
  }
  return x < 0.0 ? -value : value;
}

namespace {

// ln|<m|D|n>| and the sign of the Laguerre factor, for m >= n.
SignedLog overlap_modulus(int m, int n, double radius) {
  const double x = radius * radius;
  const SignedLog lag = laguerre(n, m - n, x);
  if (lag.sign == 0) return lag;
  const double log_radius_power = (m == n) ? 0.0 : (m - n) * std::log(radius);
  return {0.5 * (log_factorial(n) - log_factorial(m)) + log_radius_power - 0.5 * x + lag.log_abs,
          lag.sign};
}

}  // namespace

std::complex<double> displaced_number_overlap(int m, int n, std::complex<double> alpha) {
  if (m < 0 || n < 0) throw std::invalid_argument("displaced_number_overlap: negative index");
  const double radius = std::abs(alpha);
  if (radius == 0.0) return {m == n ? 1.0 : 0.0, 0.0};

  const double theta = std::arg(alpha);
  const int hi = std::max(m, n);
  const int lo = std::min(m, n);
  const SignedLog mod = overlap_modulus(hi, lo, radius);
  if (mod.sign == 0) return {0.0, 0.0};
  // m >= n: phase of alpha^{m-n}; m < n: phase of (-conj(alpha))^{n-m}.
  const double phase =
      (m >= n) ? (m - n) * theta : (n - m) * (std::numbers::pi - theta);
  return static_cast<double>(mod.sign) * std::polar(std::exp(mod.log_abs), phase);
}

double displaced_number_overlap_sq(int m, int n, double radius) {
  if (m < 0 || n < 0) throw std::invalid_argument("displaced_number_overlap_sq: negative index");
  radius = std::abs(radius);
  if (radius == 0.0) return m == n ? 1.0 : 0.0;
  const SignedLog mod = overlap_modulus(std::max(m, n), std::min(m, n), radius);
  if (mod.sign == 0) return 0.0;
  return std::exp(2.0 * mod.log_abs);
}

}  // namespace ncwit::specfun
