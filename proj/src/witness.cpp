#include "ncwit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ncwit/specfun.hpp"
#include "ncwit/version.hpp"

namespace ncwit {

namespace {

namespace mp = boost::multiprecision;
using Float50 = mp::cpp_bin_float_50;
using Float100 = mp::cpp_bin_float_100;
using Float200 = mp::number<mp::cpp_bin_float<200>>;

constexpr double kDoubleDigits = 15.95;
constexpr double kMaxLostDigits = 6.0;

// log10 of the largest |term| of the alternating sum, from the term ratio.
double log10_max_term(double x, int n) {
  double log_term = 0.0;
  double best = 0.0;
  for (int m = 0; m < n; ++m) {
    log_term += std::log10(x * (n - m) * 2.0 * (2.0 * m + 3.0) /
                           ((m + 1.0) * (m + 2.0) * (m + 3.0)));
    best = std::max(best, log_term);
  }
  return best;
}

// sum_{m=0}^{n} t_m with t_0 = 1 and
// t_{m+1}/t_m = -x (n-m) 2(2m+3) / ((m+1)(m+2)(m+3)).
template <class Real>
Real alternating_sum(const Real& x, int n) {
  Real term = 1;
  Real sum = 0;
  for (int m = 0; m <= n; ++m) {
    sum += term;
    if (m == n) break;
    term *= x;
    const long long mm = m;
    term *= 2LL * (n - mm) * (2 * mm + 3);
    term /= (mm + 1) * (mm + 2) * (mm + 3);
    term = -term;
  }
  return sum;
}

struct Evaluated {
  double value;
  double retained_digits;
};

template <class Real>
Evaluated evaluate_tier(double x, int n, double log10_max) {
  const Real sum = alternating_sum(Real(x), n);
  const double value = static_cast<double>(sum);
  const int working_digits = std::numeric_limits<Real>::digits10;
  // Roundoff grows with the largest term and the number of terms.
  const double error_digits = log10_max + std::log10(n + 1.0) - working_digits;
  // An exact zero (e.g. w = 2, n = 1) is fine as long as the error is below double resolution.
  if (value == 0.0) return {value, error_digits < -kDoubleDigits ? kDoubleDigits : 0.0};
  return {value, std::min(kDoubleDigits, std::log10(std::abs(value)) - error_digits)};
}

Evaluated evaluate_coefficient(double x, int n) {
  const double log10_max = log10_max_term(x, n);
  Evaluated best{0.0, -std::numeric_limits<double>::infinity()};
  if (log10_max < std::numeric_limits<Float50>::digits10 - 20) {
    best = evaluate_tier<Float50>(x, n, log10_max);
    if (best.retained_digits >= kDoubleDigits) return best;
  }
  if (log10_max < std::numeric_limits<Float100>::digits10 - 20) {
    best = evaluate_tier<Float100>(x, n, log10_max);
    if (best.retained_digits >= kDoubleDigits) return best;
  }
  return evaluate_tier<Float200>(x, n, log10_max);
}

}  // namespace

WitnessKernel::WitnessKernel(double width, std::vector<double> omega,
                             std::vector<double> retained_digits)
    : width_(width), omega_(std::move(omega)), retained_digits_(std::move(retained_digits)) {
  if (omega_.empty()) throw std::invalid_argument("WitnessKernel: empty coefficient vector");
  if (retained_digits_.size() != omega_.size()) {
    throw std::invalid_argument("WitnessKernel: digit estimates do not match coefficients");
  }
}

std::vector<int> WitnessKernel::imprecise_indices() const {
  std::vector<int> out;
  for (std::size_t n = 0; n < retained_digits_.size(); ++n) {
    if (retained_digits_[n] < kDoubleDigits - kMaxLostDigits) out.push_back(static_cast<int>(n));
  }
  return out;
}

WitnessKernel omega_coefficients(double w, int n_max, bool strict) {
  if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("omega_coefficients: w must be > 0");
  if (n_max < 0) throw std::invalid_argument("omega_coefficients: n_max must be >= 0");

  const double prefactor = w * w / 16.0;
  const double x = w * w / 4.0;
  std::vector<double> omega(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> digits(omega.size());
  omega[0] = prefactor;
  digits[0] = kDoubleDigits;
  for (int n = 1; n <= n_max; ++n) {
    const Evaluated e = evaluate_coefficient(x, n);
    omega[static_cast<std::size_t>(n)] = prefactor * e.value;
    digits[static_cast<std::size_t>(n)] = e.retained_digits;
  }

  WitnessKernel kernel(w, std::move(omega), std::move(digits));
  if (strict) {
    const auto bad = kernel.imprecise_indices();
    if (!bad.empty()) {
      throw PrecisionLossError("omega_coefficients: cancellation at w=" + std::to_string(w) +
                               ", n=" + std::to_string(bad.front()) +
                               " exceeds the working precision; cap w or n_max");
    }
  }
  return kernel;
}

double witness_symbol(double w, std::complex<double> delta) {
  const double r = std::abs(delta);
  const double arg = w * r;
  if (arg < 1e-4) {
    // J1(z)/z = 1/2 - z^2/16 + ...
    const double ratio = 0.5 - arg * arg / 16.0;
    return w * w * ratio * ratio / 4.0;
  }
  const double j1 = specfun::bessel_j1(arg);
  return j1 * j1 / (4.0 * r * r);
}

double witness_expectation(const PhotonStatistics& stats, const WitnessKernel& kernel) {
  if (stats.size() == 0) return 0.0;
  if (kernel.n_max() < static_cast<int>(stats.size()) - 1) {
    throw std::invalid_argument("witness_expectation: kernel n_max " + std::to_string(kernel.n_max()) +
                                " shorter than statistics length " + std::to_string(stats.size()));
  }
  double acc = 0.0;
  for (std::size_t n = 0; n < stats.size(); ++n) acc += stats.probabilities[n] * kernel[static_cast<int>(n)];
  return acc;
}

double truncated_expectation(const PhotonStatistics& stats, const WitnessKernel& kernel, int n_res) {
  if (n_res < 0) throw std::invalid_argument("truncated_expectation: n_res must be >= 0");
  if (kernel.n_max() < n_res) throw std::invalid_argument("truncated_expectation: kernel shorter than n_res");
  const auto last = std::min<std::size_t>(stats.size(), static_cast<std::size_t>(n_res) + 1);
  double acc = 0.0;
  for (std::size_t n = 0; n < last; ++n) acc += stats.probabilities[n] * kernel[static_cast<int>(n)];
  return acc;
}

void write_kernel_csv(std::ostream& os, const WitnessKernel& kernel) {
  char buf[64];
  os << "# ncwit " << kVersion << " kernel\n";
  std::snprintf(buf, sizeof buf, "%.17g", kernel.width());
  os << "# w=" << buf << "\n# n_max=" << kernel.n_max() << "\n";
  os << "n,omega\n";
  for (int n = 0; n <= kernel.n_max(); ++n) {
    std::snprintf(buf, sizeof buf, "%.17g", kernel[n]);
    os << n << ',' << buf << '\n';
  }
}

}  // namespace ncwit
