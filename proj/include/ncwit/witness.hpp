#pragma once

#include <complex>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "ncwit/states.hpp"

namespace ncwit {

inline constexpr int kDefaultResolution = 15;
inline constexpr int kDefaultKernelSize = 200;

/// Fock-diagonal eigenvalues Omega_{w,n}, n = 0..n_max, of the triangular-filter
/// witness :J1(w sqrt(n))^2 / (4 n): at width w.
class WitnessKernel {
 public:
  WitnessKernel(double width, std::vector<double> omega, std::vector<double> retained_digits);

  double width() const { return width_; }
  int n_max() const { return static_cast<int>(omega_.size()) - 1; }
  double operator[](int n) const { return omega_[static_cast<std::size_t>(n)]; }
  const std::vector<double>& coefficients() const { return omega_; }

  /// Estimated correct significant digits of each coefficient after cancellation.
  const std::vector<double>& retained_digits() const { return retained_digits_; }
  /// Indices whose alternating sum lost more than 6 of the 16 double digits.
  std::vector<int> imprecise_indices() const;
  bool precise() const { return imprecise_indices().empty(); }

 private:
  double width_;
  std::vector<double> omega_;
  std::vector<double> retained_digits_;
};

class PrecisionLossError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Omega_{w,n} = (w^2/16) sum_{m<=n} (-w^2/4)^m C(2m+2, m) / ((m+1)!)^2 * n!/(n-m)!.
///
/// The sum alternates and cancels by up to ~e^{2 w sqrt(n)}; it is evaluated in
/// 50-, 100- or 200-digit binary floating point, whichever tier retains a full
/// double. Coefficients that still lose more than 6 digits are reported by
/// WitnessKernel::imprecise_indices(); pass `strict` to throw instead.
WitnessKernel omega_coefficients(double w, int n_max, bool strict = false);

/// Normally ordered symbol of the witness at displacement delta = beta - alpha:
/// J1(w |delta|)^2 / (4 |delta|^2), with the limit w^2/16 at delta = 0.
/// Equals <beta| W_w(alpha) |beta>.
double witness_symbol(double w, std::complex<double> delta);

/// sum_n p_n Omega_{w,n} over every available n.
double witness_expectation(const PhotonStatistics& stats, const WitnessKernel& kernel);

/// sum_{n <= n_res} p_n Omega_{w,n}: the estimator usable with a detector that
/// resolves at most n_res photons.
double truncated_expectation(const PhotonStatistics& stats, const WitnessKernel& kernel,
                             int n_res = kDefaultResolution);

/// Kernel audit table: metadata comment lines, then "n,omega" rows.
void write_kernel_csv(std::ostream& os, const WitnessKernel& kernel);

}  // namespace ncwit
