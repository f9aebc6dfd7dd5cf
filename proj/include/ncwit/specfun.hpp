#pragma once

#include <complex>

namespace ncwit::specfun {

/// ln(n!) for n >= 0. Tabulated up to 1024, Stirling series beyond.
double log_factorial(long long n);

/// ln C(n, k) for 0 <= k <= n.
double log_binomial(long long n, long long k);

/// A real number stored as sign * exp(log_abs). sign == 0 encodes exact zero.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;

  double value() const;
};

/// Generalized Laguerre polynomial L_n^{(k)}(x) by forward recurrence,
/// rescaled on the fly so that large degrees never overflow.
SignedLog laguerre(int n, int k, double x);

/// ln of the Poisson probability of n events at the given mean.
/// Returns -inf for an impossible outcome (mean == 0, n > 0).
double poisson_log_pmf(long long n, double mean);

/// Bessel function of the first kind, order one.
double bessel_j1(double x);

/// <m| D(alpha) |n> with D(alpha) = exp(alpha a^dagger - conj(alpha) a).
///
/// For m >= n this is sqrt(n!/m!) alpha^{m-n} e^{-|alpha|^2/2} L_n^{(m-n)}(|alpha|^2);
/// the m < n branch follows from <m|D(alpha)|n> = (-1)^{m-n} conj(<n|D(alpha)|m>).
/// The magnitude depends only on |alpha|, so D(alpha) and D(-alpha) give
/// bitwise-identical moduli.
std::complex<double> displaced_number_overlap(int m, int n, std::complex<double> alpha);

/// |<m| D(alpha) |n>|^2 for |alpha| = radius; cheaper than the complex overlap.
double displaced_number_overlap_sq(int m, int n, double radius);

}  // namespace ncwit::specfun
