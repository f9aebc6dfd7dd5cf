#include <doctest.h>

#include <cmath>
#include <random>

#include "ncwit/statistics.hpp"
#include "ncwit/syserr.hpp"
#include "oracles.hpp"

using namespace ncwit;

TEST_CASE("resolved_prob_G") {
  CHECK(resolved_prob_G(0.0, 15) == 1.0);
  double prev = 1.0;
  for (double b = 0.05; b < 8.0; b += 0.05) {
    const double g = resolved_prob_G(b, 15);
    CHECK(g <= prev);
    if (b > 2.0) CHECK(g < prev);
    CHECK(g == doctest::Approx(oracle::poisson_cdf(b, 15)).epsilon(1e-12));
    prev = g;
  }
  // boundary of the feasible set at p_r = 0.995
  CHECK(resolved_prob_G(2.7508209779460144, 15) == doctest::Approx(0.995).epsilon(1e-12));
  CHECK(resolved_prob_G(1.0, 0) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("tail_deviation") {
  const WitnessKernel k = omega_coefficients(4.2, 200);
  CHECK(tail_deviation(0.0, k, 15).value == 0.0);

  // small b: the n = 16 term dominates
  const double b = 0.3;
  const double lead = std::exp(-b * b + 16 * std::log(b * b) - std::lgamma(17.0)) * k[16];
  CHECK(tail_deviation(b, k, 15).value == doctest::Approx(lead).epsilon(0.01));

  const WitnessKernel k42 = omega_coefficients(4.2, 200);
  for (double bb = 0.25; bb <= 10.0; bb += 0.25) {
    const TailDeviation t = tail_deviation(bb, k42, 15);
    const double ref = oracle::tail_high_precision(4.2, bb, 15, 400);
    CHECK(std::abs(t.value - ref) <= 1e-8 * std::abs(ref));
    CHECK(t.remainder_bound < 1e-9);
  }
  // other widths cancel harder at large b; compare absolutely
  for (double w : {1.0, 5.5}) {
    const WitnessKernel kw = omega_coefficients(w, 200);
    for (double bb : {0.5, 1.5, 2.75, 4.0, 7.0, 10.0}) {
      CHECK(std::abs(tail_deviation(bb, kw, 15).value - oracle::tail_high_precision(w, bb, 15, 400)) < 1e-12);
    }
  }
}

TEST_CASE("tail_deviation refuses a kernel that is too short") {
  const WitnessKernel k = omega_coefficients(4.2, 40);
  CHECK_NOTHROW(tail_deviation(2.0, k, 15));
  try {
    tail_deviation(8.0, k, 15);
    FAIL("expected KernelTooShortError");
  } catch (const KernelTooShortError& e) {
    CHECK(e.required_n_max() == required_kernel_size(8.0));
    CHECK(e.required_n_max() > 40);
  }
  CHECK_THROWS_AS(systematic_error(k, 15, 0.995), KernelTooShortError);
}

TEST_CASE("systematic_error at the reference width is small but positive") {
  const WitnessKernel k = omega_coefficients(4.2, 200);
  const SystematicBound s = systematic_error(k, 15, 0.995);
  CHECK(s.value > 0.0);
  CHECK(s.value < 0.01439 / 5.0);
  CHECK_FALSE(s.non_binding);
  CHECK(s.n_res == 15);
  CHECK(s.p_r == 0.995);
  if (s.branch == SystematicBound::Branch::TwoPoint) {
    REQUIRE(s.b2.has_value());
    CHECK(resolved_prob_G(s.b1, 15) >= 0.995);
    CHECK(resolved_prob_G(*s.b2, 15) < 0.995);
  }
  CHECK(std::string(to_string(SystematicBound::Branch::TwoPoint)) == "two-point");

  SyserrOptions half;
  half.prefactor = 0.5;
  CHECK(systematic_error(k, 15, 0.995, half).value == doctest::Approx(0.5 * s.value));

  CHECK_THROWS_AS(systematic_error(k, 15, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(systematic_error(k, 15, 0.0), std::invalid_argument);
}

TEST_CASE("systematic_error shrinks as p_r approaches 1") {
  const WitnessKernel k = omega_coefficients(4.2, 200);
  double prev = std::numeric_limits<double>::infinity();
  for (double p_r : {0.9, 0.99, 0.999, 0.9999, 0.999999}) {
    const double v = systematic_error(k, 15, p_r).value;
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("systematic_error is non-binding for a nonpositive tail") {
  std::vector<double> omega(201, 0.0);
  for (int n = 0; n <= 200; ++n) omega[static_cast<std::size_t>(n)] = n <= 15 ? 1.0 : -1.0;
  const WitnessKernel k(3.0, omega, std::vector<double>(201, 16.0));
  const SystematicBound s = systematic_error(k, 15, 0.995);
  CHECK(s.value == 0.0);
  CHECK(s.non_binding);
  CHECK(s.branch == SystematicBound::Branch::OnePoint);
  CHECK(s.b1 == 0.0);
}

TEST_CASE("LP oracle agrees with the continuous optimizer") {
  for (double w : {1.0, 3.0, 4.2, 5.0}) {
    const WitnessKernel k = omega_coefficients(w, 200);
    const double cont = systematic_error(k, 15, 0.995).value;
    const double lp = lp_oracle(k, 15, 0.995, 2000, 10.0);
    CHECK(lp <= cont + 1e-12 * std::max(1.0, std::abs(cont)));
    CHECK(std::abs(lp - cont) <= 1e-4 * std::max(1.0, std::abs(cont)));
  }
  // p_r = 0 has no constraint: the oracle returns the largest tail anywhere
  const WitnessKernel k = omega_coefficients(4.2, 200);
  double best = 0.0;
  for (int i = 0; i <= 100; ++i) best = std::max(best, tail_deviation(0.1 * i, k, 15).value);
  CHECK(lp_oracle(k, 15, 0.0, 100, 10.0) == doctest::Approx(best));
}

TEST_CASE("two_point_objective") {
  // tight constraint: r g1 + (1 - r) g2 = p_r
  const double r = (0.9 - 0.5) / (1.0 - 0.5);
  CHECK(two_point_objective(2.0, 1.0, 3.0, 0.5, 0.9) == doctest::Approx(r * 2.0 + (1 - r) * 3.0));
  // collapsing b2 onto the constraint boundary reproduces the one-point value
  CHECK(two_point_objective(2.0, 0.995, 3.0, 0.9, 0.995) == doctest::Approx(2.0));
}

TEST_CASE("bound holds for random constraint-satisfying classical mixtures") {
  const WitnessKernel k = omega_coefficients(4.2, 200);
  const double bound = systematic_error(k, 15, 0.995).value;
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int accepted = 0;
  while (accepted < 50) {
    // three coherent components with radii up to 4.5, random weights
    double g = 0.0, err = 0.0, wsum = 0.0;
    double weights[3], radii[3];
    for (int c = 0; c < 3; ++c) {
      weights[c] = unit(rng);
      radii[c] = 4.5 * unit(rng);
      wsum += weights[c];
    }
    for (int c = 0; c < 3; ++c) {
      const double wgt = weights[c] / wsum;
      g += wgt * resolved_prob_G(radii[c], 15);
      err += wgt * tail_deviation(radii[c], k, 15).value;
    }
    if (g < 0.995) continue;
    ++accepted;
    CHECK(err <= bound + 1e-9);
  }
}
