#pragma once

#include <optional>
#include <stdexcept>

#include "ncwit/witness.hpp"

namespace ncwit {

/// Worst-case truncation error over classical states whose probability of at
/// most n_res counts is at least p_r.
///
/// Every classical state reduces to a probability density R(b) over b >= 0
/// (radial marginal of the P function, scaled by sqrt(eta) and centred on the
/// displacement), so the error is linear in R and the bound is independent of
/// the displacement. The extremal densities are either a single point mass at
/// b1 with G(b1) >= p_r, or two point masses at b1, b2 with
/// G(b2) < p_r <= G(b1), weighted so that the constraint is tight.
struct SystematicBound {
  enum class Branch { OnePoint, TwoPoint };

  double value = 0.0;
  Branch branch = Branch::OnePoint;
  double b1 = 0.0;
  std::optional<double> b2;
  double p_r = 0.0;
  int n_res = 0;
  double prefactor = 1.0;
  /// True when no classical state can push the estimate upwards (value <= 0).
  bool non_binding = false;
};

const char* to_string(SystematicBound::Branch branch);

class KernelTooShortError : public std::runtime_error {
 public:
  KernelTooShortError(const std::string& what, int required_n_max)
      : std::runtime_error(what), required_n_max_(required_n_max) {}
  int required_n_max() const { return required_n_max_; }

 private:
  int required_n_max_;
};

/// G(b) = sum_{n<=n_res} e^{-b^2} b^{2n} / n!, the Poisson CDF at mean b^2.
double resolved_prob_G(double b, int n_res);

/// Smallest n_max with Poisson mass above n_max at mean b^2 below `mass`.
int required_kernel_size(double b, double mass = 1e-12);

struct TailDeviation {
  double value = 0.0;
  /// Poisson mass above the kernel times the largest |Omega_n| in the kernel.
  double remainder_bound = 0.0;
};

/// Delta W(b) = sum_{n > n_res} e^{-b^2} b^{2n}/n! Omega_{w,n}: the truncation
/// error of the vacuum displaced to radius b. Throws KernelTooShortError if the
/// kernel does not cover the Poisson tail at mean b^2.
TailDeviation tail_deviation(double b, const WitnessKernel& kernel, int n_res);

/// Objective of the two-point density with masses at b1 and b2, given their
/// tail deviations and G values.
double two_point_objective(double tail1, double g1, double tail2, double g2, double p_r);

struct SyserrOptions {
  double b_max = 10.0;
  double grid_step = 0.01;
  /// Target resolution in b for the local refinement.
  double tolerance = 1e-6;
  /// Multiplies the bound; 1 is the conservative reading.
  double prefactor = 1.0;
};

/// Dense grid over b in [0, b_max] followed by local refinement of the best
/// one-point and two-point candidates. Deterministic.
SystematicBound systematic_error(const WitnessKernel& kernel, int n_res, double p_r,
                                 const SyserrOptions& options = {});

/// Brute-force check of systematic_error: discretises b on K+1 points over
/// [0, b_max] and enumerates every basic feasible solution of
///   sum r_k = 1,  sum r_k g_k - y = p_r,  r_k >= 0,  y >= 0,
/// returning the largest objective sum r_k DeltaW(b_k). No prefactor.
double lp_oracle(const WitnessKernel& kernel, int n_res, double p_r, int grid_points, double b_max);

}  // namespace ncwit
