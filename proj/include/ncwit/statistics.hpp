#pragma once

#include <complex>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "ncwit/states.hpp"
#include "ncwit/witness.hpp"

namespace ncwit {

/// Photon-counting record: counts for n = 0..n_res plus the events above n_res.
struct MeasurementRecord {
  std::vector<std::int64_t> counts;
  std::int64_t overflow = 0;
  std::int64_t total = 0;
  std::complex<double> alpha{0.0, 0.0};
  double eta = 1.0;
  std::uint64_t seed = 0;

  int n_res() const { return static_cast<int>(counts.size()) - 1; }
  double overflow_fraction() const;
  /// Throws std::invalid_argument if counts are negative or do not add up to total.
  void validate() const;

  bool operator==(const MeasurementRecord&) const = default;
};

/// splitmix64 finaliser; used to decorrelate user-supplied seeds.
std::uint64_t mix_seed(std::uint64_t x);
/// Seed of the independent stream owned by scan point `index`.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index);

/// One multinomial draw of n_events over the bins {0..n_res, overflow}.
/// The mass missing from `stats` (tail beyond its cutoff) lands in overflow.
/// Deterministic given `seed`.
MeasurementRecord simulate_counts(const PhotonStatistics& stats, std::int64_t n_events, int n_res,
                                  std::uint64_t seed);

struct ProbabilityEstimate {
  /// p_hat_n = N_n / N for n = 0..n_res.
  PhotonStatistics stats;
  /// Plug-in covariance of p_hat: p_hat_n (delta_mn - p_hat_m) / N.
  Eigen::MatrixXd covariance;
};

ProbabilityEstimate estimate_probabilities(const MeasurementRecord& record);

/// Variance of the truncated estimator sum_{n<=n_res} p_hat_n Omega_n under
/// multinomial sampling with probabilities `stats`:
/// (1/N) [sum p_n Omega_n^2 - (sum p_n Omega_n)^2], sums over resolved bins.
double witness_variance(const PhotonStatistics& stats, const WitnessKernel& kernel,
                        std::int64_t n_events, int n_res);

/// (expectation + systematic) / sqrt(variance); empty when variance is zero.
std::optional<double> significance(double expectation, double systematic, double variance);

void write_record_csv(std::ostream& os, const MeasurementRecord& record);
/// Inverse of write_record_csv. Throws std::runtime_error on malformed input.
MeasurementRecord read_record_csv(std::istream& is);

}  // namespace ncwit
