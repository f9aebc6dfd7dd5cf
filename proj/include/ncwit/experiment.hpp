#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncwit/states.hpp"
#include "ncwit/syserr.hpp"
#include "ncwit/witness.hpp"

namespace ncwit {

/// Efficiency chain of the displacement setup. `eta_prep` acts on the source
/// before the beam splitter; the detection efficiency eta_meas = t^2 eta_det
/// (or the explicit override) acts after the displacement.
struct Efficiency {
  double eta_prep = 1.0;
  double transmissivity = 1.0;
  double eta_det = 1.0;
  std::optional<double> eta_meas_override;

  double eta_meas() const;
  double eta_total() const { return eta_prep * eta_meas(); }
  void validate() const;
};

/// Inclusive arithmetic grid start, start + step, ..., up to stop.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
  void validate(const char* name) const;
};

enum class Mode { Exact, Sampled };

struct ScanConfig {
  StateSpec state = state::Vacuum{};
  Efficiency efficiency;
  int n_res = kDefaultResolution;
  double p_r = 0.995;
  std::int64_t events = 100000;
  Grid w_grid{0.5, 5.5, 0.05};
  /// Real coordinate along the ray alpha = s * exp(i alpha_phase).
  Grid alpha_grid{-3.0, 3.0, 0.1};
  double alpha_phase = 0.0;
  /// Displacement used by scan_w.
  std::complex<double> alpha{0.0, 0.0};
  /// Width used by scan_alpha.
  double w = 4.2;
  Mode mode = Mode::Exact;
  std::uint64_t seed = 1;
  int kernel_n_max = kDefaultKernelSize;
  double syserr_prefactor = 1.0;
  /// Worker threads; 0 selects the hardware concurrency.
  int threads = 0;

  void validate() const;
};

/// Single-photon-added thermal state, nbar = 0.8, overall efficiency 0.25
/// (preparation 0.5, detection 0.5), 15-photon resolution, p_r = 0.995 and
/// 10^5 events per displacement.
ScanConfig spats_reference_config();

struct ScanRow {
  double x = 0.0;
  double w = 0.0;
  std::complex<double> alpha{0.0, 0.0};
  double expectation = 0.0;
  double stat_sigma = 0.0;
  double syserr = 0.0;
  std::optional<double> significance;
};

/// Source state after preparation and detection losses (the rho_eta that is
/// displacement-measured).
DensityMatrix detected_state(const ScanConfig& config);

/// Photon statistics recorded at beam-splitter displacement `alpha`. Loss after
/// the displacement shrinks it, so the detected-frame amplitude is
/// sqrt(eta_meas) * alpha.
PhotonStatistics recorded_statistics(const ScanConfig& config, const DensityMatrix& rho_eta,
                                     std::complex<double> alpha);

/// One row per width at the fixed displacement config.alpha.
std::vector<ScanRow> scan_w(const ScanConfig& config);

/// One row per point of config.alpha_grid along the configured ray, at width w.
std::vector<ScanRow> scan_alpha(const ScanConfig& config, double w);

struct OptimalWidth {
  double w = 0.0;
  double significance = 0.0;
  bool interior = false;
  std::string warning;
};

/// Row with the most negative significance (ties go to the smaller w).
/// Throws std::runtime_error if no row has a defined significance.
OptimalWidth find_optimal_w(const std::vector<ScanRow>& rows);

}  // namespace ncwit
