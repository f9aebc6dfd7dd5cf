#include "ncwit/experiment.hpp"

#include <cmath>
#include <stdexcept>

#include "ncwit/statistics.hpp"
#include "parallel.hpp"

namespace ncwit {

double Efficiency::eta_meas() const {
  if (eta_meas_override) return *eta_meas_override;
  return transmissivity * transmissivity * eta_det;
}

void Efficiency::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!in_unit(eta_prep)) throw std::invalid_argument("eta_prep must lie in (0, 1]");
  if (!in_unit(transmissivity)) throw std::invalid_argument("transmissivity must lie in (0, 1]");
  if (!in_unit(eta_det)) throw std::invalid_argument("eta_det must lie in (0, 1]");
  if (eta_meas_override && !in_unit(*eta_meas_override)) {
    throw std::invalid_argument("eta_meas must lie in (0, 1]");
  }
}

std::vector<double> Grid::values() const {
  std::vector<double> out;
  const double span = (stop - start) / step;
  const auto count = static_cast<long long>(std::floor(span + 1e-9)) + 1;
  out.reserve(static_cast<std::size_t>(std::max(0LL, count)));
  for (long long i = 0; i < count; ++i) {
    // Snap to the step lattice so symmetric grids contain exact negatives.
    const double v = start + static_cast<double>(i) * step;
    const double snapped = std::round(v / step) * step;
    out.push_back(std::abs(v - snapped) < 1e-9 * step ? snapped : v);
  }
  return out;
}

void Grid::validate(const char* name) const {
  if (!(step > 0.0)) throw std::invalid_argument(std::string(name) + ": step must be > 0");
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw std::invalid_argument(std::string(name) + ": bounds must be finite");
  }
  if (stop < start) throw std::invalid_argument(std::string(name) + ": grid is empty (stop < start)");
}

void ScanConfig::validate() const {
  ncwit::validate(state);
  efficiency.validate();
  if (n_res < 0) throw std::invalid_argument("n_res must be >= 0");
  if (!(p_r > 0.0 && p_r < 1.0)) throw std::invalid_argument("p_r must lie in (0, 1)");
  if (events < 1) throw std::invalid_argument("events must be >= 1");
  w_grid.validate("w grid");
  if (!(w_grid.start > 0.0)) throw std::invalid_argument("w grid must start above 0");
  alpha_grid.validate("alpha grid");
  if (!(w > 0.0)) throw std::invalid_argument("w must be > 0");
  if (kernel_n_max < n_res) throw std::invalid_argument("kernel_n_max must be >= n_res");
  if (!(syserr_prefactor > 0.0 && syserr_prefactor <= 1.0)) {
    throw std::invalid_argument("syserr_prefactor must lie in (0, 1]");
  }
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

ScanConfig spats_reference_config() {
  ScanConfig config;
  config.state = state::PhotonAddedThermal{0.8, 1.0};
  config.efficiency.eta_prep = 0.5;
  config.efficiency.transmissivity = 0.99;
  config.efficiency.eta_det = 0.5;
  config.efficiency.eta_meas_override = 0.5;
  config.n_res = 15;
  config.p_r = 0.995;
  config.events = 100000;
  config.w = 4.2;
  return config;
}

DensityMatrix detected_state(const ScanConfig& config) {
  const DensityMatrix source = fock_density_auto(config.state);
  return loss_channel(source, config.efficiency.eta_total());
}

PhotonStatistics recorded_statistics(const ScanConfig& config, const DensityMatrix& rho_eta,
                                     std::complex<double> alpha) {
  const double eta_meas = config.efficiency.eta_meas();
  const std::complex<double> detected_alpha = std::sqrt(eta_meas) * alpha;
  const double eta = config.efficiency.eta_total();
  PhotonStatistics stats = [&] {
    if (const auto* c = std::get_if<state::Coherent>(&config.state)) {
      const std::complex<double> beta_eta = std::sqrt(eta) * c->amplitude;
      const double mean = std::norm(beta_eta - detected_alpha);
      int cutoff = std::max(kDefaultCutoff, config.kernel_n_max);
      while (cutoff < mean + 12.0 * std::sqrt(mean) + 30.0) cutoff *= 2;
      return coherent_photon_statistics(beta_eta, detected_alpha, eta, cutoff);
    }
    const double shift = std::norm(detected_alpha);
    const int needed = static_cast<int>(std::ceil(rho_eta.mean_photon_number() + shift +
                                                  12.0 * std::sqrt(shift + 1.0) + 30.0));
    if (needed <= rho_eta.cutoff()) return displaced_photon_statistics(rho_eta, detected_alpha, eta);
    const DensityMatrix wider =
        loss_channel(fock_density(config.state, needed), config.efficiency.eta_total());
    return displaced_photon_statistics(wider, detected_alpha, eta);
  }();
  stats.alpha = alpha;
  return stats;
}

namespace {

struct PointResult {
  double expectation;
  double variance;
};

PointResult evaluate_point(const ScanConfig& config, const PhotonStatistics& model,
                           const WitnessKernel& kernel, std::size_t index) {
  if (config.mode == Mode::Exact) {
    return {truncated_expectation(model, kernel, config.n_res),
            witness_variance(model, kernel, config.events, config.n_res)};
  }
  const MeasurementRecord record = simulate_counts(model, config.events, config.n_res,
                                                   derive_stream_seed(config.seed, index));
  const ProbabilityEstimate estimate = estimate_probabilities(record);
  return {truncated_expectation(estimate.stats, kernel, config.n_res),
          witness_variance(estimate.stats, kernel, config.events, config.n_res)};
}

ScanRow make_row(double x, double w, std::complex<double> alpha, const PointResult& r, double syserr) {
  ScanRow row;
  row.x = x;
  row.w = w;
  row.alpha = alpha;
  row.expectation = r.expectation;
  row.stat_sigma = std::sqrt(r.variance);
  row.syserr = syserr;
  row.significance = significance(r.expectation, syserr, r.variance);
  return row;
}

SyserrOptions syserr_options(const ScanConfig& config) {
  SyserrOptions options;
  options.prefactor = config.syserr_prefactor;
  return options;
}

}  // namespace

std::vector<ScanRow> scan_w(const ScanConfig& config) {
  config.validate();
  const DensityMatrix rho_eta = detected_state(config);
  const PhotonStatistics model = recorded_statistics(config, rho_eta, config.alpha);
  const std::vector<double> widths = config.w_grid.values();

  std::vector<ScanRow> rows(widths.size());
  detail::parallel_for(widths.size(), config.threads, [&](std::size_t i) {
    const double w = widths[i];
    const WitnessKernel kernel = omega_coefficients(w, config.kernel_n_max);
    const double syserr = systematic_error(kernel, config.n_res, config.p_r, syserr_options(config)).value;
    rows[i] = make_row(w, w, config.alpha, evaluate_point(config, model, kernel, i), syserr);
  });
  return rows;
}

std::vector<ScanRow> scan_alpha(const ScanConfig& config, double w) {
  config.validate();
  if (!(w > 0.0)) throw std::invalid_argument("scan_alpha: w must be > 0");
  const DensityMatrix rho_eta = detected_state(config);
  const WitnessKernel kernel = omega_coefficients(w, config.kernel_n_max);
  const double syserr = systematic_error(kernel, config.n_res, config.p_r, syserr_options(config)).value;
  const std::vector<double> coords = config.alpha_grid.values();
  const std::complex<double> ray = std::polar(1.0, config.alpha_phase);

  std::vector<ScanRow> rows(coords.size());
  detail::parallel_for(coords.size(), config.threads, [&](std::size_t i) {
    const std::complex<double> alpha = coords[i] * ray;
    const PhotonStatistics model = recorded_statistics(config, rho_eta, alpha);
    rows[i] = make_row(coords[i], w, alpha, evaluate_point(config, model, kernel, i), syserr);
  });
  return rows;
}

OptimalWidth find_optimal_w(const std::vector<ScanRow>& rows) {
  std::optional<std::size_t> best;
  std::size_t defined = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].significance) continue;
    ++defined;
    if (!best || *rows[i].significance < *rows[*best].significance ||
        (*rows[i].significance == *rows[*best].significance && rows[i].w < rows[*best].w)) {
      best = i;
    }
  }
  if (!best) throw std::runtime_error("find_optimal_w: no row has a defined significance");

  OptimalWidth out;
  out.w = rows[*best].w;
  out.significance = *rows[*best].significance;
  if (defined == 1) {
    out.warning = "single usable point; no minimum can be bracketed";
    return out;
  }
  // Interior means a defined neighbour with larger significance on both sides.
  auto neighbour_higher = [&](std::ptrdiff_t step) {
    for (auto j = static_cast<std::ptrdiff_t>(*best) + step;
         j >= 0 && j < static_cast<std::ptrdiff_t>(rows.size()); j += step) {
      const auto& sig = rows[static_cast<std::size_t>(j)].significance;
      if (sig) return *sig > out.significance;
    }
    return false;
  };
  out.interior = neighbour_higher(-1) && neighbour_higher(+1);
  if (!out.interior) out.warning = "minimum at the boundary of the width grid";
  return out;
}

}  // namespace ncwit
