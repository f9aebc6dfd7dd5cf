#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace ncwit {

namespace state {
struct Vacuum {};
struct Coherent {
  std::complex<double> amplitude;
};
struct Thermal {
  double mean_photons = 0.0;
};
struct Fock {
  int photons = 0;
};
/// Single-photon-added thermal state a^dagger rho_th a / (1 + nbar), followed
/// by a preparation loss channel with efficiency `eta_prep`.
struct PhotonAddedThermal {
  double mean_thermal = 0.0;
  double eta_prep = 1.0;
};
}  // namespace state

using StateSpec = std::variant<state::Vacuum, state::Coherent, state::Thermal, state::Fock,
                               state::PhotonAddedThermal>;

/// Throws std::invalid_argument if the parameters are outside their ranges.
void validate(const StateSpec& spec);
std::string describe(const StateSpec& spec);
/// True when the Fock representation is diagonal (invariant under phase rotation).
bool is_phase_symmetric(const StateSpec& spec);

/// Truncated Fock-basis density matrix, 0 <= j, k <= cutoff.
/// `tail_mass` bounds the probability dropped by the truncation.
class DensityMatrix {
 public:
  DensityMatrix(Eigen::MatrixXcd rho, double tail_mass);

  int cutoff() const { return static_cast<int>(rho_.rows()) - 1; }
  int dimension() const { return static_cast<int>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  std::complex<double> operator()(int j, int k) const { return rho_(j, k); }
  double tail_mass() const { return tail_mass_; }
  double trace() const;
  double mean_photon_number() const;
  /// True when every off-diagonal entry is exactly zero.
  bool is_diagonal() const;
  std::vector<double> diagonal() const;

 private:
  Eigen::MatrixXcd rho_;
  double tail_mass_;
};

/// Photon-number distribution p_n(alpha, eta) for n = 0..size()-1.
struct PhotonStatistics {
  std::vector<double> probabilities;
  std::complex<double> alpha{0.0, 0.0};
  double eta = 1.0;
  double tail_mass = 0.0;

  std::size_t size() const { return probabilities.size(); }
  double total() const;
  /// Probability of at most n_res counts.
  double resolved_probability(int n_res) const;
};

inline constexpr int kDefaultCutoff = 60;
inline constexpr double kMaxTailMass = 0.01;

/// Fock representation truncated at `cutoff`. Throws std::invalid_argument if the
/// dropped mass exceeds kMaxTailMass.
DensityMatrix fock_density(const StateSpec& spec, int cutoff);

/// fock_density with the cutoff grown from `min_cutoff` until the tail mass is
/// below `tail_target`.
DensityMatrix fock_density_auto(const StateSpec& spec, int min_cutoff = kDefaultCutoff,
                                double tail_target = 1e-6);

/// Photon loss (beam splitter to vacuum) with transmission efficiency eta.
DensityMatrix loss_channel(const DensityMatrix& rho, double eta);

/// p_n = <n| D(-alpha) rho_eta D(alpha) |n>, n = 0..cutoff. `rho_eta` already
/// contains every loss; `eta` is recorded as metadata only.
/// Throws std::runtime_error if more than kMaxTailMass of the probability falls
/// outside the cutoff.
PhotonStatistics displaced_photon_statistics(const DensityMatrix& rho_eta,
                                             std::complex<double> alpha, double eta);

/// Displaced statistics of the coherent state |beta_eta>: Poisson with mean
/// |beta_eta - alpha|^2, truncated at `cutoff`.
PhotonStatistics coherent_photon_statistics(std::complex<double> beta_eta,
                                            std::complex<double> alpha, double eta,
                                            int cutoff);

/// Model statistics: build `spec`, apply loss `eta`, displace by `alpha`.
/// Coherent inputs take the Poisson shortcut with amplitude sqrt(eta) * beta.
PhotonStatistics model_photon_statistics(const StateSpec& spec, double eta,
                                         std::complex<double> alpha);

}  // namespace ncwit
