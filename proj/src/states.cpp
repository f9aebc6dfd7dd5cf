#include "ncwit/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ncwit/specfun.hpp"

namespace ncwit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_efficiency(double eta, const char* what) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": efficiency must lie in [0, 1]");
  }
}

DensityMatrix from_diagonal(const std::vector<double>& diag, double tail_mass) {
  const auto dim = static_cast<Eigen::Index>(diag.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) rho(n, n) = diag[static_cast<std::size_t>(n)];
  return DensityMatrix(std::move(rho), tail_mass);
}

double dropped_mass(const std::vector<double>& kept) {
  double sum = 0.0;
  for (double p : kept) sum += p;
  return std::max(0.0, 1.0 - sum);
}

}  // namespace

void validate(const StateSpec& spec) {
  std::visit(Overloaded{
                 [](const state::Vacuum&) {},
                 [](const state::Coherent& s) {
                   if (!std::isfinite(s.amplitude.real()) || !std::isfinite(s.amplitude.imag())) {
                     throw std::invalid_argument("coherent amplitude must be finite");
                   }
                 },
                 [](const state::Thermal& s) {
                   if (!(s.mean_photons >= 0.0) || !std::isfinite(s.mean_photons)) {
                     throw std::invalid_argument("thermal mean photon number must be >= 0");
                   }
                 },
                 [](const state::Fock& s) {
                   if (s.photons < 0) throw std::invalid_argument("Fock photon number must be >= 0");
                 },
                 [](const state::PhotonAddedThermal& s) {
                   if (!(s.mean_thermal >= 0.0) || !std::isfinite(s.mean_thermal)) {
                     throw std::invalid_argument("SPATS thermal mean must be >= 0");
                   }
                   if (!(s.eta_prep > 0.0 && s.eta_prep <= 1.0)) {
                     throw std::invalid_argument("SPATS preparation efficiency must lie in (0, 1]");
                   }
                 },
             },
             spec);
}

std::string describe(const StateSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const state::Vacuum&) { os << "vacuum"; },
                 [&](const state::Coherent& s) {
                   os << "coherent(" << s.amplitude.real() << "," << s.amplitude.imag() << ")";
                 },
                 [&](const state::Thermal& s) { os << "thermal(" << s.mean_photons << ")"; },
                 [&](const state::Fock& s) { os << "fock(" << s.photons << ")"; },
                 [&](const state::PhotonAddedThermal& s) {
                   os << "spats(" << s.mean_thermal << "," << s.eta_prep << ")";
                 },
             },
             spec);
  return os.str();
}

bool is_phase_symmetric(const StateSpec& spec) {
  if (const auto* c = std::get_if<state::Coherent>(&spec)) return c->amplitude == 0.0;
  return true;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho, double tail_mass)
    : rho_(std::move(rho)), tail_mass_(tail_mass) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
    throw std::invalid_argument("density matrix must be square and nonempty");
  }
  if (!(tail_mass_ >= 0.0)) throw std::invalid_argument("tail mass must be >= 0");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("density matrix must be Hermitian");
  }
}

double DensityMatrix::trace() const { return rho_.trace().real(); }

double DensityMatrix::mean_photon_number() const {
  double mean = 0.0;
  for (Eigen::Index n = 1; n < rho_.rows(); ++n) mean += static_cast<double>(n) * rho_(n, n).real();
  return mean;
}

bool DensityMatrix::is_diagonal() const {
  for (Eigen::Index j = 0; j < rho_.rows(); ++j) {
    for (Eigen::Index k = 0; k < rho_.cols(); ++k) {
      if (j != k && rho_(j, k) != 0.0) return false;
    }
  }
  return true;
}

std::vector<double> DensityMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(rho_.rows()));
  for (Eigen::Index n = 0; n < rho_.rows(); ++n) d[static_cast<std::size_t>(n)] = rho_(n, n).real();
  return d;
}

double PhotonStatistics::total() const {
  double sum = 0.0;
  for (double p : probabilities) sum += p;
  return sum;
}

double PhotonStatistics::resolved_probability(int n_res) const {
  double sum = 0.0;
  const auto last = std::min<std::size_t>(probabilities.size(), static_cast<std::size_t>(n_res) + 1);
  for (std::size_t n = 0; n < last; ++n) sum += probabilities[n];
  return sum;
}

DensityMatrix fock_density(const StateSpec& spec, int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("fock_density: cutoff must be >= 1");
  validate(spec);
  const auto dim = static_cast<std::size_t>(cutoff) + 1;

  DensityMatrix rho = std::visit(
      Overloaded{
          [&](const state::Vacuum&) {
            std::vector<double> d(dim, 0.0);
            d[0] = 1.0;
            return from_diagonal(d, 0.0);
          },
          [&](const state::Coherent& s) {
            const double radius = std::abs(s.amplitude);
            Eigen::VectorXcd c(static_cast<Eigen::Index>(dim));
            double kept = 0.0;
            for (int n = 0; n <= cutoff; ++n) {
              const double log_mod =
                  radius == 0.0
                      ? (n == 0 ? 0.0 : -INFINITY)
                      : n * std::log(radius) - 0.5 * radius * radius - 0.5 * specfun::log_factorial(n);
              c(n) = std::polar(std::exp(log_mod), n * std::arg(s.amplitude));
              kept += std::norm(c(n));
            }
            return DensityMatrix(c * c.adjoint(), std::max(0.0, 1.0 - kept));
          },
          [&](const state::Thermal& s) {
            const double nbar = s.mean_photons;
            const double ratio = nbar / (1.0 + nbar);
            std::vector<double> d(dim);
            for (std::size_t n = 0; n < dim; ++n) {
              d[n] = std::pow(ratio, static_cast<double>(n)) / (1.0 + nbar);
            }
            return from_diagonal(d, std::pow(ratio, static_cast<double>(dim)));
          },
          [&](const state::Fock& s) {
            std::vector<double> d(dim, 0.0);
            if (s.photons <= cutoff) d[static_cast<std::size_t>(s.photons)] = 1.0;
            return from_diagonal(d, s.photons <= cutoff ? 0.0 : 1.0);
          },
          [&](const state::PhotonAddedThermal& s) {
            const double nbar = s.mean_thermal;
            std::vector<double> d(dim, 0.0);
            for (std::size_t n = 1; n < dim; ++n) {
              d[n] = static_cast<double>(n) * std::pow(nbar, static_cast<double>(n) - 1.0) /
                     std::pow(1.0 + nbar, static_cast<double>(n) + 1.0);
            }
            DensityMatrix ideal = from_diagonal(d, dropped_mass(d));
            return s.eta_prep == 1.0 ? ideal : loss_channel(ideal, s.eta_prep);
          },
      },
      spec);

  if (rho.tail_mass() > kMaxTailMass) {
    throw std::invalid_argument("fock_density: cutoff " + std::to_string(cutoff) +
                                " too small for " + describe(spec) + " (tail mass " +
                                std::to_string(rho.tail_mass()) + ")");
  }
  return rho;
}

DensityMatrix fock_density_auto(const StateSpec& spec, int min_cutoff, double tail_target) {
  constexpr int kMaxCutoff = 4096;
  int cutoff = std::max(1, min_cutoff);
  for (;;) {
    try {
      DensityMatrix rho = fock_density(spec, cutoff);
      if (rho.tail_mass() < tail_target || cutoff >= kMaxCutoff) return rho;
    } catch (const std::invalid_argument&) {
      if (cutoff >= kMaxCutoff) throw;
    }
    cutoff = std::min(kMaxCutoff, cutoff * 2);
  }
}

DensityMatrix loss_channel(const DensityMatrix& rho, double eta) {
  check_efficiency(eta, "loss_channel");
  if (eta == 1.0) return rho;
  const int dim = rho.dimension();
  const Eigen::MatrixXcd& in = rho.matrix();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  if (eta == 0.0) {
    out(0, 0) = in.trace();
    return DensityMatrix(std::move(out), rho.tail_mass());
  }

  // rho'_{jk} = sum_l sqrt(C(j+l, j) C(k+l, k)) eta^{(j+k)/2} (1-eta)^l rho_{j+l, k+l}
  const double log_eta = std::log(eta);
  const double log_loss = std::log1p(-eta);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      std::complex<double> acc = 0.0;
      for (int l = 0; j + l < dim && k + l < dim; ++l) {
        const std::complex<double> entry = in(j + l, k + l);
        if (entry == 0.0) continue;
        const double log_w = 0.5 * (specfun::log_binomial(j + l, j) + specfun::log_binomial(k + l, k)) +
                             0.5 * (j + k) * log_eta + l * log_loss;
        acc += std::exp(log_w) * entry;
      }
      out(j, k) = acc;
    }
  }
  return DensityMatrix(std::move(out), rho.tail_mass());
}

PhotonStatistics displaced_photon_statistics(const DensityMatrix& rho_eta,
                                             std::complex<double> alpha, double eta) {
  const int dim = rho_eta.dimension();
  std::vector<double> p(static_cast<std::size_t>(dim), 0.0);

  if (rho_eta.is_diagonal()) {
    const double radius = std::abs(alpha);
    const std::vector<double> d = rho_eta.diagonal();
    for (int n = 0; n < dim; ++n) {
      double acc = 0.0;
      for (int j = 0; j < dim; ++j) {
        if (d[static_cast<std::size_t>(j)] == 0.0) continue;
        acc += specfun::displaced_number_overlap_sq(n, j, radius) * d[static_cast<std::size_t>(j)];
      }
      p[static_cast<std::size_t>(n)] = acc;
    }
  } else {
    // U_{nj} = <n|D(-alpha)|j>;  p_n = (U rho U^dagger)_{nn}
    Eigen::MatrixXcd u(dim, dim);
    for (int n = 0; n < dim; ++n) {
      for (int j = 0; j < dim; ++j) u(n, j) = specfun::displaced_number_overlap(n, j, -alpha);
    }
    const Eigen::MatrixXcd ur = u * rho_eta.matrix();
    for (int n = 0; n < dim; ++n) {
      p[static_cast<std::size_t>(n)] = std::max(0.0, ur.row(n).dot(u.row(n)).real());
    }
  }

  PhotonStatistics stats{std::move(p), alpha, eta, 0.0};
  const double deficit = 1.0 - stats.total();
  if (deficit > kMaxTailMass) {
    throw std::runtime_error("displaced_photon_statistics: normalization deficit " +
                             std::to_string(deficit) + " at cutoff " +
                             std::to_string(rho_eta.cutoff()) + "; increase the cutoff");
  }
  stats.tail_mass = std::max({0.0, deficit, rho_eta.tail_mass()});
  return stats;
}

PhotonStatistics coherent_photon_statistics(std::complex<double> beta_eta,
                                            std::complex<double> alpha, double eta, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("coherent_photon_statistics: cutoff must be >= 0");
  const double mean = std::norm(beta_eta - alpha);
  std::vector<double> p(static_cast<std::size_t>(cutoff) + 1);
  for (int n = 0; n <= cutoff; ++n) p[static_cast<std::size_t>(n)] = std::exp(specfun::poisson_log_pmf(n, mean));
  PhotonStatistics stats{std::move(p), alpha, eta, 0.0};
  stats.tail_mass = std::max(0.0, 1.0 - stats.total());
  if (stats.tail_mass > kMaxTailMass) {
    throw std::runtime_error("coherent_photon_statistics: cutoff too small for mean " +
                             std::to_string(mean));
  }
  return stats;
}

PhotonStatistics model_photon_statistics(const StateSpec& spec, double eta,
                                         std::complex<double> alpha) {
  check_efficiency(eta, "model_photon_statistics");
  validate(spec);
  if (const auto* c = std::get_if<state::Coherent>(&spec)) {
    const std::complex<double> beta_eta = std::sqrt(eta) * c->amplitude;
    const double mean = std::norm(beta_eta - alpha);
    int cutoff = kDefaultCutoff;
    while (cutoff < mean + 12.0 * std::sqrt(mean) + 30.0) cutoff *= 2;
    return coherent_photon_statistics(beta_eta, alpha, eta, cutoff);
  }
  const DensityMatrix rho = loss_channel(fock_density_auto(spec), eta);
  // The displaced state needs room for roughly |alpha|^2 + a few standard deviations.
  const double shift = std::norm(alpha);
  const int needed = static_cast<int>(std::ceil(rho.mean_photon_number() + shift +
                                                12.0 * std::sqrt(shift + 1.0) + 30.0));
  if (needed <= rho.cutoff()) return displaced_photon_statistics(rho, alpha, eta);
  const DensityMatrix wider = loss_channel(fock_density(spec, needed), eta);
  return displaced_photon_statistics(wider, alpha, eta);
}

}  // namespace ncwit
