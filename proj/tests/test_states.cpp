#include <doctest.h>

#include <cmath>
#include <random>

#include "ncwit/states.hpp"
#include "oracles.hpp"

using namespace ncwit;

namespace {

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("fock_density vacuum and Fock") {
  const DensityMatrix vac = fock_density(state::Vacuum{}, 8);
  CHECK(vac.dimension() == 9);
  CHECK(vac(0, 0) == std::complex<double>(1.0, 0.0));
  CHECK(vac.trace() == 1.0);
  CHECK(vac.is_diagonal());

  const DensityMatrix three = fock_density(state::Fock{3}, 5);
  CHECK(three(3, 3).real() == 1.0);
  CHECK_THROWS_AS(fock_density(state::Fock{9}, 5), std::invalid_argument);
  CHECK_THROWS_AS(fock_density(state::Vacuum{}, 0), std::invalid_argument);
}

TEST_CASE("fock_density thermal: geometric distribution with mean nbar") {
  const double nbar = 0.8;
  const DensityMatrix rho = fock_density(state::Thermal{nbar}, 60);
  for (int n = 0; n <= 60; ++n) {
    const double geometric = std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1);
    CHECK(rho(n, n).real() == doctest::Approx(geometric).epsilon(1e-13));
  }
  CHECK(rho.mean_photon_number() == doctest::Approx(nbar).epsilon(1e-12));
  CHECK(rho.trace() >= 1.0 - rho.tail_mass() - 1e-15);
  CHECK_THROWS_AS(fock_density(state::Thermal{5.0}, 10), std::invalid_argument);
}

TEST_CASE("fock_density SPATS equals a^dagger rho_th a / (1 + nbar)") {
  const double nbar = 0.8;
  constexpr int cutoff = 40;
  const DensityMatrix thermal = fock_density(state::Thermal{nbar}, cutoff + 1);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff + 2, cutoff + 2);
  for (int n = 1; n < cutoff + 2; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXcd added = a.adjoint() * thermal.matrix() * a / (1.0 + nbar);

  const DensityMatrix spats = fock_density(state::PhotonAddedThermal{nbar, 1.0}, cutoff);
  CHECK(max_abs_diff(spats.matrix(), added.topLeftCorner(cutoff + 1, cutoff + 1)) < 1e-14);
  for (int n = 1; n <= cutoff; ++n) {
    const double closed = n * std::pow(nbar, n - 1) / std::pow(1.0 + nbar, n + 1);
    CHECK(spats(n, n).real() == doctest::Approx(closed).epsilon(1e-13));
  }
  CHECK(spats(0, 0).real() == 0.0);
  // mean of the photon-added thermal state is 2 nbar + 1
  CHECK(spats.mean_photon_number() == doctest::Approx(2 * nbar + 1).epsilon(1e-10));
}

TEST_CASE("fock_density coherent is a rank-one projector") {
  const std::complex<double> beta{1.1, -0.6};
  const DensityMatrix rho = fock_density(state::Coherent{beta}, 40);
  CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.mean_photon_number() == doctest::Approx(std::norm(beta)).epsilon(1e-10));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fock_density_auto grows the cutoff until the tail is small") {
  const DensityMatrix rho = fock_density_auto(state::Thermal{8.0});
  CHECK(rho.tail_mass() < 1e-6);
  CHECK(rho.cutoff() > 60);
}

TEST_CASE("loss_channel edge cases") {
  const DensityMatrix spats = fock_density(state::PhotonAddedThermal{0.8, 1.0}, 30);
  CHECK(max_abs_diff(loss_channel(spats, 1.0).matrix(), spats.matrix()) == 0.0);

  const DensityMatrix vac = loss_channel(spats, 0.0);
  CHECK(vac(0, 0).real() == doctest::Approx(spats.trace()).epsilon(1e-15));
  CHECK(vac.matrix().cwiseAbs().sum() == doctest::Approx(spats.trace()).epsilon(1e-15));

  for (double eta : {0.1, 0.25, 0.9}) {
    const DensityMatrix one = loss_channel(fock_density(state::Fock{1}, 4), eta);
    CHECK(one(0, 0).real() == doctest::Approx(1.0 - eta).epsilon(1e-14));
    CHECK(one(1, 1).real() == doctest::Approx(eta).epsilon(1e-14));
  }
  CHECK_THROWS_AS(loss_channel(spats, 1.5), std::invalid_argument);
}

TEST_CASE("loss_channel composes multiplicatively and scales the mean") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 5; ++trial) {
    // random 16-dimensional density matrix: G G^dagger / trace
    Eigen::MatrixXcd g(16, 16);
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) g(i, j) = {gauss(rng), gauss(rng)};
    }
    Eigen::MatrixXcd m = g * g.adjoint();
    m /= m.trace().real();
    const DensityMatrix rho(m, 0.0);
    const double eta1 = 0.3 + 0.1 * trial;
    const double eta2 = 0.85 - 0.1 * trial;
    const DensityMatrix twice = loss_channel(loss_channel(rho, eta1), eta2);
    const DensityMatrix once = loss_channel(rho, eta1 * eta2);
    CHECK(max_abs_diff(twice.matrix(), once.matrix()) < 1e-10);
    CHECK(loss_channel(rho, eta1).mean_photon_number() ==
          doctest::Approx(eta1 * rho.mean_photon_number()).epsilon(1e-12));
    CHECK(once.trace() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("displaced_photon_statistics: Poisson limits") {
  // vacuum displaced by alpha is coherent: Poisson with mean |alpha|^2
  const std::complex<double> alpha{1.2, 0.9};
  const PhotonStatistics vac = displaced_photon_statistics(fock_density(state::Vacuum{}, 60), alpha, 1.0);
  for (int n = 0; n < 30; ++n) {
    const double poisson = std::exp(-std::norm(alpha) + n * std::log(std::norm(alpha)) - std::lgamma(n + 1.0));
    CHECK(vac.probabilities[static_cast<std::size_t>(n)] == doctest::Approx(poisson).epsilon(1e-11));
  }

  // coherent |beta>, eta = 1: Poisson with mean |beta - alpha|^2, via the generic
  // density-matrix path and via the shortcut
  const std::complex<double> beta{0.4, -1.0};
  const PhotonStatistics generic = displaced_photon_statistics(fock_density(state::Coherent{beta}, 60), alpha, 1.0);
  const PhotonStatistics shortcut = coherent_photon_statistics(beta, alpha, 1.0, 60);
  const PhotonStatistics model = model_photon_statistics(state::Coherent{beta}, 1.0, alpha);
  const double mean = std::norm(beta - alpha);
  for (int n = 0; n < 30; ++n) {
    const double poisson = std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
    CHECK(generic.probabilities[static_cast<std::size_t>(n)] == doctest::Approx(poisson).epsilon(1e-10));
    CHECK(shortcut.probabilities[static_cast<std::size_t>(n)] == doctest::Approx(poisson).epsilon(1e-12));
    CHECK(model.probabilities[static_cast<std::size_t>(n)] == doctest::Approx(poisson).epsilon(1e-12));
  }

  // alpha = 0 on a diagonal state reads the diagonal back
  const DensityMatrix spats = fock_density(state::PhotonAddedThermal{0.8, 0.5}, 40);
  const PhotonStatistics direct = displaced_photon_statistics(spats, {0.0, 0.0}, 0.5);
  for (int n = 0; n <= 40; ++n) CHECK(direct.probabilities[static_cast<std::size_t>(n)] == spats(n, n).real());
}

TEST_CASE("displaced_photon_statistics agrees with the brute-force displacement matrix") {
  const DensityMatrix spats = loss_channel(fock_density(state::PhotonAddedThermal{0.8, 1.0}, 30), 0.25);
  const DensityMatrix coherent = fock_density(state::Coherent{{0.7, 0.2}}, 30);
  for (const DensityMatrix* rho : {&spats, &coherent}) {
    for (std::complex<double> alpha : {std::complex<double>{0.0, 0.0}, {1.0, 0.0}, {-1.5, 1.5}, {0.0, 3.0}}) {
      const PhotonStatistics fast = displaced_photon_statistics(*rho, alpha, 0.25);
      const auto brute = oracle::displaced_statistics(rho->matrix(), alpha, 64);
      for (int n = 0; n <= 25; ++n) {
        CHECK(std::abs(fast.probabilities[static_cast<std::size_t>(n)] - brute[static_cast<std::size_t>(n)]) < 1e-8);
      }
    }
  }
}

TEST_CASE("displaced_photon_statistics rejects a cutoff that is too small") {
  const DensityMatrix vac = fock_density(state::Vacuum{}, 10);
  CHECK_THROWS_AS(displaced_photon_statistics(vac, {3.0, 0.0}, 1.0), std::runtime_error);
}

TEST_CASE("reference-state statistics keep 99.5% of the mass in n <= 15 for |alpha| < 3") {
  // SPATS nbar = 0.8 after overall efficiency 0.25; the beam-splitter
  // displacement alpha reaches the detected state as sqrt(0.5) alpha.
  const DensityMatrix rho = loss_channel(fock_density_auto(state::PhotonAddedThermal{0.8, 1.0}), 0.25);
  for (int i = -29; i <= 29; ++i) {
    const std::complex<double> alpha = std::sqrt(0.5) * std::complex<double>(0.1 * i, 0.0);
    const PhotonStatistics stats = displaced_photon_statistics(rho, alpha, 0.25);
    CHECK(stats.resolved_probability(15) >= 0.995);
  }
}
