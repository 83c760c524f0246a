#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "cca/errors.hpp"
#include "cca/lattice.hpp"
#include "cca/propagator.hpp"
#include "cca/tolerances.hpp"

using namespace cca;
using std::numbers::pi;
using complexd = std::complex<double>;

namespace {

CavityArray random_array(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> pick_j(0.3, 1.7);
  std::uniform_real_distribution<double> pick_omega(0.0, 2.0);
  std::vector<double> couplings(static_cast<std::size_t>(n - 1));
  for (double& j : couplings) {
    j = pick_j(rng);
  }
  return make_cavity_array(n, couplings, pick_omega(rng));
}

}  // namespace

TEST_CASE("hopping_matrix reverses the bond order") {
  const HoppingMatrix g = hopping_matrix(make_cavity_array(4, {1.0, 2.0, 3.0}, 0.5));
  CHECK(g.dimension == 4);
  CHECK(g.off_diagonal == std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("two cavities rotate as cos / i sin") {
  const double j = 0.8;
  const double omega = 0.6;
  const SpectralPropagator prop(build_uniform(2, j, omega));
  for (const double t : {0.0, 0.3, 1.0, 2.9}) {
    const TransferAmplitudes amps = prop.amplitudes(t);
    REQUIRE(amps.values.size() == 2);
    const complexd phase = std::exp(complexd(0.0, omega * t));
    CHECK(std::abs(amps.values[0] - std::cos(j * t) * phase) < 1e-13);
    CHECK(std::abs(amps.values[1] - complexd(0.0, 1.0) * std::sin(j * t) * phase) < 1e-13);
  }
  // A quarter rotation moves everything to the far site.
  const double quarter = pi / (2.0 * j);
  CHECK(std::abs(prop.end_magnitude(quarter) - 1.0) < 1e-13);
  CHECK(std::abs(prop.amplitudes(quarter).values[0]) < 1e-13);
}

TEST_CASE("evolution is unitary for random chains") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> pick_t(0.0, 30.0);
  for (int trial = 0; trial < 25; ++trial) {
    const CavityArray array = random_array(rng, 2 + trial % 7);
    const SpectralPropagator prop(array);
    for (int rep = 0; rep < 3; ++rep) {
      CHECK(std::abs(prop.amplitudes(pick_t(rng)).values.norm() - 1.0) < tol::unitarity);
    }
  }
}

TEST_CASE("the cavity frequency enters only as a global phase") {
  std::mt19937 rng(43);
  const CavityArray base = random_array(rng, 6);
  CavityArray zero = base;
  zero.omega = 0.0;
  const SpectralPropagator with_omega(base);
  const SpectralPropagator without(zero);
  for (const double t : {0.7, 3.3, 11.0}) {
    const complexd phase = std::exp(complexd(0.0, base.omega * t));
    const Eigen::VectorXcd lhs = with_omega.amplitudes(t).values;
    const Eigen::VectorXcd rhs = phase * without.amplitudes(t).values;
    CHECK((lhs - rhs).norm() < 1e-12);
    CHECK(with_omega.end_magnitude(t) == doctest::Approx(without.end_magnitude(t)).epsilon(1e-12));
  }
}

TEST_CASE("uniform chains match the sine-mode series") {
  for (const auto& [n, j] : std::vector<std::pair<int, double>>{{2, 1.0}, {5, 1.0}, {8, 0.6}}) {
    const double omega = 0.7;
    const SpectralPropagator prop(build_uniform(n, j, omega));
    double dev = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double t = 25.0 * i / 100.0;
      dev = std::max(dev, std::abs(prop.end_amplitude(t) - uniform_end_amplitude_series(n, j, omega, t)));
    }
    CAPTURE(n);
    CHECK(dev < tol::analytic_match);
  }
}

TEST_CASE("modulated chains match the product closed form") {
  for (const int n : {2, 5, 8}) {
    for (const double omega : {0.0, 1.0}) {
      const SpectralPropagator prop(build_modulated(n, 0, omega));
      double dev = 0.0;
      for (int i = 1; i <= 100; ++i) {
        const double t = pi * i / 100.0;
        dev = std::max(dev, std::abs(prop.end_amplitude(t) - modulated_end_amplitude_closed(n, omega, t)));
      }
      CAPTURE(n);
      CAPTURE(omega);
      CHECK(dev < tol::analytic_match);
    }
  }
}

TEST_CASE("the modulated profile transfers perfectly at the quarter period") {
  const SpectralPropagator prop(build_modulated(8, 0, 1.0));
  CHECK(std::abs(prop.end_magnitude(pi / 2.0) - 1.0) < 1e-10);
  // (i sin t)^(n-1) * e^(i omega t) at t = pi/2, n = 8, omega = 1:
  // i^7 * e^(i pi/2) = -i * i = 1.
  CHECK(std::abs(prop.end_amplitude(pi / 2.0) - complexd(1.0, 0.0)) < 1e-10);
}

TEST_CASE("the residue sum agrees with the spectral evaluation") {
  std::mt19937 rng(44);
  std::vector<CavityArray> arrays = {build_uniform(5, 1.0, 0.7), build_modulated(4, 0, 0.5),
                                     build_modulated(7, 0, 0.0)};
  for (int extra = 0; extra < 3; ++extra) {
    arrays.push_back(random_array(rng, 3 + 2 * extra));
  }
  for (const CavityArray& array : arrays) {
    const SpectralPropagator prop(array);
    double dev = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double t = 10.0 * i / 100.0;
      dev = std::max(dev, std::abs(residue_end_amplitude(array, t) - prop.end_amplitude(t)));
    }
    CAPTURE(array.n_cavities);
    CHECK(dev < tol::residue_match);
  }
  // Short times exercise the residue prefactors rather than the oscillation.
  for (const CavityArray& array : arrays) {
    CHECK(std::abs(residue_end_amplitude(array, 0.1) - end_amplitude(array, 0.1)) < 1e-8);
  }
}

TEST_CASE("nearly degenerate poles are rejected") {
  const CavityArray array = make_cavity_array(4, {1.0, 1e-12, 1.0}, 0.0);
  CHECK_THROWS_AS(residue_end_amplitude(array, 1.0), DegenerateSpectrumError);
  // The spectral path has no such restriction.
  CHECK(std::isfinite(std::abs(end_amplitude(array, 1.0))));
}

TEST_CASE("one-shot helpers agree with the reusable propagator") {
  const CavityArray array = build_uniform(5, 1.0, 0.9);
  const SpectralPropagator prop(array);
  const TransferAmplitudes a = transfer_amplitudes(array, 2.2);
  CHECK((a.values - prop.amplitudes(2.2).values).norm() < 1e-14);
  CHECK(a.time == doctest::Approx(2.2));
  CHECK(std::abs(end_amplitude(array, 2.2) - prop.end_amplitude(2.2)) < 1e-14);
  CHECK(std::abs(prop.end_magnitude(2.2) - std::abs(prop.end_amplitude(2.2))) < 1e-14);
}

TEST_CASE("non-finite times are rejected") {
  const SpectralPropagator prop(build_uniform(3, 1.0, 0.0));
  CHECK_THROWS_AS(prop.amplitudes(std::numeric_limits<double>::quiet_NaN()), InvalidConfigError);
  CHECK_THROWS_AS(prop.end_amplitude(std::numeric_limits<double>::infinity()), InvalidConfigError);
}
