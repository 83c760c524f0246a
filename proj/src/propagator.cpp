#include "cca/propagator.hpp"

#include <cmath>
#include <numbers>

#include "cca/errors.hpp"
#include "cca/tolerances.hpp"

namespace cca {

namespace {

void require_finite_time(double t) {
  if (!std::isfinite(t)) {
    throw InvalidConfigError("time must be finite");
  }
}

}  // namespace

HoppingMatrix hopping_matrix(const CavityArray& array) {
  HoppingMatrix m;
  m.dimension = array.n_cavities;
  m.off_diagonal.assign(array.couplings.rbegin(), array.couplings.rend());
  return m;
}

SpectralPropagator::SpectralPropagator(const CavityArray& array) : omega_(array.omega) {
  const HoppingMatrix hm = hopping_matrix(array);
  const Eigen::VectorXd diag = Eigen::VectorXd::Zero(hm.dimension);
  const Eigen::VectorXd sub =
      Eigen::Map<const Eigen::VectorXd>(hm.off_diagonal.data(), hm.dimension - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("tridiagonal eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  first_row_ = eigenvectors_.row(0);
  last_row_ = eigenvectors_.row(hm.dimension - 1);
}

TransferAmplitudes SpectralPropagator::amplitudes(double t) const {
  require_finite_time(t);
  const int n = dimension();
  Eigen::VectorXd wc(n), ws(n);
  for (int j = 0; j < n; ++j) {
    const double arg = eigenvalues_[j] * t;
    wc[j] = std::cos(arg) * first_row_[j];
    ws[j] = std::sin(arg) * first_row_[j];
  }
  const Eigen::VectorXd re = eigenvectors_ * wc;
  const Eigen::VectorXd im = eigenvectors_ * ws;
  const std::complex<double> phase = std::polar(1.0, omega_ * t);
  TransferAmplitudes out;
  out.time = t;
  out.values.resize(n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = phase * std::complex<double>(re[k], im[k]);
  }
  return out;
}

std::complex<double> SpectralPropagator::end_amplitude(double t) const {
  require_finite_time(t);
  const int n = dimension();
  double re = 0.0, im = 0.0;
  for (int j = 0; j < n; ++j) {
    const double arg = eigenvalues_[j] * t;
    const double w = first_row_[j] * last_row_[j];
    re += w * std::cos(arg);
    im += w * std::sin(arg);
  }
  return std::polar(1.0, omega_ * t) * std::complex<double>(re, im);
}

double SpectralPropagator::end_magnitude(double t) const {
  return std::abs(end_amplitude(t));
}

TransferAmplitudes transfer_amplitudes(const CavityArray& array, double t) {
  return SpectralPropagator(array).amplitudes(t);
}

std::complex<double> end_amplitude(const CavityArray& array, double t) {
  return SpectralPropagator(array).end_amplitude(t);
}

std::complex<double> uniform_end_amplitude_series(int n, double j, double omega, double t) {
  if (n < 2) {
    throw InvalidConfigError("chain length must be >= 2");
  }
  if (!(j > 0.0)) {
    throw InvalidConfigError("uniform coupling must be > 0");
  }
  require_finite_time(t);
  std::complex<double> sum = 0.0;
  for (int m = 1; m <= n; ++m) {
    const double theta = std::numbers::pi * m / (n + 1);
    const double energy = -2.0 * j * std::cos(theta) - omega;
    const double s = std::sin(theta);
    const double coeff = (m % 2 == 1 ? 1.0 : -1.0) * 2.0 / (n + 1) * s * s;
    sum += coeff * std::polar(1.0, -energy * t);
  }
  return sum;
}

std::complex<double> modulated_end_amplitude_closed(int n, double omega, double t) {
  if (n < 2) {
    throw InvalidConfigError("chain length must be >= 2");
  }
  require_finite_time(t);
  const std::complex<double> base(0.0, std::sin(t));
  std::complex<double> power = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    power *= base;
  }
  return power * std::polar(1.0, omega * t);
}

std::complex<double> residue_end_amplitude(const CavityArray& array, double t) {
  require_finite_time(t);
  const HoppingMatrix hm = hopping_matrix(array);
  const Eigen::VectorXd diag = Eigen::VectorXd::Zero(hm.dimension);
  const Eigen::VectorXd sub =
      Eigen::Map<const Eigen::VectorXd>(hm.off_diagonal.data(), hm.dimension - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("tridiagonal eigendecomposition failed");
  }
  const Eigen::VectorXd lam = solver.eigenvalues();
  const int n = hm.dimension;

  // The spectrum of a chain is symmetric about zero, with an exact zero for
  // odd n that lands at +-1e-16 numerically; keep only clearly positive poles.
  const double scale = std::max(std::abs(lam[0]), std::abs(lam[n - 1]));
  std::vector<double> poles;
  if (n % 2 == 1) {
    poles.push_back(0.0);
  }
  for (int i = 0; i < n; ++i) {
    if (lam[i] > 1e-9 * scale) {
      poles.push_back(lam[i]);
    }
  }
  if (poles.size() != static_cast<std::size_t>((n + 1) / 2)) {
    throw NumericalError("unexpected pole count in residue evaluation");
  }
  for (std::size_t i = 0; i < poles.size(); ++i) {
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      if (std::abs(poles[j] * poles[j] - poles[i] * poles[i]) < tol::degenerate_pair_gap) {
        throw DegenerateSpectrumError("near-degenerate pole pair in residue evaluation");
      }
    }
  }

  double coupling_product = 1.0;
  for (double j : array.couplings) {
    coupling_product *= j;
  }

  std::complex<double> value;
  if (n % 2 == 0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < poles.size(); ++i) {
      double denom = poles[i];
      for (std::size_t j = 0; j < poles.size(); ++j) {
        if (j != i) {
          denom *= poles[j] * poles[j] - poles[i] * poles[i];
        }
      }
      sum += std::sin(poles[i] * t) / denom;
    }
    const double sign = ((n / 2 - 1) % 2 == 0) ? 1.0 : -1.0;
    value = std::complex<double>(0.0, sign * coupling_product * sum);
  } else {
    double sum = 0.0;
    for (std::size_t i = 0; i < poles.size(); ++i) {
      double denom = 1.0;
      for (std::size_t j = 0; j < poles.size(); ++j) {
        if (j != i) {
          denom *= poles[j] * poles[j] - poles[i] * poles[i];
        }
      }
      sum += std::cos(poles[i] * t) / denom;
    }
    const double sign = (((n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    value = sign * coupling_product * sum;
  }
  return value * std::polar(1.0, array.omega * t);
}

}  // namespace cca
