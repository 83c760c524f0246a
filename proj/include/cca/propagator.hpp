#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cca/lattice.hpp"

namespace cca {

/// Single-particle hopping matrix of the chain in reversed bond order: the
/// (m, m+1) entry holds the coupling of bond N-m (1-based), i.e.
/// off_diagonal[i] == couplings[N-2-i]. Real symmetric tridiagonal with zero
/// diagonal. This ordering makes the first basis vector the end-site operator
/// whose evolution yields the transfer amplitudes.
struct HoppingMatrix {
  int dimension = 0;
  std::vector<double> off_diagonal;
};

HoppingMatrix hopping_matrix(const CavityArray& array);

/// Expansion coefficients of the evolved end-site creation operator over all
/// sites: values[k] multiplies the operator of site N-k (0-based k), so
/// values[n-1] is the arrival amplitude on site 1 of the reversed ordering,
/// i.e. the amplitude that reaches the far end of the chain.
struct TransferAmplitudes {
  double time = 0.0;
  Eigen::VectorXcd values;
};

/// Eigendecomposition of one hopping matrix, reusable across many times.
/// The evolution is exp(i*(G + omega*I)*t) applied to the first basis vector;
/// the scalar omega*I only contributes the global phase exp(i*omega*t).
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const CavityArray& array);

  int dimension() const { return static_cast<int>(eigenvalues_.size()); }
  double omega() const { return omega_; }

  /// Full amplitude vector at time t. Throws InvalidConfigError for
  /// non-finite t and NumericalError if the factorization failed.
  TransferAmplitudes amplitudes(double t) const;

  /// Last entry of amplitudes(t) without forming the whole vector.
  std::complex<double> end_amplitude(double t) const;

  /// |end_amplitude(t)|; independent of omega.
  double end_magnitude(double t) const;

 private:
  double omega_ = 0.0;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  Eigen::VectorXd first_row_;
  Eigen::VectorXd last_row_;
};

/// One-shot helpers; factor the array and evaluate at a single time.
TransferAmplitudes transfer_amplitudes(const CavityArray& array, double t);
std::complex<double> end_amplitude(const CavityArray& array, double t);

/// Closed-form end amplitude of a uniform chain via the sine-mode eigen sum:
/// sum_m (-1)^(m-1) * 2/(n+1) * exp(-i*E_m*t) * sin^2(pi*m/(n+1)) with
/// E_m = -2*j*cos(pi*m/(n+1)) - omega.
std::complex<double> uniform_end_amplitude_series(int n, double j, double omega, double t);

/// Closed-form end amplitude of the k=0 modulated chain:
/// (i*sin t)^(n-1) * exp(i*omega*t). Valid only for the k=0 profile.
std::complex<double> modulated_end_amplitude_closed(int n, double omega, double t);

/// End amplitude evaluated as a residue sum over the nonnegative hopping
/// eigenvalues q_i (even n) or s_i including s_0 = 0 (odd n):
///   even n = 2m:  i*(-1)^(m-1)*prod(J) * sum_i sin(q_i t)/(q_i * prod_{j!=i}(q_j^2-q_i^2))
///   odd  n = 2m+1:  (-1)^m  *prod(J) * sum_i cos(s_i t)/      prod_{j!=i}(s_j^2-s_i^2)
/// multiplied by exp(i*omega*t). Throws DegenerateSpectrumError when two
/// squared poles are closer than tol::degenerate_pair_gap; callers should
/// fall back to end_amplitude.
std::complex<double> residue_end_amplitude(const CavityArray& array, double t);

}  // namespace cca
