#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cca/fock_basis.hpp"
#include "cca/fock_engine.hpp"

namespace cca {

/// Normalized amplitudes of one mode over levels 0..size-1.
struct ModeAmplitudes {
  Eigen::VectorXcd amps;

  int max_level() const { return static_cast<int>(amps.size()) - 1; }
};

/// Normalizes a finite level superposition; throws InvalidConfigError on an
/// empty or zero vector.
ModeAmplitudes fock_superposition(const std::vector<std::complex<double>>& coefficients);

/// Fock level `level` with amplitude 1.
ModeAmplitudes fock_level(int level);

/// Coherent state truncated to levels 0..d-1 and renormalized. The dropped
/// tail sum_{m>=d} e^{-|a|^2} |a|^(2m)/m! must stay below tail_tol, otherwise
/// a TruncationError advises a larger cutoff. Returns the amplitudes and the
/// tail actually dropped.
struct TruncatedCoherent {
  ModeAmplitudes levels;
  double tail = 0.0;
};
TruncatedCoherent coherent_levels(std::complex<double> amplitude, int d, double tail_tol);

/// Geometric occupation distribution of a thermal mode with mean occupancy
/// n_bar: w_m = (1/(1+n_bar)) * (n_bar/(1+n_bar))^m. Levels are kept until
/// the remaining tail drops below tail_tol, capped at d, and the retained
/// weights are renormalized. Retaining less than tol::min_retained_mass of
/// the distribution is a TruncationError (cutoff too small).
std::vector<std::pair<double, int>> expand_thermal(double n_bar, int d, double tail_tol);

/// One pure product component of an expanded mixture.
struct MixtureComponent {
  double weight = 1.0;
  std::vector<ModeAmplitudes> modes;
};

/// Tensor product of per-mode amplitude vectors, organized by photon-number
/// sector and renormalized. Throws InvalidConfigError if a populated level
/// reaches the basis cutoff or a populated total exceeds the enumerated
/// sectors.
StateVector prepare_product_state(const FockBasis& basis,
                                  const std::vector<ModeAmplitudes>& modes);

}  // namespace cca
