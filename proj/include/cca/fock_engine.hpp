#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cca/fock_basis.hpp"
#include "cca/lattice.hpp"

namespace cca {

/// Wave function over a FockBasis, stored per photon-number sector.
/// Unpopulated sectors hold empty vectors.
struct StateVector {
  const FockBasis* basis = nullptr;
  std::vector<Eigen::VectorXcd> sector_coeffs;

  double norm() const;
  bool is_populated(int s) const {
    return s < static_cast<int>(sector_coeffs.size()) && sector_coeffs[s].size() > 0;
  }
};

/// Mean photon number of one mode.
double number_expectation(const StateVector& psi, int mode);

/// The chain Hamiltonian restricted to the enumerated photon-number sectors,
/// eigendecomposed block by block at construction. Diagonal: omega * s on
/// sector s. Off-diagonal: moving one photon across bond i carries
/// J_i * sqrt((m+1)*m') with the usual ladder factors; hops that would exceed
/// the per-mode cutoff are dropped, which keeps each block Hermitian.
///
/// All factorizations are computed up front, so the object is safe to share
/// read-only across threads afterwards.
class SectorHamiltonian {
 public:
  SectorHamiltonian(const CavityArray& array, FockBasis basis);

  const FockBasis& basis() const { return basis_; }
  const CavityArray& array() const { return array_; }

  /// Dense matrix of one sector block (rebuilt on demand; test/diagnostic use).
  Eigen::MatrixXd block_matrix(int s) const;

  const Eigen::VectorXd& eigenvalues(int s) const { return factors_[s].eigenvalues; }
  const Eigen::MatrixXd& eigenvectors(int s) const { return factors_[s].eigenvectors; }

 private:
  struct Factor {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
  };

  CavityArray array_;
  FockBasis basis_;
  std::vector<Factor> factors_;
};

/// Applies exp(-i*H*t) sector by sector. Norm is preserved to rounding.
/// Throws InvalidConfigError when psi lives on a different basis.
StateVector evolve(const SectorHamiltonian& h, const StateVector& psi, double t);

/// Scratch space for site_fidelity: a dense accumulator over environment
/// prefixes (all modes except the last), reused across calls via an epoch
/// stamp so it never needs re-zeroing.
class FidelityWorkspace {
 public:
  explicit FidelityWorkspace(const FockBasis& basis);

  double site_fidelity(const StateVector& psi, const Eigen::VectorXcd& target);

 private:
  std::uint64_t env_dim_;
  std::uint32_t epoch_ = 0;
  std::vector<std::complex<double>> accum_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint64_t> touched_;
};

/// Overlap of the reduced state of the last mode with a pure target:
/// F = sum_env |sum_level conj(target[level]) * psi[(env, level)]|^2.
/// Cross-sector coherences enter automatically because a fixed environment
/// prefix pairs different local levels across sectors. The target vector may
/// be shorter than the cutoff; missing levels count as zero.
double site_fidelity(const StateVector& psi, const Eigen::VectorXcd& target);

/// Fidelity of transferring a coherent state through a linear chain, given
/// the single-particle arrival amplitude: exp(-|amp|^2 * |1 - arrival|^2).
/// Exact for a coherent send with all other modes in vacuum.
double coherent_fidelity_closed(std::complex<double> coherent_amplitude,
                                std::complex<double> arrival_amplitude);

}  // namespace cca
