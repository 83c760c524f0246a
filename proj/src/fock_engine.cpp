#include "cca/fock_engine.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "cca/errors.hpp"
#include "cca/tolerances.hpp"

namespace cca {

double StateVector::norm() const {
  double sq = 0.0;
  for (const auto& v : sector_coeffs) {
    sq += v.squaredNorm();
  }
  return std::sqrt(sq);
}

double number_expectation(const StateVector& psi, int mode) {
  const FockBasis& basis = *psi.basis;
  double total = 0.0;
  for (int s = 0; s < static_cast<int>(psi.sector_coeffs.size()); ++s) {
    const auto& v = psi.sector_coeffs[s];
    if (v.size() == 0) {
      continue;
    }
    const auto& codes = basis.sector(s);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      total += std::norm(v[i]) * basis.occupation_of(codes[i], mode);
    }
  }
  return total;
}

SectorHamiltonian::SectorHamiltonian(const CavityArray& array, FockBasis basis)
    : array_(array), basis_(std::move(basis)) {
  if (basis_.n_modes() != array_.n_cavities) {
    throw InvalidConfigError("basis mode count differs from the cavity count");
  }
  factors_.resize(basis_.n_sectors());
  for (int s = 0; s < basis_.n_sectors(); ++s) {
    const std::size_t dim = basis_.sector_size(s);
    if (dim == 0) {
      continue;
    }
    if (dim > limits::max_block_dim) {
      throw CapacityError("photon-number block of dimension " + std::to_string(dim) +
                          " exceeds the factorization budget of " +
                          std::to_string(limits::max_block_dim));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block_matrix(s));
    if (solver.info() != Eigen::Success) {
      throw NumericalError("block eigendecomposition failed in sector " + std::to_string(s));
    }
    factors_[s].eigenvalues = solver.eigenvalues();
    factors_[s].eigenvectors = solver.eigenvectors();
  }
}

Eigen::MatrixXd SectorHamiltonian::block_matrix(int s) const {
  const auto& codes = basis_.sector(s);
  const int dim = static_cast<int>(codes.size());
  const int n = basis_.n_modes();
  const int d = basis_.cutoff();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    h(a, a) = array_.omega * s;
    const std::uint64_t code = codes[a];
    for (int bond = 0; bond < n - 1; ++bond) {
      const int giving = basis_.occupation_of(code, bond + 1);
      const int receiving = basis_.occupation_of(code, bond);
      if (giving > 0 && receiving + 1 < d) {
        const std::uint64_t moved =
            code + basis_.mode_weight(bond) - basis_.mode_weight(bond + 1);
        const int b = static_cast<int>(basis_.index_in_sector(s, moved));
        const double val = array_.couplings[bond] * std::sqrt(double(giving) * (receiving + 1));
        h(a, b) += val;
        h(b, a) += val;
      }
    }
  }
  return h;
}

StateVector evolve(const SectorHamiltonian& h, const StateVector& psi, double t) {
  if (psi.basis != &h.basis()) {
    throw InvalidConfigError("state vector does not live on the Hamiltonian's basis");
  }
  if (!std::isfinite(t)) {
    throw InvalidConfigError("time must be finite");
  }
  StateVector out;
  out.basis = psi.basis;
  out.sector_coeffs.resize(psi.sector_coeffs.size());
  for (int s = 0; s < static_cast<int>(psi.sector_coeffs.size()); ++s) {
    const auto& v = psi.sector_coeffs[s];
    if (v.size() == 0) {
      continue;
    }
    const auto& vecs = h.eigenvectors(s);
    const auto& vals = h.eigenvalues(s);
    const Eigen::VectorXd wr = vecs.transpose() * v.real();
    const Eigen::VectorXd wi = vecs.transpose() * v.imag();
    Eigen::VectorXd pr(v.size()), pi(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      const double c = std::cos(vals[j] * t);
      const double sn = std::sin(vals[j] * t);
      // multiply (wr + i*wi) by exp(-i*lambda*t)
      pr[j] = wr[j] * c + wi[j] * sn;
      pi[j] = wi[j] * c - wr[j] * sn;
    }
    const Eigen::VectorXd or_ = vecs * pr;
    const Eigen::VectorXd oi = vecs * pi;
    Eigen::VectorXcd res(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      res[j] = std::complex<double>(or_[j], oi[j]);
    }
    out.sector_coeffs[s] = std::move(res);
  }
  return out;
}

FidelityWorkspace::FidelityWorkspace(const FockBasis& basis)
    : env_dim_(basis.mode_weight(0)) {
  if (env_dim_ > (std::uint64_t{1} << 24)) {
    throw CapacityError("environment accumulator of " + std::to_string(env_dim_) +
                        " entries exceeds the budget");
  }
  accum_.resize(env_dim_);
  stamp_.assign(env_dim_, 0);
  touched_.reserve(1024);
}

double FidelityWorkspace::site_fidelity(const StateVector& psi, const Eigen::VectorXcd& target) {
  const FockBasis& basis = *psi.basis;
  if (basis.mode_weight(0) != env_dim_) {
    throw InvalidConfigError("workspace was built for a different basis shape");
  }
  if (epoch_ == std::numeric_limits<std::uint32_t>::max()) {
    stamp_.assign(stamp_.size(), 0);
    epoch_ = 0;
  }
  ++epoch_;
  touched_.clear();

  const std::uint64_t d = basis.cutoff();
  const Eigen::Index levels = target.size();
  for (int s = 0; s < static_cast<int>(psi.sector_coeffs.size()); ++s) {
    const auto& v = psi.sector_coeffs[s];
    if (v.size() == 0) {
      continue;
    }
    const auto& codes = basis.sector(s);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const std::uint64_t code = codes[i];
      const std::uint64_t level = code % d;
      if (static_cast<Eigen::Index>(level) >= levels) {
        continue;
      }
      const std::uint64_t env = code / d;
      const std::complex<double> contrib = std::conj(target[level]) * v[i];
      if (stamp_[env] != epoch_) {
        stamp_[env] = epoch_;
        accum_[env] = contrib;
        touched_.push_back(env);
      } else {
        accum_[env] += contrib;
      }
    }
  }

  double fidelity = 0.0;
  for (std::uint64_t env : touched_) {
    fidelity += std::norm(accum_[env]);
  }
  return fidelity;
}

double site_fidelity(const StateVector& psi, const Eigen::VectorXcd& target) {
  FidelityWorkspace ws(*psi.basis);
  return ws.site_fidelity(psi, target);
}

double coherent_fidelity_closed(std::complex<double> coherent_amplitude,
                                std::complex<double> arrival_amplitude) {
  const std::complex<double> shortfall = 1.0 - arrival_amplitude;
  return std::exp(-std::norm(coherent_amplitude) * std::norm(shortfall));
}

}  // namespace cca
