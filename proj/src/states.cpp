#include "cca/states.hpp"

#include <cmath>
#include <string>

#include "cca/errors.hpp"
#include "cca/tolerances.hpp"

namespace cca {

ModeAmplitudes fock_superposition(const std::vector<std::complex<double>>& coefficients) {
  std::size_t size = coefficients.size();
  while (size > 1 && coefficients[size - 1] == 0.0) {
    --size;  // trailing zero levels would only inflate the cutoff
  }
  if (size == 0) {
    throw InvalidConfigError("level superposition needs at least one coefficient");
  }
  Eigen::VectorXcd amps(size);
  for (std::size_t i = 0; i < size; ++i) {
    amps[static_cast<Eigen::Index>(i)] = coefficients[i];
  }
  const double norm = amps.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidConfigError("level superposition must have nonzero finite norm");
  }
  return ModeAmplitudes{amps / norm};
}

ModeAmplitudes fock_level(int level) {
  if (level < 0) {
    throw InvalidConfigError("fock level must be >= 0");
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(level + 1);
  amps[level] = 1.0;
  return ModeAmplitudes{std::move(amps)};
}

TruncatedCoherent coherent_levels(std::complex<double> amplitude, int d, double tail_tol) {
  if (d < 1) {
    throw InvalidConfigError("coherent truncation needs cutoff >= 1");
  }
  Eigen::VectorXcd amps(d);
  const double scale = std::exp(-0.5 * std::norm(amplitude));
  std::complex<double> term = scale;  // level 0: e^{-|a|^2/2} * a^0 / sqrt(0!)
  double kept = 0.0;
  for (int m = 0; m < d; ++m) {
    amps[m] = term;
    kept += std::norm(term);
    term *= amplitude / std::sqrt(double(m + 1));
  }
  const double tail = std::max(0.0, 1.0 - kept);
  if (tail >= tail_tol) {
    throw TruncationError("coherent tail " + std::to_string(tail) + " exceeds the tolerance " +
                          std::to_string(tail_tol) + "; increase the cutoff");
  }
  amps /= std::sqrt(kept);
  return TruncatedCoherent{ModeAmplitudes{std::move(amps)}, tail};
}

std::vector<std::pair<double, int>> expand_thermal(double n_bar, int d, double tail_tol) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
    throw InvalidConfigError("thermal mean occupancy must be finite and >= 0");
  }
  if (d < 1) {
    throw InvalidConfigError("thermal expansion needs cutoff >= 1");
  }
  if (n_bar == 0.0) {
    return {{1.0, 0}};
  }
  const double ratio = n_bar / (1.0 + n_bar);
  const double ground = 1.0 / (1.0 + n_bar);
  std::vector<std::pair<double, int>> weights;
  double kept = 0.0;
  double remaining_tail = 1.0;
  for (int level = 0; level < d; ++level) {
    const double w = ground * std::pow(ratio, level);
    weights.emplace_back(w, level);
    kept += w;
    remaining_tail = std::pow(ratio, level + 1);
    if (remaining_tail < tail_tol) {
      break;
    }
  }
  if (kept < tol::min_retained_mass) {
    throw TruncationError("thermal expansion retains only " + std::to_string(kept) +
                          " of the distribution; increase the cutoff");
  }
  for (auto& wl : weights) {
    wl.first /= kept;
  }
  return weights;
}

StateVector prepare_product_state(const FockBasis& basis,
                                  const std::vector<ModeAmplitudes>& modes) {
  if (static_cast<int>(modes.size()) != basis.n_modes()) {
    throw InvalidConfigError("product state needs one amplitude vector per mode");
  }
  for (const auto& m : modes) {
    if (m.max_level() >= basis.cutoff()) {
      throw InvalidConfigError("a populated level reaches the basis cutoff");
    }
  }

  StateVector psi;
  psi.basis = &basis;
  psi.sector_coeffs.resize(basis.n_sectors());
  for (int s = 0; s < basis.n_sectors(); ++s) {
    psi.sector_coeffs[s] = Eigen::VectorXcd();
  }

  // Depth-first product over the per-mode supports; each leaf lands in the
  // sector of its total occupation.
  struct Frame {
    std::uint64_t code;
    int total;
    std::complex<double> amp;
  };
  std::vector<Frame> stack{{0, 0, {1.0, 0.0}}};
  std::vector<Frame> next;
  for (int mode = 0; mode < basis.n_modes(); ++mode) {
    next.clear();
    const auto& amps = modes[mode].amps;
    for (const Frame& f : stack) {
      for (int level = 0; level <= modes[mode].max_level(); ++level) {
        const std::complex<double> a = amps[level];
        if (a == std::complex<double>(0.0, 0.0)) {
          continue;
        }
        next.push_back({f.code + level * basis.mode_weight(mode), f.total + level, f.amp * a});
      }
    }
    if (next.size() > limits::max_basis_states) {
      throw CapacityError("product state support exceeds the state budget");
    }
    std::swap(stack, next);
  }

  for (const Frame& f : stack) {
    if (f.total > basis.max_sector()) {
      throw InvalidConfigError("populated total occupation " + std::to_string(f.total) +
                               " exceeds the enumerated sectors");
    }
    auto& coeffs = psi.sector_coeffs[f.total];
    if (coeffs.size() == 0) {
      coeffs = Eigen::VectorXcd::Zero(basis.sector_size(f.total));
    }
    coeffs[static_cast<Eigen::Index>(basis.index_in_sector(f.total, f.code))] += f.amp;
  }

  const double norm = psi.norm();
  if (!(norm > 0.0)) {
    throw InvalidConfigError("product state has zero norm");
  }
  for (auto& v : psi.sector_coeffs) {
    if (v.size() > 0) {
      v /= norm;
    }
  }
  return psi;
}

}  // namespace cca
