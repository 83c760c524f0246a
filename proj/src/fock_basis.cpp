#include "cca/fock_basis.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "cca/errors.hpp"
#include "cca/tolerances.hpp"

namespace cca {

namespace {

// Appends the codes of all tuples over modes [mode, n) summing to `remaining`,
// given the partial code of the modes already fixed. Lexicographic recursion
// over occupations emits codes in ascending order because mode 0 carries the
// highest digit weight.
void enumerate_sector(int mode, int n_modes, int cutoff, int remaining, std::uint64_t partial,
                      const std::vector<std::uint64_t>& weights,
                      std::vector<std::uint64_t>& out) {
  if (mode == n_modes - 1) {
    if (remaining < cutoff) {
      out.push_back(partial + static_cast<std::uint64_t>(remaining));
    }
    return;
  }
  const int top = std::min(cutoff - 1, remaining);
  for (int occ = 0; occ <= top; ++occ) {
    enumerate_sector(mode + 1, n_modes, cutoff, remaining - occ,
                     partial + occ * weights[mode], weights, out);
  }
}

}  // namespace

FockBasis::FockBasis(int n_modes, int cutoff, int max_sector)
    : n_modes_(n_modes), cutoff_(cutoff), max_sector_(max_sector) {
  if (n_modes < 1) {
    throw InvalidConfigError("basis needs at least one mode");
  }
  if (cutoff < 1) {
    throw InvalidConfigError("per-mode cutoff must be >= 1");
  }
  if (max_sector < 0) {
    throw InvalidConfigError("max sector must be >= 0");
  }
  max_sector_ = std::min(max_sector, n_modes * (cutoff - 1));

  weights_.resize(n_modes);
  std::uint64_t w = 1;
  for (int mode = n_modes - 1; mode >= 0; --mode) {
    weights_[mode] = w;
    if (mode > 0) {
      if (w > std::numeric_limits<std::uint64_t>::max() / cutoff) {
        throw CapacityError("occupation codes overflow 64 bits: " + std::to_string(cutoff) +
                            "^" + std::to_string(n_modes));
      }
      w *= cutoff;
    }
  }

  sectors_.resize(max_sector_ + 1);
  for (int s = 0; s <= max_sector_; ++s) {
    enumerate_sector(0, n_modes, cutoff, s, 0, weights_, sectors_[s]);
    total_states_ += sectors_[s].size();
    if (total_states_ > limits::max_basis_states) {
      throw CapacityError("basis exceeds the state budget of " +
                          std::to_string(limits::max_basis_states) + " states (" +
                          std::to_string(n_modes) + " modes, cutoff " + std::to_string(cutoff) +
                          ")");
    }
  }
}

FockBasis FockBasis::full(int n_modes, int cutoff) {
  return FockBasis(n_modes, cutoff, n_modes * (cutoff - 1));
}

std::uint64_t FockBasis::encode(const std::vector<int>& occupation) const {
  std::uint64_t code = 0;
  for (int mode = 0; mode < n_modes_; ++mode) {
    code += static_cast<std::uint64_t>(occupation[mode]) * weights_[mode];
  }
  return code;
}

std::vector<int> FockBasis::decode(std::uint64_t code) const {
  std::vector<int> occ(n_modes_);
  for (int mode = 0; mode < n_modes_; ++mode) {
    occ[mode] = static_cast<int>((code / weights_[mode]) % cutoff_);
  }
  return occ;
}

int FockBasis::occupation_of(std::uint64_t code, int mode) const {
  return static_cast<int>((code / weights_[mode]) % cutoff_);
}

std::size_t FockBasis::index_in_sector(int s, std::uint64_t code) const {
  const auto& codes = sectors_[s];
  const auto it = std::lower_bound(codes.begin(), codes.end(), code);
  return static_cast<std::size_t>(it - codes.begin());
}

}  // namespace cca
