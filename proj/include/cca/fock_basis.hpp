#pragma once

#include <cstdint>
#include <vector>

namespace cca {

/// Truncated multimode Fock basis organized by total photon number.
///
/// Each of n_modes modes holds 0..cutoff-1 photons. An occupation tuple is
/// packed into a mixed-radix code with mode 0 as the highest digit:
///   code = sum_i occ[i] * cutoff^(n_modes-1-i)
/// so the last mode is the lowest digit (code % cutoff) and the remaining
/// modes form the environment prefix (code / cutoff). Sector s lists the
/// codes of all tuples with total occupation s in ascending code order.
///
/// Hopping conserves the total photon number, so callers that know the
/// largest populated total can restrict enumeration to sectors <= max_sector;
/// the full basis (max_sector = n_modes*(cutoff-1)) partitions all cutoff^n
/// tuples. Enumeration beyond limits::max_basis_states throws CapacityError.
class FockBasis {
 public:
  FockBasis(int n_modes, int cutoff, int max_sector);

  static FockBasis full(int n_modes, int cutoff);

  int n_modes() const { return n_modes_; }
  int cutoff() const { return cutoff_; }
  int max_sector() const { return max_sector_; }
  int n_sectors() const { return static_cast<int>(sectors_.size()); }

  const std::vector<std::uint64_t>& sector(int s) const { return sectors_[s]; }
  std::size_t sector_size(int s) const { return sectors_[s].size(); }
  std::size_t total_states() const { return total_states_; }

  /// Digit weight of a mode: cutoff^(n_modes-1-mode).
  std::uint64_t mode_weight(int mode) const { return weights_[mode]; }

  std::uint64_t encode(const std::vector<int>& occupation) const;
  std::vector<int> decode(std::uint64_t code) const;
  int occupation_of(std::uint64_t code, int mode) const;

  /// Position of a code inside its sector (binary search). The code must be
  /// present; this is only called with codes generated from the same basis.
  std::size_t index_in_sector(int s, std::uint64_t code) const;

 private:
  int n_modes_;
  int cutoff_;
  int max_sector_;
  std::size_t total_states_ = 0;
  std::vector<std::uint64_t> weights_;
  std::vector<std::vector<std::uint64_t>> sectors_;
};

}  // namespace cca
