#pragma once

#include <vector>

namespace cca {

/// A 1D chain of optical cavities with nearest-neighbour photon hopping.
///
/// couplings[i] is the hopping strength on the bond between cavities i+1 and
/// i+2 (1-based site labels), so a chain of n_cavities sites carries exactly
/// n_cavities-1 entries, each strictly positive. omega is the common cavity
/// mode frequency; energies are measured in units with hbar = 1.
struct CavityArray {
  int n_cavities = 0;
  std::vector<double> couplings;
  double omega = 0.0;
};

/// Validates the invariants (n >= 2, n-1 strictly positive couplings, finite
/// omega >= 0) and returns the array. Throws InvalidConfigError otherwise.
CavityArray make_cavity_array(int n, std::vector<double> couplings, double omega);

/// Constant coupling j on every bond.
CavityArray build_uniform(int n, double j, double omega);

/// Bond n gets sqrt(n*(N-n)) for even n and sqrt((n+2k)*(N-n+2k)) for odd n
/// (1-based bond index). k = 0 makes both branches coincide, which yields the
/// mirror-symmetric profile with an equally spaced hopping spectrum.
CavityArray build_modulated(int n, int k, double omega);

/// End bonds weakened to j_end in (0,1); all interior bonds equal j_bulk.
/// For n = 3 both bonds are end bonds and receive j_end.
CavityArray build_ballistic(int n, double j_end, double j_bulk, double omega);

/// True when the coupling profile is palindromic (J_n == J_{N-n}).
bool is_mirror_symmetric(const CavityArray& array);

}  // namespace cca
