#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "cca/lattice.hpp"

namespace cca {

/// One matched form of the pretty-good-transfer length condition, together
/// with the witnessing prime p or exponent m.
struct LengthWitness {
  enum class Form { prime_minus_one, twice_prime_minus_one, power_of_two_minus_one };
  Form form;
  long long parameter = 0;
};

/// Result of testing a chain length against the three admissible forms
/// N = p-1, N = 2p-1 (p prime) and N = 2^m-1.
struct LengthClass {
  int n = 0;
  bool is_pgst = false;
  std::vector<LengthWitness> witnesses;
};

/// Deterministic trial-division primality test.
bool is_prime(long long p);

/// Tests all three admissible forms and records every witness.
LengthClass classify_length(int n);

/// The unimodular phase left on the arrival amplitude at the transfer time:
/// +1 for n = 1 (mod 4), -1 for n = 3 (mod 4). For even n both +i and -i can
/// occur; without a located transfer window the value stays unresolved.
struct ResidualPhase {
  int n = 0;
  std::complex<double> value{1.0, 0.0};
  bool resolved = false;
};

ResidualPhase residual_phase_for(int n);

/// A located transfer time: |end amplitude| is maximal at `time` with the
/// recorded magnitude and phase (phase evaluated at the array's own omega).
struct TransferWindow {
  double time = 0.0;
  double magnitude = 0.0;
  double phase = 0.0;
};

/// Resolves the even-n sign from the phase at a located window; odd n uses
/// the closed rule directly.
ResidualPhase residual_phase_for(int n, const TransferWindow& window);

/// Coarse scan of |end amplitude| on a uniform grid over (0, t_max] followed
/// by golden-section refinement of every near-best local maximum. Magnitudes
/// within tol::magnitude_tie are ties and the earliest time wins. A best
/// magnitude that never exceeds 0.1 is still returned, not an error.
/// Throws InvalidConfigError for t_max <= 0 or grid < 100.
TransferWindow find_transfer_time(const CavityArray& array, double t_max, int grid);

/// The k-th frequency that cancels the residual phase at the transfer time:
/// omega = (2*k*pi - phase_at_tau)/tau, where phase_at_tau is the arrival
/// phase computed at omega = 0. Callers pick the smallest k giving omega >= 0.
double phase_matching_frequency(double tau, double phase_at_tau, int k);

/// Exact transfer window for arrays whose couplings match the engineered
/// sqrt(bond*(n-bond)) profile: tau = pi/2, unit magnitude, phase given by
/// arg(i^(n-1)). A numeric search cannot pin tau tightly enough for the
/// phase-matched frequencies because the magnitude is flat at its maximum,
/// so the structural value is used whenever the profile is recognized.
std::optional<TransferWindow> engineered_exact_window(const CavityArray& array);

/// Default search window for a chain of n sites (transfer is ballistic).
double default_search_window(int n);

/// Default grid density for the coarse scan over [0, t_max].
int default_search_grid(double t_max);

/// Complete analysis of one array: length class, transfer window (located at
/// omega = 0), resolved residual phase, and the first four nonnegative
/// phase-matched frequencies.
struct TransferAnalysis {
  LengthClass length_class;
  ResidualPhase residual;
  TransferWindow window;
  std::vector<double> recommended_frequencies;
};

TransferAnalysis analyze_array(const CavityArray& array);

}  // namespace cca
