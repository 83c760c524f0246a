#pragma once

#include <cstddef>

namespace cca::tol {

/// Allowed deviation of sum |amplitude|^2 from 1 under unitary evolution.
inline constexpr double unitarity = 1e-12;

/// Agreement between the spectral propagator and the analytic closed forms
/// (uniform eigen-sum, modulated product form).
inline constexpr double analytic_match = 1e-10;

/// Agreement between the residue form and the spectral propagator.
inline constexpr double residue_match = 1e-8;

/// Below this gap between squared poles the residue sum is rejected as
/// numerically degenerate.
inline constexpr double degenerate_pair_gap = 1e-10;

/// State vectors must stay normalized to this accuracy after preparation
/// and after evolution.
inline constexpr double state_norm = 1e-10;

/// Contract-level resolution of the transfer-time search.
inline constexpr double time_resolution = 1e-6;

/// Internal refinement resolution (tighter than the contract so that tied
/// maxima are resolved reliably).
inline constexpr double time_refinement = 1e-8;

/// Window magnitudes closer than this are ties; the earliest time wins.
inline constexpr double magnitude_tie = 1e-12;

/// Default probability mass allowed to be dropped by truncations.
inline constexpr double default_tail = 1e-8;

/// Mixture expansion that retains less than this mass is an error rather
/// than a renormalization.
inline constexpr double min_retained_mass = 0.9;

}  // namespace cca::tol

namespace cca::limits {

/// Upper bound on the number of enumerated basis states.
inline constexpr std::size_t max_basis_states = std::size_t{4} << 20;

/// Upper bound on the dimension of a single photon-number block.
inline constexpr std::size_t max_block_dim = 4096;

/// Upper bound on the number of expanded mixture components.
inline constexpr std::size_t max_mixture_components = std::size_t{1} << 20;

}  // namespace cca::limits
