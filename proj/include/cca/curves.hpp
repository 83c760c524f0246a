#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cca/fock_engine.hpp"
#include "cca/scenario.hpp"
#include "cca/states.hpp"

namespace cca {

/// A scenario lowered onto the Fock engine: the cavity array, a truncated
/// basis, the factorized Hamiltonian, the initial state expanded into a
/// weighted list of pure product components, and the arrival target.
/// Construction performs all cutoff selection and mixture pruning; afterwards
/// the object is read-only and safe to share across threads.
class CompiledScenario {
 public:
  explicit CompiledScenario(const Scenario& scenario);

  CompiledScenario(const CompiledScenario&) = delete;
  CompiledScenario& operator=(const CompiledScenario&) = delete;
  CompiledScenario(CompiledScenario&&) = default;
  CompiledScenario& operator=(CompiledScenario&&) = default;

  const CavityArray& array() const { return array_; }
  const SectorHamiltonian& hamiltonian() const { return *hamiltonian_; }
  const FockBasis& basis() const { return hamiltonian_->basis(); }
  int cutoff() const { return cutoff_; }

  /// Total probability mass dropped by truncation: the coherent-state tail of
  /// the sent mode plus the pruned part of the environment mixture.
  double truncation_tail() const { return truncation_tail_; }

  /// Arrival target: amplitudes of the sent state over local levels.
  const Eigen::VectorXcd& target() const { return target_; }

  std::size_t component_count() const { return components_.size(); }
  double component_weight(std::size_t c) const { return weights_[c]; }
  const StateVector& component_state(std::size_t c) const { return components_[c]; }

  /// Mixture fidelity at one time (single-threaded convenience).
  double fidelity_at(double t) const;

  /// (mean photon number of the last mode at time t,
  ///  mean photon number of the first mode at time 0), mixture averaged.
  std::pair<double, double> number_transfer_at(double t) const;

 private:
  CavityArray array_;
  int cutoff_ = 0;
  double truncation_tail_ = 0.0;
  Eigen::VectorXcd target_;
  std::unique_ptr<SectorHamiltonian> hamiltonian_;
  std::vector<double> weights_;
  std::vector<StateVector> components_;
};

struct FidelityCurve {
  std::vector<std::pair<double, double>> points;
  double t_best = 0.0;
  double f_best = 0.0;
  std::optional<double> f_at_requested_tau;
  double truncation_tail = 0.0;
  std::size_t components = 0;
  int cutoff = 0;
};

/// Evaluates the fidelity over the scenario's time grid. Work is split over
/// (component x time point) units; threads <= 0 picks the hardware count.
/// The reduction order is fixed, so the output is identical for any thread
/// count.
FidelityCurve fidelity_curve(const Scenario& scenario, int threads = 0);

/// (sent photon number arriving at the last cavity at time t,
///  photon number placed on the first cavity at time 0).
std::pair<double, double> heisenberg_check(const Scenario& scenario, double t);

}  // namespace cca
