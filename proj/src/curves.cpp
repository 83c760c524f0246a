#include "cca/curves.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "cca/errors.hpp"
#include "cca/tolerances.hpp"

namespace cca {
namespace {

/// One selectable pure state of a rest mode; thermal modes carry one option
/// per retained level, pure modes exactly one.
struct ModeOption {
  double weight = 1.0;
  ModeAmplitudes amps;
  int occupancy = 0;  ///< highest populated level
};

struct RestMode {
  std::vector<ModeOption> options;

  bool mixed() const { return options.size() > 1; }
};

int top_populated_level(const ModeAmplitudes& m) {
  for (Eigen::Index i = m.amps.size() - 1; i >= 0; --i) {
    if (m.amps[i] != 0.0) {
      return static_cast<int>(i);
    }
  }
  return 0;
}

/// Depth-first enumeration of all option choices whose occupancies over the
/// mixed modes sum to exactly `remaining`. Thermal levels are contiguous, so
/// every total up to the cap is reachable.
void enumerate_layer(const std::vector<const RestMode*>& mixed, std::size_t m, int remaining,
                     std::vector<int>& choice, double weight,
                     std::vector<std::pair<double, std::vector<int>>>& out) {
  if (m == mixed.size()) {
    if (remaining == 0) {
      out.emplace_back(weight, choice);
    }
    return;
  }
  const auto& options = mixed[m]->options;
  const int top = std::min(static_cast<int>(options.size()) - 1, remaining);
  for (int level = 0; level <= top; ++level) {
    choice.push_back(level);
    enumerate_layer(mixed, m + 1, remaining - level, choice, weight * options[level].weight, out);
    choice.pop_back();
  }
}

}  // namespace

CompiledScenario::CompiledScenario(const Scenario& s) : array_(scenario_array(s)) {
  const int n = s.n;
  const double omega_th = s.thermal_omega.value_or(s.resolved_omega);

  const bool coherent_sent = s.sent_state.kind == StateSpec::Kind::coherent;
  int d = 0;
  if (s.cutoff) {
    d = *s.cutoff;
  } else if (coherent_sent) {
    if (std::abs(s.sent_state.amplitude) > 1.0) {
      throw InvalidConfigError(
          "a coherent sent state with |amplitude| > 1 needs an explicit cutoff");
    }
    d = 8;
  }
  const int thermal_cap = d > 0 ? d : 64;

  std::vector<RestMode> rest(static_cast<std::size_t>(n - 1));
  int fixed_rest_occ = 0;
  for (int i = 0; i < n - 1; ++i) {
    const StateSpec& spec = s.rest_states[static_cast<std::size_t>(i)];
    RestMode& mode = rest[static_cast<std::size_t>(i)];
    switch (spec.kind) {
      case StateSpec::Kind::vacuum:
        mode.options.push_back({1.0, fock_level(0), 0});
        break;
      case StateSpec::Kind::fock:
        mode.options.push_back({1.0, fock_level(spec.level), spec.level});
        break;
      case StateSpec::Kind::fock_superposition: {
        ModeAmplitudes amps = fock_superposition(spec.coefficients);
        const int occ = top_populated_level(amps);
        mode.options.push_back({1.0, std::move(amps), occ});
        break;
      }
      case StateSpec::Kind::coherent: {
        if (!s.cutoff) {
          throw InvalidConfigError("coherent rest states need an explicit cutoff");
        }
        TruncatedCoherent tc = coherent_levels(spec.amplitude, d, s.tail_tol);
        truncation_tail_ += tc.tail;
        mode.options.push_back({1.0, std::move(tc.levels), d - 1});
        break;
      }
      case StateSpec::Kind::thermal: {
        const double n_bar =
            spec.n_bar ? *spec.n_bar : 1.0 / std::expm1(*spec.beta * omega_th);
        const auto levels = expand_thermal(n_bar, thermal_cap, s.tail_tol);
        if (n_bar > 0.0) {
          const double ratio = n_bar / (1.0 + n_bar);
          truncation_tail_ += std::pow(ratio, static_cast<double>(levels.size()));
        }
        for (const auto& [w, level] : levels) {
          mode.options.push_back({w, fock_level(level), level});
        }
        break;
      }
    }
    if (!mode.mixed()) {
      fixed_rest_occ += mode.options.front().occupancy;
    }
  }

  std::vector<const RestMode*> mixed;
  for (const RestMode& m : rest) {
    if (m.mixed()) {
      mixed.push_back(&m);
    }
  }
  int occupancy_cap = 0;
  for (const RestMode* m : mixed) {
    occupancy_cap += static_cast<int>(m->options.size()) - 1;
  }

  // Enumerate joint environment components in ascending total occupancy and
  // stop once the remaining mass is inside the tail tolerance.
  std::vector<std::pair<double, std::vector<int>>> kept;
  double cum = 0.0;
  int max_mixed_occ = 0;
  for (int total = 0; total <= occupancy_cap; ++total) {
    std::vector<std::pair<double, std::vector<int>>> layer;
    std::vector<int> choice;
    enumerate_layer(mixed, 0, total, choice, 1.0, layer);
    for (auto& comp : layer) {
      cum += comp.first;
      kept.push_back(std::move(comp));
      max_mixed_occ = total;
    }
    if (kept.size() > limits::max_mixture_components) {
      throw CapacityError("environment mixture needs more than " +
                          std::to_string(limits::max_mixture_components) +
                          " components; tighten tail_tol or lower occupancies");
    }
    if (1.0 - cum < s.tail_tol) {
      break;
    }
  }
  truncation_tail_ += std::max(0.0, 1.0 - cum);

  ModeAmplitudes sent;
  switch (s.sent_state.kind) {
    case StateSpec::Kind::vacuum:
      sent = fock_level(0);
      break;
    case StateSpec::Kind::fock:
      sent = fock_level(s.sent_state.level);
      break;
    case StateSpec::Kind::fock_superposition:
      sent = fock_superposition(s.sent_state.coefficients);
      break;
    case StateSpec::Kind::coherent: {
      TruncatedCoherent tc = coherent_levels(s.sent_state.amplitude, d, s.tail_tol);
      truncation_tail_ += tc.tail;
      sent = std::move(tc.levels);
      break;
    }
    case StateSpec::Kind::thermal:
      throw InvalidConfigError("sent state must be pure");
  }
  const int sent_top = top_populated_level(sent);

  if (d == 0) {
    d = sent_top + fixed_rest_occ + max_mixed_occ + 1;
  }
  d = std::max(d, 2);
  cutoff_ = d;

  const int max_sector = sent_top + fixed_rest_occ + max_mixed_occ;
  hamiltonian_ = std::make_unique<SectorHamiltonian>(array_, FockBasis(n, d, max_sector));

  const FockBasis& basis = hamiltonian_->basis();
  weights_.reserve(kept.size());
  components_.reserve(kept.size());
  std::vector<ModeAmplitudes> modes(static_cast<std::size_t>(n));
  for (const auto& [weight, choice] : kept) {
    modes[0] = sent;
    std::size_t mixed_idx = 0;
    for (int i = 0; i < n - 1; ++i) {
      const RestMode& mode = rest[static_cast<std::size_t>(i)];
      const ModeOption& opt =
          mode.mixed() ? mode.options[static_cast<std::size_t>(choice[mixed_idx++])]
                       : mode.options.front();
      modes[static_cast<std::size_t>(i + 1)] = opt.amps;
    }
    weights_.push_back(weight / cum);
    components_.push_back(prepare_product_state(basis, modes));
  }
  target_ = sent.amps;
}

double CompiledScenario::fidelity_at(double t) const {
  FidelityWorkspace workspace(basis());
  double f = 0.0;
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const StateVector evolved = evolve(*hamiltonian_, components_[c], t);
    f += weights_[c] * workspace.site_fidelity(evolved, target_);
  }
  return f;
}

std::pair<double, double> CompiledScenario::number_transfer_at(double t) const {
  double arrived = 0.0;
  double sent = 0.0;
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const StateVector evolved = evolve(*hamiltonian_, components_[c], t);
    arrived += weights_[c] * number_expectation(evolved, array_.n_cavities - 1);
    sent += weights_[c] * number_expectation(components_[c], 0);
  }
  return {arrived, sent};
}

FidelityCurve fidelity_curve(const Scenario& s, int threads) {
  const CompiledScenario compiled(s);
  const std::vector<double> times = s.time_grid.times();
  const std::size_t n_components = compiled.component_count();
  const std::size_t n_times = times.size();
  const std::size_t unit_count = n_components * n_times;

  std::vector<double> partial(unit_count);
  int want = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  want = std::clamp(want, 1, 64);
  const std::size_t n_workers = std::min(static_cast<std::size_t>(want), unit_count);

  std::atomic<std::size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&]() {
    try {
      FidelityWorkspace workspace(compiled.basis());
      constexpr std::size_t chunk = 8;
      for (;;) {
        const std::size_t begin = cursor.fetch_add(chunk);
        if (begin >= unit_count) {
          break;
        }
        const std::size_t end = std::min(begin + chunk, unit_count);
        for (std::size_t idx = begin; idx < end; ++idx) {
          const std::size_t c = idx / n_times;
          const std::size_t ti = idx % n_times;
          const StateVector evolved =
              evolve(compiled.hamiltonian(), compiled.component_state(c), times[ti]);
          partial[idx] = workspace.site_fidelity(evolved, compiled.target());
        }
      }
    } catch (...) {
      const std::scoped_lock lock(error_mutex);
      if (!first_error) {
        first_error = std::current_exception();
      }
    }
  };

  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) {
      pool.emplace_back(work);
    }
    for (std::thread& worker : pool) {
      worker.join();
    }
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }

  FidelityCurve out;
  out.points.reserve(n_times);
  for (std::size_t ti = 0; ti < n_times; ++ti) {
    double f = 0.0;
    for (std::size_t c = 0; c < n_components; ++c) {
      f += compiled.component_weight(c) * partial[c * n_times + ti];
    }
    out.points.emplace_back(times[ti], f);
  }
  out.t_best = out.points.front().first;
  out.f_best = out.points.front().second;
  for (const auto& [t, f] : out.points) {
    if (f > out.f_best) {
      out.f_best = f;
      out.t_best = t;
    }
  }
  if (s.requested_tau) {
    out.f_at_requested_tau = compiled.fidelity_at(*s.requested_tau);
  }
  out.truncation_tail = compiled.truncation_tail();
  out.components = n_components;
  out.cutoff = compiled.cutoff();
  return out;
}

std::pair<double, double> heisenberg_check(const Scenario& s, double t) {
  const CompiledScenario compiled(s);
  return compiled.number_transfer_at(t);
}

}  // namespace cca
