#pragma once

#include <complex>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cca/lattice.hpp"

namespace cca {

/// Initial state of a single cavity mode, as described in a scenario file.
struct StateSpec {
  enum class Kind { vacuum, fock, fock_superposition, coherent, thermal };

  Kind kind = Kind::vacuum;
  int level = 0;                                   ///< fock
  std::vector<std::complex<double>> coefficients;  ///< fock_superposition
  std::complex<double> amplitude{0.0, 0.0};        ///< coherent
  std::optional<double> n_bar;                     ///< thermal, mean occupancy
  std::optional<double> beta;                      ///< thermal, inverse temperature

  bool is_pure() const { return kind != Kind::thermal; }
};

struct CouplingSpec {
  enum class Scheme { uniform, modulated, ballistic, custom };

  Scheme scheme = Scheme::uniform;
  double j = 1.0;              ///< uniform
  int k = 0;                   ///< modulated
  double j_end = 0.0;          ///< ballistic
  double j_bulk = 1.0;         ///< ballistic
  std::vector<double> values;  ///< custom
};

struct FrequencyRule {
  enum class Kind { uniform_pgst, modulated };

  Kind kind = Kind::uniform_pgst;
  int k = 0;
};

struct TimeGrid {
  double start = 0.0;
  double end = 0.0;
  int points = 0;

  std::vector<double> times() const;
};

/// A fully validated experiment description. `resolved_omega` is always
/// populated: either the explicit `omega` or the result of the frequency rule.
struct Scenario {
  int n = 0;
  CouplingSpec coupling;
  std::optional<double> omega;
  std::optional<FrequencyRule> omega_rule;
  double resolved_omega = 0.0;
  StateSpec sent_state;
  std::vector<StateSpec> rest_states;  ///< exactly n-1 entries after broadcast
  TimeGrid time_grid;
  std::optional<int> cutoff;
  double tail_tol = 1e-8;
  std::optional<double> thermal_omega;
  std::optional<double> requested_tau;
};

/// Parses and validates a scenario file. Frequency rules are resolved here,
/// so a `uniform_pgst` rule triggers a transfer-time search.
Scenario parse_scenario(const std::filesystem::path& path);

/// Same as parse_scenario but from an in-memory document; `origin` is used in
/// error messages.
Scenario parse_scenario_text(std::string_view text, const std::string& origin);

Scenario parse_scenario_json(const nlohmann::json& doc, const std::string& origin);

/// Emits the normalized form: the resolved omega replaces any rule, rest
/// states are expanded to n-1 entries, and defaults are materialized.
nlohmann::json scenario_to_json(const Scenario& scenario);

/// Field-by-field equality of two normalized scenarios.
bool scenario_equivalent(const Scenario& a, const Scenario& b);

/// Builds the cavity array described by the scenario, at the resolved omega.
CavityArray scenario_array(const Scenario& scenario);

}  // namespace cca
