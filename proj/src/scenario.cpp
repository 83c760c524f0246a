#include "cca/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "cca/analysis.hpp"
#include "cca/errors.hpp"
#include "cca/tolerances.hpp"

namespace cca {

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = start + (end - start) * i / (points - 1);
  }
  out.back() = end;
  return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
  throw ParseError(origin + ": " + message);
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& origin, const std::string& context) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      fail(origin, context + ": unknown key \"" + item.key() + "\"");
    }
  }
}

double require_number(const json& obj, const char* key, const std::string& origin,
                      const std::string& context) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    fail(origin, context + "." + key + ": required number");
  }
  const double value = obj[key].get<double>();
  if (!std::isfinite(value)) {
    fail(origin, context + "." + key + ": must be finite");
  }
  return value;
}

int require_integer(const json& obj, const char* key, const std::string& origin,
                    const std::string& context) {
  if (!obj.contains(key) || !obj[key].is_number_integer()) {
    fail(origin, context + "." + key + ": required integer");
  }
  return obj[key].get<int>();
}

std::complex<double> parse_complex(const json& j, const std::string& origin,
                                   const std::string& field) {
  if (j.is_number()) {
    const double re = j.get<double>();
    if (!std::isfinite(re)) {
      fail(origin, field + ": must be finite");
    }
    return {re, 0.0};
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    const double re = j[0].get<double>();
    const double im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      fail(origin, field + ": must be finite");
    }
    return {re, im};
  }
  fail(origin, field + ": expected a number or an [re, im] pair");
}

StateSpec parse_state_spec(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    fail(origin, field + ": expected an object with a \"kind\" string");
  }
  const std::string kind = j["kind"].get<std::string>();
  StateSpec spec;
  if (kind == "vacuum") {
    check_keys(j, {"kind"}, origin, field);
    spec.kind = StateSpec::Kind::vacuum;
  } else if (kind == "fock") {
    check_keys(j, {"kind", "level"}, origin, field);
    spec.kind = StateSpec::Kind::fock;
    spec.level = require_integer(j, "level", origin, field);
    if (spec.level < 0) {
      fail(origin, field + ".level: must be >= 0");
    }
  } else if (kind == "fock_superposition") {
    check_keys(j, {"kind", "coefficients"}, origin, field);
    spec.kind = StateSpec::Kind::fock_superposition;
    if (!j.contains("coefficients") || !j["coefficients"].is_array() ||
        j["coefficients"].empty()) {
      fail(origin, field + ".coefficients: required nonempty array");
    }
    bool any_nonzero = false;
    for (std::size_t i = 0; i < j["coefficients"].size(); ++i) {
      const auto c = parse_complex(j["coefficients"][i], origin,
                                   field + ".coefficients[" + std::to_string(i) + "]");
      any_nonzero = any_nonzero || std::abs(c) > 0.0;
      spec.coefficients.push_back(c);
    }
    if (!any_nonzero) {
      fail(origin, field + ".coefficients: all coefficients are zero");
    }
  } else if (kind == "coherent") {
    check_keys(j, {"kind", "amplitude"}, origin, field);
    spec.kind = StateSpec::Kind::coherent;
    if (!j.contains("amplitude")) {
      fail(origin, field + ".amplitude: required");
    }
    spec.amplitude = parse_complex(j["amplitude"], origin, field + ".amplitude");
  } else if (kind == "thermal") {
    check_keys(j, {"kind", "n_bar", "beta"}, origin, field);
    spec.kind = StateSpec::Kind::thermal;
    const bool has_n_bar = j.contains("n_bar");
    const bool has_beta = j.contains("beta");
    if (has_n_bar == has_beta) {
      fail(origin, field + ": exactly one of n_bar and beta is required");
    }
    if (has_n_bar) {
      spec.n_bar = require_number(j, "n_bar", origin, field);
      if (*spec.n_bar < 0.0) {
        fail(origin, field + ".n_bar: must be >= 0");
      }
    } else {
      spec.beta = require_number(j, "beta", origin, field);
      if (!(*spec.beta > 0.0)) {
        fail(origin, field + ".beta: must be > 0");
      }
    }
  } else {
    fail(origin, field + ".kind: unknown kind \"" + kind + "\"");
  }
  return spec;
}

CouplingSpec parse_coupling(const json& j, const std::string& origin, int n) {
  if (!j.is_object() || !j.contains("scheme") || !j["scheme"].is_string()) {
    fail(origin, "coupling: expected an object with a \"scheme\" string");
  }
  const std::string scheme = j["scheme"].get<std::string>();
  CouplingSpec spec;
  if (scheme == "uniform") {
    check_keys(j, {"scheme", "j"}, origin, "coupling");
    spec.scheme = CouplingSpec::Scheme::uniform;
    spec.j = j.contains("j") ? require_number(j, "j", origin, "coupling") : 1.0;
  } else if (scheme == "modulated") {
    check_keys(j, {"scheme", "k"}, origin, "coupling");
    spec.scheme = CouplingSpec::Scheme::modulated;
    spec.k = j.contains("k") ? require_integer(j, "k", origin, "coupling") : 0;
    if (spec.k < 0) {
      fail(origin, "coupling.k: must be >= 0");
    }
  } else if (scheme == "ballistic") {
    check_keys(j, {"scheme", "j_end", "j_bulk"}, origin, "coupling");
    spec.scheme = CouplingSpec::Scheme::ballistic;
    spec.j_end = require_number(j, "j_end", origin, "coupling");
    spec.j_bulk = j.contains("j_bulk") ? require_number(j, "j_bulk", origin, "coupling") : 1.0;
  } else if (scheme == "custom") {
    check_keys(j, {"scheme", "values"}, origin, "coupling");
    spec.scheme = CouplingSpec::Scheme::custom;
    if (!j.contains("values") || !j["values"].is_array()) {
      fail(origin, "coupling.values: required array of " + std::to_string(n - 1) + " numbers");
    }
    for (std::size_t i = 0; i < j["values"].size(); ++i) {
      if (!j["values"][i].is_number()) {
        fail(origin, "coupling.values[" + std::to_string(i) + "]: must be a number");
      }
      spec.values.push_back(j["values"][i].get<double>());
    }
  } else {
    fail(origin, "coupling.scheme: unknown scheme \"" + scheme + "\"");
  }
  return spec;
}

FrequencyRule parse_rule(const json& j, const std::string& origin) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    fail(origin, "omega_rule: expected an object with a \"kind\" string");
  }
  check_keys(j, {"kind", "k"}, origin, "omega_rule");
  FrequencyRule rule;
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "uniform_pgst") {
    rule.kind = FrequencyRule::Kind::uniform_pgst;
  } else if (kind == "modulated") {
    rule.kind = FrequencyRule::Kind::modulated;
  } else {
    fail(origin, "omega_rule.kind: unknown kind \"" + kind + "\"");
  }
  rule.k = j.contains("k") ? require_integer(j, "k", origin, "omega_rule") : 0;
  if (rule.k < 0) {
    fail(origin, "omega_rule.k: must be >= 0");
  }
  return rule;
}

double resolve_rule(const FrequencyRule& rule, const CouplingSpec& coupling,
                    const CavityArray& probe, const std::string& origin) {
  double omega = 0.0;
  if (rule.kind == FrequencyRule::Kind::modulated) {
    if (coupling.scheme != CouplingSpec::Scheme::modulated) {
      fail(origin, "omega_rule: the modulated rule requires modulated couplings");
    }
    constexpr double half_pi = std::numbers::pi / 2.0;
    double phase = 0.0;
    switch ((probe.n_cavities - 1 + 2 * (coupling.k % 2)) % 4) {
      case 0: phase = 0.0; break;
      case 1: phase = half_pi; break;
      case 2: phase = std::numbers::pi; break;
      default: phase = -half_pi; break;
    }
    omega = phase_matching_frequency(half_pi, phase, rule.k);
  } else {
    TransferWindow window;
    if (auto exact = engineered_exact_window(probe)) {
      window = *exact;
    } else {
      const double t_max = default_search_window(probe.n_cavities);
      window = find_transfer_time(probe, t_max, default_search_grid(t_max));
    }
    if (window.magnitude < 0.5) {
      throw AnalysisError(origin + ": omega_rule: no usable transfer window (best magnitude " +
                          std::to_string(window.magnitude) + ")");
    }
    omega = phase_matching_frequency(window.time, window.phase, rule.k);
  }
  if (omega < -1e-12) {
    fail(origin, "omega_rule.k: resolves to a negative frequency; increase k");
  }
  return std::max(omega, 0.0);
}

json complex_to_json(std::complex<double> z) {
  if (z.imag() == 0.0) {
    return json(z.real());
  }
  return json::array({z.real(), z.imag()});
}

json state_to_json(const StateSpec& spec) {
  json j;
  switch (spec.kind) {
    case StateSpec::Kind::vacuum:
      j["kind"] = "vacuum";
      break;
    case StateSpec::Kind::fock:
      j["kind"] = "fock";
      j["level"] = spec.level;
      break;
    case StateSpec::Kind::fock_superposition: {
      j["kind"] = "fock_superposition";
      json coeffs = json::array();
      for (const auto& c : spec.coefficients) {
        coeffs.push_back(complex_to_json(c));
      }
      j["coefficients"] = std::move(coeffs);
      break;
    }
    case StateSpec::Kind::coherent:
      j["kind"] = "coherent";
      j["amplitude"] = complex_to_json(spec.amplitude);
      break;
    case StateSpec::Kind::thermal:
      j["kind"] = "thermal";
      if (spec.n_bar) {
        j["n_bar"] = *spec.n_bar;
      } else {
        j["beta"] = *spec.beta;
      }
      break;
  }
  return j;
}

bool state_equivalent(const StateSpec& a, const StateSpec& b) {
  const auto canonical_kind = [](const StateSpec& s) {
    if (s.kind == StateSpec::Kind::fock && s.level == 0) {
      return StateSpec::Kind::vacuum;
    }
    return s.kind;
  };
  if (canonical_kind(a) != canonical_kind(b)) {
    return false;
  }
  switch (canonical_kind(a)) {
    case StateSpec::Kind::vacuum:
      return true;
    case StateSpec::Kind::fock:
      return a.level == b.level;
    case StateSpec::Kind::fock_superposition:
      return a.coefficients == b.coefficients;
    case StateSpec::Kind::coherent:
      return a.amplitude == b.amplitude;
    case StateSpec::Kind::thermal:
      return a.n_bar == b.n_bar && a.beta == b.beta;
  }
  return false;
}

}  // namespace

Scenario parse_scenario_json(const json& doc, const std::string& origin) {
  if (!doc.is_object()) {
    fail(origin, "scenario must be a JSON object");
  }
  check_keys(doc,
             {"n", "coupling", "omega", "omega_rule", "sent_state", "rest_states", "time_grid",
              "cutoff", "tail_tol", "thermal_omega", "tau"},
             origin, "scenario");

  Scenario s;
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    fail(origin, "n: required integer >= 2");
  }
  s.n = doc["n"].get<int>();
  if (s.n < 2) {
    fail(origin, "n: must be >= 2");
  }

  if (!doc.contains("coupling")) {
    fail(origin, "coupling: required object");
  }
  s.coupling = parse_coupling(doc["coupling"], origin, s.n);

  const bool has_omega = doc.contains("omega");
  const bool has_rule = doc.contains("omega_rule");
  if (has_omega == has_rule) {
    fail(origin, "exactly one of omega and omega_rule is required");
  }
  if (has_omega) {
    s.omega = require_number(doc, "omega", origin, "scenario");
    if (*s.omega < 0.0) {
      fail(origin, "omega: must be >= 0");
    }
  } else {
    s.omega_rule = parse_rule(doc["omega_rule"], origin);
  }

  if (!doc.contains("sent_state")) {
    fail(origin, "sent_state: required object");
  }
  s.sent_state = parse_state_spec(doc["sent_state"], origin, "sent_state");
  if (!s.sent_state.is_pure()) {
    fail(origin, "sent_state: must be a pure state (vacuum, fock, fock_superposition, coherent)");
  }

  if (!doc.contains("rest_states")) {
    fail(origin, "rest_states: required");
  }
  const json& rests = doc["rest_states"];
  if (rests.is_array() && rests.size() != 1) {
    if (static_cast<int>(rests.size()) != s.n - 1) {
      fail(origin, "rest_states: expected " + std::to_string(s.n - 1) + " entries, got " +
                       std::to_string(rests.size()));
    }
    for (std::size_t i = 0; i < rests.size(); ++i) {
      s.rest_states.push_back(
          parse_state_spec(rests[i], origin, "rest_states[" + std::to_string(i) + "]"));
    }
  } else {
    // A bare spec, or a one-entry list, is broadcast to every rest mode.
    const json& node = rests.is_array() ? rests[0] : rests;
    const StateSpec one = parse_state_spec(node, origin, "rest_states");
    s.rest_states.assign(static_cast<std::size_t>(s.n - 1), one);
  }

  if (!doc.contains("time_grid") || !doc["time_grid"].is_object()) {
    fail(origin, "time_grid: required object");
  }
  const json& grid = doc["time_grid"];
  check_keys(grid, {"start", "end", "points"}, origin, "time_grid");
  s.time_grid.start = require_number(grid, "start", origin, "time_grid");
  s.time_grid.end = require_number(grid, "end", origin, "time_grid");
  s.time_grid.points = require_integer(grid, "points", origin, "time_grid");
  if (s.time_grid.points < 2) {
    fail(origin, "time_grid.points: must be >= 2");
  }
  if (s.time_grid.start < 0.0 || !(s.time_grid.end > s.time_grid.start)) {
    fail(origin, "time_grid: needs end > start >= 0");
  }

  if (doc.contains("cutoff")) {
    s.cutoff = require_integer(doc, "cutoff", origin, "scenario");
    if (*s.cutoff < 2) {
      fail(origin, "cutoff: must be >= 2");
    }
  }
  if (doc.contains("tail_tol")) {
    s.tail_tol = require_number(doc, "tail_tol", origin, "scenario");
    if (!(s.tail_tol > 0.0) || s.tail_tol >= 1.0) {
      fail(origin, "tail_tol: must be in (0, 1)");
    }
  }
  if (doc.contains("thermal_omega")) {
    s.thermal_omega = require_number(doc, "thermal_omega", origin, "scenario");
    if (!(*s.thermal_omega > 0.0)) {
      fail(origin, "thermal_omega: must be > 0");
    }
  }
  if (doc.contains("tau")) {
    s.requested_tau = require_number(doc, "tau", origin, "scenario");
    if (*s.requested_tau < 0.0) {
      fail(origin, "tau: must be >= 0");
    }
  }

  // Validate the couplings once by constructing the omega = 0 array; it also
  // serves as the probe for frequency-rule resolution.
  CavityArray probe;
  try {
    Scenario tmp = s;
    tmp.resolved_omega = 0.0;
    probe = scenario_array(tmp);
  } catch (const Error& e) {
    fail(origin, std::string("coupling: ") + e.what());
  }

  s.resolved_omega = has_omega ? *s.omega : resolve_rule(*s.omega_rule, s.coupling, probe, origin);

  const double omega_th = s.thermal_omega.value_or(s.resolved_omega);
  for (std::size_t i = 0; i < s.rest_states.size(); ++i) {
    if (s.rest_states[i].kind == StateSpec::Kind::thermal && s.rest_states[i].beta &&
        !(omega_th > 0.0)) {
      fail(origin, "rest_states[" + std::to_string(i) +
                       "]: thermal beta needs a positive thermal_omega or cavity omega");
    }
  }
  return s;
}

Scenario parse_scenario_text(std::string_view text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": invalid JSON: " + e.what());
  }
  return parse_scenario_json(doc, origin);
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw ParseError(path.string() + ": cannot open scenario file");
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return parse_scenario_text(buffer.str(), path.string());
}

nlohmann::json scenario_to_json(const Scenario& s) {
  json doc;
  doc["n"] = s.n;
  json coupling;
  switch (s.coupling.scheme) {
    case CouplingSpec::Scheme::uniform:
      coupling["scheme"] = "uniform";
      coupling["j"] = s.coupling.j;
      break;
    case CouplingSpec::Scheme::modulated:
      coupling["scheme"] = "modulated";
      coupling["k"] = s.coupling.k;
      break;
    case CouplingSpec::Scheme::ballistic:
      coupling["scheme"] = "ballistic";
      coupling["j_end"] = s.coupling.j_end;
      coupling["j_bulk"] = s.coupling.j_bulk;
      break;
    case CouplingSpec::Scheme::custom:
      coupling["scheme"] = "custom";
      coupling["values"] = s.coupling.values;
      break;
  }
  doc["coupling"] = std::move(coupling);
  doc["omega"] = s.resolved_omega;
  doc["sent_state"] = state_to_json(s.sent_state);
  json rests = json::array();
  for (const StateSpec& r : s.rest_states) {
    rests.push_back(state_to_json(r));
  }
  doc["rest_states"] = std::move(rests);
  doc["time_grid"] = {{"start", s.time_grid.start},
                      {"end", s.time_grid.end},
                      {"points", s.time_grid.points}};
  if (s.cutoff) {
    doc["cutoff"] = *s.cutoff;
  }
  doc["tail_tol"] = s.tail_tol;
  if (s.thermal_omega) {
    doc["thermal_omega"] = *s.thermal_omega;
  }
  if (s.requested_tau) {
    doc["tau"] = *s.requested_tau;
  }
  return doc;
}

bool scenario_equivalent(const Scenario& a, const Scenario& b) {
  if (a.n != b.n || a.coupling.scheme != b.coupling.scheme ||
      a.resolved_omega != b.resolved_omega) {
    return false;
  }
  switch (a.coupling.scheme) {
    case CouplingSpec::Scheme::uniform:
      if (a.coupling.j != b.coupling.j) return false;
      break;
    case CouplingSpec::Scheme::modulated:
      if (a.coupling.k != b.coupling.k) return false;
      break;
    case CouplingSpec::Scheme::ballistic:
      if (a.coupling.j_end != b.coupling.j_end || a.coupling.j_bulk != b.coupling.j_bulk) {
        return false;
      }
      break;
    case CouplingSpec::Scheme::custom:
      if (a.coupling.values != b.coupling.values) return false;
      break;
  }
  if (!state_equivalent(a.sent_state, b.sent_state) ||
      a.rest_states.size() != b.rest_states.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.rest_states.size(); ++i) {
    if (!state_equivalent(a.rest_states[i], b.rest_states[i])) {
      return false;
    }
  }
  return a.time_grid.start == b.time_grid.start && a.time_grid.end == b.time_grid.end &&
         a.time_grid.points == b.time_grid.points && a.cutoff == b.cutoff &&
         a.tail_tol == b.tail_tol && a.thermal_omega == b.thermal_omega &&
         a.requested_tau == b.requested_tau;
}

CavityArray scenario_array(const Scenario& s) {
  switch (s.coupling.scheme) {
    case CouplingSpec::Scheme::uniform:
      return build_uniform(s.n, s.coupling.j, s.resolved_omega);
    case CouplingSpec::Scheme::modulated:
      return build_modulated(s.n, s.coupling.k, s.resolved_omega);
    case CouplingSpec::Scheme::ballistic:
      return build_ballistic(s.n, s.coupling.j_end, s.coupling.j_bulk, s.resolved_omega);
    case CouplingSpec::Scheme::custom:
      return make_cavity_array(s.n, s.coupling.values, s.resolved_omega);
  }
  throw InvalidConfigError("unhandled coupling scheme");
}

}  // namespace cca
