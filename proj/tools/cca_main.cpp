#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cca/analysis.hpp"
#include "cca/curves.hpp"
#include "cca/errors.hpp"
#include "cca/io.hpp"
#include "cca/presets.hpp"
#include "cca/scenario.hpp"
#include "cca/verification.hpp"

namespace {

using nlohmann::json;

cca::Scenario load_scenario(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    return cca::parse_scenario(arg);
  }
  const auto& table = cca::preset_table();
  if (const auto it = table.find(arg); it != table.end()) {
    return cca::parse_scenario_text(it->second, "preset:" + arg);
  }
  throw cca::ParseError(arg + ": no such scenario file or preset");
}

const char* witness_name(cca::LengthWitness::Form form) {
  switch (form) {
    case cca::LengthWitness::Form::prime_minus_one:
      return "prime_minus_one";
    case cca::LengthWitness::Form::twice_prime_minus_one:
      return "twice_prime_minus_one";
    case cca::LengthWitness::Form::power_of_two_minus_one:
      return "power_of_two_minus_one";
  }
  return "unknown";
}

json summary_json(const cca::FidelityCurve& curve) {
  json summary;
  summary["t_best"] = curve.t_best;
  summary["F_best"] = curve.f_best;
  if (curve.f_at_requested_tau) {
    summary["F_at_requested_tau"] = *curve.f_at_requested_tau;
  }
  summary["truncation_tail"] = curve.truncation_tail;
  summary["components"] = curve.components;
  summary["cutoff"] = curve.cutoff;
  return summary;
}

int cmd_analyze(const std::string& scenario_arg, const std::string& out_path) {
  const cca::Scenario scenario = load_scenario(scenario_arg);
  const cca::TransferAnalysis analysis = cca::analyze_array(cca::scenario_array(scenario));

  json report;
  report["length_class"]["n"] = analysis.length_class.n;
  report["length_class"]["pgst"] = analysis.length_class.is_pgst;
  json witnesses = json::array();
  for (const auto& w : analysis.length_class.witnesses) {
    witnesses.push_back({{"form", witness_name(w.form)}, {"parameter", w.parameter}});
  }
  report["length_class"]["witnesses"] = std::move(witnesses);
  report["gamma"] = {analysis.residual.value.real(), analysis.residual.value.imag()};
  report["tau"] = analysis.window.time;
  report["magnitude_at_tau"] = analysis.window.magnitude;
  report["recommended_omegas"] = analysis.recommended_frequencies;

  const std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    cca::write_file_atomic(out_path, text);
  }
  return 0;
}

int cmd_fidelity(const std::string& scenario_arg, const std::string& out_path, int threads) {
  const cca::Scenario scenario = load_scenario(scenario_arg);
  const cca::FidelityCurve curve = cca::fidelity_curve(scenario, threads);
  cca::write_file_atomic(out_path, cca::curve_to_csv(curve.points));
  std::cout << summary_json(curve).dump(2) + "\n";
  return 0;
}

int cmd_reproduce(const std::string& figure, const std::string& out_dir, int threads) {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> figures = {
      {"fig1", {"fig1_coherent", "fig1_superposition_single", "fig1_superposition_weighted"}},
      {"fig2", {"fig2_beta_0p5", "fig2_beta_1", "fig2_beta_10", "fig2_beta_20"}},
      {"fig3",
       {"fig3_thermal", "fig3_one_photon", "fig3_two_photon", "fig3_uniform_thermal",
        "fig3_uniform_one_photon", "fig3_uniform_two_photon"}},
  };
  const std::vector<std::string>* presets = nullptr;
  for (const auto& [name, list] : figures) {
    if (name == figure) {
      presets = &list;
    }
  }
  if (presets == nullptr) {
    throw cca::ParseError("--figure must be one of fig1, fig2, fig3");
  }

  std::filesystem::create_directories(out_dir);
  json manifest;
  manifest["figure"] = figure;
  manifest["curves"] = json::array();
  for (const std::string& name : *presets) {
    const cca::Scenario scenario = load_scenario(name);
    const cca::FidelityCurve curve = cca::fidelity_curve(scenario, threads);
    const std::string csv_name = name + ".csv";
    cca::write_file_atomic(std::filesystem::path(out_dir) / csv_name,
                           cca::curve_to_csv(curve.points));
    json entry;
    entry["name"] = name;
    entry["csv"] = csv_name;
    entry["scenario"] = cca::scenario_to_json(scenario);
    entry["summary"] = summary_json(curve);
    manifest["curves"].push_back(std::move(entry));
    std::cerr << name << ": F_best = " << curve.f_best << " at t = " << curve.t_best << "\n";
  }
  cca::write_file_atomic(std::filesystem::path(out_dir) / "manifest.json",
                         manifest.dump(2) + "\n");
  std::cout << (std::filesystem::path(out_dir) / "manifest.json").string() << "\n";
  return 0;
}

int cmd_verify(double tolerance, bool informational, const std::string& out_path) {
  cca::VerificationOptions options;
  options.tolerance_override = tolerance;
  const std::vector<cca::CheckResult> results = cca::run_verification(options);

  bool all_pass = true;
  json report;
  report["checks"] = json::array();
  for (const cca::CheckResult& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("[%s] %-30s deviation %.3e  tolerance %.3e  %s\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.deviation, r.tolerance, r.detail.c_str());
    report["checks"].push_back({{"name", r.name},
                                {"deviation", r.deviation},
                                {"tolerance", r.tolerance},
                                {"pass", r.pass},
                                {"detail", r.detail}});
  }
  report["all_pass"] = all_pass;
  if (!out_path.empty()) {
    cca::write_file_atomic(out_path, report.dump(2) + "\n");
  }
  if (!all_pass && !informational) {
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-state transfer along a coupled cavity array"};
  app.require_subcommand(1);

  std::string scenario_arg;
  std::string out_path;
  std::string figure;
  int threads = 0;
  double tolerance = 0.0;
  bool informational = false;

  CLI::App* analyze = app.add_subcommand("analyze", "Transfer-time and frequency analysis");
  analyze->add_option("--scenario", scenario_arg, "Scenario file or preset name")->required();
  analyze->add_option("--out", out_path, "Also write the JSON report here");

  CLI::App* fidelity = app.add_subcommand("fidelity", "Fidelity curve over the time grid");
  fidelity->add_option("--scenario", scenario_arg, "Scenario file or preset name")->required();
  fidelity->add_option("--out", out_path, "CSV output path")->required();
  fidelity->add_option("--threads", threads, "Worker threads (default: hardware)");

  CLI::App* reproduce = app.add_subcommand("reproduce", "Write the data files of one figure");
  reproduce->add_option("--figure", figure, "fig1, fig2 or fig3")->required();
  reproduce->add_option("--out", out_path, "Output directory")->required();
  reproduce->add_option("--threads", threads, "Worker threads (default: hardware)");

  CLI::App* verify = app.add_subcommand("verify", "Run the cross-check suite");
  verify->add_option("--tolerance", tolerance, "Override every check tolerance");
  verify->add_flag("--informational", informational, "Report failures but exit 0");
  verify->add_option("--out", out_path, "Also write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(analyze)) {
      return cmd_analyze(scenario_arg, out_path);
    }
    if (app.got_subcommand(fidelity)) {
      return cmd_fidelity(scenario_arg, out_path, threads);
    }
    if (app.got_subcommand(reproduce)) {
      return cmd_reproduce(figure, out_path, threads);
    }
    return cmd_verify(tolerance, informational, out_path);
  } catch (const cca::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cca::InvalidConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cca::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
