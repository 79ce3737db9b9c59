// Copyright 2026 The vibqpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vibqpe/errors.hpp"
#include "vibqpe/pipeline.hpp"

namespace {

using vibqpe::Json;

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool json = false;
  bool stamp = false;
};

std::string utc_stamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const Globals& g, Json doc) {
  if (g.stamp) {
    doc["stamp"] = utc_stamp();
  }
  const std::string text = doc.dump(2) + "\n";
  if (!g.out.empty()) {
    vibqpe::write_text_file(g.out, text);
  }
  if (g.out.empty() || g.json) {
    std::cout << text;
  }
}

void emit_csv(const std::string& path, const std::string& csv) {
  if (!path.empty()) {
    vibqpe::write_text_file(path, csv);
  }
}

int fail(const std::string& kind, const std::string& message, int code) {
  Json err = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vibqpe: compression, grouping and qubitization cost estimates for vibrational Hamiltonians"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--config", g.config_path, "JSON file with run settings");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Output file");
  app.add_flag("--json", g.json, "Also print the JSON result to stdout");
  app.add_flag("--stamp", g.stamp, "Embed a UTC timestamp in reports");

  // Per-run overrides of the config file.
  std::optional<double> epsilon, eps_t, eps_lr, c_lcu, spt;
  std::optional<std::string> rep, lookup, grouping;
  std::optional<int> lookup_a;
  bool no_weighted = false;
  bool no_tucker = false;
  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--epsilon", epsilon, "Target energy accuracy (hartree)");
    sub->add_option("--eps-t", eps_t, "Tucker truncation threshold");
    sub->add_option("--eps-lr", eps_lr, "Low-rank truncation threshold");
    sub->add_option("--rep", rep, "quadratic, triangular or diagonal");
    sub->add_option("--lookup", lookup, "standard or selectswap");
    sub->add_option("--lookup-a", lookup_a, "1 (clean ancillae) or 2 (dirty allowed)");
    sub->add_option("--grouping", grouping, "naive, greedy, exact or none");
    sub->add_flag("--no-weighted", no_weighted, "Disable cost-bucketed grouping");
    sub->add_flag("--no-tucker", no_tucker, "Skip the Tucker stage");
    sub->add_option("--c-lcu", c_lcu, "Share of epsilon spent on LCU coefficients");
    sub->add_option("--seconds-per-toffoli", spt, "Runtime multiplier");
  };

  vibqpe::GenParams gen;
  std::vector<double> freqs;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a coupled-oscillator Hamiltonian");
  gen_cmd->add_option("--preset", gen.preset, "random, uncoupled or bilinear")->capture_default_str();
  gen_cmd->add_option("--modes", gen.n_modes, "Number of modes")->capture_default_str();
  gen_cmd->add_option("--modals", gen.n_modals, "Modals per mode")->capture_default_str();
  gen_cmd->add_option("--freqs", freqs, "Frequencies, one per mode")->delimiter(',');
  gen_cmd->add_option("--bilinear", gen.bilinear, "q q coupling for the bilinear preset")->capture_default_str();
  gen_cmd->add_option("--max-order", gen.couplings.max_order, "Largest random coupling order")->capture_default_str();
  gen_cmd->add_option("--max-power", gen.couplings.max_power, "Largest q power")->capture_default_str();
  gen_cmd->add_option("--density", gen.couplings.density, "Probability a mode tuple is coupled")
      ->capture_default_str();
  gen_cmd->add_option("--scale", gen.couplings.scale, "Random coefficient scale")->capture_default_str();
  gen_cmd->add_option("--terms-per-mc", gen.couplings.terms_per_mc, "Power tuples per coupling")
      ->capture_default_str();

  std::string input;
  auto* dec_cmd = app.add_subcommand("decompose", "Decompose coupling tensors (writes a factorized Hamiltonian)");
  std::string report_path;
  dec_cmd->add_option("--in", input, "Input Hamiltonian")->required();
  dec_cmd->add_option("--report", report_path, "decomp-v1 report file");
  add_run_options(dec_cmd);

  auto* group_cmd = app.add_subcommand("group", "Partition terms into parallel groups");
  group_cmd->add_option("--in", input, "Input Hamiltonian")->required();
  add_run_options(group_cmd);

  bool all_reps = false;
  auto* est_cmd = app.add_subcommand("estimate", "Resource estimate for qubitized phase estimation");
  est_cmd->add_option("--in", input, "Input Hamiltonian")->required();
  est_cmd->add_flag("--all-reps", all_reps, "Compare all three representations");
  add_run_options(est_cmd);

  std::vector<double> thresholds{1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  std::string csv_path, errors_csv_path;
  auto* verify_cmd = app.add_subcommand("verify", "Sweep eps_lr and check energy errors against the exact oracle");
  verify_cmd->add_option("--in", input, "Input Hamiltonian")->required();
  verify_cmd->add_option("--thresholds", thresholds, "eps_lr values")->delimiter(',');
  verify_cmd->add_option("--csv", csv_path, "CSV table path");
  verify_cmd->add_option("--errors-csv", errors_csv_path, "Error table path");
  add_run_options(verify_cmd);

  std::vector<std::string> report_inputs;
  auto* report_cmd = app.add_subcommand("report", "Merge prior reports into one summary and CSV tables");
  report_cmd->add_option("inputs", report_inputs, "Report JSON files")->required();
  report_cmd->add_option("--csv", csv_path, "CSV table path");
  report_cmd->add_option("--errors-csv", errors_csv_path, "Error table path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 64);
  }

  try {
    vibqpe::RunConfig config;
    if (!g.config_path.empty()) {
      config = vibqpe::config_from_json(Json::parse(vibqpe::read_text_file(g.config_path)));
    }
    if (g.seed) config.seed = *g.seed;
    if (epsilon) config.epsilon = *epsilon;
    if (eps_t) config.eps_t = *eps_t;
    if (eps_lr) config.eps_lr = *eps_lr;
    if (rep) config.representation = vibqpe::representation_from_string(*rep);
    if (lookup) config.lookup = vibqpe::lookup_mode_from_string(*lookup);
    if (lookup_a) config.lookup_a = *lookup_a;
    if (grouping) config.grouping = *grouping;
    if (no_weighted) config.weighted = false;
    if (no_tucker) config.tucker = false;
    if (c_lcu) config.c_lcu = *c_lcu;
    if (spt) config.seconds_per_toffoli = *spt;
    config.validate();

    if (*gen_cmd) {
      gen.frequencies = freqs;
      const auto h = vibqpe::cmd_gen(gen, config);
      const std::string text = vibqpe::dump_sop(h);
      if (!g.out.empty()) vibqpe::write_text_file(g.out, text);
      if (g.out.empty() || g.json) std::cout << text;
    } else if (*dec_cmd) {
      auto result = vibqpe::cmd_decompose(vibqpe::read_sop(input), config);
      if (g.stamp) result.report["stamp"] = utc_stamp();
      const std::string text = vibqpe::dump_sop(result.hamiltonian);
      if (!g.out.empty()) vibqpe::write_text_file(g.out, text);
      if (!report_path.empty()) vibqpe::write_text_file(report_path, result.report.dump(2) + "\n");
      if (g.out.empty() || g.json) std::cout << result.report.dump(2) << "\n";
    } else if (*group_cmd) {
      emit(g, vibqpe::cmd_group(vibqpe::read_sop(input), config));
    } else if (*est_cmd) {
      emit(g, vibqpe::cmd_estimate(vibqpe::read_sop(input), config, all_reps));
    } else if (*verify_cmd) {
      auto result = vibqpe::cmd_verify(vibqpe::read_sop(input), config, thresholds);
      emit_csv(csv_path, result.csv);
      emit_csv(errors_csv_path, result.errors_csv);
      emit(g, std::move(result.report));
    } else if (*report_cmd) {
      std::vector<Json> docs;
      for (const auto& path : report_inputs) {
        try {
          docs.push_back(Json::parse(vibqpe::read_text_file(path)));
        } catch (const nlohmann::json::parse_error& e) {
          throw vibqpe::SchemaError(path + ": " + e.what());
        }
      }
      auto result = vibqpe::cmd_report(docs);
      emit_csv(csv_path, result.csv);
      emit_csv(errors_csv_path, result.errors_csv);
      emit(g, std::move(result.report));
    }
  } catch (const vibqpe::Error& e) {
    return fail(e.kind(), e.what(), 2);
  } catch (const nlohmann::json::exception& e) {
    return fail("schema", e.what(), 2);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 3);
  }
  return 0;
}
