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

#include "vibqpe/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "vibqpe/errors.hpp"
#include "vibqpe/oracle.hpp"

namespace vibqpe {
namespace {

Json input_block(const SopHamiltonian& h) {
  return {{"digest", sop_digest(h)},
          {"n_modes", h.modes.size()},
          {"n_couplings", h.couplings.size()},
          {"n_terms", h.n_terms()}};
}

struct CsvRow {
  double threshold = 0.0;
  Count n_terms = 0;
  double alpha = 0.0;
  Count toffoli = 0;
  Count qubits = 0;
  Count n_walk = 0;
  double runtime_s = 0.0;
};

std::string csv_line(const CsvRow& r) {
  std::ostringstream os;
  os << format_double(r.threshold) << ',' << r.n_terms << ',' << format_double(r.alpha) << ',' << r.toffoli << ','
     << r.qubits << ',' << r.n_walk << ',' << format_double(r.runtime_s) << '\n';
  return os.str();
}

Json csv_row_json(const CsvRow& r) {
  return {{"threshold", r.threshold}, {"n_terms", r.n_terms}, {"alpha", r.alpha},     {"toffoli", r.toffoli},
          {"qubits", r.qubits},       {"n_walk", r.n_walk},   {"runtime_s", r.runtime_s}};
}

CsvRow csv_row_from_json(const Json& j) {
  CsvRow r;
  r.threshold = j.at("threshold").get<double>();
  r.n_terms = j.at("n_terms").get<Count>();
  r.alpha = j.at("alpha").get<double>();
  r.toffoli = j.at("toffoli").get<Count>();
  r.qubits = j.at("qubits").get<Count>();
  r.n_walk = j.at("n_walk").get<Count>();
  r.runtime_s = j.at("runtime_s").get<double>();
  return r;
}

const char* kErrorsHeader = "threshold,epsilon_tensor,delta_e,norm_difference,weyl_ok,max_coupling_error";

std::string errors_line(const Json& row) {
  std::ostringstream os;
  os << format_double(row.at("threshold").get<double>()) << ','
     << format_double(row.at("epsilon_tensor").get<double>()) << ','
     << format_double(row.at("delta_e").get<double>()) << ','
     << format_double(row.at("norm_difference").get<double>()) << ','
     << (row.at("weyl_ok").get<bool>() ? "true" : "false") << ','
     << format_double(row.at("max_coupling_error").get<double>()) << '\n';
  return os.str();
}

}  // namespace

void RunConfig::validate() const {
  if (!(epsilon > 0.0) || !(eps_t > 0.0) || !(eps_lr > 0.0)) {
    throw ValidationError("epsilon, eps_t and eps_lr must be positive");
  }
  if (!(c_lcu > 0.0 && c_lcu < 1.0)) {
    throw ValidationError("c_lcu must lie strictly between 0 and 1");
  }
  if (!(seconds_per_toffoli >= 0.0)) {
    throw ValidationError("seconds_per_toffoli must be non-negative");
  }
  if (lookup_a != 1 && lookup_a != 2) {
    throw ValidationError("lookup_a must be 1 or 2");
  }
  if (grouping != "none") {
    grouping_algorithm_from_string(grouping);
  }
}

Json config_to_json(const RunConfig& c) {
  return {{"epsilon", c.epsilon},
          {"eps_t", c.eps_t},
          {"eps_lr", c.eps_lr},
          {"representation", to_string(c.representation)},
          {"lookup", to_string(c.lookup)},
          {"lookup_a", c.lookup_a},
          {"grouping", c.grouping},
          {"weighted", c.weighted},
          {"c_lcu", c.c_lcu},
          {"seconds_per_toffoli", c.seconds_per_toffoli},
          {"tucker", c.tucker},
          {"seed", c.seed}};
}

RunConfig config_from_json(const Json& doc, RunConfig c) {
  if (!doc.is_object()) {
    throw SchemaError("config must be a JSON object");
  }
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "epsilon") {
        c.epsilon = value.get<double>();
      } else if (key == "eps_t") {
        c.eps_t = value.get<double>();
      } else if (key == "eps_lr") {
        c.eps_lr = value.get<double>();
      } else if (key == "representation") {
        c.representation = representation_from_string(value.get<std::string>());
      } else if (key == "lookup") {
        c.lookup = lookup_mode_from_string(value.get<std::string>());
      } else if (key == "lookup_a") {
        c.lookup_a = value.get<int>();
      } else if (key == "grouping") {
        c.grouping = value.get<std::string>();
      } else if (key == "weighted") {
        c.weighted = value.get<bool>();
      } else if (key == "c_lcu") {
        c.c_lcu = value.get<double>();
      } else if (key == "seconds_per_toffoli") {
        c.seconds_per_toffoli = value.get<double>();
      } else if (key == "tucker") {
        c.tucker = value.get<bool>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else {
        throw SchemaError("config: unknown key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

EstimateOptions estimate_options(const RunConfig& config, Representation rep) {
  EstimateOptions o;
  o.representation = rep;
  o.lookup.mode = config.lookup;
  o.lookup.a = config.lookup_a;
  o.epsilon = config.epsilon;
  o.c_lcu = config.c_lcu;
  o.seconds_per_toffoli = config.seconds_per_toffoli;
  if (config.grouping == "none") {
    o.grouping.reset();
  } else {
    o.grouping = grouping_algorithm_from_string(config.grouping);
  }
  o.weighted = config.weighted;
  return o;
}

DecomposeOptions decompose_options(const RunConfig& config, double eps_lr) {
  DecomposeOptions o;
  o.eps_t = config.eps_t;
  o.eps_lr = eps_lr;
  o.tucker = config.tucker;
  o.seed = config.seed;
  return o;
}

SopHamiltonian cmd_gen(const GenParams& params, const RunConfig& config) {
  if (params.n_modes < 1) {
    throw ValidationError("gen: at least one mode required");
  }
  std::vector<double> freqs = params.frequencies;
  if (freqs.empty()) {
    for (int m = 0; m < params.n_modes; ++m) freqs.push_back(1.0 + 0.1 * m);
  }
  CouplingSpec couplings;
  if (params.preset == "random") {
    couplings = random_couplings(params.n_modes, params.couplings, config.seed);
  } else if (params.preset == "bilinear") {
    for (int m = 0; m + 1 < params.n_modes; ++m) {
      couplings[{m, m + 1}][{1, 1}] = params.bilinear;
    }
  } else if (params.preset != "uncoupled") {
    throw ValidationError("gen: unknown preset \"" + params.preset + "\"");
  }
  SopHamiltonian h = generate_coupled_oscillator(params.n_modes, freqs, couplings, params.n_modals, config.seed);
  h.metadata["preset"] = params.preset;
  return h;
}

DecomposeOutput cmd_decompose(const SopHamiltonian& h, const RunConfig& config) {
  config.validate();
  Decomposition d = decompose_hamiltonian(h, decompose_options(config, config.eps_lr));
  DecomposeOutput out;
  out.report = report_to_json(d.report);
  out.report["config"] = config_to_json(config);
  out.report["input"] = input_block(h);
  out.report["output_digest"] = sop_digest(d.hamiltonian);
  out.hamiltonian = std::move(d.hamiltonian);
  return out;
}

Json cmd_group(const SopHamiltonian& h, const RunConfig& config) {
  config.validate();
  if (config.grouping == "none") {
    throw ValidationError("group: choose a grouping algorithm (naive, greedy or exact)");
  }
  const HamiltonianEstimate e = estimate_hamiltonian(h, estimate_options(config, config.representation));
  Json doc = plan_to_json(*e.plan);
  Json terms = Json::array();
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    terms.push_back({{"id", i}, {"modes", e.terms[i].modes}, {"toffoli", e.terms[i].cost.toffoli}});
  }
  doc["group_count"] = e.plan->group_count();
  doc["serial_depth"] = e.serial_toffoli;
  doc["terms"] = std::move(terms);
  doc["config"] = config_to_json(config);
  doc["input"] = input_block(h);
  return doc;
}

Json cmd_estimate(const SopHamiltonian& h, const RunConfig& config, bool all_reps) {
  config.validate();
  const HamiltonianEstimate primary = estimate_hamiltonian(h, estimate_options(config, config.representation));
  Json doc = estimate_to_json(primary);
  doc["config"] = config_to_json(config);
  doc["input"] = input_block(h);
  if (all_reps) {
    Json comparison = Json::array();
    double alpha_quad = 0.0;
    double alpha_tri = 0.0;
    for (Representation rep : {Representation::quadratic, Representation::triangular, Representation::diagonal}) {
      const HamiltonianEstimate e =
          rep == config.representation ? primary : estimate_hamiltonian(h, estimate_options(config, rep));
      if (rep == Representation::quadratic) alpha_quad = e.alpha_total;
      if (rep == Representation::triangular) alpha_tri = e.alpha_total;
      comparison.push_back({{"representation", to_string(rep)},
                            {"alpha", e.alpha_total},
                            {"mu", e.budget.mu},
                            {"beta", e.budget.beta},
                            {"block_toffoli", e.block.toffoli},
                            {"toffoli", e.qpe.toffoli_total},
                            {"qubits", e.qpe.qubits_total},
                            {"n_walk", e.qpe.n_walk},
                            {"runtime_s", e.qpe.runtime_seconds}});
    }
    doc["comparison"] = std::move(comparison);
    doc["alpha_triangular_equals_quadratic"] = alpha_quad == alpha_tri;
  }
  return doc;
}

TableOutput cmd_verify(const SopHamiltonian& h, const RunConfig& config, const std::vector<double>& thresholds) {
  config.validate();
  if (thresholds.empty()) {
    throw ValidationError("verify: no thresholds given");
  }
  TableOutput out;
  Json rows = Json::array();
  out.csv = std::string(kCsvHeader) + "\n";
  out.errors_csv = std::string(kErrorsHeader) + "\n";
  for (double t : thresholds) {
    if (!(t > 0.0)) {
      throw ValidationError("verify: thresholds must be positive");
    }
    const Decomposition d = decompose_hamiltonian(h, decompose_options(config, t));
    const EnergyComparison ec = energy_error(h, d.hamiltonian);
    const HamiltonianEstimate e = estimate_hamiltonian(d.hamiltonian, estimate_options(config, config.representation));
    double max_err = 0.0;
    for (const auto& r : d.report.couplings) max_err = std::max(max_err, r.error);
    CsvRow c{t, e.n_terms, e.alpha_total, e.qpe.toffoli_total, e.qpe.qubits_total, e.qpe.n_walk,
             e.qpe.runtime_seconds};
    Json row = csv_row_json(c);
    row["epsilon_tensor"] = d.report.epsilon_tensor;
    row["max_coupling_error"] = max_err;
    row["n_decomposed"] = d.report.n_decomposed;
    row["e_original"] = ec.e_original;
    row["e_decomposed"] = ec.e_decomposed;
    row["delta_e"] = ec.delta_e;
    row["norm_difference"] = ec.norm_difference;
    row["weyl_ok"] = ec.weyl_ok;
    out.csv += csv_line(c);
    out.errors_csv += errors_line(row);
    rows.push_back(std::move(row));
  }
  out.report = {{"version", "verify-v1"}, {"config", config_to_json(config)}, {"input", input_block(h)}};
  out.report["rows"] = std::move(rows);
  return out;
}

TableOutput cmd_report(const std::vector<Json>& inputs) {
  TableOutput out;
  Json sources = Json::array();
  Json rows = Json::array();
  out.csv = std::string(kCsvHeader) + "\n";
  out.errors_csv = std::string(kErrorsHeader) + "\n";
  for (const auto& doc : inputs) {
    if (!doc.is_object() || !doc.contains("version")) {
      throw SchemaError("report: input without a version tag");
    }
    const std::string version = doc["version"].get<std::string>();
    sources.push_back({{"version", version}, {"digest", fnv1a_hex(doc.dump())}});
    try {
      if (version == "verify-v1") {
        for (const auto& row : doc.at("rows")) {
          const CsvRow c = csv_row_from_json(row);
          out.csv += csv_line(c);
          out.errors_csv += errors_line(row);
          Json merged = csv_row_json(c);
          merged["source"] = version;
          rows.push_back(std::move(merged));
        }
      } else if (version == kCostSchema) {
        CsvRow c;
        c.threshold = doc.at("config").at("eps_lr").get<double>();
        c.n_terms = doc.at("totals").at("n_terms").get<Count>();
        c.alpha = doc.at("totals").at("alpha").get<double>();
        c.toffoli = doc.at("qpe").at("toffoli").get<Count>();
        c.qubits = doc.at("qpe").at("qubits").get<Count>();
        c.n_walk = doc.at("qpe").at("n_walk").get<Count>();
        c.runtime_s = doc.at("qpe").at("runtime_s").get<double>();
        out.csv += csv_line(c);
        Json merged = csv_row_json(c);
        merged["source"] = version;
        merged["representation"] = doc.at("representation");
        rows.push_back(std::move(merged));
      } else if (version != kDecompSchema && version != kGroupsSchema) {
        throw SchemaError("report: unsupported input version \"" + version + "\"");
      }
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("report: malformed " + version + " input: " + e.what());
    }
  }
  out.report = {{"version", "report-v1"}, {"inputs", std::move(sources)}, {"rows", std::move(rows)}};
  return out;
}

std::string sop_digest(const SopHamiltonian& h) { return fnv1a_hex(dump_sop(h)); }

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace vibqpe
