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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vibqpe/cost.hpp"
#include "vibqpe/decomp.hpp"
#include "vibqpe/estimate.hpp"
#include "vibqpe/generator.hpp"
#include "vibqpe/grouping.hpp"
#include "vibqpe/lcu.hpp"
#include "vibqpe/sop.hpp"
#include "vibqpe/sop_io.hpp"

namespace vibqpe {

/// Effective settings of one run. Embedded verbatim in every report.
struct RunConfig {
  double epsilon = 4.5e-6;
  double eps_t = 1e-10;
  double eps_lr = 1e-8;
  Representation representation = Representation::triangular;
  LookupMode lookup = LookupMode::standard;
  int lookup_a = 1;
  std::string grouping = "greedy";  // naive, greedy, exact or none
  bool weighted = true;
  double c_lcu = 0.5;
  double seconds_per_toffoli = 0.040;
  bool tucker = true;
  std::uint64_t seed = 0;

  void validate() const;
};

Json config_to_json(const RunConfig& config);
/// Overrides the fields present in `doc`; unknown keys are a SchemaError.
RunConfig config_from_json(const Json& doc, RunConfig base = {});

EstimateOptions estimate_options(const RunConfig& config, Representation rep);
DecomposeOptions decompose_options(const RunConfig& config, double eps_lr);

struct GenParams {
  std::string preset = "random";  // random, uncoupled, bilinear
  int n_modes = 3;
  int n_modals = 4;
  std::vector<double> frequencies;  // defaults to 1 + 0.1·m
  double bilinear = 0.1;
  RandomCouplingOptions couplings;
};

SopHamiltonian cmd_gen(const GenParams& params, const RunConfig& config);

struct DecomposeOutput {
  SopHamiltonian hamiltonian;
  Json report;  // decomp-v1 with config and input digest
};

DecomposeOutput cmd_decompose(const SopHamiltonian& h, const RunConfig& config);
Json cmd_group(const SopHamiltonian& h, const RunConfig& config);
Json cmd_estimate(const SopHamiltonian& h, const RunConfig& config, bool all_reps);

struct TableOutput {
  Json report;
  std::string csv;         // threshold, n_terms, alpha, toffoli, qubits, n_walk, runtime_s
  std::string errors_csv;  // threshold, epsilon_tensor, delta_e, norm_difference, weyl_ok, max_coupling_error
};

TableOutput cmd_verify(const SopHamiltonian& h, const RunConfig& config, const std::vector<double>& thresholds);
TableOutput cmd_report(const std::vector<Json>& inputs);

inline constexpr const char* kCsvHeader = "threshold,n_terms,alpha,toffoli,qubits,n_walk,runtime_s";

/// Digest of the canonical serialization of h.
std::string sop_digest(const SopHamiltonian& h);
/// Shortest round-trip decimal form of x.
std::string format_double(double x);

}  // namespace vibqpe
