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

#include <cstddef>
#include <optional>
#include <vector>

#include "vibqpe/cost.hpp"
#include "vibqpe/grouping.hpp"
#include "vibqpe/lcu.hpp"
#include "vibqpe/sop.hpp"
#include "vibqpe/sop_io.hpp"

namespace vibqpe {

struct EstimateOptions {
  Representation representation = Representation::triangular;
  LookupConfig lookup;
  double epsilon = 4.5e-6;
  double c_lcu = 0.5;
  double seconds_per_toffoli = 0.040;
  /// Parallel sum over a grouping plan when set, serial sum otherwise.
  std::optional<GroupingAlgorithm> grouping = GroupingAlgorithm::greedy;
  bool weighted = true;
  std::size_t exact_node_limit = kDefaultExactNodeLimit;
};

/// One product term: its modes, LCU norm and block-encoding cost.
struct TermEstimate {
  std::size_t coupling = 0;
  std::size_t term = 0;
  std::vector<int> modes;
  double alpha = 0.0;
  ResourceEstimate cost;
};

/// Per mode-combination row of the cost table.
struct CouplingRow {
  std::vector<int> modes;
  Count n_terms = 0;
  double alpha = 0.0;      // Σ term α, correctly rounded
  Count toffoli = 0;       // Σ term Toffoli (serial contribution)
  Count n_rot = 0;         // 2·Σ_t Σ_{m∈MC} N_m
};

struct HamiltonianEstimate {
  Representation representation = Representation::triangular;
  PrecisionBudget budget;
  std::vector<CouplingRow> rows;
  std::vector<TermEstimate> terms;
  Count n_terms = 0;
  double alpha_total = 0.0;   // correctly rounded Σ of row α
  Count n_rot_total = 0;
  Count serial_toffoli = 0;   // Σ of row Toffoli
  ResourceEstimate serial;
  std::optional<GroupingPlan> plan;
  std::optional<ParallelEstimate> parallel;
  ResourceEstimate block;     // the sum actually used
  QpeEstimate qpe;
};

/// α of one product term: Π over its factors of the one-mode LCU norm.
double term_alpha(Representation rep, const std::vector<Eigen::MatrixXd>& factors);

HamiltonianEstimate estimate_hamiltonian(const SopHamiltonian& h, const EstimateOptions& options);

inline constexpr const char* kCostSchema = "cost-v1";

Json estimate_to_json(const HamiltonianEstimate& e);
Json options_to_json(const EstimateOptions& options);

}  // namespace vibqpe
