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
#include <span>
#include <string>
#include <vector>

#include "vibqpe/lcu.hpp"
#include "vibqpe/numeric.hpp"

namespace vibqpe {

// ---- primitives -----------------------------------------------------------

Count multiplex_cost(Count n);         // N - 1
Count comparator_cost(Count mu);       // 2μ - 1
Count cswap_cost(Count n);             // ⌈lg N⌉
Count data_lookup_standard(Count n);   // N - 1

enum class LookupMode { standard, selectswap };

std::string to_string(LookupMode mode);
LookupMode lookup_mode_from_string(const std::string& name);

/// Data look-up settings. `a` is 1 for clean-only ancillae and 2 when dirty
/// ancillae are allowed. With `optimize_lambdas` the λ values are chosen per
/// look-up by optimal_lambdas and the stored ones are ignored.
struct LookupConfig {
  LookupMode mode = LookupMode::standard;
  int a = 1;
  Count lambda_c = 1;
  Count lambda_u = 1;
  bool optimize_lambdas = true;

  /// Throws ValidationError when λ is not a power of two or a is not 1 or 2.
  void validate() const;
  /// The a used in the cost formulas: 0 in standard mode.
  int effective_a() const { return mode == LookupMode::standard ? 0 : a; }
};

struct LookupCost {
  Count toffoli = 0;
  Count clean = 0;
  Count dirty = 0;
  bool wasteful = false;  // λ larger than N
};

/// a⌈N/λ_C⌉ + a²·n_bits·(λ_C - 1) with the matching clean/dirty counts.
LookupCost lookup_compute_cost(Count n, Count n_bits, int a, Count lambda_c);
/// a⌈N/λ_U⌉ + a²·λ_U.
LookupCost lookup_uncompute_cost(Count n, int a, Count lambda_u);

struct Lambdas {
  Count c = 1;
  Count u = 1;
};

/// Power of two nearest to √(num/den); exact midpoints round down; at least 1.
Count nearest_power_of_two_sqrt(Count num, Count den);
/// λ_C ≈ √(aN/n_bits) and λ_U ≈ √(N/a), rounded as above.
Lambdas optimal_lambdas(Count n, Count n_bits, int a);

// ---- precision ------------------------------------------------------------

struct PrecisionBudget {
  double epsilon = 0.0;
  double c_lcu = 0.5;
  Count mu = 1;
  Count beta = 1;
  Count n_rot_total = 0;

  double epsilon_lcu() const { return c_lcu * epsilon; }
  double epsilon_rot() const { return (1.0 - c_lcu) * epsilon; }
};

/// ⌈log2(2√2·α/ε_LCU)⌉, at least 1.
Count mu_bits(double alpha, double epsilon_lcu);
/// ⌈1/2 + log2(N_rot·π/ε_rot)⌉, at least 1.
Count beta_bits(Count n_rot, double epsilon_rot);
PrecisionBudget make_budget(double alpha_total, double epsilon, double c_lcu, Count n_rot_total);

// ---- estimates ------------------------------------------------------------

struct ResourceEstimate {
  Count toffoli = 0;
  Count n_vib = 0;
  Count n_readout = 0;
  Count n_enc = 0;
  Count n_anc = 0;
  Count n_clean = 0;
  Count n_dirty = 0;

  friend bool operator==(const ResourceEstimate&, const ResourceEstimate&) = default;
};

struct OneModeCost {
  ResourceEstimate estimate;
  Count n_coef = 0;
  Count n_bits = 0;
  Lambdas prepare;  // λ used by PREPARE look-ups
  Lambdas select;   // λ used by rotation-angle look-ups (diagonal only)
};

/// Block encoding of one one-mode operator with N_m modals.
OneModeCost one_mode_cost(Representation rep, Count n_modals, const PrecisionBudget& budget, const LookupConfig& cfg);

/// Product of one-mode block encodings over a mode combination of the given order.
ResourceEstimate product_cost(std::span<const ResourceEstimate> factors, Count coupling_order);

/// Linear combination of all product terms. `terms_per_mc` holds N_T for each
/// mode combination; its length is the |G| of the index register.
ResourceEstimate serial_sum_cost(std::span<const ResourceEstimate> terms, std::span<const Count> terms_per_mc);

/// Index register width max_m ⌈log2(|G|·N_T^m)⌉.
Count index_register_bits(Count n_groups, std::span<const Count> terms_per_mc);

struct ParallelEstimate {
  ResourceEstimate estimate;
  Count index_bits = 0;       // L
  Count fanout_qubits = 0;    // L(L - 1), included in n_enc
  Count fanout_alt = 0;       // (S - 1)⌈lg S⌉ with S the largest group, reported only
};

/// Groups of term indices encoded in parallel; throws unless they partition the terms.
ParallelEstimate parallel_sum_cost(const std::vector<std::vector<std::size_t>>& groups,
                                   std::span<const ResourceEstimate> terms, std::span<const Count> terms_per_mc);

struct QpeEstimate {
  ResourceEstimate block;  // block encoding plus vib/readout tallies
  Count n_walk = 0;
  Count toffoli_total = 0;
  Count qubits_total = 0;
  double runtime_seconds = 0.0;
};

/// ⌈√2·π·α/ε⌉ (snapped when the ratio is integral to rounding).
Count walk_queries(double alpha, double epsilon);
/// ⌈log2(√2·π·α/(2ε))⌉, at least 1.
Count readout_qubits(double alpha, double epsilon);

QpeEstimate qpe_cost(const ResourceEstimate& block, double alpha_total, double epsilon, Count n_vib,
                     double seconds_per_toffoli);

}  // namespace vibqpe
