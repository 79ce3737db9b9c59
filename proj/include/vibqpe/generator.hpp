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
#include <map>
#include <vector>

#include "vibqpe/sop.hpp"

namespace vibqpe {

/// Mode tuple -> (per-mode q power tuple -> coefficient).
///
/// {{0, 1}, {{{1, 1}, 0.1}}} is the bilinear term 0.1 q_0 q_1. Single-mode
/// keys add anharmonic q^k terms to that mode's one-mode operator.
using CouplingSpec = std::map<std::vector<int>, std::map<std::vector<int>, double>>;

/// Coupled harmonic oscillators: Σ_m ω_m (p_m² + q_m²)/2 plus the requested
/// polynomial couplings, all integrals taken in the harmonic basis.
SopHamiltonian generate_coupled_oscillator(int n_modes, const std::vector<double>& frequencies,
                                           const CouplingSpec& couplings, int n_modals, std::uint64_t seed);

struct RandomCouplingOptions {
  int max_order = 3;       // largest coupling order drawn
  int max_power = 2;       // q powers per mode are in [1, max_power]
  double density = 1.0;    // probability that a given mode tuple is coupled
  double scale = 1e-2;     // coefficient magnitude
  int terms_per_mc = 3;    // power tuples drawn per coupled mode tuple
};

/// Seeded random polynomial couplings over all mode tuples of order 2..max_order.
CouplingSpec random_couplings(int n_modes, const RandomCouplingOptions& options, std::uint64_t seed);

}  // namespace vibqpe
