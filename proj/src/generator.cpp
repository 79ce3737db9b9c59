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

#include "vibqpe/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "vibqpe/errors.hpp"
#include "vibqpe/harmonic.hpp"

namespace vibqpe {
namespace {

constexpr int kMaxPower = 4;

std::string join(const std::vector<double>& xs) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << (i ? "," : "") << xs[i];
  }
  return out.str();
}

void combinations(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

SopHamiltonian generate_coupled_oscillator(int n_modes, const std::vector<double>& frequencies,
                                           const CouplingSpec& couplings, int n_modals, std::uint64_t seed) {
  if (n_modes < 1) {
    throw ValidationError("n_modes must be at least 1");
  }
  if (static_cast<int>(frequencies.size()) != n_modes) {
    throw ValidationError("expected one frequency per mode");
  }
  for (double w : frequencies) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError("frequencies must be positive and finite");
    }
  }

  SopHamiltonian h;
  for (int m = 0; m < n_modes; ++m) {
    h.modes.push_back({m, n_modals, "Q" + std::to_string(m)});
  }

  // One-mode operators: ω/2 p² + ω/2 q² plus any single-mode polynomial terms.
  std::map<int, std::map<int, double>> one_mode;
  std::map<std::vector<int>, std::map<std::vector<int>, double>> multi;
  for (const auto& [modes, terms] : couplings) {
    if (modes.empty() || modes.size() > kMaxCouplingOrder) {
      throw ValidationError("coupling mode tuples must have 1 to 4 modes");
    }
    std::set<int> distinct(modes.begin(), modes.end());
    if (distinct.size() != modes.size()) {
      throw ValidationError("duplicate mode index within a coupling tuple");
    }
    for (int m : modes) {
      if (m < 0 || m >= n_modes) {
        throw ValidationError("coupling references mode " + std::to_string(m) + " outside the model");
      }
    }
    // Sort the tuple and permute the power tuples to match.
    std::vector<std::size_t> perm(modes.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      perm[i] = i;
    }
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return modes[a] < modes[b]; });
    std::vector<int> sorted_modes;
    for (std::size_t i : perm) {
      sorted_modes.push_back(modes[i]);
    }
    for (const auto& [powers, coef] : terms) {
      if (powers.size() != modes.size()) {
        throw ValidationError("power tuple length must match the mode tuple");
      }
      for (int p : powers) {
        if (p < 1 || p > kMaxPower) {
          throw ValidationError("q powers must lie in 1..4");
        }
      }
      if (!std::isfinite(coef)) {
        throw ValidationError("coupling coefficients must be finite");
      }
      if (modes.size() == 1) {
        one_mode[modes[0]][powers[0]] += coef;
        continue;
      }
      std::vector<int> sorted_powers;
      for (std::size_t i : perm) {
        sorted_powers.push_back(powers[i]);
      }
      multi[sorted_modes][sorted_powers] += coef;
    }
  }

  for (int m = 0; m < n_modes; ++m) {
    ModeCoupling mc;
    mc.modes = {m};
    std::vector<Eigen::MatrixXd> basis = {harmonic_integrals(OperatorSpec::p2(), n_modals),
                                          harmonic_integrals(OperatorSpec::q(2), n_modals)};
    std::vector<double> coefs = {frequencies[m] / 2.0, frequencies[m] / 2.0};
    for (const auto& [power, coef] : one_mode[m]) {
      if (power == 2) {
        coefs[1] += coef;
        continue;
      }
      basis.push_back(harmonic_integrals(OperatorSpec::q(power), n_modals));
      coefs.push_back(coef);
    }
    mc.basis = {basis};
    mc.tensor = DenseTensor({basis.size()}, coefs);
    h.couplings.push_back(std::move(mc));
  }

  for (const auto& [modes, terms] : multi) {
    ModeCoupling mc;
    mc.modes = modes;
    std::vector<std::vector<int>> powers_per_mode(modes.size());
    for (const auto& [powers, coef] : terms) {
      for (std::size_t i = 0; i < modes.size(); ++i) {
        powers_per_mode[i].push_back(powers[i]);
      }
    }
    DenseTensor::Shape shape;
    for (auto& ps : powers_per_mode) {
      std::sort(ps.begin(), ps.end());
      ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
      std::vector<Eigen::MatrixXd> ops;
      for (int p : ps) {
        ops.push_back(harmonic_integrals(OperatorSpec::q(p), n_modals));
      }
      mc.basis.push_back(std::move(ops));
      shape.push_back(ps.size());
    }
    mc.tensor = DenseTensor(shape);
    for (const auto& [powers, coef] : terms) {
      DenseTensor::Index idx;
      for (std::size_t i = 0; i < modes.size(); ++i) {
        const auto& ps = powers_per_mode[i];
        idx.push_back(static_cast<std::size_t>(std::lower_bound(ps.begin(), ps.end(), powers[i]) - ps.begin()));
      }
      mc.tensor(idx) += coef;
    }
    h.couplings.push_back(std::move(mc));
  }

  h.metadata["generator"] = "coupled_oscillator";
  h.metadata["frequencies"] = join(frequencies);
  h.metadata["n_modals"] = std::to_string(n_modals);
  h.metadata["seed"] = std::to_string(seed);
  require_valid(h);
  return h;
}

CouplingSpec random_couplings(int n_modes, const RandomCouplingOptions& options, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> power(1, std::clamp(options.max_power, 1, kMaxPower));
  CouplingSpec out;
  for (int order = 2; order <= std::min<int>(options.max_order, kMaxCouplingOrder); ++order) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    combinations(n_modes, order, 0, cur, tuples);
    for (const auto& modes : tuples) {
      if (unit(rng) >= options.density) {
        continue;
      }
      auto& terms = out[modes];
      for (int t = 0; t < options.terms_per_mc; ++t) {
        std::vector<int> powers;
        for (int i = 0; i < order; ++i) {
          powers.push_back(power(rng));
        }
        terms[powers] += options.scale * (2.0 * unit(rng) - 1.0);
      }
    }
  }
  return out;
}

}  // namespace vibqpe
