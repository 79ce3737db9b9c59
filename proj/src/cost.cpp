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

#include "vibqpe/cost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vibqpe/errors.hpp"

namespace vibqpe {
namespace {

__extension__ using Wide = __int128;

Count add(std::initializer_list<Count> xs) {
  Count total = 0;
  for (Count x : xs) {
    total = checked_add(total, x);
  }
  return total;
}

Count mul(Count a, Count b) { return checked_mul(a, b); }

// ⌈log2(N/λ)⌉ for power-of-two λ, floored at 0.
Count log2_ratio(Count n, Count lambda) { return ceil_log2(ceil_div(n, lambda)); }

Count ceil_log2_real(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ValidationError("logarithm of a non-positive or non-finite value");
  }
  return snapped_ceil(std::log2(x));
}

}  // namespace

Count multiplex_cost(Count n) {
  if (n < 1) throw ValidationError("multiplex_cost requires N >= 1");
  return n - 1;
}

Count comparator_cost(Count mu) {
  if (mu < 1) throw ValidationError("comparator_cost requires mu >= 1");
  return 2 * mu - 1;
}

Count cswap_cost(Count n) { return ceil_log2(n); }

Count data_lookup_standard(Count n) {
  if (n < 1) throw ValidationError("data_lookup_standard requires N >= 1");
  return n - 1;
}

std::string to_string(LookupMode mode) { return mode == LookupMode::standard ? "standard" : "selectswap"; }

LookupMode lookup_mode_from_string(const std::string& name) {
  if (name == "standard") return LookupMode::standard;
  if (name == "selectswap") return LookupMode::selectswap;
  throw ValidationError("unknown lookup mode \"" + name + "\"");
}

void LookupConfig::validate() const {
  if (a != 1 && a != 2) {
    throw ValidationError("lookup parameter a must be 1 (clean) or 2 (dirty allowed)");
  }
  if (!is_power_of_two(lambda_c) || !is_power_of_two(lambda_u)) {
    throw ValidationError("lambda_c and lambda_u must be powers of two");
  }
  if (mode == LookupMode::standard && (lambda_c != 1 || lambda_u != 1) && !optimize_lambdas) {
    throw ValidationError("standard look-ups use lambda_c = lambda_u = 1");
  }
}

LookupCost lookup_compute_cost(Count n, Count n_bits, int a, Count lambda_c) {
  if (n < 1 || n_bits < 1 || !is_power_of_two(lambda_c) || a < 1 || a > 2) {
    throw ValidationError("lookup_compute_cost: invalid arguments");
  }
  LookupCost out;
  out.toffoli = add({mul(a, ceil_div(n, lambda_c)), mul(mul(a * a, n_bits), lambda_c - 1)});
  out.clean = add({log2_ratio(n, lambda_c), mul(mul(2 - a, n_bits), lambda_c - 1)});
  out.dirty = mul(mul(a - 1, n_bits), lambda_c - 1);
  out.wasteful = lambda_c > n;
  return out;
}

LookupCost lookup_uncompute_cost(Count n, int a, Count lambda_u) {
  if (n < 1 || !is_power_of_two(lambda_u) || a < 1 || a > 2) {
    throw ValidationError("lookup_uncompute_cost: invalid arguments");
  }
  LookupCost out;
  out.toffoli = add({mul(a, ceil_div(n, lambda_u)), mul(a * a, lambda_u)});
  out.wasteful = lambda_u > n;
  return out;
}

Count nearest_power_of_two_sqrt(Count num, Count den) {
  if (num < 1 || den < 1) {
    throw ValidationError("nearest_power_of_two_sqrt requires positive arguments");
  }
  if (num < den) {
    return 1;  // optimum below 1 clamps
  }
  // Largest k with 4^k·den <= num, i.e. 2^k <= √(num/den).
  Count k = 0;
  for (Count next = 0; 2 * (k + 1) <= 60 && !__builtin_mul_overflow(den, Count{1} << (2 * (k + 1)), &next) &&
                       next <= num;) {
    ++k;
  }
  // √(num/den) <= 1.5·2^k  <=>  4·num <= 9·4^k·den; equality rounds down.
  const Wide lhs = static_cast<Wide>(4) * num;
  const Wide rhs = static_cast<Wide>(9) * (static_cast<Wide>(1) << (2 * k)) * den;
  return lhs <= rhs ? (Count{1} << k) : (Count{1} << (k + 1));
}

Lambdas optimal_lambdas(Count n, Count n_bits, int a) {
  if (n < 1 || n_bits < 1 || a < 1 || a > 2) {
    throw ValidationError("optimal_lambdas: invalid arguments");
  }
  return {nearest_power_of_two_sqrt(mul(a, n), n_bits), nearest_power_of_two_sqrt(n, a)};
}

Count mu_bits(double alpha, double epsilon_lcu) {
  if (!(epsilon_lcu > 0.0)) {
    throw ValidationError("epsilon_lcu must be positive");
  }
  if (!(alpha > 0.0)) {
    return 1;
  }
  const double x = 2.0 * std::numbers::sqrt2 * alpha / epsilon_lcu;
  return std::max<Count>(1, static_cast<Count>(std::ceil(std::log2(x))));
}

Count beta_bits(Count n_rot, double epsilon_rot) {
  if (!(epsilon_rot > 0.0)) {
    throw ValidationError("epsilon_rot must be positive");
  }
  if (n_rot < 1) {
    return 1;
  }
  const double y = static_cast<double>(n_rot) * std::numbers::pi / epsilon_rot;
  return std::max<Count>(1, static_cast<Count>(std::ceil(0.5 + std::log2(y))));
}

PrecisionBudget make_budget(double alpha_total, double epsilon, double c_lcu, Count n_rot_total) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ValidationError("epsilon must be positive and finite");
  }
  if (!(c_lcu > 0.0 && c_lcu < 1.0)) {
    throw ValidationError("c_lcu must lie strictly between 0 and 1");
  }
  PrecisionBudget b;
  b.epsilon = epsilon;
  b.c_lcu = c_lcu;
  b.n_rot_total = n_rot_total;
  b.mu = mu_bits(alpha_total, b.epsilon_lcu());
  b.beta = beta_bits(n_rot_total, b.epsilon_rot());
  return b;
}

OneModeCost one_mode_cost(Representation rep, Count n_modals, const PrecisionBudget& budget, const LookupConfig& cfg) {
  if (n_modals < 2) {
    throw ValidationError("one_mode_cost requires at least 2 modals");
  }
  cfg.validate();
  const Count mu = budget.mu;
  const Count beta = budget.beta;
  const int a = cfg.effective_a();
  OneModeCost out;
  out.n_coef = lcu_coefficient_count(rep, n_modals);
  const Count n = out.n_coef;
  const Count lg_n = ceil_log2(n);
  out.n_bits = lg_n + mu;
  ResourceEstimate& e = out.estimate;
  e.n_enc = lg_n;

  if (rep != Representation::diagonal) {
    e.n_anc = add({lg_n, 2 * mu, 1});
    if (a == 0) {
      e.toffoli = add({mul(3, n), 2 * lg_n, 4 * mu, -5});
      e.n_clean = lg_n;
      return out;
    }
    out.prepare = cfg.optimize_lambdas ? optimal_lambdas(n, out.n_bits, a) : Lambdas{cfg.lambda_c, cfg.lambda_u};
    const Count lc = out.prepare.c;
    const Count lu = out.prepare.u;
    e.toffoli = add({n, mul(a, ceil_div(n, lc)), mul(a, ceil_div(n, lu)), 2 * lg_n,
                     mul(mul(a * a, out.n_bits), lc - 1), mul(a * a, lu), 4 * mu, -3});
    e.n_clean = add({std::max<Count>(0, log2_ratio(n, lc) - 1), mul(mul(2 - a, out.n_bits), lc - 1)});
    e.n_dirty = mul(mul(a - 1, out.n_bits), lc - 1);
    return out;
  }

  // Diagonal: N = 2N_m coefficients plus the rotation-angle database of
  // 2N_m entries of N_m β-bit angles.
  const Count nm = n_modals;
  const Count lg_nm = ceil_log2(nm);
  const Count angle_bits = mul(nm, beta);
  e.n_anc = add({2 * lg_nm, angle_bits, 2 * mu, 3});
  if (a == 0) {
    // Standard look-ups (N - 1 each way) in place of the SELECTSWAP terms.
    const Count prepare_side = add({mul(3, n), 2 * lg_n, 4 * mu, -5});
    const Count angle_lookups = add({data_lookup_standard(n), data_lookup_standard(n)});
    const Count rotations = mul(nm, add({mul(mul(12, beta), nm), multiplex_cost(2)}));
    e.toffoli = add({prepare_side, angle_lookups, rotations});
    e.n_clean = lg_n;
    return out;
  }
  if (cfg.optimize_lambdas) {
    out.prepare = optimal_lambdas(n, out.n_bits, a);
    out.select = optimal_lambdas(n, angle_bits, a);
  } else {
    out.prepare = out.select = Lambdas{cfg.lambda_c, cfg.lambda_u};
  }
  const Count a2 = a * a;
  e.toffoli = add({mul(nm, add({mul(mul(12, beta), nm), 3})), 2 * lg_nm,
                   mul(a, add({ceil_div(n, out.prepare.c), ceil_div(n, out.prepare.u), ceil_div(n, out.select.c),
                               ceil_div(n, out.select.u)})),
                   mul(mul(a2, angle_bits), out.select.c - 1), mul(mul(a2, out.n_bits), out.prepare.c - 1),
                   mul(a2, add({out.prepare.u, out.select.u})), 4 * mu, -1});
  const Count clean_p = add({log2_ratio(nm, out.prepare.c), 1, mul(mul(2 - a, out.n_bits), out.prepare.c - 1)});
  const Count dirty_p = add({mul(mul(a - 1, out.n_bits), out.prepare.c - 1), 1});
  const Count clean_s = add({log2_ratio(nm, out.select.c), mul(mul(2 - a, angle_bits), out.select.c - 1), 1});
  const Count dirty_s = add({mul(mul(a - 1, angle_bits), out.select.c - 1), 1});
  e.n_clean = std::max(clean_p, clean_s);
  e.n_dirty = std::max(dirty_p, dirty_s);
  return out;
}

ResourceEstimate product_cost(std::span<const ResourceEstimate> factors, Count coupling_order) {
  if (factors.empty() || coupling_order < 1) {
    throw ValidationError("product_cost needs at least one factor");
  }
  ResourceEstimate out;
  for (const auto& f : factors) {
    out.toffoli = checked_add(out.toffoli, f.toffoli);
    out.n_enc = std::max(out.n_enc, f.n_enc);
    out.n_anc = std::max(out.n_anc, f.n_anc);
    out.n_clean = std::max(out.n_clean, f.n_clean);
    out.n_dirty = std::max(out.n_dirty, f.n_dirty);
  }
  out.toffoli = checked_add(out.toffoli, coupling_order);
  out.n_enc = checked_add(out.n_enc, coupling_order);
  return out;
}

Count index_register_bits(Count n_groups, std::span<const Count> terms_per_mc) {
  Count bits = 0;
  for (Count nt : terms_per_mc) {
    if (nt > 0) {
      bits = std::max(bits, ceil_log2(checked_mul(std::max<Count>(1, n_groups), nt)));
    }
  }
  return bits;
}

ResourceEstimate serial_sum_cost(std::span<const ResourceEstimate> terms, std::span<const Count> terms_per_mc) {
  if (terms.empty()) {
    throw ValidationError("serial_sum_cost needs at least one term");
  }
  ResourceEstimate out;
  for (const auto& t : terms) {
    out.toffoli = checked_add(out.toffoli, t.toffoli);
    out.n_enc = std::max(out.n_enc, t.n_enc);
    out.n_anc = std::max(out.n_anc, t.n_anc);
    out.n_clean = std::max(out.n_clean, t.n_clean);
    out.n_dirty = std::max(out.n_dirty, t.n_dirty);
  }
  out.n_enc = checked_add(out.n_enc, index_register_bits(static_cast<Count>(terms_per_mc.size()), terms_per_mc));
  return out;
}

ParallelEstimate parallel_sum_cost(const std::vector<std::vector<std::size_t>>& groups,
                                   std::span<const ResourceEstimate> terms, std::span<const Count> terms_per_mc) {
  std::vector<int> seen(terms.size(), 0);
  for (const auto& g : groups) {
    if (g.empty()) {
      throw ValidationError("grouping contains an empty group");
    }
    for (std::size_t t : g) {
      if (t >= terms.size()) {
        throw ValidationError("grouping references unknown term " + std::to_string(t));
      }
      ++seen[t];
    }
  }
  for (std::size_t t = 0; t < seen.size(); ++t) {
    if (seen[t] != 1) {
      throw ValidationError("grouping is not a partition: term " + std::to_string(t) + " appears " +
                            std::to_string(seen[t]) + " times");
    }
  }
  if (terms.empty()) {
    throw ValidationError("parallel_sum_cost needs at least one term");
  }
  ParallelEstimate out;
  ResourceEstimate& e = out.estimate;
  Count largest = 0;
  for (const auto& g : groups) {
    ResourceEstimate sum;
    Count depth = 0;
    for (std::size_t t : g) {
      depth = std::max(depth, terms[t].toffoli);
      sum.n_enc = checked_add(sum.n_enc, terms[t].n_enc);
      sum.n_anc = checked_add(sum.n_anc, terms[t].n_anc);
      sum.n_clean = checked_add(sum.n_clean, terms[t].n_clean);
      sum.n_dirty = checked_add(sum.n_dirty, terms[t].n_dirty);
    }
    e.toffoli = checked_add(e.toffoli, depth);
    e.n_enc = std::max(e.n_enc, sum.n_enc);
    e.n_anc = std::max(e.n_anc, sum.n_anc);
    e.n_clean = std::max(e.n_clean, sum.n_clean);
    e.n_dirty = std::max(e.n_dirty, sum.n_dirty);
    largest = std::max<Count>(largest, static_cast<Count>(g.size()));
  }
  out.index_bits = index_register_bits(static_cast<Count>(groups.size()), terms_per_mc);
  out.fanout_qubits = checked_mul(out.index_bits, std::max<Count>(0, out.index_bits - 1));
  out.fanout_alt = checked_mul(largest - 1, ceil_log2(largest));
  e.n_enc = checked_add(e.n_enc, out.fanout_qubits);
  return out;
}

Count walk_queries(double alpha, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw ValidationError("epsilon must be positive");
  }
  if (!(alpha > 0.0)) {
    return 0;
  }
  return snapped_ceil(std::numbers::sqrt2 * std::numbers::pi * alpha / epsilon);
}

Count readout_qubits(double alpha, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw ValidationError("epsilon must be positive");
  }
  if (!(alpha > 0.0)) {
    return 1;
  }
  return std::max<Count>(1, ceil_log2_real(std::numbers::sqrt2 * std::numbers::pi * alpha / (2.0 * epsilon)));
}

QpeEstimate qpe_cost(const ResourceEstimate& block, double alpha_total, double epsilon, Count n_vib,
                     double seconds_per_toffoli) {
  QpeEstimate out;
  out.block = block;
  out.block.n_vib = n_vib;
  out.block.n_readout = readout_qubits(alpha_total, epsilon);
  out.n_walk = walk_queries(alpha_total, epsilon);
  out.toffoli_total = checked_mul(out.n_walk, checked_add(block.toffoli, block.n_enc));
  out.qubits_total =
      add({n_vib, out.block.n_readout, out.block.n_enc, out.block.n_anc, out.block.n_clean});
  out.runtime_seconds = static_cast<double>(out.toffoli_total) * seconds_per_toffoli;
  return out;
}

}  // namespace vibqpe
