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

#include "vibqpe/estimate.hpp"

#include <map>

#include "vibqpe/errors.hpp"

namespace vibqpe {
namespace {

Json estimate_json(const ResourceEstimate& e) {
  Json j;
  j["toffoli"] = e.toffoli;
  j["n_vib"] = e.n_vib;
  j["n_readout"] = e.n_readout;
  j["n_enc"] = e.n_enc;
  j["n_anc"] = e.n_anc;
  j["n_clean"] = e.n_clean;
  j["n_dirty"] = e.n_dirty;
  return j;
}

}  // namespace

double term_alpha(Representation rep, const std::vector<Eigen::MatrixXd>& factors) {
  double alpha = 1.0;
  for (const auto& f : factors) alpha *= lcu_alpha(rep, f);
  return alpha;
}

HamiltonianEstimate estimate_hamiltonian(const SopHamiltonian& h, const EstimateOptions& options) {
  require_valid(h);
  options.lookup.validate();
  HamiltonianEstimate out;
  out.representation = options.representation;

  // Pass 1: α and N_rot, which fix the precision budget.
  std::map<std::vector<int>, std::size_t> row_of;
  std::vector<ExactSum> row_alpha;
  for (const auto& ref : enumerate_terms(h)) {
    const ModeCoupling& mc = h.couplings[ref.coupling];
    auto [it, fresh] = row_of.try_emplace(ref.modes, out.rows.size());
    if (fresh) {
      out.rows.push_back(CouplingRow{ref.modes, 0, 0.0, 0, 0});
      row_alpha.emplace_back();
    }
    CouplingRow& row = out.rows[it->second];
    TermEstimate t;
    t.coupling = ref.coupling;
    t.term = ref.term;
    t.modes = ref.modes;
    t.alpha = term_alpha(options.representation, mc.factor(ref.product));
    row_alpha[it->second].add(t.alpha);
    row.n_terms += 1;
    for (int m : ref.modes) row.n_rot = checked_add(row.n_rot, 2 * static_cast<Count>(h.n_modals(m)));
    out.terms.push_back(std::move(t));
  }
  if (out.terms.empty()) {
    throw ValidationError("cannot estimate a Hamiltonian without terms");
  }
  ExactSum total_alpha;
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    out.rows[r].alpha = row_alpha[r].value();
    total_alpha.add(out.rows[r].alpha);
    out.n_rot_total = checked_add(out.n_rot_total, out.rows[r].n_rot);
  }
  out.alpha_total = total_alpha.value();
  out.n_terms = static_cast<Count>(out.terms.size());
  out.budget = make_budget(out.alpha_total, options.epsilon, options.c_lcu, out.n_rot_total);

  // Pass 2: costs. One-mode costs depend only on N_m, so cache them.
  std::map<int, ResourceEstimate> one_mode;
  std::vector<ResourceEstimate> term_costs;
  for (auto& t : out.terms) {
    std::vector<ResourceEstimate> factors;
    for (int m : t.modes) {
      const int n = h.n_modals(m);
      auto it = one_mode.find(n);
      if (it == one_mode.end()) {
        it = one_mode.emplace(n, one_mode_cost(options.representation, n, out.budget, options.lookup).estimate).first;
      }
      factors.push_back(it->second);
    }
    t.cost = product_cost(factors, static_cast<Count>(t.modes.size()));
    term_costs.push_back(t.cost);
    CouplingRow& row = out.rows[row_of.at(t.modes)];
    row.toffoli = checked_add(row.toffoli, t.cost.toffoli);
  }
  std::vector<Count> terms_per_mc;
  for (const auto& row : out.rows) {
    terms_per_mc.push_back(row.n_terms);
    out.serial_toffoli = checked_add(out.serial_toffoli, row.toffoli);
  }
  out.serial = serial_sum_cost(term_costs, terms_per_mc);

  if (options.grouping) {
    std::vector<Count> costs;
    std::vector<std::vector<int>> modes;
    for (const auto& t : out.terms) {
      costs.push_back(t.cost.toffoli);
      modes.push_back(t.modes);
    }
    const ConflictGraph g(std::move(modes), costs);
    GroupingPlan plan = make_plan(g, *options.grouping, options.weighted, options.exact_node_limit);
    require_valid_plan(g, plan);
    out.parallel = parallel_sum_cost(plan.groups, term_costs, terms_per_mc);
    out.plan = std::move(plan);
    out.block = out.parallel->estimate;
  } else {
    out.block = out.serial;
  }
  out.qpe = qpe_cost(out.block, out.alpha_total, options.epsilon, h.n_vib(), options.seconds_per_toffoli);
  return out;
}

Json options_to_json(const EstimateOptions& options) {
  Json j;
  j["representation"] = to_string(options.representation);
  j["lookup"] = {{"mode", to_string(options.lookup.mode)},
                 {"a", options.lookup.a},
                 {"lambda_c", options.lookup.lambda_c},
                 {"lambda_u", options.lookup.lambda_u},
                 {"optimize_lambdas", options.lookup.optimize_lambdas}};
  j["epsilon"] = options.epsilon;
  j["c_lcu"] = options.c_lcu;
  j["seconds_per_toffoli"] = options.seconds_per_toffoli;
  j["grouping"] = options.grouping ? to_string(*options.grouping) : "none";
  j["weighted"] = options.weighted;
  return j;
}

Json estimate_to_json(const HamiltonianEstimate& e) {
  Json doc;
  doc["version"] = kCostSchema;
  doc["representation"] = to_string(e.representation);
  doc["budget"] = {{"epsilon", e.budget.epsilon},
                   {"c_lcu", e.budget.c_lcu},
                   {"epsilon_lcu", e.budget.epsilon_lcu()},
                   {"epsilon_rot", e.budget.epsilon_rot()},
                   {"mu", e.budget.mu},
                   {"beta", e.budget.beta},
                   {"n_rot_total", e.budget.n_rot_total}};
  Json rows = Json::array();
  for (const auto& r : e.rows) {
    rows.push_back({{"modes", r.modes}, {"n_terms", r.n_terms}, {"alpha", r.alpha}, {"toffoli", r.toffoli},
                    {"n_rot", r.n_rot}});
  }
  doc["couplings"] = std::move(rows);
  doc["totals"] = {{"n_terms", e.n_terms},
                   {"alpha", e.alpha_total},
                   {"toffoli", e.serial_toffoli},
                   {"n_rot", e.n_rot_total}};
  doc["serial"] = estimate_json(e.serial);
  if (e.plan) {
    doc["grouping"] = plan_to_json(*e.plan);
    doc["parallel"] = estimate_json(e.parallel->estimate);
    doc["parallel"]["index_bits"] = e.parallel->index_bits;
    doc["parallel"]["fanout_qubits"] = e.parallel->fanout_qubits;
    doc["parallel"]["fanout_alt"] = e.parallel->fanout_alt;
  }
  doc["block_encoding"] = estimate_json(e.qpe.block);
  doc["qpe"] = {{"n_walk", e.qpe.n_walk},
                {"toffoli", e.qpe.toffoli_total},
                {"qubits", e.qpe.qubits_total},
                {"runtime_s", e.qpe.runtime_seconds}};
  return doc;
}

}  // namespace vibqpe
