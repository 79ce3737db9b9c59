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

#include "vibqpe/grouping.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "vibqpe/errors.hpp"

namespace vibqpe {
namespace {

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

std::vector<std::vector<std::size_t>> groups_from_colors(const std::vector<int>& color) {
  int n_colors = 0;
  for (int c : color) n_colors = std::max(n_colors, c + 1);
  std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(n_colors));
  for (std::size_t v = 0; v < color.size(); ++v) {
    groups[static_cast<std::size_t>(color[v])].push_back(v);
  }
  return groups;
}

std::vector<int> largest_first_colors(const ConflictGraph& g) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return g.degree(a) > g.degree(b); });
  std::vector<int> color(g.size(), -1);
  std::vector<char> used;
  for (std::size_t v : order) {
    used.assign(g.size() + 1, 0);
    for (std::size_t u : g.neighbors(v)) {
      if (color[u] >= 0) used[static_cast<std::size_t>(color[u])] = 1;
    }
    int c = 0;
    while (used[static_cast<std::size_t>(c)]) ++c;
    color[v] = c;
  }
  return color;
}

// Size of a greedily grown clique, maximized over start vertices.
std::size_t clique_lower_bound(const ConflictGraph& g) {
  std::size_t best = g.size() == 0 ? 0 : 1;
  for (std::size_t start = 0; start < g.size(); ++start) {
    std::vector<std::size_t> clique{start};
    std::vector<std::size_t> candidates = g.neighbors(start);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) { return g.degree(a) > g.degree(b); });
    for (std::size_t c : candidates) {
      bool ok = std::all_of(clique.begin(), clique.end(), [&](std::size_t q) { return g.conflict(c, q); });
      if (ok) clique.push_back(c);
    }
    best = std::max(best, clique.size());
  }
  return best;
}

class DsaturSearch {
 public:
  DsaturSearch(const ConflictGraph& g, std::vector<int> best, int best_count, int lower)
      : g_(g), best_(std::move(best)), best_count_(best_count), lower_(lower) {
    const std::size_t n = g.size();
    color_.assign(n, -1);
    // forbidden_[v][c] counts colored neighbors of v holding color c.
    forbidden_.assign(n, std::vector<int>(n + 1, 0));
    saturation_.assign(n, 0);
  }

  std::vector<int> run() {
    if (best_count_ > lower_) {
      search(0, 0);
    }
    return best_;
  }

 private:
  void assign(std::size_t v, int c) {
    color_[v] = c;
    for (std::size_t u : g_.neighbors(v)) {
      if (forbidden_[u][static_cast<std::size_t>(c)]++ == 0) ++saturation_[u];
    }
  }

  void unassign(std::size_t v) {
    const int c = color_[v];
    color_[v] = -1;
    for (std::size_t u : g_.neighbors(v)) {
      if (--forbidden_[u][static_cast<std::size_t>(c)] == 0) --saturation_[u];
    }
  }

  std::size_t pick() const {
    std::size_t pick = g_.size();
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (color_[v] >= 0) continue;
      if (pick == g_.size() || saturation_[v] > saturation_[pick] ||
          (saturation_[v] == saturation_[pick] && g_.degree(v) > g_.degree(pick))) {
        pick = v;
      }
    }
    return pick;
  }

  // Returns true once a coloring meeting the lower bound is found.
  bool search(std::size_t n_colored, int used) {
    if (n_colored == g_.size()) {
      best_ = color_;
      best_count_ = used;
      return best_count_ <= lower_;
    }
    if (used >= best_count_) {
      return false;
    }
    const std::size_t v = pick();
    for (int c = 0; c <= used; ++c) {
      if (c == used && used + 1 >= best_count_) break;
      if (forbidden_[v][static_cast<std::size_t>(c)] != 0) continue;
      assign(v, c);
      const bool done = search(n_colored + 1, std::max(used, c + 1));
      unassign(v);
      if (done) return true;
    }
    return false;
  }

  const ConflictGraph& g_;
  std::vector<int> best_;
  int best_count_;
  int lower_;
  std::vector<int> color_;
  std::vector<std::vector<int>> forbidden_;
  std::vector<int> saturation_;
};

GroupingPlan finish(const ConflictGraph& g, std::vector<std::vector<std::size_t>> groups,
                    GroupingAlgorithm algorithm, bool weighted) {
  GroupingPlan plan;
  plan.groups = std::move(groups);
  plan.algorithm = algorithm;
  plan.weighted = weighted;
  plan.depth_cost = evaluate_depth(plan.groups, g.costs());
  return plan;
}

}  // namespace

ConflictGraph::ConflictGraph(std::vector<std::vector<int>> modes, std::vector<Count> costs)
    : modes_(std::move(modes)), costs_(std::move(costs)) {
  if (costs_.empty()) {
    costs_.assign(modes_.size(), 0);
  }
  if (costs_.size() != modes_.size()) {
    throw ValidationError("conflict graph: one cost per node required");
  }
  for (const auto& m : modes_) {
    if (!std::is_sorted(m.begin(), m.end()) || std::adjacent_find(m.begin(), m.end()) != m.end()) {
      throw ValidationError("conflict graph: node mode sets must be strictly increasing");
    }
  }
  adj_.assign(modes_.size(), {});
  for (std::size_t a = 0; a < modes_.size(); ++a) {
    for (std::size_t b = a + 1; b < modes_.size(); ++b) {
      if (intersects(modes_[a], modes_[b])) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
      }
    }
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
  }
}

ConflictGraph ConflictGraph::from_edges(std::size_t n_nodes,
                                        std::span<const std::pair<std::size_t, std::size_t>> edges,
                                        std::vector<Count> costs) {
  std::vector<std::vector<int>> modes(n_nodes);
  int next_mode = 0;
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  for (auto [a, b] : edges) {
    if (a >= n_nodes || b >= n_nodes || a == b) {
      throw ValidationError("from_edges: invalid edge");
    }
    auto key = std::minmax(a, b);
    if (std::find(seen.begin(), seen.end(), std::pair{key.first, key.second}) != seen.end()) {
      continue;
    }
    seen.emplace_back(key.first, key.second);
    modes[a].push_back(next_mode);
    modes[b].push_back(next_mode);
    ++next_mode;
  }
  // Isolated nodes still need a mode so they are valid terms.
  for (auto& m : modes) {
    if (m.empty()) m.push_back(next_mode++);
  }
  return ConflictGraph(std::move(modes), std::move(costs));
}

std::size_t ConflictGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& list : adj_) d = std::max(d, list.size());
  return d;
}

std::size_t ConflictGraph::n_edges() const {
  std::size_t total = 0;
  for (const auto& list : adj_) total += list.size();
  return total / 2;
}

bool ConflictGraph::conflict(std::size_t a, std::size_t b) const {
  const auto& list = adj_.at(a);
  return std::binary_search(list.begin(), list.end(), b);
}

ConflictGraph ConflictGraph::induced(std::span<const std::size_t> nodes) const {
  std::vector<std::vector<int>> modes;
  std::vector<Count> costs;
  for (std::size_t v : nodes) {
    modes.push_back(modes_.at(v));
    costs.push_back(costs_.at(v));
  }
  return ConflictGraph(std::move(modes), std::move(costs));
}

ConflictGraph build_conflict_graph(const SopHamiltonian& h, std::span<const Count> costs) {
  std::vector<std::vector<int>> modes;
  for (const auto& t : enumerate_terms(h)) {
    modes.push_back(t.modes);
  }
  if (costs.size() != modes.size()) {
    throw ValidationError("build_conflict_graph: expected " + std::to_string(modes.size()) + " costs, got " +
                          std::to_string(costs.size()));
  }
  return ConflictGraph(std::move(modes), std::vector<Count>(costs.begin(), costs.end()));
}

std::string to_string(GroupingAlgorithm algorithm) {
  switch (algorithm) {
    case GroupingAlgorithm::naive:
      return "naive";
    case GroupingAlgorithm::greedy:
      return "greedy";
    case GroupingAlgorithm::exact:
      return "exact";
  }
  return "unknown";
}

GroupingAlgorithm grouping_algorithm_from_string(const std::string& name) {
  if (name == "naive") return GroupingAlgorithm::naive;
  if (name == "greedy") return GroupingAlgorithm::greedy;
  if (name == "exact") return GroupingAlgorithm::exact;
  throw ValidationError("unknown grouping algorithm \"" + name + "\"");
}

GroupingPlan naive_grouping(const ConflictGraph& g) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < g.size(); ++v) {
    bool clash = groups.empty();
    if (!clash) {
      for (std::size_t u : groups.back()) {
        if (g.conflict(u, v)) {
          clash = true;
          break;
        }
      }
    }
    if (clash) {
      groups.emplace_back();
    }
    groups.back().push_back(v);
  }
  return finish(g, std::move(groups), GroupingAlgorithm::naive, false);
}

GroupingPlan greedy_largest_first(const ConflictGraph& g) {
  return finish(g, groups_from_colors(largest_first_colors(g)), GroupingAlgorithm::greedy, false);
}

GroupingPlan exact_coloring(const ConflictGraph& g, std::size_t node_limit) {
  if (g.size() > node_limit) {
    throw CapExceededError("exact coloring refused: " + std::to_string(g.size()) + " nodes exceed the limit of " +
                           std::to_string(node_limit) + "; use the greedy algorithm");
  }
  if (g.size() == 0) {
    return finish(g, {}, GroupingAlgorithm::exact, false);
  }
  std::vector<int> upper = largest_first_colors(g);
  const int upper_count = *std::max_element(upper.begin(), upper.end()) + 1;
  const int lower = static_cast<int>(clique_lower_bound(g));
  DsaturSearch search(g, std::move(upper), upper_count, lower);
  return finish(g, groups_from_colors(search.run()), GroupingAlgorithm::exact, false);
}

GroupingPlan weighted_grouping(const ConflictGraph& g, GroupingAlgorithm base, std::size_t node_limit) {
  std::map<Count, std::vector<std::size_t>, std::greater<>> buckets;
  for (std::size_t v = 0; v < g.size(); ++v) {
    buckets[g.cost(v)].push_back(v);
  }
  std::vector<std::vector<std::size_t>> groups;
  for (const auto& [cost, nodes] : buckets) {
    const ConflictGraph sub = g.induced(nodes);
    GroupingPlan local = make_plan(sub, base, false, node_limit);
    for (const auto& group : local.groups) {
      std::vector<std::size_t> mapped;
      for (std::size_t v : group) mapped.push_back(nodes[v]);
      groups.push_back(std::move(mapped));
    }
  }
  return finish(g, std::move(groups), base, true);
}

GroupingPlan make_plan(const ConflictGraph& g, GroupingAlgorithm algorithm, bool weighted, std::size_t node_limit) {
  if (weighted) {
    return weighted_grouping(g, algorithm, node_limit);
  }
  switch (algorithm) {
    case GroupingAlgorithm::naive:
      return naive_grouping(g);
    case GroupingAlgorithm::greedy:
      return greedy_largest_first(g);
    case GroupingAlgorithm::exact:
      return exact_coloring(g, node_limit);
  }
  throw ValidationError("unknown grouping algorithm");
}

Count evaluate_depth(const std::vector<std::vector<std::size_t>>& groups, std::span<const Count> costs) {
  Count depth = 0;
  for (const auto& group : groups) {
    Count worst = 0;
    for (std::size_t v : group) {
      if (v >= costs.size()) {
        throw ValidationError("evaluate_depth: no cost for node " + std::to_string(v));
      }
      worst = std::max(worst, costs[v]);
    }
    depth = checked_add(depth, worst);
  }
  return depth;
}

std::vector<std::string> verify_plan(const ConflictGraph& g, const GroupingPlan& plan) {
  std::vector<std::string> problems;
  std::vector<int> seen(g.size(), 0);
  for (std::size_t gi = 0; gi < plan.groups.size(); ++gi) {
    const auto& group = plan.groups[gi];
    if (group.empty()) {
      problems.push_back("group " + std::to_string(gi) + " is empty");
    }
    std::vector<int> modes;
    for (std::size_t v : group) {
      if (v >= g.size()) {
        problems.push_back("group " + std::to_string(gi) + " has unknown node " + std::to_string(v));
        continue;
      }
      ++seen[v];
      modes.insert(modes.end(), g.modes(v).begin(), g.modes(v).end());
    }
    std::sort(modes.begin(), modes.end());
    if (std::adjacent_find(modes.begin(), modes.end()) != modes.end()) {
      problems.push_back("group " + std::to_string(gi) + " holds terms sharing a mode");
    }
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (seen[v] != 1) {
      problems.push_back("node " + std::to_string(v) + " appears " + std::to_string(seen[v]) + " times");
    }
  }
  if (problems.empty() && plan.depth_cost != evaluate_depth(plan.groups, g.costs())) {
    problems.push_back("depth_cost does not match the group maxima");
  }
  return problems;
}

void require_valid_plan(const ConflictGraph& g, const GroupingPlan& plan) {
  auto problems = verify_plan(g, plan);
  if (!problems.empty()) {
    std::string msg = "invalid grouping plan:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ValidationError(msg);
  }
}

Json plan_to_json(const GroupingPlan& plan) {
  Json doc;
  doc["version"] = kGroupsSchema;
  doc["algorithm"] = to_string(plan.algorithm);
  doc["weighted"] = plan.weighted;
  doc["groups"] = plan.groups;
  doc["depth_cost"] = plan.depth_cost;
  return doc;
}

GroupingPlan plan_from_json(const Json& doc) {
  require_version(doc, kGroupsSchema);
  GroupingPlan plan;
  try {
    plan.algorithm = grouping_algorithm_from_string(require_key(doc, "algorithm", "groups").get<std::string>());
    plan.weighted = require_key(doc, "weighted", "groups").get<bool>();
    plan.groups = require_key(doc, "groups", "groups").get<std::vector<std::vector<std::size_t>>>();
    plan.depth_cost = require_key(doc, "depth_cost", "groups").get<Count>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("groups: ") + e.what());
  }
  return plan;
}

}  // namespace vibqpe
