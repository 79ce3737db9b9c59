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
#include <utility>
#include <vector>

#include "vibqpe/numeric.hpp"
#include "vibqpe/sop.hpp"
#include "vibqpe/sop_io.hpp"

namespace vibqpe {

/// Terms as nodes, joined when their mode sets intersect.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  /// Mode sets must be sorted. Costs may be empty (treated as all zero).
  ConflictGraph(std::vector<std::vector<int>> modes, std::vector<Count> costs);

  /// Arbitrary simple graph; each edge gets a private mode so that the
  /// mode-set representation reproduces exactly the given edges.
  static ConflictGraph from_edges(std::size_t n_nodes, std::span<const std::pair<std::size_t, std::size_t>> edges,
                                  std::vector<Count> costs = {});

  std::size_t size() const { return modes_.size(); }
  const std::vector<int>& modes(std::size_t node) const { return modes_.at(node); }
  Count cost(std::size_t node) const { return costs_.at(node); }
  const std::vector<Count>& costs() const { return costs_; }
  const std::vector<std::size_t>& neighbors(std::size_t node) const { return adj_.at(node); }
  std::size_t degree(std::size_t node) const { return adj_.at(node).size(); }
  std::size_t max_degree() const;
  std::size_t n_edges() const;
  bool conflict(std::size_t a, std::size_t b) const;

  /// Subgraph on the listed nodes; node i of the result is nodes[i].
  ConflictGraph induced(std::span<const std::size_t> nodes) const;

 private:
  std::vector<std::vector<int>> modes_;
  std::vector<Count> costs_;
  std::vector<std::vector<std::size_t>> adj_;
};

/// One node per product term in enumerate_terms order.
ConflictGraph build_conflict_graph(const SopHamiltonian& h, std::span<const Count> costs);

enum class GroupingAlgorithm { naive, greedy, exact };

std::string to_string(GroupingAlgorithm algorithm);
GroupingAlgorithm grouping_algorithm_from_string(const std::string& name);

struct GroupingPlan {
  std::vector<std::vector<std::size_t>> groups;
  GroupingAlgorithm algorithm = GroupingAlgorithm::greedy;
  bool weighted = false;
  Count depth_cost = 0;

  std::size_t group_count() const { return groups.size(); }
};

inline constexpr std::size_t kDefaultExactNodeLimit = 30;

GroupingPlan naive_grouping(const ConflictGraph& g);
GroupingPlan greedy_largest_first(const ConflictGraph& g);
/// Minimum coloring by branch and bound. Throws CapExceededError above node_limit.
GroupingPlan exact_coloring(const ConflictGraph& g, std::size_t node_limit = kDefaultExactNodeLimit);
/// Colors each equal-cost bucket separately, most expensive bucket first.
GroupingPlan weighted_grouping(const ConflictGraph& g, GroupingAlgorithm base,
                               std::size_t node_limit = kDefaultExactNodeLimit);
GroupingPlan make_plan(const ConflictGraph& g, GroupingAlgorithm algorithm, bool weighted,
                       std::size_t node_limit = kDefaultExactNodeLimit);

/// Σ over groups of the largest member cost.
Count evaluate_depth(const std::vector<std::vector<std::size_t>>& groups, std::span<const Count> costs);

/// Empty when the plan partitions the nodes into mode-disjoint groups.
std::vector<std::string> verify_plan(const ConflictGraph& g, const GroupingPlan& plan);
void require_valid_plan(const ConflictGraph& g, const GroupingPlan& plan);

inline constexpr const char* kGroupsSchema = "groups-v1";

Json plan_to_json(const GroupingPlan& plan);
GroupingPlan plan_from_json(const Json& doc);

}  // namespace vibqpe
