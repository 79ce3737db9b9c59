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

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "vibqpe/errors.hpp"
#include "vibqpe/grouping.hpp"

using namespace vibqpe;

namespace {

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

ConflictGraph terms(std::vector<std::vector<int>> modes, std::vector<Count> costs = {}) {
  if (costs.empty()) costs.assign(modes.size(), 1);
  return ConflictGraph(std::move(modes), std::move(costs));
}

ConflictGraph complete(std::size_t n) {
  Edges e;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) e.emplace_back(a, b);
  }
  return ConflictGraph::from_edges(n, e);
}

ConflictGraph petersen() {
  Edges e;
  for (std::size_t i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return ConflictGraph::from_edges(10, e);
}

ConflictGraph cycle(std::size_t n) {
  Edges e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return ConflictGraph::from_edges(n, e);
}

std::vector<std::vector<std::size_t>> sorted_groups(std::vector<std::vector<std::size_t>> g) {
  for (auto& x : g) std::sort(x.begin(), x.end());
  std::sort(g.begin(), g.end());
  return g;
}

}  // namespace

TEST(conflict_graph, edges_from_shared_modes) {
  EXPECT_EQ(terms({{0, 1}, {2, 3}}).n_edges(), 0u);
  const auto g = terms({{0, 1}, {1, 2}});
  EXPECT_EQ(g.n_edges(), 1u);
  EXPECT_TRUE(g.conflict(0, 1));
  EXPECT_EQ(terms({{0, 1}, {1, 2}, {0, 2}}).n_edges(), 3u);
}

TEST(conflict_graph, from_edges_round_trip) {
  const auto g = petersen();
  EXPECT_EQ(g.size(), 10u);
  EXPECT_EQ(g.n_edges(), 15u);
  EXPECT_EQ(g.max_degree(), 3u);
  for (std::size_t v = 0; v < 10; ++v) EXPECT_EQ(g.degree(v), 3u);
}

TEST(naive, single_pass) {
  const auto p = naive_grouping(terms({{0, 1}, {2, 3}, {1, 2}}));
  EXPECT_EQ(p.groups, (std::vector<std::vector<std::size_t>>{{0, 1}, {2}}));
}

TEST(naive, disjoint_terms_share_one_group) {
  EXPECT_EQ(naive_grouping(terms({{0}, {1}, {2}, {3, 4}})).group_count(), 1u);
}

TEST(naive, path_never_merges_back) {
  const auto p = naive_grouping(terms({{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(p.groups, (std::vector<std::vector<std::size_t>>{{0}, {1}, {2}}));
  // Greedy finds the 2-coloring that the single pass misses.
  EXPECT_EQ(greedy_largest_first(terms({{0, 1}, {1, 2}, {2, 3}})).group_count(), 2u);
}

TEST(greedy, small_graphs) {
  EXPECT_EQ(greedy_largest_first(complete(3)).group_count(), 3u);
  EXPECT_EQ(greedy_largest_first(cycle(4)).group_count(), 2u);
  EXPECT_EQ(greedy_largest_first(ConflictGraph::from_edges(5, Edges{})).group_count(), 1u);
}

TEST(greedy, bounded_by_max_degree) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testutil::random_graph(5 + trial % 20, 0.3, rng);
    EXPECT_LE(greedy_largest_first(g).group_count(), g.max_degree() + 1);
  }
}

TEST(exact, small_graphs) {
  EXPECT_EQ(exact_coloring(complete(5)).group_count(), 5u);
  EXPECT_EQ(exact_coloring(terms({{0, 1}, {1, 2}, {2, 3}})).group_count(), 2u);
  EXPECT_EQ(exact_coloring(petersen()).group_count(), 3u);
  EXPECT_EQ(testutil::brute_force_chromatic(petersen()), 3u);
  EXPECT_EQ(exact_coloring(cycle(5)).group_count(), 3u);
}

TEST(exact, matches_brute_force) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto g = testutil::random_graph(n, 0.2 + 0.6 * static_cast<double>(trial % 5) / 4.0, rng);
    EXPECT_EQ(exact_coloring(g).group_count(), testutil::brute_force_chromatic(g)) << "trial " << trial;
  }
}

TEST(exact, node_limit) {
  EXPECT_THROW(exact_coloring(cycle(31)), CapExceededError);
  EXPECT_EQ(exact_coloring(cycle(31), 40).group_count(), 3u);
}

TEST(chain, exact_greedy_naive) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testutil::random_graph(2 + trial % 24, 0.25, rng);
    const auto e = exact_coloring(g).group_count();
    const auto gr = greedy_largest_first(g).group_count();
    const auto nv = naive_grouping(g).group_count();
    EXPECT_LE(e, gr);
    EXPECT_LE(gr, nv) << "trial " << trial;
  }
}

TEST(plans, verified_and_deterministic) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testutil::random_graph(3 + trial % 15, 0.35, rng, 50);
    for (auto alg : {GroupingAlgorithm::naive, GroupingAlgorithm::greedy, GroupingAlgorithm::exact}) {
      for (bool weighted : {false, true}) {
        const auto p = make_plan(g, alg, weighted);
        EXPECT_TRUE(verify_plan(g, p).empty());
        EXPECT_EQ(p.groups, make_plan(g, alg, weighted).groups);
        EXPECT_EQ(p.depth_cost, evaluate_depth(p.groups, g.costs()));
      }
    }
  }
}

TEST(plans, verifier_catches_bad_plans) {
  const auto g = terms({{0, 1}, {1, 2}, {3}});
  GroupingPlan p;
  p.groups = {{0, 1}, {2}};
  EXPECT_FALSE(verify_plan(g, p).empty());
  p.groups = {{0}, {1}};
  EXPECT_FALSE(verify_plan(g, p).empty());
  p.groups = {{0, 2}, {1}, {2}};
  EXPECT_FALSE(verify_plan(g, p).empty());
  EXPECT_THROW(require_valid_plan(g, p), ValidationError);
}

TEST(weighted, equal_costs_match_unweighted) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = testutil::random_graph(4 + trial % 12, 0.3, rng);
    for (auto alg : {GroupingAlgorithm::naive, GroupingAlgorithm::greedy, GroupingAlgorithm::exact}) {
      EXPECT_EQ(sorted_groups(weighted_grouping(g, alg).groups), sorted_groups(make_plan(g, alg, false).groups));
    }
  }
}

TEST(weighted, two_edgeless_tiers) {
  const auto g = terms({{0}, {1}, {2}, {3}}, {10, 10, 1, 1});
  const auto p = weighted_grouping(g, GroupingAlgorithm::greedy);
  EXPECT_EQ(p.group_count(), 2u);
  EXPECT_EQ(p.depth_cost, 11);
}

TEST(weighted, never_deeper_than_naive) {
  // Smallest case: two disjoint terms of different cost.
  const auto pair = terms({{0}, {1}}, {2, 1});
  EXPECT_LE(weighted_grouping(pair, GroupingAlgorithm::greedy).depth_cost, naive_grouping(pair).depth_cost);
  std::mt19937_64 rng(41);
  int better_or_equal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testutil::random_graph(6 + trial % 14, 0.3, rng, 4);
    const auto w = weighted_grouping(g, GroupingAlgorithm::greedy);
    EXPECT_LE(w.depth_cost, naive_grouping(g).depth_cost) << "trial " << trial;
    if (w.depth_cost <= greedy_largest_first(g).depth_cost) ++better_or_equal;
  }
  RecordProperty("weighted_le_greedy_of_100", better_or_equal);
}

TEST(depth, hand_values) {
  const std::vector<Count> costs{129, 120, 110};
  EXPECT_EQ(evaluate_depth({{0}, {1}, {2}}, costs), 359);
  EXPECT_EQ(evaluate_depth({{0, 1, 2}}, costs), 129);
  EXPECT_EQ(evaluate_depth({{0, 1}, {2}}, costs), 239);
}

TEST(depth, parallel_never_above_serial) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testutil::random_graph(2 + trial % 20, 0.3, rng, 100);
    Count serial = 0;
    std::vector<std::vector<std::size_t>> singletons;
    for (std::size_t v = 0; v < g.size(); ++v) {
      serial += g.cost(v);
      singletons.push_back({v});
    }
    EXPECT_LE(make_plan(g, GroupingAlgorithm::greedy, true).depth_cost, serial);
    EXPECT_EQ(evaluate_depth(singletons, g.costs()), serial);
  }
}

TEST(plans, json_round_trip) {
  const auto g = petersen();
  const auto p = make_plan(g, GroupingAlgorithm::exact, false);
  const auto back = plan_from_json(plan_to_json(p));
  EXPECT_EQ(back.groups, p.groups);
  EXPECT_EQ(back.algorithm, p.algorithm);
  EXPECT_EQ(back.depth_cost, p.depth_cost);
}
