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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "vibqpe/errors.hpp"
#include "vibqpe/pipeline.hpp"

using namespace vibqpe;

namespace {

RunConfig config_with(double eps_lr) {
  RunConfig c;
  c.eps_lr = eps_lr;
  return c;
}

SopHamiltonian bilinear_model() {
  GenParams p;
  p.preset = "bilinear";
  p.n_modes = 2;
  p.n_modals = 6;
  return cmd_gen(p, {});
}

SopHamiltonian synthetic(int n_modes, std::uint64_t seed) {
  GenParams p;
  p.n_modes = n_modes;
  p.n_modals = 4;
  RunConfig c;
  c.seed = seed;
  return cmd_gen(p, c);
}

std::vector<std::string> csv_column(const std::string& csv, const std::string& name) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::size_t col = 0;
  {
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, ',') && cell != name) ++col;
  }
  std::vector<std::string> out;
  while (std::getline(in, line)) {
    std::istringstream r(line);
    std::string cell;
    for (std::size_t i = 0; i <= col; ++i) std::getline(r, cell, ',');
    out.push_back(cell);
  }
  return out;
}

}  // namespace

TEST(config, defaults) {
  const RunConfig c;
  EXPECT_EQ(c.epsilon, 4.5e-6);
  EXPECT_EQ(c.eps_t, 1e-10);
  EXPECT_EQ(c.eps_lr, 1e-8);
  EXPECT_EQ(c.representation, Representation::triangular);
  EXPECT_EQ(c.lookup, LookupMode::standard);
  EXPECT_EQ(c.grouping, "greedy");
  EXPECT_TRUE(c.weighted);
  EXPECT_EQ(c.c_lcu, 0.5);
  EXPECT_EQ(c.seconds_per_toffoli, 0.040);
}

TEST(config, json_round_trip_and_unknown_keys) {
  RunConfig c;
  c.eps_lr = 1e-5;
  c.representation = Representation::diagonal;
  c.grouping = "exact";
  const auto back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
  EXPECT_THROW(config_from_json(Json::parse(R"({"eps_lr": 1e-5, "bogus": 1})")), SchemaError);
}

TEST(config, thresholds_positive) {
  RunConfig c;
  c.eps_t = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.epsilon = -1.0;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(pipeline, bilinear_end_to_end) {
  const auto h = bilinear_model();
  const auto d = cmd_decompose(h, {});
  const auto doc = cmd_estimate(d.hamiltonian, {}, true);
  EXPECT_TRUE(doc["alpha_triangular_equals_quadratic"].get<bool>());
  ASSERT_EQ(doc["comparison"].size(), 3u);
  EXPECT_EQ(doc["comparison"][0]["alpha"], doc["comparison"][1]["alpha"]);
}

TEST(pipeline, triangular_cheaper_than_quadratic_on_six_modes) {
  const auto h = synthetic(6, 5);
  const auto doc = cmd_estimate(cmd_decompose(h, {}).hamiltonian, {}, true);
  Count tri = -1, quad = -1;
  for (const auto& row : doc["comparison"]) {
    if (row["representation"] == "triangular") tri = row["toffoli"].get<Count>();
    if (row["representation"] == "quadratic") quad = row["toffoli"].get<Count>();
  }
  ASSERT_GT(tri, 0);
  EXPECT_LE(tri, quad);
}

TEST(pipeline, verify_epsilon_tensor_monotone) {
  const auto h = synthetic(4, 8);
  const auto out = cmd_verify(h, {}, {1e-4, 1e-5, 1e-6, 1e-7, 1e-8});
  const auto col = csv_column(out.errors_csv, "epsilon_tensor");
  ASSERT_EQ(col.size(), 5u);
  for (std::size_t i = 1; i < col.size(); ++i) EXPECT_LE(std::stod(col[i]), std::stod(col[i - 1]));
  for (const auto& row : out.report["rows"]) EXPECT_TRUE(row["weyl_ok"].get<bool>());
  EXPECT_EQ(out.csv.substr(0, out.csv.find('\n')), kCsvHeader);
}

TEST(pipeline, deterministic_output) {
  const auto h = synthetic(4, 3);
  EXPECT_EQ(dump_sop(synthetic(4, 3)), dump_sop(h));
  EXPECT_EQ(cmd_decompose(h, config_with(1e-5)).report.dump(), cmd_decompose(h, config_with(1e-5)).report.dump());
  const auto a = cmd_estimate(h, {}, true).dump();
  EXPECT_EQ(a, cmd_estimate(h, {}, true).dump());
  EXPECT_EQ(a.find("stamp"), std::string::npos);
  EXPECT_EQ(cmd_group(h, {}).dump(), cmd_group(h, {}).dump());
}

TEST(pipeline, totals_equal_row_sums) {
  const auto h = cmd_decompose(synthetic(5, 12), config_with(1e-6)).hamiltonian;
  for (auto rep : {Representation::quadratic, Representation::triangular, Representation::diagonal}) {
    const auto e = estimate_hamiltonian(h, estimate_options({}, rep));
    Count n_terms = 0, toffoli = 0, n_rot = 0;
    std::vector<double> alphas;
    for (const auto& r : e.rows) {
      n_terms += r.n_terms;
      toffoli += r.toffoli;
      n_rot += r.n_rot;
      alphas.push_back(r.alpha);
    }
    EXPECT_EQ(e.n_terms, n_terms);
    EXPECT_EQ(e.serial_toffoli, toffoli);
    EXPECT_EQ(e.n_rot_total, n_rot);
    EXPECT_EQ(e.alpha_total, exact_sum(alphas));
    Count term_sum = 0;
    for (const auto& t : e.terms) term_sum += t.cost.toffoli;
    EXPECT_EQ(e.serial.toffoli, term_sum);
  }
}

TEST(pipeline, rotation_count_by_enumeration) {
  const auto h = cmd_decompose(synthetic(5, 13), {}).hamiltonian;
  Count n_rot = 0;
  for (const auto& mc : h.couplings) {
    Count per_term = 0;
    for (int m : mc.modes) per_term += h.n_modals(m);
    n_rot += 2 * per_term * static_cast<Count>(mc.n_terms());
  }
  const auto e = estimate_hamiltonian(h, estimate_options({}, Representation::diagonal));
  EXPECT_EQ(e.n_rot_total, n_rot);
  EXPECT_EQ(e.budget.n_rot_total, n_rot);
}

TEST(pipeline, group_document) {
  const auto doc = cmd_group(synthetic(4, 2), {});
  EXPECT_EQ(doc["version"], "groups-v1");
  EXPECT_LE(doc["depth_cost"].get<Count>(), doc["serial_depth"].get<Count>());
}

TEST(pipeline, report_merges_inputs) {
  const auto h = synthetic(3, 4);
  const auto v = cmd_verify(h, {}, {1e-4, 1e-6});
  const auto e = cmd_estimate(h, {}, false);
  const auto r = cmd_report({v.report, e});
  EXPECT_EQ(r.report["rows"].size(), 3u);
  EXPECT_EQ(csv_column(r.csv, "threshold").size(), 3u);
  EXPECT_THROW(cmd_report({Json::parse(R"({"version": "nope-v1"})")}), SchemaError);
}

TEST(format, shortest_round_trip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}
