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
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.h"
#include "vibqpe/decomp.hpp"
#include "vibqpe/errors.hpp"
#include "vibqpe/generator.hpp"
#include "vibqpe/oracle.hpp"

using namespace vibqpe;

namespace {

SopHamiltonian bilinear(double lambda, int n_modals) {
  CouplingSpec spec{{{0, 1}, {{{1, 1}, lambda}}}};
  return generate_coupled_oscillator(2, {1.0, 1.0}, spec, n_modals, 0);
}

Eigen::SparseMatrix<double> sparse(const Eigen::MatrixXd& m) { return m.sparseView(); }

}  // namespace

TEST(assemble, single_harmonic_mode) {
  const auto h = generate_coupled_oscillator(1, {1.0}, {}, 5, 0);
  const Eigen::MatrixXd m = assemble_full(h).dense();
  for (int r = 0; r < 5; ++r) {
    for (int s = 0; s < 5; ++s) EXPECT_NEAR(m(r, s), r == s ? r + 0.5 : 0.0, 1e-13);
  }
}

TEST(assemble, row_major_state_order) {
  const auto h = testutil::coupled_model(3, 3, 1);
  const auto vm = assemble_full(h);
  EXPECT_EQ(vm.dimension(), 27u);
  EXPECT_EQ(vm.state_index({0, 0, 1}), 1u);
  EXPECT_EQ(vm.state_index({1, 0, 0}), 9u);
  for (std::size_t i = 0; i < vm.dimension(); ++i) EXPECT_EQ(vm.state_index(vm.state(i)), i);
}

TEST(assemble, refuses_beyond_cap) {
  const auto h = testutil::coupled_model(3, 8, 2);
  EXPECT_THROW(assemble_full(h, 100), CapExceededError);
}

TEST(assemble, linear_in_couplings) {
  const auto h = testutil::coupled_model(3, 4, 3);
  SopHamiltonian one = h, multi = h;
  std::erase_if(one.couplings, [](const auto& mc) { return mc.order() != 1; });
  std::erase_if(multi.couplings, [](const auto& mc) { return mc.order() == 1; });
  const Eigen::MatrixXd sum = assemble_full(one).dense() + assemble_full(multi).dense();
  EXPECT_LT((assemble_full(h).dense() - sum).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(assemble, matches_dense_kronecker_route) {
  // Bilinear term only: ω-free check of q ⊗ q against kron.
  const auto h = bilinear(0.3, 4);
  SopHamiltonian c = h;
  std::erase_if(c.couplings, [](const auto& mc) { return mc.order() == 1; });
  const Eigen::MatrixXd q = c.couplings[0].basis[0][0];
  const Eigen::MatrixXd want = 0.3 * kron(q, c.couplings[0].basis[1][0]);
  EXPECT_LT((assemble_full(c).dense() - want).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ground, uncoupled_pair) {
  const auto h = generate_coupled_oscillator(2, {1.0, 2.0}, {}, 8, 0);
  EXPECT_NEAR(ground_energy(assemble_full(h)).energy, 1.5, 1e-8);
}

TEST(ground, uncoupled_full_spectrum) {
  const std::vector<double> w{0.7, 1.3, 2.1};
  const auto h = generate_coupled_oscillator(3, w, {}, 4, 0);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(assemble_full(h).dense()).eigenvalues();
  std::vector<double> want;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) want.push_back(w[0] * (a + 0.5) + w[1] * (b + 0.5) + w[2] * (c + 0.5));
    }
  }
  std::sort(want.begin(), want.end());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(ev[static_cast<Eigen::Index>(i)], want[i], 1e-8);
}

TEST(ground, bilinear_normal_modes) {
  const double exact = (std::sqrt(1.1) + std::sqrt(0.9)) / 2.0;
  EXPECT_NEAR(exact, 0.998746, 1e-6);
  EXPECT_NEAR(ground_energy(assemble_full(bilinear(0.1, 14))).energy, exact, 1e-6);
}

TEST(ground, small_matrices) {
  EXPECT_NEAR(ground_energy(sparse(Eigen::Vector3d(0.5, 1.5, 2.5).asDiagonal().toDenseMatrix())).energy, 0.5,
              1e-14);
  const Eigen::MatrixXd m = (Eigen::MatrixXd(2, 2) << 1, 2, 2, 3).finished();
  EXPECT_NEAR(ground_energy(sparse(m)).energy, 2.0 - std::sqrt(5.0), 1e-14);
}

TEST(ground, lanczos_matches_dense_on_500) {
  std::mt19937_64 rng(500);
  const Eigen::MatrixXd m = testutil::random_symmetric(500, rng);
  const double dense = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues()[0];
  const auto via_api = ground_energy(sparse(m));
  EXPECT_NEAR(via_api.energy, dense, 1e-9);
  const auto lz = lanczos_lowest(sparse(m));
  EXPECT_EQ(lz.method, "lanczos");
  EXPECT_NEAR(lz.energy, dense, 1e-9);
  EXPECT_LT(lz.residual, 1e-9 * lz.norm);
}

TEST(ground, lanczos_path_on_large_model) {
  const auto h = generate_coupled_oscillator(3, {1.0, 1.2, 1.4}, {}, 17, 0);
  const auto r = ground_energy(assemble_full(h));
  EXPECT_EQ(r.method, "lanczos");
  EXPECT_NEAR(r.energy, 1.8, 1e-8);
}

TEST(ground, invariant_under_coupling_order) {
  const auto h = testutil::coupled_model(3, 4, 9);
  SopHamiltonian shuffled = h;
  std::reverse(shuffled.couplings.begin(), shuffled.couplings.end());
  EXPECT_NEAR(ground_energy(assemble_full(shuffled)).energy, ground_energy(assemble_full(h)).energy, 1e-12);
}

TEST(energy_error, identical_inputs) {
  const auto h = testutil::coupled_model(3, 4, 4);
  const auto c = energy_error(h, h);
  EXPECT_EQ(c.delta_e, 0.0);
  EXPECT_TRUE(c.weyl_ok);
}

TEST(energy_error, exact_decomposition) {
  const auto h = testutil::coupled_model(3, 4, 5);
  const auto d = decompose_hamiltonian(h, {.eps_t = 0.0, .eps_lr = 0.0});
  EXPECT_LE(energy_error(h, d.hamiltonian).delta_e, 1e-10);
}

TEST(energy_error, weyl_bound_checked_explicitly) {
  const auto h = testutil::coupled_model(3, 5, 6, 3, 0.05);
  const auto d = decompose_hamiltonian(h, {.eps_lr = 1e-4});
  const auto c = energy_error(h, d.hamiltonian);
  const Eigen::MatrixXd diff = assemble_full(h).dense() - assemble_full(d.hamiltonian).dense();
  const double norm2 = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(diff).eigenvalues().cwiseAbs().maxCoeff();
  EXPECT_NEAR(c.norm_difference, norm2, 1e-12);
  EXPECT_LE(c.delta_e, norm2 + c.slack);
  EXPECT_TRUE(c.weyl_ok);
}

TEST(certify, two_mode_model) {
  const auto h = testutil::coupled_model(2, 4, 7, 2, 0.05);
  EXPECT_LT(certify_lcu(h, Representation::triangular).max_deviation(), 1e-10);
  EXPECT_LT(certify_lcu(h, Representation::quadratic).max_deviation(), 1e-10);
  EXPECT_LT(certify_lcu(h, Representation::diagonal).max_deviation(), 1e-9);
}

TEST(certify, zero_hamiltonian) {
  auto h = generate_coupled_oscillator(2, {1.0, 1.0}, {}, 3, 0);
  for (auto& mc : h.couplings) {
    for (auto& x : mc.tensor.data()) x = 0.0;
  }
  EXPECT_EQ(certify_lcu(h, Representation::diagonal).max_deviation(), 0.0);
}

TEST(certify, size_limits) {
  EXPECT_THROW(certify_lcu(generate_coupled_oscillator(1, {1.0}, {}, 7, 0), Representation::triangular),
               CapExceededError);
}
