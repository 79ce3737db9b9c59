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

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "test_util.h"
#include "vibqpe/decomp.hpp"
#include "vibqpe/errors.hpp"
#include "vibqpe/harmonic.hpp"
#include "vibqpe/oracle.hpp"

using namespace vibqpe;

namespace {

DenseTensor random_tensor(const DenseTensor::Shape& shape, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  DenseTensor t(shape);
  for (auto& x : t.data()) x = dist(rng);
  return t;
}

Eigen::MatrixXd random_orthonormal(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ() * Eigen::MatrixXd::Identity(rows, cols);
}

// Σ_k w_k Π_i U_i(idx_i, k), evaluated entry by entry.
DenseTensor expand(const FactorizedCoupling& fc, const DenseTensor::Shape& shape) {
  DenseTensor out(shape);
  DenseTensor::Index idx(shape.size(), 0);
  do {
    double v = 0.0;
    for (Eigen::Index k = 0; k < fc.weights.size(); ++k) {
      double p = fc.weights[k];
      for (std::size_t i = 0; i < shape.size(); ++i) p *= fc.factors[i](static_cast<Eigen::Index>(idx[i]), k);
      v += p;
    }
    out(idx) = v;
  } while (next_index(idx, shape));
  return out;
}

double frobenius(const DenseTensor& a, const DenseTensor& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

ModeCoupling tensor_coupling(std::vector<int> modes, int n_modals, DenseTensor tensor) {
  ModeCoupling mc;
  mc.modes = std::move(modes);
  for (std::size_t i = 0; i < mc.modes.size(); ++i) {
    std::vector<Eigen::MatrixXd> basis;
    for (std::size_t p = 1; p <= tensor.dim(i); ++p) {
      basis.push_back(harmonic_integrals(OperatorSpec::q(static_cast<int>(p)), n_modals));
    }
    mc.basis.push_back(std::move(basis));
  }
  mc.tensor = std::move(tensor);
  return mc;
}

SopHamiltonian with_coupling(int n_modes, int n_modals, ModeCoupling mc) {
  std::vector<double> freqs;
  for (int m = 0; m < n_modes; ++m) freqs.push_back(1.0 + 0.1 * m);
  auto h = generate_coupled_oscillator(n_modes, freqs, {}, n_modals, 0);
  h.couplings.push_back(std::move(mc));
  return h;
}

double ground(const SopHamiltonian& h) { return ground_energy(assemble_full(h)).energy; }

}  // namespace

TEST(contract, linear_combination) {
  auto h = generate_coupled_oscillator(1, {1.0}, {}, 4, 0);
  ModeCoupling& mc = h.couplings[0];
  mc.basis = {{harmonic_integrals(OperatorSpec::q(1), 4), harmonic_integrals(OperatorSpec::q(2), 4)}};
  mc.tensor = DenseTensor({2}, std::vector<double>{0.1, 0.5});
  const auto out = contract_one_mode(h);
  ASSERT_EQ(out.couplings[0].basis[0].size(), 1u);
  const Eigen::MatrixXd want =
      0.1 * harmonic_integrals(OperatorSpec::q(1), 4) + 0.5 * harmonic_integrals(OperatorSpec::q(2), 4);
  EXPECT_LT((out.couplings[0].basis[0][0] - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(contract, idempotent) {
  const auto once = contract_one_mode(testutil::coupled_model(3, 4, 1));
  EXPECT_TRUE(identical(contract_one_mode(once), once));
}

TEST(contract, spectrum_unchanged) {
  const auto h = testutil::coupled_model(2, 6, 2, 2, 0.05);
  const Eigen::MatrixXd a = assemble_full(h).dense();
  const Eigen::MatrixXd b = assemble_full(contract_one_mode(h)).dense();
  const Eigen::VectorXd ea = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues();
  const Eigen::VectorXd eb = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(b).eigenvalues();
  EXPECT_LT((ea - eb).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(svd, exact_rank_one) {
  const Eigen::Vector3d u(1.0, -2.0, 0.5);
  const Eigen::Vector3d v(0.3, 0.0, 1.0);
  const Eigen::Matrix3d c = u * v.transpose();
  const auto mc = tensor_coupling({0, 1}, 4, DenseTensor({3, 3}, std::vector<double>(c.data(), c.data() + 9)));
  const auto fc = svd_truncate_two_mode(mc, 1e-10);
  EXPECT_EQ(fc.rank, 1u);
  EXPECT_LT(fc.error, 1e-12);
}

TEST(svd, zero_threshold_keeps_everything) {
  std::mt19937_64 rng(1);
  const auto mc = tensor_coupling({0, 1}, 5, random_tensor({3, 4}, rng));
  const auto fc = svd_truncate_two_mode(mc, 0.0);
  EXPECT_EQ(fc.rank, 3u);
  EXPECT_LE(fc.error, 1e-12);
}

TEST(svd, error_is_tail_norm) {
  std::mt19937_64 rng(6);
  const DenseTensor t = random_tensor({6, 6}, rng);
  const auto mc = tensor_coupling({0, 1}, 7, t);
  const double eps = 0.1 * t.frobenius_norm();
  const auto fc = svd_truncate_two_mode(mc, eps);
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(t.unfold(0)).singularValues();
  const double tail = s.tail(s.size() - static_cast<Eigen::Index>(fc.rank)).norm();
  EXPECT_NEAR(fc.error, tail, 1e-12);
  EXPECT_LE(fc.error, eps);
  // One fewer singular value would have broken the threshold.
  EXPECT_GT(s.tail(s.size() - static_cast<Eigen::Index>(fc.rank) + 1).norm(), eps);
}

TEST(hooi, exact_multilinear_rank) {
  std::mt19937_64 rng(8);
  DenseTensor t = random_tensor({2, 2, 2}, rng);
  for (std::size_t i = 0; i < 3; ++i) t = t.mode_product(i, random_orthonormal(4, 2, rng));
  const auto tr = hooi(t, 1e-10);
  EXPECT_EQ(tr.core.shape(), (DenseTensor::Shape{2, 2, 2}));
  EXPECT_LT(tr.error, 1e-12);
}

TEST(hooi, huge_threshold_leaves_rank_one) {
  std::mt19937_64 rng(9);
  const DenseTensor t = random_tensor({3, 3, 3}, rng);
  const auto tr = hooi(t, 10.0 * t.frobenius_norm());
  EXPECT_EQ(tr.core.shape(), (DenseTensor::Shape{1, 1, 1}));
}

TEST(hooi, order_two_rejected) {
  EXPECT_THROW(hooi(DenseTensor({3, 3}), 1e-10), ValidationError);
}

TEST(cp, rank_one_tensor) {
  std::vector<Eigen::MatrixXd> f{Eigen::Vector3d(1, 2, 3), Eigen::Vector2d(-1, 0.5), Eigen::Vector4d(1, 0, 0, 2)};
  const DenseTensor t = reconstruct_cp(f, Eigen::VectorXd::Ones(1));
  const auto fc = cp_als(t, 1e-10, 0);
  EXPECT_EQ(fc.rank, 1u);
  EXPECT_LT(fc.error, 1e-12);
}

TEST(cp, diagonal_tensor) {
  DenseTensor t({3, 3, 3});
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t idx[3] = {i, i, i};
    t(idx) = 1.0;
  }
  const auto fc = cp_als(t, 1e-10, 0);
  EXPECT_LE(fc.rank, 3u);
  EXPECT_LT(fc.error, 1e-10);
}

TEST(cp, infinite_threshold_accepts_rank_one) {
  std::mt19937_64 rng(10);
  const auto fc = cp_als(random_tensor({3, 3, 3}, rng), std::numeric_limits<double>::infinity(), 0);
  EXPECT_EQ(fc.rank, 1u);
}

TEST(cp, deterministic) {
  std::mt19937_64 rng(12);
  const DenseTensor t = random_tensor({3, 4, 3}, rng);
  const auto a = cp_als_fixed_rank(t, 3, 77);
  const auto b = cp_als_fixed_rank(t, 3, 77);
  ASSERT_EQ(a.factors.size(), b.factors.size());
  for (std::size_t i = 0; i < a.factors.size(); ++i) EXPECT_EQ(a.factors[i], b.factors[i]);
  EXPECT_EQ(a.weights, b.weights);
}

TEST(cp, rank_schedule) {
  const auto s = cp_rank_schedule({4, 4, 4});
  ASSERT_FALSE(s.empty());
  EXPECT_EQ(s.front(), 1u);
  EXPECT_EQ(s.back(), 16u);
  for (std::size_t i = 1; i < s.size(); ++i) {
    const std::size_t step = std::max<std::size_t>(1, (s[i - 1] + 3) / 4);
    EXPECT_EQ(s[i], std::min<std::size_t>(s[i - 1] + step, 16u));
  }
}

TEST(cp, reported_error_matches_reconstruction) {
  std::mt19937_64 rng(13);
  for (double eps : {1e-1, 1e-3, 1e-6}) {
    const DenseTensor t = random_tensor({3, 3, 4}, rng);
    const auto fc = cp_als(t, eps, 5);
    EXPECT_NEAR(frobenius(expand(fc, t.shape()), t), fc.error, 1e-12 * std::max(1.0, t.frobenius_norm()));
    EXPECT_LE(fc.error, eps);
  }
}

TEST(decompose, uncoupled_model) {
  const auto h = generate_coupled_oscillator(3, {1.0, 1.5, 2.0}, {}, 4, 0);
  const auto d = decompose_hamiltonian(h, {});
  EXPECT_EQ(d.report.epsilon_tensor, 0.0);
  EXPECT_EQ(d.report.n_decomposed, 0u);
  EXPECT_EQ(d.hamiltonian.n_terms(), 3u);
  EXPECT_NEAR(ground(d.hamiltonian), ground(h), 1e-12);
}

TEST(decompose, separable_three_mode_coupling) {
  std::vector<Eigen::MatrixXd> f{Eigen::Vector3d(0.01, 0.02, -0.01), Eigen::Vector3d(1, 0.5, 0.25),
                                 Eigen::Vector3d(-0.3, 0.1, 0.2)};
  const DenseTensor t = reconstruct_cp(f, Eigen::VectorXd::Ones(1));
  const auto h = with_coupling(3, 5, tensor_coupling({0, 1, 2}, 5, t));
  const auto d = decompose_hamiltonian(h, {});
  const auto& row = d.report.couplings.back();
  EXPECT_EQ(row.terms_before, 27u);
  EXPECT_EQ(row.terms_after, 1u);
  EXPECT_LT(row.error, 1e-12);
}

TEST(decompose, errors_add_up) {
  const auto h = testutil::coupled_model(4, 4, 21);
  const auto d = decompose_hamiltonian(h, {.eps_lr = 1e-4});
  double sum = 0.0;
  for (const auto& row : d.report.couplings) sum += row.error;
  EXPECT_NEAR(d.report.epsilon_tensor, sum, 1e-15);
  EXPECT_LE(d.report.epsilon_tensor, static_cast<double>(d.report.n_decomposed) * 1e-4);
}

TEST(decompose, per_coupling_error_matches_reconstruction) {
  const auto h = testutil::coupled_model(4, 4, 22);
  const auto d = decompose_hamiltonian(h, {.eps_lr = 1e-5});
  std::size_t f = 0;
  for (const auto& mc : contract_one_mode(h).couplings) {
    if (mc.order() < 2) continue;
    const auto& fc = d.factorized.at(f++);
    EXPECT_NEAR(frobenius(expand(fc, mc.tensor.shape()), mc.tensor), fc.error, 1e-13);
    EXPECT_LE(fc.error, 1e-5);
  }
  EXPECT_EQ(f, d.factorized.size());
}

TEST(decompose, zero_thresholds_preserve_ground_energy) {
  for (std::uint64_t seed : {31u, 32u}) {
    const auto h = testutil::coupled_model(3, 4, seed);
    const auto d = decompose_hamiltonian(h, {.eps_t = 0.0, .eps_lr = 0.0});
    EXPECT_NEAR(ground(d.hamiltonian), ground(h), 1e-10);
  }
}

TEST(decompose, term_count_monotone_in_threshold) {
  const auto h = testutil::coupled_model(4, 4, 41);
  std::size_t previous = std::numeric_limits<std::size_t>::max();
  for (double eps : {1e-9, 1e-7, 1e-5, 1e-3, 1e-2}) {
    const auto n = decompose_hamiltonian(h, {.eps_lr = eps}).hamiltonian.n_terms();
    EXPECT_LE(n, previous) << "eps_lr=" << eps;
    previous = n;
  }
}

TEST(decompose, report_json) {
  const auto h = testutil::coupled_model(3, 3, 3);
  const auto j = report_to_json(decompose_hamiltonian(h, {}).report);
  EXPECT_EQ(j["version"], "decomp-v1");
  EXPECT_TRUE(j.contains("epsilon_tensor"));
}
