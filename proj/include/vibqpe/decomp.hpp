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
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vibqpe/sop.hpp"
#include "vibqpe/sop_io.hpp"
#include "vibqpe/tensor.hpp"

namespace vibqpe {

/// Σ_k λ_k ⊗_i U^{(i)}_{·,k} over a coupling's operator bases.
struct FactorizedCoupling {
  std::vector<int> modes;
  std::size_t rank = 0;
  std::vector<Eigen::MatrixXd> factors;  // per mode: basis size × rank
  Eigen::VectorXd weights;
  /// transformed_ops[i][k] = Σ_o U^{(i)}_{o,k} h^{i,o}. Empty when the
  /// decomposition ran on a bare tensor.
  std::vector<std::vector<Eigen::MatrixXd>> transformed_ops;
  double error = 0.0;  // Frobenius norm of the reconstruction residual
  bool converged = true;

  DenseTensor reconstruct() const;
};

/// Collapses every one-mode coupling to a single operator Σ_o c_o h^{m,o}.
SopHamiltonian contract_one_mode(const SopHamiltonian& h);

/// Minimal-rank SVD truncation with tail norm ≤ eps_lr; eps_lr = 0 keeps every singular value.
FactorizedCoupling svd_truncate_two_mode(const ModeCoupling& mc, double eps_lr);

struct TuckerResult {
  DenseTensor core;
  std::vector<Eigen::MatrixXd> factors;  // dim × rank, orthonormal columns
  double error = 0.0;
  int sweeps = 0;
  bool converged = true;
};

/// Higher-order orthogonal iteration. Ranks are fixed by the HOSVD tails (≤ eps_t, at least 1).
TuckerResult hooi(const DenseTensor& tensor, double eps_t, int max_sweeps = 50);

struct CpOptions {
  int max_sweeps = 200;
  double tolerance = 1e-10;      // relative fit change
  double regularizer = 1e-12;  // only when the Gram matrix is numerically singular
  std::size_t max_rank = 0;      // 0: the exact bound Π dims / max dim
};

/// Rank search 1, then +max(1, ⌈r/4⌉), up to the exact bound, where an exact
/// slice decomposition is used.
std::vector<std::size_t> cp_rank_schedule(const DenseTensor::Shape& shape, std::size_t max_rank = 0);

/// ALS at one fixed rank (no search). Deterministic in seed.
FactorizedCoupling cp_als_fixed_rank(const DenseTensor& tensor, std::size_t rank, std::uint64_t seed,
                                     const CpOptions& options = {});

/// Smallest scheduled rank reaching Frobenius error ≤ eps_lr.
FactorizedCoupling cp_als(const DenseTensor& tensor, double eps_lr, std::uint64_t seed, const CpOptions& options = {});

struct McReport {
  std::vector<int> modes;
  std::string method;  // contract, svd, cp, tucker+cp, dropped
  std::size_t terms_before = 0;
  std::size_t terms_after = 0;
  std::vector<std::size_t> tucker_ranks;
  double tucker_error = 0.0;
  double error = 0.0;
  bool converged = true;
};

struct DecompositionReport {
  double eps_t = 0.0;
  double eps_lr = 0.0;
  std::vector<McReport> couplings;
  double epsilon_tensor = 0.0;  // Σ per-coupling errors
  std::size_t n_decomposed = 0; // couplings of order ≥ 2
  std::size_t terms_before = 0;
  std::size_t terms_after = 0;
};

struct DecomposeOptions {
  double eps_t = 1e-10;
  double eps_lr = 1e-8;
  bool tucker = true;
  std::uint64_t seed = 0;
  CpOptions cp;
};

struct Decomposition {
  SopHamiltonian hamiltonian;  // factorized couplings only
  DecompositionReport report;
  std::vector<FactorizedCoupling> factorized;  // one per input coupling of order ≥ 2, in input order
};

Decomposition decompose_hamiltonian(const SopHamiltonian& h, const DecomposeOptions& options);

inline constexpr const char* kDecompSchema = "decomp-v1";

Json report_to_json(const DecompositionReport& report);

}  // namespace vibqpe
