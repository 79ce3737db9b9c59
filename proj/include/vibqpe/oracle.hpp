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
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "vibqpe/lcu.hpp"
#include "vibqpe/sop.hpp"

namespace vibqpe {

inline constexpr std::size_t kDefaultDimensionCap = std::size_t{1} << 20;
inline constexpr std::size_t kDenseSolverLimit = 4096;

/// H on the direct-product modal space. States are enumerated row-major over
/// the modes sorted by index (lowest index slowest).
struct VibrationalMatrix {
  std::vector<int> mode_indices;
  std::vector<int> dims;
  Eigen::SparseMatrix<double> matrix;

  std::size_t dimension() const { return static_cast<std::size_t>(matrix.rows()); }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
  std::size_t state_index(const OccupationState& state) const;
  OccupationState state(std::size_t index) const;
};

VibrationalMatrix assemble_full(const SopHamiltonian& h, std::size_t cap = kDefaultDimensionCap);

/// Kronecker product a ⊗ b.
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Largest absolute row sum, an upper bound on the spectral norm.
double infinity_norm(const Eigen::SparseMatrix<double>& m);

struct EigenResult {
  double energy = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;  // ‖Hv − Ev‖
  double norm = 0.0;      // the ‖H‖ used for the tolerance
  std::string method;     // dense or lanczos
  int iterations = 0;
};

/// Lowest eigenpair; dense below kDenseSolverLimit, restarted Lanczos above.
/// Throws ConvergenceError unless the residual is ≤ 1e-9·‖H‖.
EigenResult ground_energy(const Eigen::SparseMatrix<double>& m);
EigenResult ground_energy(const VibrationalMatrix& m);
EigenResult lanczos_lowest(const Eigen::SparseMatrix<double>& m, int krylov = 64, int max_restarts = 500);

/// max |λ| of a symmetric matrix.
double spectral_norm(const Eigen::SparseMatrix<double>& m);

struct EnergyComparison {
  double e_original = 0.0;
  double e_decomposed = 0.0;
  double delta_e = 0.0;
  double norm_difference = 0.0;  // ‖H_orig − H_dec‖₂
  double slack = 0.0;            // rounding allowance on the bound
  bool weyl_ok = false;          // delta_e ≤ norm_difference + slack
};

EnergyComparison energy_error(const SopHamiltonian& original, const SopHamiltonian& decomposed,
                              std::size_t cap = kDefaultDimensionCap);

struct LcuCertificate {
  double one_mode_deviation = 0.0;  // largest |projected LCU − h| over factors
  double composed_deviation = 0.0;  // largest |Σ ⊗ projected − assemble_full|
  double leakage = 0.0;
  double imaginary = 0.0;
  double max_deviation() const;
};

inline constexpr int kCertifyMaxModals = 6;
inline constexpr long long kCertifyMaxQubits = 20;

/// Throws CertificationError naming the coupling when the deviation exceeds tolerance.
LcuCertificate certify_lcu(const SopHamiltonian& h, Representation rep, double tolerance = 1e-9);

}  // namespace vibqpe
