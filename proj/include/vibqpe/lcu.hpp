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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vibqpe/numeric.hpp"

namespace vibqpe {

enum class Representation { quadratic, triangular, diagonal };

std::string to_string(Representation rep);
Representation representation_from_string(const std::string& name);

/// A Pauli word over the modal qubits of one mode, or a basis-rotated pair.
///
/// Qubit r holds the occupation of modal r; |1⟩ means occupied, so Z_r = -1
/// on the occupied modal.
struct LcuTerm {
  enum class Kind { identity, z, xx, yy, rotated_xx, rotated_yy };
  Kind kind = Kind::identity;
  int r = -1;
  int s = -1;
  int eigen = -1;  // eigenindex j for rotated pairs
  double coefficient = 0.0;

  std::string label() const;
};

struct EigenData {
  Eigen::VectorXd eigenvalues;
  /// Angles for τ_j (from column j of U) and υ_j (from row j of Uᵀ).
  std::vector<std::vector<double>> tau_angles;
  std::vector<std::vector<double>> upsilon_angles;
};

struct LcuDecomposition {
  Representation representation = Representation::triangular;
  int n_modals = 0;
  std::vector<LcuTerm> terms;
  double alpha = 0.0;
  Count n_coef = 0;          // dense count loaded by PREPARE
  Count n_coef_nonzero = 0;  // coefficient slots that survive pruning
  std::optional<EigenData> eigen;
};

/// Relative threshold below which LCU coefficients are dropped.
inline constexpr double kPruneRelative = 1e-15;

LcuDecomposition build_quadratic(const Eigen::MatrixXd& h);
LcuDecomposition build_triangular(const Eigen::MatrixXd& h);
LcuDecomposition build_diagonal(const Eigen::MatrixXd& h);
LcuDecomposition build_lcu(Representation rep, const Eigen::MatrixXd& h);

/// LCU norm without building the term list. Bit-identical to build_lcu(...).alpha.
double lcu_alpha(Representation rep, const Eigen::MatrixXd& h);

/// Dense coefficient counts N_m², N_m(N_m+1)/2 and 2N_m.
Count lcu_coefficient_count(Representation rep, Count n_modals);

/// θ_0..θ_{N-2} with u_i = Π_{j<i} sin θ_j · cos θ_i and u_{N-1} = Π_j sin θ_j.
std::vector<double> extract_rotation_angles(std::span<const double> unit_vector);
std::vector<double> expansion_from_angles(std::span<const double> angles);

struct ProjectedLcu {
  Eigen::MatrixXd matrix;  // Σ c_i U_i restricted to the unary subspace
  double leakage = 0.0;    // largest amplitude left outside that subspace
  double imaginary = 0.0;  // largest imaginary part inside it
};

/// Evaluates the LCU as Pauli action on computational basis states of
/// n_modals qubits and projects onto single-occupation states.
ProjectedLcu lcu_as_matrix(const LcuDecomposition& d, int n_modals);

}  // namespace vibqpe
