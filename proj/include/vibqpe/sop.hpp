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
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vibqpe/tensor.hpp"

namespace vibqpe {

constexpr std::size_t kMaxCouplingOrder = 4;

struct Mode {
  int index = 0;
  int n_modals = 2;
  std::string label;

  friend bool operator==(const Mode&, const Mode&) = default;
};

struct OneModeOperator {
  int mode = 0;
  Eigen::MatrixXd matrix;
};

/// One product term of a mode coupling: coefficient · ⊗_i basis[i][basis_index[i]].
struct ProductTerm {
  double coefficient = 0.0;
  std::vector<std::size_t> basis_index;
};

/// A mode combination with its operator basis and coefficient tensor.
///
/// Two storage forms exist. In tensor form `tensor` has one axis per mode and
/// its entries weight the products of basis operators. In factorized form
/// every mode carries the same number K of operators and term k is simply
/// ⊗_i basis[i][k] with unit coefficient; `tensor` is empty.
struct ModeCoupling {
  std::vector<int> modes;
  std::vector<std::vector<Eigen::MatrixXd>> basis;
  DenseTensor tensor;
  bool factorized = false;

  std::size_t order() const { return modes.size(); }

  /// Number of product terms. Tensor form counts nonzero entries.
  std::size_t n_terms() const;

  /// Nonzero product terms, row-major over the tensor (rank order when factorized).
  std::vector<ProductTerm> terms() const;

  /// Renormalized factors of one term: the coefficient is folded into the
  /// first factor so that the term equals the plain Kronecker product.
  std::vector<Eigen::MatrixXd> factor(const ProductTerm& term) const;

  static ModeCoupling make_factorized(std::vector<int> modes, std::vector<std::vector<Eigen::MatrixXd>> ops);
};

struct SopHamiltonian {
  std::vector<Mode> modes;
  std::vector<ModeCoupling> couplings;
  std::map<std::string, std::string> metadata;

  const Mode& mode(int index) const;
  int n_modals(int index) const { return mode(index).n_modals; }

  /// Σ_m N_m, the vibrational qubit count under direct encoding.
  long long n_vib() const;

  /// Product of N_m over all modes (dimension of the physical space).
  double physical_dimension() const;

  std::size_t n_terms() const;
};

struct Violation {
  std::string where;
  std::string message;
};

/// Checks every type invariant; an empty result means the Hamiltonian is valid.
std::vector<Violation> validate(const SopHamiltonian& h);

/// Throws ValidationError listing all violations if any are found.
void require_valid(const SopHamiltonian& h);

/// A term of the flattened Hamiltonian with its position in the input.
struct TermRef {
  std::size_t coupling = 0;
  std::size_t term = 0;
  std::vector<int> modes;
  ProductTerm product;
};

/// All product terms, ordered lexicographically by mode tuple then term index.
std::vector<TermRef> enumerate_terms(const SopHamiltonian& h);

/// Max |M - Mᵀ| relative to max |M| (0 for the zero matrix).
double asymmetry(const Eigen::MatrixXd& m);

/// Occupation state: occupied modal index per mode.
using OccupationState = std::vector<int>;

}  // namespace vibqpe
