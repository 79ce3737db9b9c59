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

#include <string>

#include <Eigen/Dense>

namespace vibqpe {

/// A primitive one-mode operator in the dimensionless harmonic-oscillator basis.
struct OperatorSpec {
  enum class Kind { q_power, p_squared };
  Kind kind = Kind::q_power;
  int power = 1;

  static OperatorSpec q(int power) { return {Kind::q_power, power}; }
  static OperatorSpec p2() { return {Kind::p_squared, 2}; }

  std::string name() const;
};

/// ⟨r|op|s⟩ for r, s < n_modals with q = (a + a†)/√2 and p² = -((a - a†)/√2)².
///
/// Products are formed in a basis enlarged by the operator degree and then
/// truncated, so every retained entry is exact.
Eigen::MatrixXd harmonic_integrals(const OperatorSpec& op, int n_modals);

/// Position operator q in a basis of size n (no enlargement).
Eigen::MatrixXd ladder_q(int n);

}  // namespace vibqpe
