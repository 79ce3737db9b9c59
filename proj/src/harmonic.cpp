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

#include "vibqpe/harmonic.hpp"

#include <cmath>

#include "vibqpe/errors.hpp"

namespace vibqpe {

std::string OperatorSpec::name() const {
  if (kind == Kind::p_squared) {
    return "p^2";
  }
  return "q^" + std::to_string(power);
}

Eigen::MatrixXd ladder_q(int n) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r + 1 < n; ++r) {
    q(r, r + 1) = q(r + 1, r) = std::sqrt(static_cast<double>(r + 1) / 2.0);
  }
  return q;
}

Eigen::MatrixXd harmonic_integrals(const OperatorSpec& op, int n_modals) {
  if (n_modals < 2) {
    throw ValidationError("harmonic_integrals requires n_modals >= 2");
  }
  if (op.kind == OperatorSpec::Kind::q_power) {
    if (op.power < 1) {
      throw ValidationError("q_power requires a power of at least 1");
    }
    const int big = n_modals + op.power;
    const Eigen::MatrixXd q = ladder_q(big);
    Eigen::MatrixXd acc = q;
    for (int k = 1; k < op.power; ++k) {
      acc = (acc * q).eval();
    }
    Eigen::MatrixXd out = acc.topLeftCorner(n_modals, n_modals);
    return (0.5 * (out + out.transpose())).eval();
  }
  const int big = n_modals + 2;
  Eigen::MatrixXd pp = Eigen::MatrixXd::Zero(big, big);
  for (int r = 0; r + 1 < big; ++r) {
    const double v = std::sqrt(static_cast<double>(r + 1) / 2.0);
    pp(r, r + 1) = v;
    pp(r + 1, r) = -v;
  }
  Eigen::MatrixXd out = -(pp * pp).topLeftCorner(n_modals, n_modals);
  return (0.5 * (out + out.transpose())).eval();
}

}  // namespace vibqpe
