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

#include "vibqpe/lcu.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "vibqpe/errors.hpp"

namespace vibqpe {
namespace {

using Amp = std::complex<double>;
using State = std::map<std::uint32_t, Amp>;

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols() || h.rows() < 1) {
    throw ValidationError("one-mode operator must be a non-empty square matrix");
  }
  if (!h.allFinite()) {
    throw ValidationError("one-mode operator has non-finite entries");
  }
  return 0.5 * (h + h.transpose());
}

// Drops negligible terms and fills in alpha from the unpruned magnitudes.
void finish(LcuDecomposition& d, const ExactSum& magnitudes) {
  d.alpha = magnitudes.value();
  const double cutoff = kPruneRelative * d.alpha;
  std::vector<LcuTerm> kept;
  for (const auto& t : d.terms) {
    if (t.coefficient != 0.0 && std::fabs(t.coefficient) >= cutoff) {
      kept.push_back(t);
    }
  }
  d.terms = std::move(kept);
}

bool significant(double v, double scale) { return v != 0.0 && std::fabs(v) >= kPruneRelative * scale; }

// Pauli σ^α on qubit q applied to a basis state.
void apply_pauli(char pauli, int q, std::uint32_t& bits, Amp& amp) {
  const std::uint32_t mask = 1u << q;
  const bool set = (bits & mask) != 0;
  switch (pauli) {
    case 'X':
      bits ^= mask;
      break;
    case 'Y':
      amp *= set ? Amp(0.0, -1.0) : Amp(0.0, 1.0);
      bits ^= mask;
      break;
    case 'Z':
      if (set) {
        amp = -amp;
      }
      break;
    default:
      break;
  }
}

void add_pair(State& out, std::uint32_t bits, Amp amp, char pauli, int r, int s, double coef) {
  apply_pauli(pauli, s, bits, amp);
  apply_pauli(pauli, r, bits, amp);
  out[bits] += coef * amp;
}

}  // namespace

std::string to_string(Representation rep) {
  switch (rep) {
    case Representation::quadratic:
      return "quadratic";
    case Representation::triangular:
      return "triangular";
    case Representation::diagonal:
      return "diagonal";
  }
  return "?";
}

Representation representation_from_string(const std::string& name) {
  if (name == "quadratic") return Representation::quadratic;
  if (name == "triangular") return Representation::triangular;
  if (name == "diagonal") return Representation::diagonal;
  throw ValidationError("unknown representation \"" + name + "\"");
}

std::string LcuTerm::label() const {
  switch (kind) {
    case Kind::identity:
      return "I";
    case Kind::z:
      return "Z" + std::to_string(r);
    case Kind::xx:
      return "X" + std::to_string(r) + " X" + std::to_string(s);
    case Kind::yy:
      return "Y" + std::to_string(r) + " Y" + std::to_string(s);
    case Kind::rotated_xx:
      return "tau" + std::to_string(eigen) + "^x upsilon" + std::to_string(eigen) + "^x";
    case Kind::rotated_yy:
      return "tau" + std::to_string(eigen) + "^y upsilon" + std::to_string(eigen) + "^y";
  }
  return "?";
}

Count lcu_coefficient_count(Representation rep, Count n) {
  switch (rep) {
    case Representation::quadratic:
      return checked_mul(n, n);
    case Representation::triangular:
      return checked_mul(n, n + 1) / 2;
    case Representation::diagonal:
      return checked_mul(2, n);
  }
  return 0;
}

LcuDecomposition build_quadratic(const Eigen::MatrixXd& input) {
  const Eigen::MatrixXd h = symmetrized(input);
  const int n = static_cast<int>(h.rows());
  LcuDecomposition d;
  d.representation = Representation::quadratic;
  d.n_modals = n;
  d.n_coef = lcu_coefficient_count(d.representation, n);
  ExactSum mags;
  const double scale = h.cwiseAbs().sum();
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      const double c = h(r, s) / 4.0;
      d.terms.push_back({LcuTerm::Kind::xx, r, s, -1, c});
      d.terms.push_back({LcuTerm::Kind::yy, r, s, -1, c});
      mags.add(std::fabs(c));
      mags.add(std::fabs(c));
      d.n_coef_nonzero += significant(h(r, s), scale) ? 1 : 0;
    }
  }
  for (int r = 0; r < n; ++r) {
    const double c = -h(r, r) / 2.0;
    d.terms.push_back({LcuTerm::Kind::z, r, -1, -1, c});
    mags.add(std::fabs(c));
  }
  finish(d, mags);
  return d;
}

LcuDecomposition build_triangular(const Eigen::MatrixXd& input) {
  const Eigen::MatrixXd h = symmetrized(input);
  const int n = static_cast<int>(h.rows());
  LcuDecomposition d;
  d.representation = Representation::triangular;
  d.n_modals = n;
  d.n_coef = lcu_coefficient_count(d.representation, n);
  ExactSum mags;
  const double scale = h.cwiseAbs().sum();
  for (int r = 0; r < n; ++r) {
    const double c = h(r, r) / 2.0;
    d.terms.push_back({LcuTerm::Kind::identity, -1, -1, -1, c});
    d.terms.push_back({LcuTerm::Kind::z, r, -1, -1, -c});
    mags.add(std::fabs(c));
    mags.add(std::fabs(c));
    d.n_coef_nonzero += significant(h(r, r), scale) ? 1 : 0;
    for (int s = r + 1; s < n; ++s) {
      const double o = h(r, s) / 2.0;
      d.terms.push_back({LcuTerm::Kind::xx, r, s, -1, o});
      d.terms.push_back({LcuTerm::Kind::yy, r, s, -1, o});
      mags.add(std::fabs(o));
      mags.add(std::fabs(o));
      d.n_coef_nonzero += significant(h(r, s), scale) ? 1 : 0;
    }
  }
  finish(d, mags);
  return d;
}

LcuDecomposition build_diagonal(const Eigen::MatrixXd& input) {
  const Eigen::MatrixXd h = symmetrized(input);
  const int n = static_cast<int>(h.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigendecomposition of a one-mode operator failed", 0.0);
  }
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const Eigen::MatrixXd& u = solver.eigenvectors();

  LcuDecomposition d;
  d.representation = Representation::diagonal;
  d.n_modals = n;
  d.n_coef = lcu_coefficient_count(d.representation, n);
  EigenData eig;
  eig.eigenvalues = lambda;
  ExactSum mags;
  const double scale = lambda.cwiseAbs().sum() + h.diagonal().cwiseAbs().sum();
  for (int j = 0; j < n; ++j) {
    std::vector<double> column(u.col(j).data(), u.col(j).data() + n);
    const double norm = u.col(j).norm();
    for (double& x : column) {
      x /= norm;
    }
    const Eigen::VectorXd row_of_inverse = u.transpose().row(j).transpose() / norm;
    std::vector<double> row(row_of_inverse.data(), row_of_inverse.data() + n);
    eig.tau_angles.push_back(extract_rotation_angles(column));
    eig.upsilon_angles.push_back(extract_rotation_angles(row));
    const double c = lambda(j) / 4.0;
    d.terms.push_back({LcuTerm::Kind::rotated_xx, -1, -1, j, c});
    d.terms.push_back({LcuTerm::Kind::rotated_yy, -1, -1, j, c});
    mags.add(std::fabs(c));
    mags.add(std::fabs(c));
    d.n_coef_nonzero += significant(lambda(j), scale) ? 1 : 0;
  }
  for (int r = 0; r < n; ++r) {
    const double c = -h(r, r) / 2.0;
    d.terms.push_back({LcuTerm::Kind::z, r, -1, -1, c});
    mags.add(std::fabs(c));
    d.n_coef_nonzero += significant(h(r, r), scale) ? 1 : 0;
  }
  d.eigen = std::move(eig);
  finish(d, mags);
  return d;
}

LcuDecomposition build_lcu(Representation rep, const Eigen::MatrixXd& h) {
  switch (rep) {
    case Representation::quadratic:
      return build_quadratic(h);
    case Representation::triangular:
      return build_triangular(h);
    case Representation::diagonal:
      return build_diagonal(h);
  }
  throw ValidationError("unknown representation");
}

double lcu_alpha(Representation rep, const Eigen::MatrixXd& input) {
  if (rep == Representation::diagonal) {
    return build_diagonal(input).alpha;
  }
  const Eigen::MatrixXd h = symmetrized(input);
  const Eigen::Index n = h.rows();
  ExactSum mags;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index s = r; s < n; ++s) {
      mags.add(std::fabs(h(r, s)));
    }
  }
  return mags.value();
}

std::vector<double> extract_rotation_angles(std::span<const double> c) {
  const std::size_t n = c.size();
  if (n < 2) {
    throw ValidationError("rotation angles need a vector of length at least 2");
  }
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    tail[i] = std::hypot(tail[i + 1], c[i]);
  }
  if (!std::isfinite(tail[0]) || std::fabs(tail[0] - 1.0) > 1e-10) {
    throw ValidationError("rotation angles need a unit vector, got norm " + std::to_string(tail[0]));
  }
  std::vector<double> theta(n - 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (tail[i] == 0.0) {
      break;  // remaining components vanish; the rest stay 0
    }
    theta[i] = (i + 2 == n) ? std::atan2(c[n - 1], c[n - 2]) : std::atan2(tail[i + 1], c[i]);
  }
  return theta;
}

std::vector<double> expansion_from_angles(std::span<const double> theta) {
  const std::size_t n = theta.size() + 1;
  std::vector<double> u(n, 0.0);
  double sines = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    u[i] = sines * std::cos(theta[i]);
    sines *= std::sin(theta[i]);
  }
  u[n - 1] = sines;
  return u;
}

ProjectedLcu lcu_as_matrix(const LcuDecomposition& d, int n_modals) {
  if (n_modals < 1 || n_modals > 30) {
    throw ValidationError("lcu_as_matrix supports 1..30 modals");
  }
  std::vector<std::vector<double>> tau;
  std::vector<std::vector<double>> upsilon;
  if (d.eigen) {
    for (const auto& a : d.eigen->tau_angles) {
      tau.push_back(expansion_from_angles(a));
    }
    for (const auto& a : d.eigen->upsilon_angles) {
      upsilon.push_back(expansion_from_angles(a));
    }
  }

  ProjectedLcu out;
  out.matrix = Eigen::MatrixXd::Zero(n_modals, n_modals);
  for (int s = 0; s < n_modals; ++s) {
    const std::uint32_t start = 1u << s;
    State result;
    for (const auto& t : d.terms) {
      switch (t.kind) {
        case LcuTerm::Kind::identity:
          result[start] += t.coefficient;
          break;
        case LcuTerm::Kind::z: {
          std::uint32_t bits = start;
          Amp amp = 1.0;
          apply_pauli('Z', t.r, bits, amp);
          result[bits] += t.coefficient * amp;
          break;
        }
        case LcuTerm::Kind::xx:
        case LcuTerm::Kind::yy:
          add_pair(result, start, 1.0, t.kind == LcuTerm::Kind::xx ? 'X' : 'Y', t.r, t.s, t.coefficient);
          break;
        case LcuTerm::Kind::rotated_xx:
        case LcuTerm::Kind::rotated_yy: {
          const char p = t.kind == LcuTerm::Kind::rotated_xx ? 'X' : 'Y';
          const auto& c = tau.at(static_cast<std::size_t>(t.eigen));
          const auto& v = upsilon.at(static_cast<std::size_t>(t.eigen));
          for (int r = 0; r < n_modals; ++r) {
            for (int q = 0; q < n_modals; ++q) {
              const double w = c[static_cast<std::size_t>(r)] * v[static_cast<std::size_t>(q)];
              if (w != 0.0) {
                add_pair(result, start, 1.0, p, r, q, t.coefficient * w);
              }
            }
          }
          break;
        }
      }
    }
    for (const auto& [bits, amp] : result) {
      if (bits != 0 && (bits & (bits - 1)) == 0) {
        const int r = __builtin_ctz(bits);
        out.matrix(r, s) = amp.real();
        out.imaginary = std::max(out.imaginary, std::fabs(amp.imag()));
      } else {
        out.leakage = std::max(out.leakage, std::abs(amp));
      }
    }
  }
  return out;
}

}  // namespace vibqpe
