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

#include "vibqpe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include <Eigen/Eigenvalues>

#include "vibqpe/errors.hpp"

namespace vibqpe {
namespace {

constexpr double kResidualTolerance = 1e-9;

struct Layout {
  std::vector<int> mode_indices;
  std::vector<int> dims;
  std::vector<std::size_t> strides;
  std::map<int, std::size_t> position;
  std::size_t dimension = 1;
};

Layout make_layout(const SopHamiltonian& h, std::size_t cap) {
  Layout out;
  std::vector<Mode> modes = h.modes;
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) { return a.index < b.index; });
  double dim = 1.0;
  for (const auto& m : modes) {
    out.position[m.index] = out.mode_indices.size();
    out.mode_indices.push_back(m.index);
    out.dims.push_back(m.n_modals);
    dim *= m.n_modals;
  }
  if (dim > static_cast<double>(cap)) {
    throw CapExceededError("physical dimension " + std::to_string(static_cast<long long>(dim)) +
                           " exceeds the oracle cap of " + std::to_string(cap));
  }
  out.dimension = static_cast<std::size_t>(dim);
  out.strides.assign(out.dims.size(), 1);
  for (std::size_t p = out.dims.size(); p-- > 1;) {
    out.strides[p - 1] = out.strides[p] * static_cast<std::size_t>(out.dims[p]);
  }
  return out;
}

// Σ_terms ⊗ factors over the coupling's own modes.
Eigen::MatrixXd coupling_matrix(const ModeCoupling& mc) {
  Eigen::MatrixXd total;
  for (const auto& term : mc.terms()) {
    auto factors = mc.factor(term);
    Eigen::MatrixXd k = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) k = kron(k, factors[i]);
    if (total.size() == 0) {
      total = std::move(k);
    } else {
      total += k;
    }
  }
  return total;
}

void solve_tridiagonal(const std::vector<double>& alpha, const std::vector<double>& beta, double* theta,
                       Eigen::VectorXd* y) {
  const auto k = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd diag(k);
  Eigen::VectorXd sub(std::max<Eigen::Index>(k - 1, 0));
  for (Eigen::Index i = 0; i < k; ++i) diag(i) = alpha[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < k; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  *theta = es.eigenvalues()(0);
  *y = es.eigenvectors().col(0);
}

EigenResult dense_lowest(const Eigen::SparseMatrix<double>& m, double norm) {
  const Eigen::MatrixXd dense(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("dense eigensolver failed", std::numeric_limits<double>::infinity());
  }
  EigenResult out;
  out.method = "dense";
  out.norm = norm;
  out.energy = es.eigenvalues()(0);
  out.vector = es.eigenvectors().col(0);
  out.residual = (dense * out.vector - out.energy * out.vector).norm();
  return out;
}

}  // namespace

std::size_t VibrationalMatrix::state_index(const OccupationState& state) const {
  if (state.size() != dims.size()) {
    throw ValidationError("occupation state has the wrong number of modes");
  }
  std::size_t index = 0;
  for (std::size_t p = 0; p < dims.size(); ++p) {
    if (state[p] < 0 || state[p] >= dims[p]) {
      throw ValidationError("occupied modal out of range");
    }
    index = index * static_cast<std::size_t>(dims[p]) + static_cast<std::size_t>(state[p]);
  }
  return index;
}

OccupationState VibrationalMatrix::state(std::size_t index) const {
  OccupationState out(dims.size(), 0);
  for (std::size_t p = dims.size(); p-- > 0;) {
    out[p] = static_cast<int>(index % static_cast<std::size_t>(dims[p]));
    index /= static_cast<std::size_t>(dims[p]);
  }
  return out;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

VibrationalMatrix assemble_full(const SopHamiltonian& h, std::size_t cap) {
  require_valid(h);
  const Layout layout = make_layout(h, cap);
  std::vector<Eigen::Triplet<double>> triplets;

  for (const auto& mc : h.couplings) {
    const Eigen::MatrixXd local = coupling_matrix(mc);
    if (local.size() == 0) continue;

    // Offsets of each local basis state, and the enumeration of spectator modes.
    std::vector<std::size_t> local_offset(static_cast<std::size_t>(local.rows()), 0);
    for (std::size_t a = 0; a < local_offset.size(); ++a) {
      std::size_t rem = a;
      for (std::size_t k = mc.modes.size(); k-- > 0;) {
        const std::size_t p = layout.position.at(mc.modes[k]);
        const auto n = static_cast<std::size_t>(layout.dims[p]);
        local_offset[a] += (rem % n) * layout.strides[p];
        rem /= n;
      }
    }
    std::vector<std::size_t> spectators;
    for (std::size_t p = 0; p < layout.dims.size(); ++p) {
      if (std::find(mc.modes.begin(), mc.modes.end(), layout.mode_indices[p]) == mc.modes.end()) {
        spectators.push_back(p);
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> nonzeros;
    std::vector<double> values;
    for (Eigen::Index a = 0; a < local.rows(); ++a) {
      for (Eigen::Index b = 0; b < local.cols(); ++b) {
        if (local(a, b) != 0.0) {
          nonzeros.emplace_back(local_offset[static_cast<std::size_t>(a)], local_offset[static_cast<std::size_t>(b)]);
          values.push_back(local(a, b));
        }
      }
    }
    DenseTensor::Shape spectator_shape;
    for (std::size_t p : spectators) spectator_shape.push_back(static_cast<std::size_t>(layout.dims[p]));
    DenseTensor::Index digits(spectators.size(), 0);
    do {
      std::size_t base = 0;
      for (std::size_t s = 0; s < spectators.size(); ++s) base += digits[s] * layout.strides[spectators[s]];
      for (std::size_t z = 0; z < nonzeros.size(); ++z) {
        triplets.emplace_back(static_cast<int>(base + nonzeros[z].first), static_cast<int>(base + nonzeros[z].second),
                              values[z]);
      }
    } while (!spectators.empty() && next_index(digits, spectator_shape));
  }

  VibrationalMatrix out;
  out.mode_indices = layout.mode_indices;
  out.dims = layout.dims;
  const auto dim = static_cast<Eigen::Index>(layout.dimension);
  out.matrix.resize(dim, dim);
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  out.matrix.makeCompressed();
  return out;
}

double infinity_norm(const Eigen::SparseMatrix<double>& m) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(m.rows());
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      rows(it.row()) += std::abs(it.value());
    }
  }
  return rows.size() == 0 ? 0.0 : rows.maxCoeff();
}

EigenResult lanczos_lowest(const Eigen::SparseMatrix<double>& m, int krylov, int max_restarts) {
  const Eigen::Index n = m.rows();
  const double norm = infinity_norm(m);
  const double tol = kResidualTolerance * norm;
  const Eigen::Index steps = std::min<Eigen::Index>(n, krylov);

  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(rng);
  v.normalize();

  EigenResult out;
  out.method = "lanczos";
  out.norm = norm;
  for (int restart = 0; restart < max_restarts; ++restart) {
    Eigen::MatrixXd basis(n, steps);
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.col(0) = v;
    for (Eigen::Index j = 0; j < steps; ++j) {
      Eigen::VectorXd w = m * basis.col(j);
      alpha.push_back(basis.col(j).dot(w));
      // Full reorthogonalization, applied twice.
      for (int pass = 0; pass < 2; ++pass) {
        w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
      }
      const double b = w.norm();
      if (j + 1 == steps || b <= 1e-14 * std::max(norm, 1e-300)) break;
      beta.push_back(b);
      basis.col(j + 1) = w / b;
    }
    double theta = 0.0;
    Eigen::VectorXd y;
    solve_tridiagonal(alpha, beta, &theta, &y);
    Eigen::VectorXd x = basis.leftCols(y.size()) * y;
    x.normalize();
    out.energy = theta;
    out.vector = x;
    out.residual = (m * x - theta * x).norm();
    out.iterations = restart + 1;
    if (out.residual <= tol) {
      return out;
    }
    v = x;
  }
  throw ConvergenceError("Lanczos did not converge; residual " + std::to_string(out.residual), out.residual);
}

EigenResult ground_energy(const Eigen::SparseMatrix<double>& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError("ground_energy needs a non-empty square matrix");
  }
  const double norm = infinity_norm(m);
  EigenResult out = static_cast<std::size_t>(m.rows()) <= kDenseSolverLimit ? dense_lowest(m, norm) : lanczos_lowest(m);
  if (out.residual > kResidualTolerance * norm) {
    throw ConvergenceError("eigensolver residual " + std::to_string(out.residual) + " above tolerance", out.residual);
  }
  return out;
}

EigenResult ground_energy(const VibrationalMatrix& m) { return ground_energy(m.matrix); }

double spectral_norm(const Eigen::SparseMatrix<double>& m) {
  if (m.rows() == 0) return 0.0;
  if (static_cast<std::size_t>(m.rows()) <= kDenseSolverLimit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  if (m.nonZeros() == 0) return 0.0;
  const Eigen::SparseMatrix<double> neg = -m;
  return std::max(std::abs(lanczos_lowest(m).energy), std::abs(lanczos_lowest(neg).energy));
}

EnergyComparison energy_error(const SopHamiltonian& original, const SopHamiltonian& decomposed, std::size_t cap) {
  const VibrationalMatrix a = assemble_full(original, cap);
  const VibrationalMatrix b = assemble_full(decomposed, cap);
  if (a.dims != b.dims || a.mode_indices != b.mode_indices) {
    throw ValidationError("energy_error: Hamiltonians have different mode structure");
  }
  const EigenResult ea = ground_energy(a);
  const EigenResult eb = ground_energy(b);
  const Eigen::SparseMatrix<double> diff = a.matrix - b.matrix;
  EnergyComparison out;
  out.e_original = ea.energy;
  out.e_decomposed = eb.energy;
  out.delta_e = std::abs(ea.energy - eb.energy);
  out.norm_difference = spectral_norm(diff);
  out.slack = 64.0 * std::numeric_limits<double>::epsilon() * (ea.norm + eb.norm) + ea.residual + eb.residual;
  out.weyl_ok = out.delta_e <= out.norm_difference + out.slack;
  return out;
}

double LcuCertificate::max_deviation() const {
  return std::max({one_mode_deviation, composed_deviation, leakage, imaginary});
}

LcuCertificate certify_lcu(const SopHamiltonian& h, Representation rep, double tolerance) {
  require_valid(h);
  for (const auto& m : h.modes) {
    if (m.n_modals > kCertifyMaxModals) {
      throw CapExceededError("certify_lcu supports at most " + std::to_string(kCertifyMaxModals) + " modals per mode");
    }
  }
  if (h.n_vib() > kCertifyMaxQubits) {
    throw CapExceededError("certify_lcu supports at most " + std::to_string(kCertifyMaxQubits) + " modal qubits");
  }
  std::vector<Mode> modes = h.modes;
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) { return a.index < b.index; });

  LcuCertificate cert;
  long long dim = 1;
  for (const auto& m : modes) dim *= m.n_modals;
  Eigen::MatrixXd composed = Eigen::MatrixXd::Zero(dim, dim);

  for (std::size_t c = 0; c < h.couplings.size(); ++c) {
    const ModeCoupling& mc = h.couplings[c];
    double mc_dev = 0.0;
    for (const auto& term : mc.terms()) {
      const auto factors = mc.factor(term);
      std::map<int, Eigen::MatrixXd> projected;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        const int n = h.n_modals(mc.modes[i]);
        const ProjectedLcu p = lcu_as_matrix(build_lcu(rep, factors[i]), n);
        mc_dev = std::max(mc_dev, (p.matrix - factors[i]).cwiseAbs().maxCoeff());
        cert.leakage = std::max(cert.leakage, p.leakage);
        cert.imaginary = std::max(cert.imaginary, p.imaginary);
        projected[mc.modes[i]] = p.matrix;
      }
      // Full-space Kronecker product with identities on spectator modes.
      Eigen::MatrixXd full = Eigen::MatrixXd::Ones(1, 1);
      for (const auto& m : modes) {
        auto it = projected.find(m.index);
        full = kron(full, it != projected.end() ? it->second : Eigen::MatrixXd::Identity(m.n_modals, m.n_modals));
      }
      composed += full;
    }
    cert.one_mode_deviation = std::max(cert.one_mode_deviation, mc_dev);
    if (std::max({mc_dev, cert.leakage, cert.imaginary}) > tolerance) {
      throw CertificationError("LCU of coupling " + std::to_string(c) + " deviates by " + std::to_string(mc_dev),
                               std::max({mc_dev, cert.leakage, cert.imaginary}));
    }
  }
  const Eigen::MatrixXd reference = assemble_full(h).dense();
  cert.composed_deviation = reference.size() == 0 ? 0.0 : (composed - reference).cwiseAbs().maxCoeff();
  if (cert.composed_deviation > tolerance) {
    throw CertificationError("composed LCU deviates from the assembled Hamiltonian by " +
                                 std::to_string(cert.composed_deviation),
                             cert.composed_deviation);
  }
  return cert;
}

}  // namespace vibqpe
