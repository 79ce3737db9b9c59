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

#include "vibqpe/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "vibqpe/errors.hpp"
#include "vibqpe/numeric.hpp"

namespace vibqpe {
namespace {

// Leading left singular vectors of m; fewer columns if m has fewer.
Eigen::MatrixXd leading_left_vectors(const Eigen::MatrixXd& m, std::size_t count, Eigen::VectorXd* singular = nullptr) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  if (singular != nullptr) {
    *singular = svd.singularValues();
  }
  const Eigen::Index cols = std::min<Eigen::Index>(static_cast<Eigen::Index>(count), svd.matrixU().cols());
  return svd.matrixU().leftCols(cols);
}

// Smallest k with √(Σ_{j≥k} s_j²) ≤ eps.
std::size_t truncation_rank(const Eigen::VectorXd& s, double eps) {
  std::size_t k = static_cast<std::size_t>(s.size());
  double tail_sq = 0.0;
  while (k > 0) {
    const double next = tail_sq + s(static_cast<Eigen::Index>(k - 1)) * s(static_cast<Eigen::Index>(k - 1));
    if (std::sqrt(next) > eps) break;
    tail_sq = next;
    --k;
  }
  return k;
}

std::size_t product_of(const DenseTensor::Shape& shape) {
  std::size_t p = 1;
  for (auto d : shape) p *= d;
  return p;
}

std::size_t exact_rank_bound(const DenseTensor::Shape& shape) {
  if (shape.empty()) return 0;
  return product_of(shape) / *std::max_element(shape.begin(), shape.end());
}

double residual_norm(const DenseTensor& tensor, const FactorizedCoupling& fc) {
  return (tensor - fc.reconstruct()).frobenius_norm();
}

// Σ_k e_{idx(k)} ⊗ ... ⊗ fiber_k along the longest axis: exact at rank Π dims / max dim.
FactorizedCoupling exact_slices(const DenseTensor& tensor) {
  const auto& shape = tensor.shape();
  const std::size_t n = shape.size();
  const std::size_t axis =
      static_cast<std::size_t>(std::max_element(shape.begin(), shape.end()) - shape.begin());
  DenseTensor::Shape rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != axis) rest.push_back(shape[i]);
  }
  std::vector<std::vector<Eigen::VectorXd>> columns(n);
  DenseTensor::Index outer(rest.size(), 0);
  DenseTensor::Index full(n, 0);
  do {
    Eigen::VectorXd fiber(static_cast<Eigen::Index>(shape[axis]));
    for (std::size_t i = 0, r = 0; i < n; ++i) {
      if (i != axis) full[i] = outer[r++];
    }
    for (std::size_t t = 0; t < shape[axis]; ++t) {
      full[axis] = t;
      fiber(static_cast<Eigen::Index>(t)) = tensor(full);
    }
    if (fiber.squaredNorm() == 0.0) continue;
    for (std::size_t i = 0, r = 0; i < n; ++i) {
      if (i == axis) {
        columns[i].push_back(fiber);
      } else {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(shape[i]));
        e(static_cast<Eigen::Index>(outer[r++])) = 1.0;
        columns[i].push_back(e);
      }
    }
  } while (!rest.empty() && next_index(outer, rest));

  FactorizedCoupling fc;
  fc.rank = columns.empty() ? 0 : columns[0].size();
  fc.weights = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(fc.rank));
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::MatrixXd f(static_cast<Eigen::Index>(shape[i]), static_cast<Eigen::Index>(fc.rank));
    for (std::size_t k = 0; k < fc.rank; ++k) f.col(static_cast<Eigen::Index>(k)) = columns[i][k];
    fc.factors.push_back(std::move(f));
  }
  fc.error = residual_norm(tensor, fc);
  return fc;
}

using Acceptor = std::function<double(const FactorizedCoupling&)>;  // returns the error to compare

FactorizedCoupling cp_search(const DenseTensor& tensor, double eps_lr, std::uint64_t seed, const CpOptions& options,
                             const Acceptor& measure) {
  const std::size_t bound = exact_rank_bound(tensor.shape());
  FactorizedCoupling best;
  double best_error = std::numeric_limits<double>::infinity();
  for (std::size_t rank : cp_rank_schedule(tensor.shape(), options.max_rank)) {
    FactorizedCoupling fc =
        rank == bound ? exact_slices(tensor) : cp_als_fixed_rank(tensor, rank, seed, options);
    const double err = measure(fc);
    if (err <= eps_lr) {
      fc.converged = true;
      return fc;
    }
    if (err < best_error) {
      best_error = err;
      best = std::move(fc);
    }
  }
  best.converged = false;
  return best;
}

Eigen::MatrixXd combine(const std::vector<Eigen::MatrixXd>& basis, const Eigen::VectorXd& column) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(basis.at(0).rows(), basis.at(0).cols());
  for (std::size_t o = 0; o < basis.size(); ++o) {
    const double w = column(static_cast<Eigen::Index>(o));
    if (w != 0.0) out += w * basis[o];
  }
  return out;
}

void attach_operators(FactorizedCoupling& fc, const ModeCoupling& mc) {
  fc.modes = mc.modes;
  fc.transformed_ops.assign(mc.order(), {});
  for (std::size_t i = 0; i < mc.order(); ++i) {
    for (std::size_t k = 0; k < fc.rank; ++k) {
      fc.transformed_ops[i].push_back(combine(mc.basis[i], fc.factors[i].col(static_cast<Eigen::Index>(k))));
    }
  }
}

// Renormalized per-term operators with λ_k spread evenly over the modes.
std::vector<std::vector<Eigen::MatrixXd>> absorbed_operators(const FactorizedCoupling& fc) {
  const std::size_t n = fc.transformed_ops.size();
  std::vector<std::vector<Eigen::MatrixXd>> ops(n);
  for (std::size_t k = 0; k < fc.rank; ++k) {
    const double lambda = fc.weights(static_cast<Eigen::Index>(k));
    if (lambda == 0.0) continue;
    const double share = std::pow(std::abs(lambda), 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const double scale = (i == 0 && lambda < 0.0) ? -share : share;
      ops[i].push_back(scale * fc.transformed_ops[i][k]);
    }
  }
  return ops;
}

}  // namespace

DenseTensor FactorizedCoupling::reconstruct() const { return reconstruct_cp(factors, weights); }

SopHamiltonian contract_one_mode(const SopHamiltonian& h) {
  SopHamiltonian out = h;
  for (auto& mc : out.couplings) {
    if (mc.order() != 1) continue;
    Eigen::MatrixXd sum;
    for (const auto& term : mc.terms()) {
      Eigen::MatrixXd m = mc.factor(term)[0];
      sum = sum.size() == 0 ? m : Eigen::MatrixXd(sum + m);
    }
    if (sum.size() == 0) {
      const int n = h.n_modals(mc.modes[0]);
      sum = Eigen::MatrixXd::Zero(n, n);
    }
    ModeCoupling contracted;
    contracted.modes = mc.modes;
    contracted.basis = {{sum}};
    contracted.tensor = DenseTensor({1}, 1.0);
    mc = std::move(contracted);
  }
  return out;
}

FactorizedCoupling svd_truncate_two_mode(const ModeCoupling& mc, double eps_lr) {
  if (mc.order() != 2 || mc.factorized) {
    throw ValidationError("svd_truncate_two_mode needs a two-mode coupling in tensor form");
  }
  if (!(eps_lr >= 0.0)) {
    throw ValidationError("eps_lr must be non-negative");
  }
  const Eigen::MatrixXd c = mc.tensor.unfold(0);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const std::size_t k = eps_lr == 0.0 ? static_cast<std::size_t>(s.size()) : truncation_rank(s, eps_lr);
  FactorizedCoupling fc;
  fc.rank = k;
  const auto kk = static_cast<Eigen::Index>(k);
  fc.factors = {svd.matrixU().leftCols(kk), svd.matrixV().leftCols(kk)};
  fc.weights = s.head(kk);
  fc.error = residual_norm(mc.tensor, fc);
  attach_operators(fc, mc);
  return fc;
}

TuckerResult hooi(const DenseTensor& tensor, double eps_t, int max_sweeps) {
  const std::size_t n = tensor.order();
  if (n < 3) {
    throw ValidationError("hooi needs a tensor of order >= 3; two-mode couplings use the SVD path");
  }
  if (!(eps_t >= 0.0)) {
    throw ValidationError("eps_t must be non-negative");
  }
  TuckerResult out;
  std::vector<std::size_t> ranks(n);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd s;
    out.factors.push_back(leading_left_vectors(tensor.unfold(i), tensor.dim(i), &s));
    ranks[i] = std::max<std::size_t>(1, truncation_rank(s, eps_t));
    ranks[i] = std::min<std::size_t>(ranks[i], static_cast<std::size_t>(out.factors[i].cols()));
    out.factors[i] = out.factors[i].leftCols(static_cast<Eigen::Index>(ranks[i])).eval();
  }

  const double norm = tensor.frobenius_norm();
  auto project = [&](std::size_t skip) {
    DenseTensor y = tensor;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != skip) y = y.mode_product(j, out.factors[j].transpose());
    }
    return y;
  };
  auto residual = [&]() {
    DenseTensor core = project(n);
    DenseTensor full = core;
    for (std::size_t j = 0; j < n; ++j) full = full.mode_product(j, out.factors[j]);
    out.core = std::move(core);
    return (tensor - full).frobenius_norm();
  };

  out.error = residual();
  out.converged = true;
  if (norm == 0.0) {
    return out;
  }
  out.converged = false;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      out.factors[i] = leading_left_vectors(project(i).unfold(i), ranks[i]);
    }
    const double previous = out.error;
    out.error = residual();
    out.sweeps = sweep;
    if (std::abs(previous - out.error) / norm < 1e-12) {
      out.converged = true;
      break;
    }
  }
  return out;
}

std::vector<std::size_t> cp_rank_schedule(const DenseTensor::Shape& shape, std::size_t max_rank) {
  std::size_t cap = exact_rank_bound(shape);
  if (max_rank > 0) cap = std::min(cap, max_rank);
  std::vector<std::size_t> schedule;
  for (std::size_t r = 1; r < cap; r += std::max<std::size_t>(1, (r + 3) / 4)) {
    schedule.push_back(r);
  }
  if (cap > 0) schedule.push_back(cap);
  return schedule;
}

FactorizedCoupling cp_als_fixed_rank(const DenseTensor& tensor, std::size_t rank, std::uint64_t seed,
                                     const CpOptions& options) {
  const std::size_t n = tensor.order();
  if (n < 3) {
    throw ValidationError("cp_als needs a tensor of order >= 3");
  }
  if (rank < 1) {
    throw ValidationError("cp_als rank must be at least 1");
  }
  const auto r = static_cast<Eigen::Index>(rank);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);

  FactorizedCoupling fc;
  fc.rank = rank;
  for (std::size_t i = 0; i < n; ++i) {
    const auto rows = static_cast<Eigen::Index>(tensor.dim(i));
    Eigen::MatrixXd init = leading_left_vectors(tensor.unfold(i), rank);
    Eigen::MatrixXd f(rows, r);
    f.leftCols(init.cols()) = init;
    for (Eigen::Index k = init.cols(); k < r; ++k) {
      for (Eigen::Index row = 0; row < rows; ++row) f(row, k) = uniform(rng);
    }
    fc.factors.push_back(std::move(f));
  }
  fc.weights = Eigen::VectorXd::Ones(r);

  const double norm = tensor.frobenius_norm();
  if (norm == 0.0) {
    fc.weights.setZero();
    fc.error = 0.0;
    return fc;
  }

  // Nonzero entries with their indices, for the MTTKRP.
  std::vector<std::pair<DenseTensor::Index, double>> entries;
  {
    DenseTensor::Index idx(n, 0);
    std::size_t flat = 0;
    do {
      if (tensor[flat] != 0.0) entries.emplace_back(idx, tensor[flat]);
      ++flat;
    } while (next_index(idx, tensor.shape()));
  }

  double previous = std::numeric_limits<double>::infinity();
  fc.converged = false;
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      Eigen::MatrixXd gram = Eigen::MatrixXd::Ones(r, r);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) gram = gram.cwiseProduct(fc.factors[j].transpose() * fc.factors[j]);
      }
      Eigen::MatrixXd mttkrp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(tensor.dim(i)), r);
      for (const auto& [idx, x] : entries) {
        for (Eigen::Index k = 0; k < r; ++k) {
          double p = x;
          for (std::size_t j = 0; j < n; ++j) {
            if (j != i) p *= fc.factors[j](static_cast<Eigen::Index>(idx[j]), k);
          }
          mttkrp(static_cast<Eigen::Index>(idx[i]), k) += p;
        }
      }
      Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
      const Eigen::VectorXd pivots = ldlt.vectorD();
      if (ldlt.info() != Eigen::Success || pivots.minCoeff() <= 1e-13 * pivots.cwiseAbs().maxCoeff()) {
        gram.diagonal().array() += options.regularizer;
        ldlt.compute(gram);
      }
      Eigen::MatrixXd updated = ldlt.solve(mttkrp.transpose()).transpose();
      for (Eigen::Index k = 0; k < r; ++k) {
        const double c = updated.col(k).norm();
        fc.weights(k) = c;
        if (c > 0.0) updated.col(k) /= c;
      }
      fc.factors[i] = std::move(updated);
    }
    fc.error = residual_norm(tensor, fc);
    const double rel = fc.error / norm;
    if (std::abs(previous - rel) < options.tolerance) {
      fc.converged = true;
      break;
    }
    previous = rel;
  }
  return fc;
}

FactorizedCoupling cp_als(const DenseTensor& tensor, double eps_lr, std::uint64_t seed, const CpOptions& options) {
  if (tensor.order() < 3) {
    throw ValidationError("cp_als needs a tensor of order >= 3");
  }
  if (!(eps_lr >= 0.0)) {
    throw ValidationError("eps_lr must be non-negative");
  }
  return cp_search(tensor, eps_lr, seed, options, [](const FactorizedCoupling& fc) { return fc.error; });
}

Decomposition decompose_hamiltonian(const SopHamiltonian& h, const DecomposeOptions& options) {
  require_valid(h);
  if (!(options.eps_t >= 0.0) || !(options.eps_lr >= 0.0)) {
    throw ValidationError("decomposition thresholds must be non-negative");
  }
  const SopHamiltonian contracted = contract_one_mode(h);
  Decomposition out;
  out.hamiltonian.modes = h.modes;
  out.hamiltonian.metadata = h.metadata;
  {
    std::ostringstream os;
    os.precision(17);
    os << "eps_t=" << options.eps_t << " eps_lr=" << options.eps_lr << " tucker=" << (options.tucker ? 1 : 0)
       << " seed=" << options.seed;
    out.hamiltonian.metadata["decomposition"] = os.str();
  }
  DecompositionReport& rep = out.report;
  rep.eps_t = options.eps_t;
  rep.eps_lr = options.eps_lr;
  ExactSum total_error;

  for (std::size_t c = 0; c < contracted.couplings.size(); ++c) {
    const ModeCoupling& mc = contracted.couplings[c];
    McReport row;
    row.modes = mc.modes;
    row.terms_before = h.couplings[c].n_terms();

    if (mc.order() == 1) {
      row.method = "contract";
      const Eigen::MatrixXd& op = mc.basis[0][0];
      if (!op.isZero(0.0)) {
        out.hamiltonian.couplings.push_back(ModeCoupling::make_factorized(mc.modes, {{op}}));
        row.terms_after = 1;
      }
      rep.couplings.push_back(row);
      continue;
    }
    ++rep.n_decomposed;
    if (mc.factorized) {
      row.method = "passthrough";
      row.terms_after = mc.n_terms();
      out.hamiltonian.couplings.push_back(mc);
      rep.couplings.push_back(row);
      continue;
    }

    FactorizedCoupling fc;
    if (mc.order() == 2) {
      row.method = "svd";
      fc = svd_truncate_two_mode(mc, options.eps_lr);
    } else if (mc.tensor.frobenius_norm() == 0.0) {
      row.method = "cp";
      fc.modes = mc.modes;
      fc.factors.assign(mc.order(), Eigen::MatrixXd());
      for (std::size_t i = 0; i < mc.order(); ++i) {
        fc.factors[i] = Eigen::MatrixXd(static_cast<Eigen::Index>(mc.tensor.dim(i)), 0);
      }
      fc.weights = Eigen::VectorXd(0);
      fc.transformed_ops.assign(mc.order(), {});
    } else {
      bool used_tucker = false;
      if (options.tucker) {
        TuckerResult tr = hooi(mc.tensor, options.eps_t);
        row.tucker_error = tr.error;
        for (const auto& f : tr.factors) row.tucker_ranks.push_back(static_cast<std::size_t>(f.cols()));
        if (tr.error <= options.eps_lr) {
          used_tucker = true;
          auto compose = [&](FactorizedCoupling core_fc) {
            for (std::size_t i = 0; i < core_fc.factors.size(); ++i) {
              core_fc.factors[i] = tr.factors[i] * core_fc.factors[i];
            }
            core_fc.error = residual_norm(mc.tensor, core_fc);
            return core_fc;
          };
          FactorizedCoupling core_fc = cp_search(tr.core, options.eps_lr, options.seed, options.cp,
                                                 [&](const FactorizedCoupling& f) { return compose(f).error; });
          const bool ok = core_fc.converged;
          fc = compose(std::move(core_fc));
          fc.converged = ok;
        }
      }
      row.method = used_tucker ? "tucker+cp" : "cp";
      if (!used_tucker) {
        fc = cp_als(mc.tensor, options.eps_lr, options.seed, options.cp);
      }
      fc.rank = static_cast<std::size_t>(fc.weights.size());
      attach_operators(fc, mc);
    }
    fc.modes = mc.modes;
    row.error = fc.error;
    row.converged = fc.converged;
    total_error.add(fc.error);

    auto ops = absorbed_operators(fc);
    row.terms_after = ops.empty() ? 0 : ops[0].size();
    if (row.terms_after > 0) {
      out.hamiltonian.couplings.push_back(ModeCoupling::make_factorized(mc.modes, std::move(ops)));
    }
    rep.couplings.push_back(row);
    out.factorized.push_back(std::move(fc));
  }
  rep.epsilon_tensor = total_error.value();
  for (const auto& row : rep.couplings) {
    rep.terms_before += row.terms_before;
    rep.terms_after += row.terms_after;
  }
  require_valid(out.hamiltonian);
  return out;
}

Json report_to_json(const DecompositionReport& report) {
  Json doc;
  doc["version"] = kDecompSchema;
  doc["eps_t"] = report.eps_t;
  doc["eps_lr"] = report.eps_lr;
  doc["epsilon_tensor"] = report.epsilon_tensor;
  doc["n_decomposed"] = report.n_decomposed;
  doc["terms_before"] = report.terms_before;
  doc["terms_after"] = report.terms_after;
  Json rows = Json::array();
  for (const auto& r : report.couplings) {
    Json row;
    row["modes"] = r.modes;
    row["method"] = r.method;
    row["terms_before"] = r.terms_before;
    row["terms_after"] = r.terms_after;
    row["tucker_ranks"] = r.tucker_ranks;
    row["tucker_error"] = r.tucker_error;
    row["error"] = r.error;
    row["converged"] = r.converged;
    rows.push_back(std::move(row));
  }
  doc["couplings"] = std::move(rows);
  return doc;
}

}  // namespace vibqpe
