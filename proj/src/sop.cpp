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

#include "vibqpe/sop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "vibqpe/errors.hpp"

namespace vibqpe {
namespace {

std::string mc_name(const ModeCoupling& mc, std::size_t position) {
  std::ostringstream out;
  out << "coupling[" << position << "] (";
  for (std::size_t i = 0; i < mc.modes.size(); ++i) {
    out << (i ? "," : "") << mc.modes[i];
  }
  out << ")";
  return out.str();
}

}  // namespace

std::size_t ModeCoupling::n_terms() const {
  if (factorized) {
    return basis.empty() ? 0 : basis.front().size();
  }
  std::size_t n = 0;
  for (double v : tensor.data()) {
    n += v != 0.0 ? 1 : 0;
  }
  return n;
}

std::vector<ProductTerm> ModeCoupling::terms() const {
  std::vector<ProductTerm> out;
  if (factorized) {
    const std::size_t rank = n_terms();
    for (std::size_t k = 0; k < rank; ++k) {
      out.push_back({1.0, std::vector<std::size_t>(modes.size(), k)});
    }
    return out;
  }
  for (std::size_t flat = 0; flat < tensor.size(); ++flat) {
    if (tensor[flat] != 0.0) {
      out.push_back({tensor[flat], tensor.multi_index(flat)});
    }
  }
  return out;
}

std::vector<Eigen::MatrixXd> ModeCoupling::factor(const ProductTerm& term) const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    out.push_back(basis.at(i).at(term.basis_index.at(i)));
  }
  if (!out.empty() && term.coefficient != 1.0) {
    out.front() *= term.coefficient;
  }
  return out;
}

ModeCoupling ModeCoupling::make_factorized(std::vector<int> modes, std::vector<std::vector<Eigen::MatrixXd>> ops) {
  ModeCoupling mc;
  mc.modes = std::move(modes);
  mc.basis = std::move(ops);
  mc.factorized = true;
  return mc;
}

const Mode& SopHamiltonian::mode(int index) const {
  for (const auto& m : modes) {
    if (m.index == index) {
      return m;
    }
  }
  throw std::out_of_range("unknown mode index " + std::to_string(index));
}

long long SopHamiltonian::n_vib() const {
  long long n = 0;
  for (const auto& m : modes) {
    n += m.n_modals;
  }
  return n;
}

double SopHamiltonian::physical_dimension() const {
  double d = 1.0;
  for (const auto& m : modes) {
    d *= m.n_modals;
  }
  return d;
}

std::size_t SopHamiltonian::n_terms() const {
  std::size_t n = 0;
  for (const auto& mc : couplings) {
    n += mc.n_terms();
  }
  return n;
}

double asymmetry(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    return 0.0;
  }
  return (m - m.transpose()).cwiseAbs().maxCoeff() / scale;
}

std::vector<Violation> validate(const SopHamiltonian& h) {
  std::vector<Violation> out;
  std::map<int, int> modals;
  for (const auto& m : h.modes) {
    if (modals.count(m.index)) {
      out.push_back({"mode " + std::to_string(m.index), "duplicate mode index"});
    }
    if (m.n_modals < 2) {
      out.push_back({"mode " + std::to_string(m.index), "n_modals must be at least 2"});
    }
    modals[m.index] = m.n_modals;
  }

  std::set<std::vector<int>> seen;
  for (std::size_t c = 0; c < h.couplings.size(); ++c) {
    const auto& mc = h.couplings[c];
    const std::string where = mc_name(mc, c);
    if (mc.modes.empty()) {
      out.push_back({where, "coupling has no modes"});
      continue;
    }
    if (mc.modes.size() > kMaxCouplingOrder) {
      out.push_back({where, "coupling order exceeds " + std::to_string(kMaxCouplingOrder)});
    }
    if (!std::is_sorted(mc.modes.begin(), mc.modes.end()) ||
        std::adjacent_find(mc.modes.begin(), mc.modes.end()) != mc.modes.end()) {
      out.push_back({where, "modes must be strictly increasing"});
    }
    if (!seen.insert(mc.modes).second) {
      out.push_back({where, "more than one coupling for this mode set"});
    }
    if (mc.basis.size() != mc.modes.size()) {
      out.push_back({where, "basis list count does not match mode count"});
      continue;
    }
    if (mc.factorized) {
      for (std::size_t i = 1; i < mc.basis.size(); ++i) {
        if (mc.basis[i].size() != mc.basis[0].size()) {
          out.push_back({where, "factorized coupling has unequal term counts per mode"});
        }
      }
    } else if (mc.tensor.order() != mc.modes.size()) {
      out.push_back({where, "tensor order does not match mode count"});
    } else {
      for (std::size_t i = 0; i < mc.modes.size(); ++i) {
        if (mc.tensor.dim(i) != mc.basis[i].size()) {
          out.push_back({where, "tensor axis " + std::to_string(i) + " has length " + std::to_string(mc.tensor.dim(i)) +
                                    " but basis has " + std::to_string(mc.basis[i].size()) + " operators"});
        }
      }
      for (double v : mc.tensor.data()) {
        if (!std::isfinite(v)) {
          out.push_back({where, "tensor has a non-finite entry"});
          break;
        }
      }
    }
    for (std::size_t i = 0; i < mc.modes.size(); ++i) {
      const auto it = modals.find(mc.modes[i]);
      if (it == modals.end()) {
        out.push_back({where, "references unknown mode " + std::to_string(mc.modes[i])});
        continue;
      }
      for (std::size_t o = 0; o < mc.basis[i].size(); ++o) {
        const auto& mat = mc.basis[i][o];
        const std::string op = where + " mode " + std::to_string(mc.modes[i]) + " operator " + std::to_string(o);
        if (mat.rows() != it->second || mat.cols() != it->second) {
          out.push_back({op, "matrix is not N_m x N_m"});
          continue;
        }
        if (!mat.allFinite()) {
          out.push_back({op, "matrix has a non-finite entry"});
          continue;
        }
        if (asymmetry(mat) > 1e-12) {
          out.push_back({op, "matrix is not symmetric"});
        }
      }
    }
  }
  return out;
}

void require_valid(const SopHamiltonian& h) {
  const auto violations = validate(h);
  if (violations.empty()) {
    return;
  }
  std::ostringstream msg;
  msg << violations.size() << " violation(s):";
  for (const auto& v : violations) {
    msg << " [" << v.where << ": " << v.message << "]";
  }
  throw ValidationError(msg.str());
}

std::vector<TermRef> enumerate_terms(const SopHamiltonian& h) {
  std::vector<std::size_t> order(h.couplings.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return h.couplings[a].modes < h.couplings[b].modes; });
  std::vector<TermRef> out;
  for (std::size_t c : order) {
    const auto terms = h.couplings[c].terms();
    for (std::size_t t = 0; t < terms.size(); ++t) {
      out.push_back({c, t, h.couplings[c].modes, terms[t]});
    }
  }
  return out;
}

}  // namespace vibqpe
