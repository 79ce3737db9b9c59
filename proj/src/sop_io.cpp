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

#include "vibqpe/sop_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vibqpe/errors.hpp"

namespace vibqpe {
namespace {

Json checked_number(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw SchemaError(std::string("refusing to serialize non-finite value in ") + what);
  }
  return v;
}

Json tensor_to_json(const DenseTensor& t, std::size_t axis, std::size_t& flat) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < t.dim(axis); ++i) {
    if (axis + 1 == t.order()) {
      arr.push_back(checked_number(t[flat++], "coupling tensor"));
    } else {
      arr.push_back(tensor_to_json(t, axis + 1, flat));
    }
  }
  return arr;
}

void tensor_shape(const Json& j, std::size_t depth, DenseTensor::Shape& shape, const std::string& where) {
  if (!j.is_array()) {
    throw SchemaError(where + ": tensor must be nested arrays");
  }
  if (shape.size() <= depth) {
    shape.push_back(j.size());
  } else if (shape[depth] != j.size()) {
    throw SchemaError(where + ": ragged tensor");
  }
  if (depth + 1 < shape.size() || (!j.empty() && j.front().is_array())) {
    for (const auto& sub : j) {
      tensor_shape(sub, depth + 1, shape, where);
    }
  }
}

void tensor_fill(const Json& j, std::size_t depth, std::size_t order, std::vector<double>& out,
                 const std::string& where) {
  for (const auto& sub : j) {
    if (depth + 1 == order) {
      out.push_back(finite_number(sub, where + ": tensor"));
    } else {
      if (!sub.is_array()) {
        throw SchemaError(where + ": tensor depth does not match the mode count");
      }
      tensor_fill(sub, depth + 1, order, out, where);
    }
  }
}

}  // namespace

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(checked_number(m(r, c), "operator matrix"));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double finite_number(const Json& j, const std::string& where) {
  if (!j.is_number()) {
    throw SchemaError(where + ": expected a finite number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw SchemaError(where + ": non-finite number");
  }
  return v;
}

Eigen::MatrixXd matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw SchemaError(where + ": matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().is_array() ? j.front().size() : 0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw SchemaError(where + ": ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = finite_number(row[static_cast<std::size_t>(c)], where);
    }
  }
  return m;
}

const Json& require_key(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) {
    throw SchemaError(where + ": expected an object");
  }
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaError(where + ": missing required key \"" + key + "\"");
  }
  return *it;
}

void require_version(const Json& doc, std::string_view version) {
  const auto& v = require_key(doc, "version", "document");
  if (!v.is_string() || v.get<std::string>() != version) {
    throw SchemaError("unknown version tag " + v.dump() + ", expected \"" + std::string(version) + "\"");
  }
}

Json sop_to_json(const SopHamiltonian& h) {
  Json doc;
  doc["version"] = kSopSchema;
  Json modes = Json::array();
  for (const auto& m : h.modes) {
    modes.push_back({{"index", m.index}, {"n_modals", m.n_modals}, {"label", m.label}});
  }
  doc["modes"] = std::move(modes);
  Json couplings = Json::array();
  for (const auto& mc : h.couplings) {
    Json c;
    c["modes"] = mc.modes;
    if (mc.factorized) {
      c["factorized"] = true;
      Json terms = Json::array();
      for (std::size_t k = 0; k < mc.n_terms(); ++k) {
        Json factors = Json::array();
        for (const auto& ops : mc.basis) {
          factors.push_back(matrix_to_json(ops.at(k)));
        }
        terms.push_back(std::move(factors));
      }
      c["terms"] = std::move(terms);
    } else {
      Json basis = Json::array();
      for (const auto& ops : mc.basis) {
        Json list = Json::array();
        for (const auto& op : ops) {
          list.push_back(matrix_to_json(op));
        }
        basis.push_back(std::move(list));
      }
      c["basis"] = std::move(basis);
      std::size_t flat = 0;
      c["tensor"] = mc.tensor.order() == 0 ? Json::array() : tensor_to_json(mc.tensor, 0, flat);
    }
    couplings.push_back(std::move(c));
  }
  doc["couplings"] = std::move(couplings);
  Json meta = Json::object();
  for (const auto& [k, v] : h.metadata) {
    meta[k] = v;
  }
  doc["metadata"] = std::move(meta);
  return doc;
}

SopHamiltonian sop_from_json(const Json& doc) {
  if (!doc.is_object()) {
    throw SchemaError("document: expected a JSON object");
  }
  require_version(doc, kSopSchema);
  SopHamiltonian h;
  const auto& modes = require_key(doc, "modes", "document");
  if (!modes.is_array()) {
    throw SchemaError("document: \"modes\" must be an array");
  }
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::string where = "modes[" + std::to_string(i) + "]";
    const auto& m = modes[i];
    const auto& index = require_key(m, "index", where);
    const auto& n = require_key(m, "n_modals", where);
    if (!index.is_number_integer() || !n.is_number_integer()) {
      throw SchemaError(where + ": index and n_modals must be integers");
    }
    Mode mode{index.get<int>(), n.get<int>(), ""};
    if (m.contains("label")) {
      if (!m["label"].is_string()) {
        throw SchemaError(where + ": label must be a string");
      }
      mode.label = m["label"].get<std::string>();
    }
    h.modes.push_back(std::move(mode));
  }

  const auto& couplings = require_key(doc, "couplings", "document");
  if (!couplings.is_array()) {
    throw SchemaError("document: \"couplings\" must be an array");
  }
  for (std::size_t c = 0; c < couplings.size(); ++c) {
    const std::string where = "couplings[" + std::to_string(c) + "]";
    const auto& cj = couplings[c];
    ModeCoupling mc;
    const auto& mj = require_key(cj, "modes", where);
    if (!mj.is_array()) {
      throw SchemaError(where + ": \"modes\" must be an array");
    }
    for (const auto& x : mj) {
      if (!x.is_number_integer()) {
        throw SchemaError(where + ": mode indices must be integers");
      }
      mc.modes.push_back(x.get<int>());
    }
    if (mc.modes.size() > kMaxCouplingOrder) {
      throw SchemaError(where + ": couplings beyond four modes are not supported");
    }
    mc.factorized = cj.contains("factorized") && cj["factorized"].is_boolean() && cj["factorized"].get<bool>();
    if (mc.factorized) {
      const auto& terms = require_key(cj, "terms", where);
      if (!terms.is_array()) {
        throw SchemaError(where + ": \"terms\" must be an array");
      }
      mc.basis.assign(mc.modes.size(), {});
      for (std::size_t k = 0; k < terms.size(); ++k) {
        const std::string tw = where + ".terms[" + std::to_string(k) + "]";
        if (!terms[k].is_array() || terms[k].size() != mc.modes.size()) {
          throw SchemaError(tw + ": expected one matrix per mode");
        }
        for (std::size_t i = 0; i < mc.modes.size(); ++i) {
          mc.basis[i].push_back(matrix_from_json(terms[k][i], tw));
        }
      }
    } else {
      const auto& basis = require_key(cj, "basis", where);
      if (!basis.is_array()) {
        throw SchemaError(where + ": \"basis\" must be an array");
      }
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::string bw = where + ".basis[" + std::to_string(i) + "]";
        if (!basis[i].is_array()) {
          throw SchemaError(bw + ": expected a list of matrices");
        }
        std::vector<Eigen::MatrixXd> ops;
        for (std::size_t o = 0; o < basis[i].size(); ++o) {
          ops.push_back(matrix_from_json(basis[i][o], bw + "[" + std::to_string(o) + "]"));
        }
        mc.basis.push_back(std::move(ops));
      }
      const auto& tj = require_key(cj, "tensor", where);
      DenseTensor::Shape shape;
      tensor_shape(tj, 0, shape, where);
      if (shape.size() != mc.modes.size()) {
        throw SchemaError(where + ": tensor depth does not match the mode count");
      }
      std::vector<double> data;
      tensor_fill(tj, 0, shape.size(), data, where);
      mc.tensor = DenseTensor(shape, std::move(data));
    }
    h.couplings.push_back(std::move(mc));
  }

  if (doc.contains("metadata")) {
    const auto& meta = doc["metadata"];
    if (!meta.is_object()) {
      throw SchemaError("document: \"metadata\" must be an object");
    }
    for (const auto& [k, v] : meta.items()) {
      h.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  return h;
}

std::string dump_sop(const SopHamiltonian& h) { return sop_to_json(h).dump(1) + "\n"; }

SopHamiltonian parse_sop(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  return sop_from_json(doc);
}

void write_sop(const SopHamiltonian& h, const std::string& path) { write_text_file(path, dump_sop(h)); }

SopHamiltonian read_sop(const std::string& path) { return parse_sop(read_text_file(path)); }

bool identical(const SopHamiltonian& a, const SopHamiltonian& b) {
  if (a.modes != b.modes || a.metadata != b.metadata || a.couplings.size() != b.couplings.size()) {
    return false;
  }
  for (std::size_t c = 0; c < a.couplings.size(); ++c) {
    const auto& x = a.couplings[c];
    const auto& y = b.couplings[c];
    if (x.modes != y.modes || x.factorized != y.factorized || x.basis.size() != y.basis.size() ||
        !(x.tensor == y.tensor)) {
      return false;
    }
    for (std::size_t i = 0; i < x.basis.size(); ++i) {
      if (x.basis[i].size() != y.basis[i].size()) {
        return false;
      }
      for (std::size_t o = 0; o < x.basis[i].size(); ++o) {
        const auto& p = x.basis[i][o];
        const auto& q = y.basis[i][o];
        if (p.rows() != q.rows() || p.cols() != q.cols() || !(p.array() == q.array()).all()) {
          return false;
        }
      }
    }
  }
  return true;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("io", "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("io", "cannot write " + path);
  }
  out << text;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace vibqpe
