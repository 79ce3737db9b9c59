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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vibqpe/cost.hpp"
#include "vibqpe/errors.hpp"
#include "vibqpe/harmonic.hpp"
#include "vibqpe/lcu.hpp"
#include "vibqpe/oracle.hpp"
#include "vibqpe/pipeline.hpp"

namespace py = pybind11;

namespace {

vibqpe::RunConfig parse_config(const std::string& config_json) {
  return vibqpe::config_from_json(vibqpe::Json::parse(config_json.empty() ? "{}" : config_json));
}

py::dict estimate_dict(const vibqpe::ResourceEstimate& e) {
  py::dict d;
  d["toffoli"] = e.toffoli;
  d["n_vib"] = e.n_vib;
  d["n_readout"] = e.n_readout;
  d["n_enc"] = e.n_enc;
  d["n_anc"] = e.n_anc;
  d["n_clean"] = e.n_clean;
  d["n_dirty"] = e.n_dirty;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of vibqpe.";

  static py::exception<vibqpe::Error> error(m, "VibqpeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const vibqpe::Error& e) {
      py::set_error(error, (e.kind() + ": " + e.what()).c_str());
    }
  });

  m.def(
      "harmonic_integrals",
      [](const std::string& kind, int power, int n_modals) {
        if (kind != "p2" && kind != "q") throw vibqpe::ValidationError("kind must be \"q\" or \"p2\"");
        const auto op = kind == "p2" ? vibqpe::OperatorSpec::p2() : vibqpe::OperatorSpec::q(power);
        return vibqpe::harmonic_integrals(op, n_modals);
      },
      py::arg("kind"), py::arg("power") = 1, py::arg("n_modals"));

  m.def(
      "lcu_alpha",
      [](const std::string& rep, const Eigen::MatrixXd& h) {
        return vibqpe::lcu_alpha(vibqpe::representation_from_string(rep), h);
      },
      py::arg("representation"), py::arg("matrix"));
  m.def(
      "lcu_terms",
      [](const std::string& rep, const Eigen::MatrixXd& h) {
        auto d = vibqpe::build_lcu(vibqpe::representation_from_string(rep), h);
        std::vector<std::pair<std::string, double>> out;
        for (const auto& t : d.terms) out.emplace_back(t.label(), t.coefficient);
        return out;
      },
      py::arg("representation"), py::arg("matrix"));
  m.def(
      "lcu_coefficient_count",
      [](const std::string& rep, long long n) {
        return vibqpe::lcu_coefficient_count(vibqpe::representation_from_string(rep), n);
      },
      py::arg("representation"), py::arg("n_modals"));
  m.def(
      "lcu_projected_matrix",
      [](const std::string& rep, const Eigen::MatrixXd& h) {
        auto d = vibqpe::build_lcu(vibqpe::representation_from_string(rep), h);
        return vibqpe::lcu_as_matrix(d, static_cast<int>(h.rows())).matrix;
      },
      py::arg("representation"), py::arg("matrix"));
  m.def(
      "extract_rotation_angles",
      [](const std::vector<double>& v) { return vibqpe::extract_rotation_angles(v); }, py::arg("unit_vector"));
  m.def(
      "expansion_from_angles", [](const std::vector<double>& a) { return vibqpe::expansion_from_angles(a); },
      py::arg("angles"));

  m.def(
      "one_mode_cost",
      [](const std::string& rep, long long n_modals, long long mu, long long beta, const std::string& lookup, int a) {
        vibqpe::PrecisionBudget b;
        b.mu = mu;
        b.beta = beta;
        vibqpe::LookupConfig cfg;
        cfg.mode = vibqpe::lookup_mode_from_string(lookup);
        cfg.a = a;
        return estimate_dict(
            vibqpe::one_mode_cost(vibqpe::representation_from_string(rep), n_modals, b, cfg).estimate);
      },
      py::arg("representation"), py::arg("n_modals"), py::arg("mu"), py::arg("beta") = 1,
      py::arg("lookup") = "standard", py::arg("a") = 1);
  m.def(
      "optimal_lambdas",
      [](long long n, long long n_bits, int a) {
        auto l = vibqpe::optimal_lambdas(n, n_bits, a);
        return std::make_pair(l.c, l.u);
      },
      py::arg("n"), py::arg("n_bits"), py::arg("a"));
  m.def("walk_queries", &vibqpe::walk_queries, py::arg("alpha"), py::arg("epsilon"));
  m.def("readout_qubits", &vibqpe::readout_qubits, py::arg("alpha"), py::arg("epsilon"));

  m.def(
      "generate",
      [](const std::string& preset, int n_modes, int n_modals, std::vector<double> frequencies, double bilinear,
         std::uint64_t seed) {
        vibqpe::GenParams p;
        p.preset = preset;
        p.n_modes = n_modes;
        p.n_modals = n_modals;
        p.frequencies = std::move(frequencies);
        p.bilinear = bilinear;
        vibqpe::RunConfig c;
        c.seed = seed;
        return vibqpe::dump_sop(vibqpe::cmd_gen(p, c));
      },
      py::arg("preset") = "random", py::arg("n_modes") = 3, py::arg("n_modals") = 4,
      py::arg("frequencies") = std::vector<double>{}, py::arg("bilinear") = 0.1, py::arg("seed") = 0);
  m.def(
      "decompose",
      [](const std::string& sop, const std::string& config) {
        auto out = vibqpe::cmd_decompose(vibqpe::parse_sop(sop), parse_config(config));
        return std::make_pair(vibqpe::dump_sop(out.hamiltonian), out.report.dump());
      },
      py::arg("sop"), py::arg("config") = "{}");
  m.def(
      "estimate",
      [](const std::string& sop, const std::string& config, bool all_reps) {
        return vibqpe::cmd_estimate(vibqpe::parse_sop(sop), parse_config(config), all_reps).dump();
      },
      py::arg("sop"), py::arg("config") = "{}", py::arg("all_reps") = false);
  m.def(
      "group",
      [](const std::string& sop, const std::string& config) {
        return vibqpe::cmd_group(vibqpe::parse_sop(sop), parse_config(config)).dump();
      },
      py::arg("sop"), py::arg("config") = "{}");
  m.def(
      "verify",
      [](const std::string& sop, const std::string& config, const std::vector<double>& thresholds) {
        auto out = vibqpe::cmd_verify(vibqpe::parse_sop(sop), parse_config(config), thresholds);
        return std::make_pair(out.report.dump(), out.csv);
      },
      py::arg("sop"), py::arg("config") = "{}", py::arg("thresholds"));
  m.def(
      "ground_energy",
      [](const std::string& sop) { return vibqpe::ground_energy(vibqpe::assemble_full(vibqpe::parse_sop(sop))).energy; },
      py::arg("sop"));
}
