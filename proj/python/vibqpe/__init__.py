# Copyright 2026 The vibqpe Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Resource estimates for qubitized phase estimation of vibrational Hamiltonians."""

import json

from vibqpe._core import (
    VibqpeError,
    expansion_from_angles,
    extract_rotation_angles,
    ground_energy,
    harmonic_integrals,
    lcu_alpha,
    lcu_coefficient_count,
    lcu_projected_matrix,
    lcu_terms,
    one_mode_cost,
    optimal_lambdas,
    readout_qubits,
    walk_queries,
)
from vibqpe import _core

__all__ = [
    "VibqpeError",
    "decompose",
    "estimate",
    "expansion_from_angles",
    "extract_rotation_angles",
    "generate",
    "ground_energy",
    "group",
    "harmonic_integrals",
    "lcu_alpha",
    "lcu_coefficient_count",
    "lcu_projected_matrix",
    "lcu_terms",
    "one_mode_cost",
    "optimal_lambdas",
    "readout_qubits",
    "verify",
    "walk_queries",
]


def _config(config):
    return json.dumps(config or {})


def generate(preset="random", n_modes=3, n_modals=4, frequencies=(), bilinear=0.1, seed=0):
    """Returns a Hamiltonian document (sop-v1) as a string."""
    return _core.generate(preset, n_modes, n_modals, list(frequencies), bilinear, seed)


def decompose(sop, config=None):
    """Returns (factorized sop-v1 string, decomp-v1 report dict)."""
    out, report = _core.decompose(sop, _config(config))
    return out, json.loads(report)


def estimate(sop, config=None, all_reps=False):
    return json.loads(_core.estimate(sop, _config(config), all_reps))


def group(sop, config=None):
    return json.loads(_core.group(sop, _config(config)))


def verify(sop, thresholds, config=None):
    """Returns (verify-v1 report dict, CSV text)."""
    report, csv = _core.verify(sop, _config(config), list(thresholds))
    return json.loads(report), csv
