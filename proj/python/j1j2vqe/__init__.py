# Copyright 2026 The j1j2vqe Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Statevector VQE for the J1-J2 Heisenberg model."""

from ._core import (
    SCHEMA_VERSION,
    Boundary,
    Error,
    GateKind,
    Lattice,
    ObservableSum,
    ParamCircuit,
    Pauli,
    PauliString,
    ResourceCount,
    basin_hopping,
    build_ansatz,
    build_hamiltonian,
    cobyla_minimize,
    correlation_matrix,
    count_resources,
    expectation,
    extend_ansatz,
    extrapolate,
    gap_metric,
    gate_matrix,
    heisenberg_bond,
    lowest_two,
    power_law_fit,
    prepare_state,
    run_circuit,
    vqe_run,
)

__all__ = [name for name in dir() if not name.startswith("_")]
