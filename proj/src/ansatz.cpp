// Copyright 2026 The j1j2vqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "j1j2vqe/ansatz.hpp"

#include <string>

#include "j1j2vqe/error.hpp"

namespace j1j2 {

std::size_t AnsatzSpec::entangled_edges() const noexcept {
    return lattice.nn_edges().size() + (include_diagonals ? lattice.nnn_edges().size() : 0);
}

std::size_t AnsatzSpec::n_params() const noexcept {
    const std::size_t n = lattice.n_sites();
    return 2 * n + n_layers * (n + entangled_edges());
}

ParamCircuit build_ansatz(const AnsatzSpec &spec) {
    const std::size_t n = spec.lattice.n_sites();
    ParamCircuit circ(n, spec.n_params());
    std::size_t p = 0;
    for (std::size_t q = 0; q < n; ++q) {
        circ.add_single(GateKind::Xp, q, p++);
        circ.add_single(GateKind::Yp, q, p++);
    }

    const auto add_triples = [&](const std::vector<Edge> &edges) {
        for (const auto &[a, b] : edges) {
            circ.add_two(GateKind::XXp, a, b, p);
            circ.add_two(GateKind::YYp, a, b, p);
            circ.add_two(GateKind::ZZp, a, b, p);
            ++p;
        }
    };
    for (std::size_t layer = 0; layer < spec.n_layers; ++layer) {
        for (std::size_t q = 0; q < n; ++q)
            circ.add_single(GateKind::Zp, q, p++);
        add_triples(spec.lattice.nn_edges());
        if (spec.include_diagonals)
            add_triples(spec.lattice.nnn_edges());
    }
    return circ;
}

ResourceCount count_resources(const ParamCircuit &circ) {
    ResourceCount rc;
    std::size_t z_gates = 0;
    for (const GateOp &g : circ.gates()) {
        if (is_two_qubit(g.kind)) {
            ++rc.two_qubit_gates;
            continue;
        }
        ++rc.single_qubit_gates_total;
        if (g.kind == GateKind::Zp)
            ++z_gates;
        else
            ++rc.single_qubit_gates_excl_z;
    }
    rc.n_params = circ.n_params();
    rc.n_layers = z_gates / circ.n_qubits();
    return rc;
}

ResourceCount predicted_resources(const AnsatzSpec &spec) {
    const std::size_t n = spec.lattice.n_sites();
    return {
        .two_qubit_gates = 3 * spec.n_layers * spec.entangled_edges(),
        .single_qubit_gates_total = 2 * n + spec.n_layers * n,
        .single_qubit_gates_excl_z = 2 * n,
        .n_params = spec.n_params(),
        .n_layers = spec.n_layers,
    };
}

std::pair<ParamCircuit, std::vector<double>> extend_ansatz(const AnsatzSpec &spec,
                                                          std::span<const double> old_params,
                                                          std::size_t extra_layers,
                                                          double epsilon) {
    if (old_params.size() != spec.n_params())
        throw Error(ErrorCode::ParameterLengthMismatch,
                    "ansatz has " + std::to_string(spec.n_params()) + " parameters, got " +
                        std::to_string(old_params.size()));
    if (!(epsilon > 0.0) && extra_layers > 0)
        throw Error(ErrorCode::InvalidConfig, "epsilon must be positive");

    AnsatzSpec deeper = spec;
    deeper.n_layers += extra_layers;
    std::vector<double> params(old_params.begin(), old_params.end());
    params.resize(deeper.n_params(), epsilon);
    return {build_ansatz(deeper), std::move(params)};
}

} // namespace j1j2
