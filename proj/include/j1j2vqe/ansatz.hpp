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
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "j1j2vqe/lattice.hpp"
#include "j1j2vqe/simulator.hpp"

namespace j1j2 {

struct AnsatzSpec {
    Lattice lattice;
    std::size_t n_layers = 1;
    bool include_diagonals = false;

    /// Edges that carry an XXYYZZ triple in every layer.
    [[nodiscard]] std::size_t entangled_edges() const noexcept;
    /// 2n + n_layers * (n + |E|).
    [[nodiscard]] std::size_t n_params() const noexcept;
};

struct ResourceCount {
    std::size_t two_qubit_gates = 0;
    std::size_t single_qubit_gates_total = 0;
    std::size_t single_qubit_gates_excl_z = 0;
    std::size_t n_params = 0;
    std::size_t n_layers = 0;

    friend bool operator==(const ResourceCount &, const ResourceCount &) = default;
};

/// Layered hardware-efficient circuit:
///   X(t) Y(t) on every qubit (own parameters), then n_layers blocks of
///   [Z(t) on every qubit] + [XX YY ZZ sharing one parameter per NN edge]
///   + [same per diagonal edge, when include_diagonals].
/// Parameters are numbered in gate order, so layer L owns the contiguous
/// range starting at 2n + L * (n + |E|).
ParamCircuit build_ansatz(const AnsatzSpec &spec);

/// Gate and parameter tally by traversal. The layer count is the number of
/// Z-gate layers, i.e. Z gates divided by qubit count.
ResourceCount count_resources(const ParamCircuit &circ);

/// Closed-form tally for a spec, without building the circuit.
ResourceCount predicted_resources(const AnsatzSpec &spec);

inline constexpr double kDefaultExtendEpsilon = 1e-5;

/// Deepens the ansatz by `extra_layers` blocks. The returned parameter vector
/// keeps `old_params` for the original gates and sets every new parameter to
/// `epsilon`, so the new gates start close to the identity.
std::pair<ParamCircuit, std::vector<double>> extend_ansatz(const AnsatzSpec &spec,
                                                          std::span<const double> old_params,
                                                          std::size_t extra_layers,
                                                          double epsilon = kDefaultExtendEpsilon);

} // namespace j1j2
