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
#include <doctest.h>

#include <cmath>
#include <random>

#include "j1j2vqe/ansatz.hpp"
#include "j1j2vqe/error.hpp"
#include "j1j2vqe/pauli.hpp"

using namespace j1j2;

TEST_CASE("ansatz: 12-qubit resource counts") {
    const Lattice l = build_lattice(3, 4, Boundary::Open);
    const ResourceCount with = count_resources(build_ansatz({l, 7, true}));
    CHECK(with.two_qubit_gates == 609);
    CHECK(with.single_qubit_gates_total == 108);
    CHECK(with.n_params == 311);
    CHECK(with.n_layers == 7);

    const ResourceCount without = count_resources(build_ansatz({l, 7, false}));
    CHECK(without.two_qubit_gates == 357);
    CHECK(without.n_params == 227);
    CHECK(without.single_qubit_gates_total == 108);
    CHECK(without.single_qubit_gates_excl_z == 24);
}

TEST_CASE("ansatz: 20-qubit resource counts") {
    const Lattice l = build_lattice(4, 5, Boundary::Open);
    CHECK(count_resources(build_ansatz({l, 12, true})).single_qubit_gates_total == 280);
    // 2n + L(n + 31) with 31 nearest-neighbour edges on the 4x5 grid.
    CHECK(AnsatzSpec{l, 5, false}.n_params() == 295);
    CHECK(AnsatzSpec{l, 12, false}.n_params() == 652);
}

TEST_CASE("ansatz: zero layers leaves only the X/Y preamble") {
    const Lattice l = build_lattice(2, 3, Boundary::Open);
    const ParamCircuit c = build_ansatz({l, 0, true});
    const ResourceCount rc = count_resources(c);
    CHECK(rc.two_qubit_gates == 0);
    CHECK(rc.n_params == 12);
    CHECK(c.gates().size() == 12);
}

TEST_CASE("ansatz: gate order within a layer") {
    const Lattice l = build_lattice(2, 2, Boundary::Open);
    const ParamCircuit c = build_ansatz({l, 1, true});
    const auto &g = c.gates();
    REQUIRE(g.size() == 8 + 4 + 3 * 6);
    for (std::size_t q = 0; q < 4; ++q) {
        CHECK(g[2 * q] == GateOp{GateKind::Xp, {q, q}, 2 * q});
        CHECK(g[2 * q + 1] == GateOp{GateKind::Yp, {q, q}, 2 * q + 1});
        CHECK(g[8 + q].kind == GateKind::Zp);
        CHECK(g[8 + q].param_index == 8 + q);
    }
    std::vector<Edge> order;
    for (std::size_t k = 12; k < g.size(); k += 3) {
        CHECK(g[k].kind == GateKind::XXp);
        CHECK(g[k + 1].kind == GateKind::YYp);
        CHECK(g[k + 2].kind == GateKind::ZZp);
        CHECK(g[k].targets == g[k + 2].targets);
        order.emplace_back(g[k].targets[0], g[k].targets[1]);
    }
    std::vector<Edge> want = l.nn_edges();
    want.insert(want.end(), l.nnn_edges().begin(), l.nnn_edges().end());
    CHECK(order == want);
}

TEST_CASE("ansatz: each edge parameter drives exactly its three gates") {
    const Lattice l = build_lattice(3, 3, Boundary::Open);
    const AnsatzSpec spec{l, 3, true};
    const ParamCircuit c = build_ansatz(spec);
    std::vector<std::vector<std::size_t>> users(c.n_params());
    for (std::size_t k = 0; k < c.gates().size(); ++k)
        users[c.gates()[k].param_index].push_back(k);
    for (std::size_t p = 0; p < c.n_params(); ++p) {
        const auto &u = users[p];
        REQUIRE_FALSE(u.empty());
        if (!is_two_qubit(c.gates()[u[0]].kind)) {
            CHECK(u.size() == 1);
            continue;
        }
        REQUIRE(u.size() == 3);
        CHECK(c.gates()[u[0]].kind == GateKind::XXp);
        CHECK(c.gates()[u[1]].kind == GateKind::YYp);
        CHECK(c.gates()[u[2]].kind == GateKind::ZZp);
        CHECK(c.gates()[u[0]].targets == c.gates()[u[1]].targets);
        CHECK(c.gates()[u[0]].targets == c.gates()[u[2]].targets);
    }
}

TEST_CASE("ansatz: closed forms match traversal counts") {
    for (std::size_t rows = 1; rows <= 5; ++rows) {
        for (std::size_t cols = 1; cols <= 5; ++cols) {
            for (const Boundary b : {Boundary::Open, Boundary::Periodic}) {
                if (b == Boundary::Periodic && (rows < 2 || cols < 2))
                    continue;
                const Lattice l = build_lattice(rows, cols, b);
                for (std::size_t layers = 0; layers <= 12; ++layers) {
                    for (const bool diag : {false, true}) {
                        const AnsatzSpec spec{l, layers, diag};
                        const ResourceCount rc = count_resources(build_ansatz(spec));
                        CHECK(rc == predicted_resources(spec));
                        const std::size_t n = l.n_sites();
                        CHECK(rc.n_params == 2 * n + layers * (n + spec.entangled_edges()));
                        CHECK(rc.two_qubit_gates == 3 * layers * spec.entangled_edges());
                    }
                }
            }
        }
    }
}

TEST_CASE("ansatz: extend keeps old parameters and pads with epsilon") {
    const Lattice l = build_lattice(4, 5, Boundary::Open);
    const AnsatzSpec spec{l, 5, false};
    const std::vector<double> old(spec.n_params(), 0.25);
    const auto [circ, params] = extend_ansatz(spec, old, 7, 1e-5);
    CHECK(circ.n_params() == AnsatzSpec{l, 12, false}.n_params());
    REQUIRE(params.size() == circ.n_params());
    for (std::size_t k = 0; k < old.size(); ++k)
        CHECK(params[k] == 0.25);
    for (std::size_t k = old.size(); k < params.size(); ++k)
        CHECK(params[k] == 1e-5);
    // The shallow circuit is a prefix of the deep one with identical indices.
    const ParamCircuit shallow = build_ansatz(spec);
    for (std::size_t k = 0; k < shallow.gates().size(); ++k)
        CHECK(shallow.gates()[k] == circ.gates()[k]);
}

TEST_CASE("ansatz: extend by zero layers is the identity") {
    const AnsatzSpec spec{build_lattice(2, 2, Boundary::Open), 2, true};
    const std::vector<double> old(spec.n_params(), -0.5);
    const auto [circ, params] = extend_ansatz(spec, old, 0);
    CHECK(circ == build_ansatz(spec));
    CHECK(params == old);
    try {
        (void)extend_ansatz(spec, std::vector<double>(3), 1);
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ParameterLengthMismatch);
    }
}

TEST_CASE("ansatz: handoff energy is continuous on a 2x2 lattice") {
    const Lattice l = build_lattice(2, 2, Boundary::Open);
    const ObservableSum h = build_hamiltonian(l, -1.0, -0.5);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-3.14159, 3.14159);
    for (int trial = 0; trial < 10; ++trial) {
        const AnsatzSpec spec{l, 2, trial % 2 == 0};
        std::vector<double> p(spec.n_params());
        for (double &x : p)
            x = u(rng);
        const double e_old = expectation(h, run_circuit(build_ansatz(spec), p));
        const auto [circ, q] = extend_ansatz(spec, p, 3);
        const double e_new = expectation(h, run_circuit(circ, q));
        CHECK(std::abs(e_new - e_old) / std::max(1.0, std::abs(e_old)) < 1e-3);
    }
}
