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
// Dense reference implementations used as test oracles. Everything here is
// built from explicit 2^n x 2^n matrices so that it shares no code with the
// bit-mask kernels under test.
#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "j1j2vqe/pauli.hpp"
#include "j1j2vqe/simulator.hpp"

namespace oracle {

using j1j2::cplx;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

inline Mat pauli(j1j2::Pauli p) {
    Mat m(2, 2);
    switch (p) {
    case j1j2::Pauli::X: m << 0, 1, 1, 0; break;
    case j1j2::Pauli::Y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case j1j2::Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

// Qubit 0 is the leftmost Kronecker factor.
inline Mat pauli_string(const j1j2::PauliString &s) {
    Mat out = Mat::Identity(1, 1);
    std::size_t next = 0;
    for (std::size_t q = 0; q < s.n_sites(); ++q) {
        Mat f = Mat::Identity(2, 2);
        if (next < s.ops().size() && s.ops()[next].first == q)
            f = pauli(s.ops()[next++].second);
        out = Eigen::kroneckerProduct(out, f).eval();
    }
    return out;
}

inline Mat dense(const j1j2::ObservableSum &obs) {
    const Eigen::Index dim = Eigen::Index{1} << obs.n_sites();
    Mat h = Mat::Zero(dim, dim);
    for (const auto &t : obs.terms())
        h += t.coeff * pauli_string(t.string);
    return h;
}

// A power gate P^theta with P an involution equals exp(i*pi*theta*(1 - P)/2).
inline Mat power_gate(const Mat &p, double theta) {
    const Mat id = Mat::Identity(p.rows(), p.cols());
    const Mat gen = cplx(0, kPi * theta / 2.0) * (id - p);
    return gen.exp();
}

inline Mat gate_local(j1j2::GateKind kind, double theta) {
    using j1j2::GateKind;
    using j1j2::Pauli;
    switch (kind) {
    case GateKind::Xp: return power_gate(pauli(Pauli::X), theta);
    case GateKind::Yp: return power_gate(pauli(Pauli::Y), theta);
    case GateKind::Zp: return power_gate(pauli(Pauli::Z), theta);
    case GateKind::XXp:
        return power_gate(Eigen::kroneckerProduct(pauli(Pauli::X), pauli(Pauli::X)).eval(), theta);
    case GateKind::YYp:
        return power_gate(Eigen::kroneckerProduct(pauli(Pauli::Y), pauli(Pauli::Y)).eval(), theta);
    case GateKind::ZZp:
        return power_gate(Eigen::kroneckerProduct(pauli(Pauli::Z), pauli(Pauli::Z)).eval(), theta);
    }
    return {};
}

// Embeds a 2x2 or 4x4 matrix acting on `targets` into the n-qubit space.
inline Mat embed(const Mat &local, const std::vector<std::size_t> &targets, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t k = targets.size();
    const auto bit = [n](std::size_t q) { return std::size_t{1} << (n - 1 - q); };
    Mat full = Mat::Zero(dim, dim);
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t col = 0;
        for (std::size_t t = 0; t < k; ++t)
            col = (col << 1) | ((x & bit(targets[t])) ? 1 : 0);
        for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
            std::size_t y = x;
            for (std::size_t t = 0; t < k; ++t) {
                const bool set = (row >> (k - 1 - t)) & 1;
                y = set ? (y | bit(targets[t])) : (y & ~bit(targets[t]));
            }
            full(y, x) += local(row, col);
        }
    }
    return full;
}

inline Mat circuit_matrix(const j1j2::ParamCircuit &c, const std::vector<double> &params) {
    const std::size_t n = c.n_qubits();
    Mat u = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto &g : c.gates()) {
        std::vector<std::size_t> t{g.targets[0]};
        if (j1j2::is_two_qubit(g.kind))
            t.push_back(g.targets[1]);
        u = (embed(gate_local(g.kind, params[g.param_index]), t, n) * u).eval();
    }
    return u;
}

inline Vec to_vec(const j1j2::StateVector &psi) {
    Vec v(static_cast<Eigen::Index>(psi.dim()));
    for (std::size_t i = 0; i < psi.dim(); ++i)
        v(static_cast<Eigen::Index>(i)) = psi[i];
    return v;
}

inline j1j2::StateVector from_vec(const Vec &v) {
    return j1j2::StateVector::from_amplitudes(std::vector<cplx>(v.data(), v.data() + v.size()));
}

inline j1j2::StateVector random_state(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<cplx> amps(std::size_t{1} << n);
    for (cplx &a : amps)
        a = {g(rng), g(rng)};
    auto psi = j1j2::StateVector::from_amplitudes(std::move(amps));
    psi.normalize();
    return psi;
}

inline double max_abs_diff(const Vec &a, const Vec &b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace oracle
