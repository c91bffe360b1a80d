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
#include "j1j2vqe/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "j1j2vqe/error.hpp"
#include "bits.hpp"

namespace j1j2 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

cplx phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

void check_qubit(const StateVector &psi, std::size_t q) {
    if (q >= psi.n_qubits())
        throw Error(ErrorCode::IndexOutOfRange,
                    "qubit " + std::to_string(q) + " outside register of " +
                        std::to_string(psi.n_qubits()));
}

template <class Kernel>
void for_each_pair(StateVector &psi, std::size_t q, Kernel &&kernel) {
    const std::uint64_t m = psi.mask(q);
    const std::uint64_t dim = psi.dim();
    cplx *a = psi.amplitudes().data();
    for (std::uint64_t base = 0; base < dim; base += 2 * m)
        for (std::uint64_t k = base; k < base + m; ++k)
            kernel(a[k], a[k | m]);
}

// kernel(a00, a01, a10, a11) with the first bit belonging to qubit i.
template <class Kernel>
void for_each_quad(StateVector &psi, std::size_t i, std::size_t j, Kernel &&kernel) {
    const std::uint64_t mi = psi.mask(i);
    const std::uint64_t mj = psi.mask(j);
    cplx *a = psi.amplitudes().data();
    detail::for_each_clear_pair(psi.dim(), mi, mj, [&](std::uint64_t b) {
        kernel(a[b], a[b | mj], a[b | mi], a[b | mi | mj]);
    });
}

void check_pair(const StateVector &psi, std::size_t i, std::size_t j) {
    check_qubit(psi, i);
    check_qubit(psi, j);
    if (i == j)
        throw Error(ErrorCode::EqualIndices, "two-qubit gate on a single qubit");
}

} // namespace

StateVector::StateVector(std::size_t n_qubits, std::size_t cap) : n_qubits_(n_qubits) {
    if (n_qubits == 0)
        throw Error(ErrorCode::InvalidDimensions, "state needs at least one qubit");
    if (n_qubits > cap || n_qubits > 62)
        throw Error(ErrorCode::CapExceeded, std::to_string(n_qubits) +
                                                " qubits exceed the cap of " +
                                                std::to_string(cap));
    amps_.assign(std::size_t{1} << n_qubits, cplx{});
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amps) {
    if (amps.size() < 2 || !std::has_single_bit(amps.size()))
        throw Error(ErrorCode::DimensionMismatch, "amplitude count must be a power of two >= 2");
    StateVector s;
    s.n_qubits_ = static_cast<std::size_t>(std::countr_zero(amps.size()));
    s.amps_ = std::move(amps);
    return s;
}

double StateVector::norm() const noexcept {
    double acc = 0.0;
    for (const cplx &a : amps_)
        acc += std::norm(a);
    return std::sqrt(acc);
}

void StateVector::reset() noexcept {
    std::fill(amps_.begin(), amps_.end(), cplx{});
    amps_[0] = 1.0;
}

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0)
        throw Error(ErrorCode::NonNormalizedState, "cannot normalize the zero vector");
    for (cplx &a : amps_)
        a /= n;
}

StateVector init_zero_state(std::size_t n, std::size_t cap) { return StateVector(n, cap); }

std::string_view to_string(GateKind k) noexcept {
    switch (k) {
    case GateKind::Xp: return "X";
    case GateKind::Yp: return "Y";
    case GateKind::Zp: return "Z";
    case GateKind::XXp: return "XX";
    case GateKind::YYp: return "YY";
    case GateKind::ZZp: return "ZZ";
    }
    return "?";
}

std::array<cplx, 4> single_qubit_matrix(GateKind kind, double theta) {
    const double half = kPi * theta / 2.0;
    const cplx g = phase(half);
    const double c = std::cos(half);
    const double s = std::sin(half);
    switch (kind) {
    case GateKind::Xp: return {g * c, -kI * g * s, -kI * g * s, g * c};
    case GateKind::Yp: return {g * c, -g * s, g * s, g * c};
    case GateKind::Zp: return {1.0, 0.0, 0.0, phase(kPi * theta)};
    default: break;
    }
    throw Error(ErrorCode::InvalidConfig, "not a single-qubit gate kind");
}

std::array<cplx, 16> two_qubit_matrix(GateKind kind, double theta) {
    const double half = kPi * theta / 2.0;
    const cplx f = phase(half);
    const cplx c = f * std::cos(half);
    const cplx s = -kI * f * std::sin(half);
    const cplx w = phase(kPi * theta);
    switch (kind) {
    case GateKind::XXp:
        return {c, 0, 0, s, 0, c, s, 0, 0, s, c, 0, s, 0, 0, c};
    case GateKind::YYp:
        return {c, 0, 0, -s, 0, c, s, 0, 0, s, c, 0, -s, 0, 0, c};
    case GateKind::ZZp:
        return {1, 0, 0, 0, 0, w, 0, 0, 0, 0, w, 0, 0, 0, 0, 1};
    default: break;
    }
    throw Error(ErrorCode::InvalidConfig, "not a two-qubit gate kind");
}

void apply_single(StateVector &psi, GateKind kind, std::size_t q, double theta) {
    check_qubit(psi, q);
    if (kind == GateKind::Zp) {
        const cplx w = phase(kPi * theta);
        for_each_pair(psi, q, [w](cplx &, cplx &a1) { a1 *= w; });
        return;
    }
    const auto u = single_qubit_matrix(kind, theta);
    for_each_pair(psi, q, [&u](cplx &a0, cplx &a1) {
        const cplx b0 = a0;
        const cplx b1 = a1;
        a0 = u[0] * b0 + u[1] * b1;
        a1 = u[2] * b0 + u[3] * b1;
    });
}

void apply_two(StateVector &psi, GateKind kind, std::size_t i, std::size_t j, double theta) {
    check_pair(psi, i, j);
    const double half = kPi * theta / 2.0;
    const cplx f = phase(half);
    const cplx c = f * std::cos(half);
    const cplx s = -kI * f * std::sin(half);
    switch (kind) {
    case GateKind::XXp:
        for_each_quad(psi, i, j, [c, s](cplx &a00, cplx &a01, cplx &a10, cplx &a11) {
            const cplx b00 = a00, b01 = a01, b10 = a10, b11 = a11;
            a00 = c * b00 + s * b11;
            a11 = s * b00 + c * b11;
            a01 = c * b01 + s * b10;
            a10 = s * b01 + c * b10;
        });
        return;
    case GateKind::YYp:
        for_each_quad(psi, i, j, [c, s](cplx &a00, cplx &a01, cplx &a10, cplx &a11) {
            const cplx b00 = a00, b01 = a01, b10 = a10, b11 = a11;
            a00 = c * b00 - s * b11;
            a11 = -s * b00 + c * b11;
            a01 = c * b01 + s * b10;
            a10 = s * b01 + c * b10;
        });
        return;
    case GateKind::ZZp: {
        const cplx w = phase(kPi * theta);
        for_each_quad(psi, i, j, [w](cplx &, cplx &a01, cplx &a10, cplx &) {
            a01 *= w;
            a10 *= w;
        });
        return;
    }
    default: break;
    }
    throw Error(ErrorCode::InvalidConfig, "not a two-qubit gate kind");
}

void apply_xxyyzz(StateVector &psi, std::size_t i, std::size_t j, double theta) {
    check_pair(psi, i, j);
    const double half = kPi * theta / 2.0;
    const cplx f = phase(half);
    const cplx c = f * std::cos(half);
    const cplx s = -kI * f * std::sin(half);
    const cplx w = phase(kPi * theta);
    // XX and YY act on span{00,11} as c^2 - s^2 times identity; on span{01,10}
    // both act as [[c, s], [s, c]] and ZZ contributes w.
    const cplx outer = c * c - s * s;
    const cplx diag = w * (c * c + s * s);
    const cplx off = w * (2.0 * c * s);
    for_each_quad(psi, i, j, [=](cplx &a00, cplx &a01, cplx &a10, cplx &a11) {
        a00 *= outer;
        a11 *= outer;
        const cplx b01 = a01, b10 = a10;
        a01 = diag * b01 + off * b10;
        a10 = off * b01 + diag * b10;
    });
}

ParamCircuit::ParamCircuit(std::size_t n_qubits, std::size_t n_params)
    : n_qubits_(n_qubits), n_params_(n_params) {
    if (n_qubits == 0)
        throw Error(ErrorCode::InvalidDimensions, "circuit needs at least one qubit");
}

void ParamCircuit::add_single(GateKind kind, std::size_t q, std::size_t param_index) {
    if (is_two_qubit(kind))
        throw Error(ErrorCode::InvalidConfig, "add_single given a two-qubit kind");
    if (q >= n_qubits_)
        throw Error(ErrorCode::IndexOutOfRange, "gate target outside the register");
    if (param_index >= n_params_)
        throw Error(ErrorCode::IndexOutOfRange, "parameter index outside the parameter vector");
    gates_.push_back({kind, {q, q}, param_index});
}

void ParamCircuit::add_two(GateKind kind, std::size_t i, std::size_t j, std::size_t param_index) {
    if (!is_two_qubit(kind))
        throw Error(ErrorCode::InvalidConfig, "add_two given a single-qubit kind");
    if (i >= n_qubits_ || j >= n_qubits_)
        throw Error(ErrorCode::IndexOutOfRange, "gate target outside the register");
    if (i == j)
        throw Error(ErrorCode::EqualIndices, "two-qubit gate on a single qubit");
    if (param_index >= n_params_)
        throw Error(ErrorCode::IndexOutOfRange, "parameter index outside the parameter vector");
    gates_.push_back({kind, {i, j}, param_index});
}

void apply_circuit(StateVector &psi, const ParamCircuit &circ, std::span<const double> params) {
    if (params.size() != circ.n_params())
        throw Error(ErrorCode::ParameterLengthMismatch,
                    "expected " + std::to_string(circ.n_params()) + " parameters, got " +
                        std::to_string(params.size()));
    if (psi.n_qubits() != circ.n_qubits())
        throw Error(ErrorCode::DimensionMismatch, "state and circuit register sizes differ");

    const auto &gates = circ.gates();
    for (std::size_t k = 0; k < gates.size(); ++k) {
        const GateOp &g = gates[k];
        const double theta = params[g.param_index];
        if (!is_two_qubit(g.kind)) {
            apply_single(psi, g.kind, g.targets[0], theta);
            continue;
        }
        if (g.kind == GateKind::XXp && k + 2 < gates.size()) {
            const GateOp &gy = gates[k + 1];
            const GateOp &gz = gates[k + 2];
            if (gy.kind == GateKind::YYp && gz.kind == GateKind::ZZp &&
                gy.targets == g.targets && gz.targets == g.targets &&
                gy.param_index == g.param_index && gz.param_index == g.param_index) {
                apply_xxyyzz(psi, g.targets[0], g.targets[1], theta);
                k += 2;
                continue;
            }
        }
        apply_two(psi, g.kind, g.targets[0], g.targets[1], theta);
    }
}

StateVector run_circuit(const ParamCircuit &circ, std::span<const double> params, std::size_t cap) {
    StateVector psi(circ.n_qubits(), cap);
    apply_circuit(psi, circ, params);
    return psi;
}

} // namespace j1j2
