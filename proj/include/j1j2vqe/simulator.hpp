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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace j1j2 {

using cplx = std::complex<double>;

inline constexpr std::size_t kDefaultQubitCap = 26;

/// Dense 2^n amplitude vector.
///
/// Qubit q is stored at bit (n - 1 - q) of the amplitude index, so the basis
/// label |q0 q1 ... q_{n-1}> reads as a binary number with qubit 0 first and
/// dense operators compose as kron(M_0, M_1, ..., M_{n-1}).
class StateVector {
  public:
    /// |0...0>. Throws CapExceeded when n > cap, InvalidDimensions when n == 0.
    explicit StateVector(std::size_t n_qubits, std::size_t cap = kDefaultQubitCap);

    /// Takes ownership of `amps`; size must be a power of two.
    static StateVector from_amplitudes(std::vector<cplx> amps);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<cplx> amplitudes() noexcept { return amps_; }
    [[nodiscard]] const cplx &operator[](std::size_t i) const noexcept { return amps_[i]; }
    [[nodiscard]] cplx &operator[](std::size_t i) noexcept { return amps_[i]; }

    [[nodiscard]] double norm() const noexcept;
    /// Back to |0...0> without reallocating.
    void reset() noexcept;
    void normalize();

    /// Index mask of qubit q.
    [[nodiscard]] std::uint64_t mask(std::size_t q) const noexcept {
        return std::uint64_t{1} << (n_qubits_ - 1 - q);
    }

  private:
    StateVector() = default;
    std::size_t n_qubits_ = 0;
    std::vector<cplx> amps_;
};

StateVector init_zero_state(std::size_t n, std::size_t cap = kDefaultQubitCap);

enum class GateKind : std::uint8_t { Xp, Yp, Zp, XXp, YYp, ZZp };

std::string_view to_string(GateKind k) noexcept;
[[nodiscard]] constexpr bool is_two_qubit(GateKind k) noexcept {
    return k == GateKind::XXp || k == GateKind::YYp || k == GateKind::ZZp;
}

/// Row-major 2x2 matrix of X^t, Y^t or Z^t (exponent convention, period 2).
std::array<cplx, 4> single_qubit_matrix(GateKind kind, double theta);
/// Row-major 4x4 matrix of (XX)^t, (YY)^t or (ZZ)^t in the |q_i q_j> basis.
std::array<cplx, 16> two_qubit_matrix(GateKind kind, double theta);

void apply_single(StateVector &psi, GateKind kind, std::size_t q, double theta);
void apply_two(StateVector &psi, GateKind kind, std::size_t i, std::size_t j, double theta);

/// XX^t YY^t ZZ^t on one pair as a single pass over the amplitudes.
void apply_xxyyzz(StateVector &psi, std::size_t i, std::size_t j, double theta);

struct GateOp {
    GateKind kind;
    std::array<std::size_t, 2> targets; // targets[1] unused for single-qubit kinds
    std::size_t param_index;

    friend bool operator==(const GateOp &, const GateOp &) = default;
};

/// Ordered gate list over a shared parameter vector.
class ParamCircuit {
  public:
    ParamCircuit(std::size_t n_qubits, std::size_t n_params);

    void add_single(GateKind kind, std::size_t q, std::size_t param_index);
    void add_two(GateKind kind, std::size_t i, std::size_t j, std::size_t param_index);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t n_params() const noexcept { return n_params_; }
    [[nodiscard]] const std::vector<GateOp> &gates() const noexcept { return gates_; }

    friend bool operator==(const ParamCircuit &, const ParamCircuit &) = default;

  private:
    std::size_t n_qubits_;
    std::size_t n_params_;
    std::vector<GateOp> gates_;
};

/// Applies the circuit to |0...0>. Consecutive XX, YY, ZZ gates on one pair
/// sharing a parameter run as a fused kernel.
StateVector run_circuit(const ParamCircuit &circ, std::span<const double> params,
                        std::size_t cap = kDefaultQubitCap);

/// Applies the circuit to an existing state in place.
void apply_circuit(StateVector &psi, const ParamCircuit &circ, std::span<const double> params);

} // namespace j1j2
