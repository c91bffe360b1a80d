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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "j1j2vqe/lattice.hpp"
#include "j1j2vqe/simulator.hpp"

namespace j1j2 {

enum class Pauli : std::uint8_t { X, Y, Z };

char to_char(Pauli p) noexcept;

/// Sparse Pauli string: (site, letter) pairs sorted by site, identity elsewhere.
class PauliString {
  public:
    explicit PauliString(std::size_t n_sites, std::vector<std::pair<std::size_t, Pauli>> ops = {});

    [[nodiscard]] std::size_t n_sites() const noexcept { return n_sites_; }
    [[nodiscard]] const std::vector<std::pair<std::size_t, Pauli>> &ops() const noexcept {
        return ops_;
    }
    [[nodiscard]] bool is_identity() const noexcept { return ops_.empty(); }

    /// e.g. "X0 X1" or "I".
    [[nodiscard]] std::string label() const;

    friend bool operator==(const PauliString &, const PauliString &) = default;
    friend auto operator<=>(const PauliString &, const PauliString &) = default;

  private:
    std::size_t n_sites_;
    std::vector<std::pair<std::size_t, Pauli>> ops_;
};

struct PauliTerm {
    double coeff;
    PauliString string;
};

/// Real-weighted sum of Pauli strings; identical strings are merged on insert.
class ObservableSum {
  public:
    explicit ObservableSum(std::size_t n_sites);

    void add(double coeff, const PauliString &s);
    void add(const ObservableSum &other, double scale = 1.0);
    /// Removes terms with |coeff| <= tol.
    void prune(double tol = 0.0);

    [[nodiscard]] std::size_t n_sites() const noexcept { return n_sites_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const noexcept { return terms_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

  private:
    std::size_t n_sites_;
    std::vector<PauliTerm> terms_;
};

/// coeff * (X_i X_j + Y_i Y_j + Z_i Z_j).
ObservableSum heisenberg_bond(std::size_t i, std::size_t j, double coeff, std::size_t n);

/// H = -j1 * sum_nn S_i.S_j - j2 * sum_nnn S_i.S_j with bare Pauli spins.
/// Zero-coefficient bonds are dropped.
ObservableSum build_hamiltonian(const Lattice &lat, double j1, double j2);

/// Observable compiled for repeated evaluation: XX/YY/ZZ terms on a common
/// pair share one pass over the amplitudes; other terms use bit masks.
class CompiledObservable {
  public:
    explicit CompiledObservable(const ObservableSum &obs);

    [[nodiscard]] std::size_t n_sites() const noexcept { return n_sites_; }

    /// Complex accumulation of sum_k c_k <psi|P_k|psi>; no normalization check.
    [[nodiscard]] std::complex<double> expectation_raw(const StateVector &psi) const;

    /// out = H * in. `out` is overwritten.
    void apply(std::span<const cplx> in, std::span<cplx> out) const;

  private:
    struct PairTerm {
        std::uint64_t mi, mj;
        double cxx, cyy, czz;
    };
    struct MaskTerm {
        std::uint64_t xmask, zmask;
        cplx factor; // coeff * i^(number of Y)
    };

    std::size_t n_sites_;
    std::vector<PairTerm> pairs_;
    std::vector<MaskTerm> masked_;
};

/// <psi|obs|psi>. Throws DimensionMismatch or NonNormalizedState (tolerance 1e-10).
double expectation(const ObservableSum &obs, const StateVector &psi);

/// As above with the imaginary residue kept, for diagnostics.
std::complex<double> expectation_complex(const ObservableSum &obs, const StateVector &psi);

} // namespace j1j2
