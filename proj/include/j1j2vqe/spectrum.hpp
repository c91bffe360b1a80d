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
#include <cstdint>
#include <optional>
#include <string_view>

#include "j1j2vqe/pauli.hpp"
#include "j1j2vqe/simulator.hpp"

namespace j1j2 {

enum class SpectrumMethod { Auto, Dense, IterativeKrylov };

std::string_view to_string(SpectrumMethod m) noexcept;

struct SpectrumOptions {
    SpectrumMethod method = SpectrumMethod::Auto;
    /// Auto picks Dense up to this many qubits.
    std::size_t dense_max_qubits = 10;
    std::size_t iterative_max_qubits = 20;
    /// Required Ritz residual ||H x - e x|| (scaled by max(1, |e|)).
    double residual_tol = 1e-8;
    std::size_t max_matvecs = 20000;
    /// Bytes the Krylov basis may occupy; bounds the restart length.
    std::size_t basis_memory_bytes = std::size_t{512} << 20;
    std::uint64_t seed = 0x5eed;
};

struct SpectrumResult {
    double e0 = 0.0;
    double e1 = 0.0;
    std::optional<StateVector> ground_vec;
    SpectrumMethod method = SpectrumMethod::Dense;
    std::size_t matvecs = 0;
};

/// Two lowest eigenvalues of the 2^n matrix of `h`, counting multiplicity
/// (a degenerate ground level gives e0 == e1).
SpectrumResult lowest_two(const ObservableSum &h, bool want_vectors,
                          const SpectrumOptions &opts = {});

/// (e_bar - e0) / (e1 - e0). Throws ZeroGap when e1 - e0 < 1e-12.
double gap_metric(double e_bar, double e0, double e1);

} // namespace j1j2
