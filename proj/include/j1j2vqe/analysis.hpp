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
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "j1j2vqe/pauli.hpp"
#include "j1j2vqe/simulator.hpp"
#include "j1j2vqe/vqe.hpp"

namespace j1j2 {

struct CorrelationMatrix {
    Eigen::MatrixXd values;
    Pauli axis;
};

/// <s^a_i s^a_j> for all pairs; the diagonal is exactly 1.
CorrelationMatrix correlation_matrix(const StateVector &psi, Pauli axis);

struct ScanRow {
    std::size_t n_qubits;
    std::size_t min_layers;
    std::size_t min_two_qubit_gates;
    std::size_t min_params;

    friend bool operator==(const ScanRow &, const ScanRow &) = default;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::vector<std::string> warnings;
};

inline constexpr double kConvergedMetric = 0.5;

/// Per lattice size, the fewest layers whose best run has metric <= 0.5
/// (energy in the lower half of the gap). Sizes without such a run are
/// skipped and reported in `warnings`. Throws EmptyInput on no records.
ScanResult min_resources_scan(std::span<const VqeRunRecord> records,
                              double threshold = kConvergedMetric);

struct PowerLawFit {
    double prefactor;
    double exponent;
    /// RMS misfit of ln y.
    double residual;
};

/// Least-squares line through (ln n, ln y): y ~ prefactor * n^exponent.
PowerLawFit power_law_fit(std::span<const std::pair<double, double>> points);

/// prefactor * n^exponent.
double extrapolate(const PowerLawFit &fit, double n);

} // namespace j1j2
