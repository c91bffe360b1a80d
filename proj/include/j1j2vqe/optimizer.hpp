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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace j1j2 {

using Objective = std::function<double(std::span<const double>)>;

enum class LocalStatus { Converged, BudgetExhausted };

std::string_view to_string(LocalStatus s) noexcept;

struct LocalResult {
    std::vector<double> x_best;
    double f_best = 0.0;
    std::size_t n_evals = 0;
    /// Trust-region and geometry steps taken after the initial simplex.
    std::size_t n_iterations = 0;
    LocalStatus status = LocalStatus::Converged;
};

struct CobylaOptions {
    double rho_begin = 1.0;
    double rho_end = 1e-6;
    std::size_t max_evals = 100000;
};

/// Derivative-free minimization with linear interpolation models on a
/// simplex of m + 1 points and a trust radius that shrinks from rho_begin to
/// rho_end. Unconstrained. Deterministic for a given objective and start.
///
/// Throws NonFiniteObjective if f returns NaN or infinity, InvalidConfig if
/// the radii are out of order or x0 is empty.
LocalResult cobyla_minimize(const Objective &f, std::span<const double> x0,
                            const CobylaOptions &opts = {});

struct HopConfig {
    std::size_t n_hops = 0;
    double step_size = 0.5;
    double temperature = 1.0;
    std::uint64_t seed = 0;
    /// Cap on evaluations over all local runs; 0 means no cap beyond the
    /// per-run max_evals.
    std::size_t max_total_evals = 0;
};

struct HopEvent {
    std::size_t hop;       // 1-based
    double f_trial;        // local minimum found after the displacement
    bool accepted;
    double f_accepted;     // objective of the accepted point after this hop
};

/// Metropolis basin hopping around cobyla_minimize. Each hop displaces every
/// coordinate of the accepted point by U(-step, step), re-minimizes, and
/// accepts when lower or with probability exp(-(f_new - f_acc) / T). Returns
/// the best point seen.
LocalResult basin_hopping(const Objective &f, std::span<const double> x0,
                          const CobylaOptions &local, const HopConfig &hop,
                          const std::function<void(const HopEvent &)> &on_hop = {});

} // namespace j1j2
