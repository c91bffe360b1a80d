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
#include <span>
#include <string>
#include <vector>

#include "j1j2vqe/ansatz.hpp"
#include "j1j2vqe/lattice.hpp"
#include "j1j2vqe/optimizer.hpp"
#include "j1j2vqe/pauli.hpp"
#include "j1j2vqe/simulator.hpp"

namespace j1j2 {

struct OptimizerSettings {
    /// cobyla.max_evals is the evaluation budget of one run (all hops and,
    /// for two-stage runs, both stages included).
    CobylaOptions cobyla{};
    std::size_t n_hops = 0;
    double step_size = 0.5;
    double temperature = 1.0;

    friend bool operator==(const OptimizerSettings &a, const OptimizerSettings &b) {
        return a.cobyla.rho_begin == b.cobyla.rho_begin && a.cobyla.rho_end == b.cobyla.rho_end &&
               a.cobyla.max_evals == b.cobyla.max_evals && a.n_hops == b.n_hops &&
               a.step_size == b.step_size && a.temperature == b.temperature;
    }
};

struct TwoStageSettings {
    std::size_t pre_layers = 1;
    double epsilon = kDefaultExtendEpsilon;
    /// Share of the evaluation budget spent on the shallow stage.
    double stage1_fraction = 0.3;

    friend bool operator==(const TwoStageSettings &, const TwoStageSettings &) = default;
};

struct VqeConfig {
    std::string name = "run";
    std::size_t rows = 2;
    std::size_t cols = 2;
    Boundary boundary = Boundary::Open;
    double j1 = -1.0;
    double j2 = -0.5;
    std::size_t n_layers = 1;
    bool include_diagonals = false;
    OptimizerSettings optimizer{};
    std::uint64_t seed = 0;
    /// Independent restarts with seeds seed, seed + 1, ...; the best is kept.
    std::size_t restarts = 1;
    std::optional<TwoStageSettings> two_stage;

    [[nodiscard]] std::size_t n_qubits() const noexcept { return rows * cols; }
    [[nodiscard]] AnsatzSpec ansatz_spec() const;

    /// Throws InvalidConfig naming the offending field.
    void validate() const;

    friend bool operator==(const VqeConfig &, const VqeConfig &) = default;
};

struct TracePoint {
    std::size_t eval;
    double energy;
    int stage;

    friend bool operator==(const TracePoint &, const TracePoint &) = default;
};

struct StageSummary {
    std::size_t n_layers = 0;
    std::size_t n_params = 0;
    std::size_t n_evals = 0;
    double start_energy = 0.0;
    double best_energy = 0.0;

    friend bool operator==(const StageSummary &, const StageSummary &) = default;
};

struct VqeRunRecord {
    VqeConfig config;
    std::vector<TracePoint> trace;
    std::vector<StageSummary> stages;
    std::vector<double> best_params;
    double e_bar = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
    double metric = 0.0;
    std::size_t n_evals = 0;
    std::size_t n_iterations = 0;
    LocalStatus status = LocalStatus::Converged;
    std::uint64_t seed_used = 0;
    double wall_time = 0.0;

    /// Equality ignoring wall_time.
    [[nodiscard]] bool same_result(const VqeRunRecord &other) const;
};

/// <H> for the ansatz state, reusing one scratch register across calls.
class EnergyObjective {
  public:
    EnergyObjective(ParamCircuit circuit, const ObservableSum &h);

    double operator()(std::span<const double> params);
    [[nodiscard]] const StateVector &last_state() const noexcept { return psi_; }
    [[nodiscard]] const ParamCircuit &circuit() const noexcept { return circuit_; }

  private:
    ParamCircuit circuit_;
    CompiledObservable h_;
    StateVector psi_;
};

struct ExactLevels {
    double e0;
    double e1;
};

/// Exact levels for the config's lattice and couplings.
ExactLevels exact_levels(const VqeConfig &cfg);

/// Random start in [-pi, pi]^m, optimization, and bookkeeping. When the
/// config has two_stage set this forwards to two_stage_run. Pass `exact` to
/// reuse precomputed levels.
VqeRunRecord vqe_run(const VqeConfig &cfg, std::optional<ExactLevels> exact = std::nullopt);

/// Shallow run at pre_layers, then the deep ansatz warm-started by
/// extend_ansatz. Trace points carry stage 1 or 2.
VqeRunRecord two_stage_run(const VqeConfig &cfg, std::optional<ExactLevels> exact = std::nullopt);

/// Ansatz state for a parameter vector of the config's circuit.
StateVector prepare_state(const VqeConfig &cfg, std::span<const double> params);

} // namespace j1j2
