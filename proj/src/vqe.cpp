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
#include "j1j2vqe/vqe.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "j1j2vqe/error.hpp"
#include "j1j2vqe/spectrum.hpp"

namespace j1j2 {

namespace {

[[noreturn]] void bad(const std::string &field, const std::string &why) {
    throw Error(ErrorCode::InvalidConfig, field + ": " + why);
}

} // namespace

AnsatzSpec VqeConfig::ansatz_spec() const {
    return {build_lattice(rows, cols, boundary), n_layers, include_diagonals};
}

void VqeConfig::validate() const {
    if (rows == 0)
        bad("rows", "must be >= 1");
    if (cols == 0)
        bad("cols", "must be >= 1");
    if (boundary == Boundary::Periodic && (rows < 2 || cols < 2))
        bad("boundary", "periodic lattices need rows >= 2 and cols >= 2");
    if (n_qubits() > kDefaultQubitCap)
        bad("rows", "lattice of " + std::to_string(n_qubits()) + " sites exceeds the " +
                        std::to_string(kDefaultQubitCap) + "-qubit cap");
    if (n_layers == 0)
        bad("layers", "must be >= 1");
    if (!std::isfinite(j1) || !std::isfinite(j2))
        bad("couplings", "must be finite");
    if (!(optimizer.cobyla.rho_begin > optimizer.cobyla.rho_end) ||
        !(optimizer.cobyla.rho_end > 0.0))
        bad("optimizer.rho_begin", "need rho_begin > rho_end > 0");
    if (!(optimizer.step_size > 0.0))
        bad("optimizer.step_size", "must be > 0");
    if (!(optimizer.temperature >= 0.0))
        bad("optimizer.temperature", "must be >= 0");
    if (restarts == 0)
        bad("restarts", "must be >= 1");
    if (two_stage) {
        if (two_stage->pre_layers == 0)
            bad("two_stage.pre_layers", "must be >= 1");
        if (two_stage->pre_layers >= n_layers)
            bad("two_stage.pre_layers", "must be smaller than layers");
        if (!(two_stage->epsilon > 0.0))
            bad("two_stage.epsilon", "must be > 0");
        if (!(two_stage->stage1_fraction > 0.0 && two_stage->stage1_fraction < 1.0))
            bad("two_stage.stage1_fraction", "must lie in (0, 1)");
    }
}

bool VqeRunRecord::same_result(const VqeRunRecord &o) const {
    return config == o.config && trace == o.trace && stages == o.stages &&
           best_params == o.best_params && e_bar == o.e_bar && e0 == o.e0 && e1 == o.e1 &&
           metric == o.metric && n_evals == o.n_evals && n_iterations == o.n_iterations &&
           status == o.status && seed_used == o.seed_used;
}

EnergyObjective::EnergyObjective(ParamCircuit circuit, const ObservableSum &h)
    : circuit_(std::move(circuit)), h_(h), psi_(circuit_.n_qubits()) {
    if (h.n_sites() != circuit_.n_qubits())
        throw Error(ErrorCode::DimensionMismatch, "Hamiltonian and circuit register sizes differ");
}

double EnergyObjective::operator()(std::span<const double> params) {
    psi_.reset();
    apply_circuit(psi_, circuit_, params);
    return h_.expectation_raw(psi_).real();
}

ExactLevels exact_levels(const VqeConfig &cfg) {
    const Lattice lat = build_lattice(cfg.rows, cfg.cols, cfg.boundary);
    const SpectrumResult s = lowest_two(build_hamiltonian(lat, cfg.j1, cfg.j2), false);
    return {s.e0, s.e1};
}

StateVector prepare_state(const VqeConfig &cfg, std::span<const double> params) {
    return run_circuit(build_ansatz(cfg.ansatz_spec()), params);
}

namespace {

struct StageOutcome {
    LocalResult result;
    double start_energy;
};

// Minimizes the ansatz energy from x0 with `budget` evaluations, appending
// every evaluation to `trace`.
StageOutcome optimize_stage(EnergyObjective &energy, std::span<const double> x0,
                            std::size_t budget, const OptimizerSettings &opt, std::uint64_t seed,
                            int stage, std::vector<TracePoint> &trace) {
    std::optional<double> start;
    const Objective f = [&](std::span<const double> theta) {
        const double e = energy(theta);
        if (!std::isfinite(e))
            throw Error(ErrorCode::NonFiniteObjective,
                        "energy evaluation " + std::to_string(trace.size()) + " returned " +
                            std::to_string(e));
        if (!start)
            start = e;
        trace.push_back({trace.size(), e, stage});
        return e;
    };

    StageOutcome out{};
    if (budget == 0) {
        const double e = f(x0);
        out.result.x_best.assign(x0.begin(), x0.end());
        out.result.f_best = e;
        out.result.n_evals = 1;
        out.result.status = LocalStatus::BudgetExhausted;
        out.start_energy = e;
        return out;
    }

    CobylaOptions local = opt.cobyla;
    local.max_evals = budget;
    if (opt.n_hops == 0) {
        out.result = cobyla_minimize(f, x0, local);
    } else {
        // Every local descent gets an equal share so that the hops run even
        // when COBYLA would not converge on its own.
        local.max_evals = std::max<std::size_t>(1, budget / (opt.n_hops + 1));
        const HopConfig hop{opt.n_hops, opt.step_size, opt.temperature,
                            seed ^ 0x9e3779b97f4a7c15ULL, budget};
        out.result = basin_hopping(f, x0, local, hop);
    }
    out.start_energy = start.value_or(out.result.f_best);
    return out;
}

std::vector<double> random_start(std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::vector<double> x(m);
    for (double &v : x)
        v = angle(rng);
    return x;
}

void finish(VqeRunRecord &rec, const ExactLevels &levels) {
    rec.e0 = levels.e0;
    rec.e1 = levels.e1;
    rec.metric = gap_metric(rec.e_bar, rec.e0, rec.e1);
}

VqeRunRecord single_stage(const VqeConfig &cfg, const ObservableSum &h, std::uint64_t seed) {
    const AnsatzSpec spec = cfg.ansatz_spec();
    EnergyObjective energy(build_ansatz(spec), h);
    const std::vector<double> x0 = random_start(spec.n_params(), seed);

    VqeRunRecord rec;
    rec.config = cfg;
    rec.seed_used = seed;
    const auto out = optimize_stage(energy, x0, cfg.optimizer.cobyla.max_evals, cfg.optimizer,
                                    seed, 1, rec.trace);
    rec.best_params = out.result.x_best;
    rec.e_bar = out.result.f_best;
    rec.n_evals = out.result.n_evals;
    rec.n_iterations = out.result.n_iterations;
    rec.status = out.result.status;
    rec.stages.push_back({spec.n_layers, spec.n_params(), out.result.n_evals, out.start_energy,
                          out.result.f_best});
    return rec;
}

VqeRunRecord two_stage_once(const VqeConfig &cfg, const ObservableSum &h, std::uint64_t seed) {
    const TwoStageSettings &ts = *cfg.two_stage;
    const std::size_t budget = cfg.optimizer.cobyla.max_evals;
    const auto budget1 = static_cast<std::size_t>(std::floor(ts.stage1_fraction * double(budget)));

    VqeConfig shallow = cfg;
    shallow.two_stage.reset();
    shallow.n_layers = ts.pre_layers;
    shallow.optimizer.cobyla.max_evals = budget1;
    VqeRunRecord rec = single_stage(shallow, h, seed);
    rec.config = cfg;

    const AnsatzSpec spec1 = shallow.ansatz_spec();
    auto [circuit, x0] =
        extend_ansatz(spec1, rec.best_params, cfg.n_layers - ts.pre_layers, ts.epsilon);
    EnergyObjective energy(std::move(circuit), h);
    const std::size_t budget2 = budget > rec.n_evals ? budget - rec.n_evals : 0;
    const auto out = optimize_stage(energy, x0, budget2, cfg.optimizer, seed + 0x5151, 2, rec.trace);

    rec.best_params = out.result.x_best;
    rec.e_bar = out.result.f_best;
    rec.n_evals += out.result.n_evals;
    rec.n_iterations += out.result.n_iterations;
    rec.status = out.result.status;
    rec.stages.push_back({cfg.n_layers, x0.size(), out.result.n_evals, out.start_energy,
                          out.result.f_best});
    return rec;
}

template <class RunOnce>
VqeRunRecord best_of_restarts(const VqeConfig &cfg, std::optional<ExactLevels> exact,
                              RunOnce &&run_once) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const Lattice lat = build_lattice(cfg.rows, cfg.cols, cfg.boundary);
    const ObservableSum h = build_hamiltonian(lat, cfg.j1, cfg.j2);
    const ExactLevels levels = exact ? *exact : exact_levels(cfg);

    std::optional<VqeRunRecord> best;
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        VqeRunRecord rec = run_once(cfg, h, cfg.seed + r);
        if (!best || rec.e_bar < best->e_bar)
            best = std::move(rec);
    }
    finish(*best, levels);
    best->wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return std::move(*best);
}

} // namespace

VqeRunRecord vqe_run(const VqeConfig &cfg, std::optional<ExactLevels> exact) {
    if (cfg.two_stage)
        return two_stage_run(cfg, exact);
    return best_of_restarts(cfg, exact, single_stage);
}

VqeRunRecord two_stage_run(const VqeConfig &cfg, std::optional<ExactLevels> exact) {
    if (!cfg.two_stage)
        throw Error(ErrorCode::InvalidConfig, "two_stage: settings missing");
    return best_of_restarts(cfg, exact, two_stage_once);
}

} // namespace j1j2
