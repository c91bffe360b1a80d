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
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "j1j2vqe/ansatz.hpp"
#include "j1j2vqe/error.hpp"
#include "j1j2vqe/experiment.hpp"
#include "j1j2vqe/spectrum.hpp"

namespace {

using namespace j1j2;

struct LatticeArgs {
    std::size_t rows = 2;
    std::size_t cols = 2;
    std::string boundary = "open";

    void attach(CLI::App *app) {
        app->add_option("--rows", rows, "Lattice rows")->check(CLI::PositiveNumber);
        app->add_option("--cols", cols, "Lattice columns")->check(CLI::PositiveNumber);
        app->add_option("--boundary", boundary, "open or periodic")
            ->check(CLI::IsMember({"open", "periodic"}));
    }
    [[nodiscard]] Lattice build() const {
        return build_lattice(rows, cols, boundary_from_string(boundary));
    }
};

int cmd_run(const std::string &config_path, const std::string &out_dir,
            const std::optional<std::uint64_t> &seed, const std::optional<std::size_t> &workers,
            const std::optional<std::size_t> &budget) {
    ExperimentConfig cfg = load_experiment(config_path);
    if (!out_dir.empty())
        cfg.output_dir = out_dir;
    if (seed) {
        cfg.seed = *seed;
        for (std::size_t k = 0; k < cfg.runs.size(); ++k)
            cfg.runs[k].seed = *seed + k;
    }
    if (const char *env = std::getenv("J1J2_WORKERS"); env && *env) {
        char *end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (*end != '\0' || v == 0)
            throw Error(ErrorCode::InvalidConfig, "J1J2_WORKERS: expected a positive integer");
        cfg.workers = v;
    }
    if (workers)
        cfg.workers = *workers;
    if (budget)
        for (VqeConfig &r : cfg.runs)
            r.optimizer.cobyla.max_evals = *budget;

    const ExperimentOutcome out = run_experiment(cfg, std::cerr);
    std::cout << summary_csv(out.records);
    for (const std::string &f : out.failures)
        std::cerr << "error: " << f << "\n";
    return out.exit_status();
}

int cmd_spectrum(const LatticeArgs &lat, double j1, double j2, const std::string &method) {
    SpectrumOptions opts;
    if (method == "dense")
        opts.method = SpectrumMethod::Dense;
    else if (method == "krylov")
        opts.method = SpectrumMethod::IterativeKrylov;
    const SpectrumResult r = lowest_two(build_hamiltonian(lat.build(), j1, j2), false, opts);
    std::printf("n_qubits=%zu\nmethod=%s\nE0=%.10f\nE1=%.10f\ngap=%.10f\nmatvecs=%zu\n",
                lat.rows * lat.cols, std::string(to_string(r.method)).c_str(), r.e0, r.e1,
                r.e1 - r.e0, r.matvecs);
    return 0;
}

int cmd_resources(const LatticeArgs &lat, std::size_t layers, bool diagonals) {
    const AnsatzSpec spec{lat.build(), layers, diagonals};
    const ResourceCount rc = count_resources(build_ansatz(spec));
    std::printf("n_qubits=%zu\nlayers=%zu\ndiagonals=%s\ntwo_qubit_gates=%zu\n"
                "single_qubit_gates=%zu\nsingle_qubit_gates_excl_z=%zu\nparams=%zu\n",
                lat.rows * lat.cols, rc.n_layers, diagonals ? "true" : "false",
                rc.two_qubit_gates, rc.single_qubit_gates_total, rc.single_qubit_gates_excl_z,
                rc.n_params);
    return 0;
}

int cmd_fit(const std::string &scan, const std::string &column, const std::vector<double> &at) {
    const auto points = read_scan_points(scan, column);
    const PowerLawFit fit = power_law_fit(points);
    std::printf("prefactor=%.10g\nexponent=%.10g\nresidual=%.3g\n", fit.prefactor, fit.exponent,
                fit.residual);
    for (double n : at)
        std::printf("at_%g=%.10g\n", n, extrapolate(fit, n));
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational eigensolver experiments on the J1-J2 Heisenberg lattice"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "Run the experiments listed in a config file");
    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers, budget;
    run->add_option("--config", config_path, "Experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory (overrides the config)");
    run->add_option("--seed", seed, "Base seed; run k uses seed + k");
    run->add_option("--workers", workers, "Concurrent runs (overrides J1J2_WORKERS)")
        ->check(CLI::PositiveNumber);
    run->add_option("--budget", budget, "Objective evaluations per run");

    auto *spectrum = app.add_subcommand("spectrum", "Exact ground and first excited energies");
    LatticeArgs spec_lat;
    double j1 = -1.0, j2 = -0.5;
    std::string method = "auto";
    spec_lat.attach(spectrum);
    spectrum->add_option("--j1", j1, "Nearest-neighbour coupling");
    spectrum->add_option("--j2", j2, "Diagonal coupling");
    spectrum->add_option("--method", method, "auto, dense or krylov")
        ->check(CLI::IsMember({"auto", "dense", "krylov"}));

    auto *resources = app.add_subcommand("resources", "Gate and parameter counts of the ansatz");
    LatticeArgs res_lat;
    std::size_t layers = 1;
    bool diagonals = false;
    res_lat.attach(resources);
    resources->add_option("--layers", layers, "Ansatz layers")->check(CLI::PositiveNumber);
    resources->add_flag("--diagonals", diagonals, "Entangle diagonal pairs too");

    auto *fit = app.add_subcommand("fit", "Power-law fit over a scan table");
    std::string scan, column = "min_two_qubit_gates";
    std::vector<double> at;
    fit->add_option("--scan", scan, "scan.csv from a run")->required()->check(CLI::ExistingFile);
    fit->add_option("--column", column, "Column to fit against n_qubits");
    fit->add_option("--at", at, "Extrapolate to these qubit counts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return cmd_run(config_path, out_dir, seed, workers, budget);
        if (*spectrum)
            return cmd_spectrum(spec_lat, j1, j2, method);
        if (*resources)
            return cmd_resources(res_lat, layers, diagonals);
        return cmd_fit(scan, column, at);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
