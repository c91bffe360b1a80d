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
#include "j1j2vqe/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "j1j2vqe/error.hpp"
#include "j1j2vqe/spectrum.hpp"

namespace j1j2 {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string &path, const std::string &why) {
    throw Error(ErrorCode::InvalidConfig, path + ": " + why);
}

// Reads keys of one JSON object, tracking which were consumed so that
// misspelled keys are rejected.
class Fields {
  public:
    Fields(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object())
            field_error(path_, "expected an object");
    }

    [[nodiscard]] std::string at(const std::string &key) const { return path_ + "." + key; }
    [[nodiscard]] bool has(const std::string &key) const { return j_.contains(key); }

    const json *child(const std::string &key) {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    double number(const std::string &key, double fallback) {
        const json *v = child(key);
        if (!v)
            return fallback;
        if (!v->is_number())
            field_error(at(key), "expected a number");
        return v->get<double>();
    }

    std::uint64_t count(const std::string &key, std::uint64_t fallback,
                        std::uint64_t min_value = 0) {
        const json *v = child(key);
        if (!v)
            return fallback;
        if (v->is_number_unsigned()) {
            if (v->get<std::uint64_t>() < min_value)
                field_error(at(key), "must be >= " + std::to_string(min_value));
            return v->get<std::uint64_t>();
        }
        if (v->is_number_integer() && v->get<std::int64_t>() < static_cast<std::int64_t>(min_value))
            field_error(at(key), "must be >= " + std::to_string(min_value));
        if (v->is_number_float()) {
            const double d = v->get<double>();
            if (d != std::floor(d))
                field_error(at(key), "expected an integer");
            if (d < static_cast<double>(min_value))
                field_error(at(key), "must be >= " + std::to_string(min_value));
            return static_cast<std::uint64_t>(d);
        }
        if (!v->is_number_integer())
            field_error(at(key), "expected an integer");
        return v->get<std::uint64_t>();
    }

    bool boolean(const std::string &key, bool fallback) {
        const json *v = child(key);
        if (!v)
            return fallback;
        if (!v->is_boolean())
            field_error(at(key), "expected true or false");
        return v->get<bool>();
    }

    std::string text(const std::string &key, const std::string &fallback) {
        const json *v = child(key);
        if (!v)
            return fallback;
        if (!v->is_string())
            field_error(at(key), "expected a string");
        return v->get<std::string>();
    }

    void finish() const {
        for (const auto &item : j_.items())
            if (!seen_.contains(item.key()))
                field_error(at(item.key()), "unknown field");
    }

  private:
    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

Pauli axis_from_string(const std::string &s, const std::string &path) {
    if (s == "x" || s == "X")
        return Pauli::X;
    if (s == "y" || s == "Y")
        return Pauli::Y;
    if (s == "z" || s == "Z")
        return Pauli::Z;
    field_error(path, "axis must be x, y or z");
}

std::string read_text(const std::filesystem::path &file) {
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string &text, const std::string &what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::InvalidConfig, what + ": syntax error at line " +
                                                  std::to_string(line) + ", column " +
                                                  std::to_string(col));
    }
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

json config_to_json(const VqeConfig &cfg) {
    json j = {
        {"name", cfg.name},
        {"lattice", {{"rows", cfg.rows}, {"cols", cfg.cols}, {"boundary", to_string(cfg.boundary)}}},
        {"couplings", {{"j1", cfg.j1}, {"j2", cfg.j2}}},
        {"ansatz", {{"layers", cfg.n_layers}, {"diagonals", cfg.include_diagonals}}},
        {"optimizer",
         {{"rho_begin", cfg.optimizer.cobyla.rho_begin},
          {"rho_end", cfg.optimizer.cobyla.rho_end},
          {"max_evals", cfg.optimizer.cobyla.max_evals},
          {"hops", cfg.optimizer.n_hops},
          {"step_size", cfg.optimizer.step_size},
          {"temperature", cfg.optimizer.temperature}}},
        {"restarts", cfg.restarts},
        {"seed", cfg.seed},
    };
    if (cfg.two_stage)
        j["two_stage"] = {{"pre_layers", cfg.two_stage->pre_layers},
                          {"epsilon", cfg.two_stage->epsilon},
                          {"stage1_fraction", cfg.two_stage->stage1_fraction}};
    return j;
}

VqeConfig config_from_json(const json &j, const std::string &path) {
    Fields f(j, path);
    VqeConfig cfg;
    cfg.name = f.text("name", cfg.name);
    if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos)
        field_error(f.at("name"), "must be a non-empty file-name-safe string");

    if (const json *lat = f.child("lattice")) {
        Fields l(*lat, f.at("lattice"));
        cfg.rows = l.count("rows", cfg.rows, 1);
        cfg.cols = l.count("cols", cfg.cols, 1);
        const std::string b = l.text("boundary", "open");
        if (b == "open")
            cfg.boundary = Boundary::Open;
        else if (b == "periodic")
            cfg.boundary = Boundary::Periodic;
        else
            field_error(l.at("boundary"), "must be \"open\" or \"periodic\"");
        l.finish();
        if (cfg.boundary == Boundary::Periodic && (cfg.rows < 2 || cfg.cols < 2))
            field_error(l.at("boundary"), "periodic lattices need rows >= 2 and cols >= 2");
        if (cfg.n_qubits() > kDefaultQubitCap)
            field_error(l.at("rows"), "lattice exceeds the " + std::to_string(kDefaultQubitCap) +
                                          "-qubit cap");
    } else {
        field_error(f.at("lattice"), "missing");
    }

    if (const json *c = f.child("couplings")) {
        Fields cf(*c, f.at("couplings"));
        cfg.j1 = cf.number("j1", cfg.j1);
        cfg.j2 = cf.number("j2", cfg.j2);
        cf.finish();
    }

    if (const json *a = f.child("ansatz")) {
        Fields af(*a, f.at("ansatz"));
        cfg.n_layers = af.count("layers", cfg.n_layers, 1);
        cfg.include_diagonals = af.boolean("diagonals", cfg.include_diagonals);
        af.finish();
    }

    if (const json *o = f.child("optimizer")) {
        Fields of(*o, f.at("optimizer"));
        auto &opt = cfg.optimizer;
        opt.cobyla.rho_begin = of.number("rho_begin", opt.cobyla.rho_begin);
        opt.cobyla.rho_end = of.number("rho_end", opt.cobyla.rho_end);
        opt.cobyla.max_evals = of.count("max_evals", opt.cobyla.max_evals);
        opt.n_hops = of.count("hops", opt.n_hops);
        opt.step_size = of.number("step_size", opt.step_size);
        opt.temperature = of.number("temperature", opt.temperature);
        of.finish();
        if (!(opt.cobyla.rho_begin > opt.cobyla.rho_end) || !(opt.cobyla.rho_end > 0.0))
            field_error(of.at("rho_begin"), "need rho_begin > rho_end > 0");
        if (!(opt.step_size > 0.0))
            field_error(of.at("step_size"), "must be > 0");
        if (!(opt.temperature >= 0.0))
            field_error(of.at("temperature"), "must be >= 0");
    }

    cfg.restarts = f.count("restarts", cfg.restarts, 1);
    cfg.seed = f.count("seed", cfg.seed);

    if (const json *t = f.child("two_stage"); t && !t->is_null()) {
        Fields tf(*t, f.at("two_stage"));
        TwoStageSettings ts;
        ts.pre_layers = tf.count("pre_layers", ts.pre_layers, 1);
        ts.epsilon = tf.number("epsilon", ts.epsilon);
        ts.stage1_fraction = tf.number("stage1_fraction", ts.stage1_fraction);
        tf.finish();
        if (ts.pre_layers >= cfg.n_layers)
            field_error(tf.at("pre_layers"), "must be smaller than ansatz.layers");
        if (!(ts.epsilon > 0.0))
            field_error(tf.at("epsilon"), "must be > 0");
        if (!(ts.stage1_fraction > 0.0 && ts.stage1_fraction < 1.0))
            field_error(tf.at("stage1_fraction"), "must lie in (0, 1)");
        cfg.two_stage = ts;
    }
    f.finish();
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_experiment(const std::string &text) {
    const json j = parse_json(text, "experiment config");
    Fields f(j, "config");
    ExperimentConfig cfg;
    const auto version = f.count("schema_version", kSchemaVersion);
    if (version != kSchemaVersion)
        field_error(f.at("schema_version"), "unsupported version " + std::to_string(version));
    cfg.output_dir = f.text("output_dir", cfg.output_dir.string());
    cfg.seed = f.count("seed", cfg.seed);
    cfg.workers = f.count("workers", cfg.workers, 1);

    if (const json *a = f.child("analysis")) {
        Fields af(*a, f.at("analysis"));
        cfg.analysis.correlations = af.boolean("correlations", false);
        cfg.analysis.correlation_axis =
            axis_from_string(af.text("correlation_axis", "x"), af.at("correlation_axis"));
        cfg.analysis.scan = af.boolean("scan", false);
        cfg.analysis.fit = af.boolean("fit", false);
        af.finish();
    }

    std::set<std::string> names;
    if (const json *runs = f.child("runs")) {
        if (!runs->is_array())
            field_error(f.at("runs"), "expected an array");
        for (std::size_t k = 0; k < runs->size(); ++k) {
            const std::string path = "runs[" + std::to_string(k) + "]";
            const json &entry = (*runs)[k];
            VqeConfig run = config_from_json(entry, path);
            if (!entry.contains("seed"))
                run.seed = cfg.seed + k;
            if (!entry.contains("name"))
                run.name = "run" + std::to_string(k);
            if (!names.insert(run.name).second)
                field_error(path + ".name", "duplicate run name \"" + run.name + "\"");
            cfg.runs.push_back(std::move(run));
        }
    }
    f.finish();
    return cfg;
}

ExperimentConfig load_experiment(const std::filesystem::path &file) {
    return parse_experiment(read_text(file));
}

json record_to_json(const VqeRunRecord &rec) {
    json trace = json::array();
    for (const TracePoint &p : rec.trace)
        trace.push_back({p.eval, p.energy, p.stage});
    json stages = json::array();
    for (const StageSummary &s : rec.stages)
        stages.push_back({{"layers", s.n_layers},
                          {"params", s.n_params},
                          {"evals", s.n_evals},
                          {"start_energy", s.start_energy},
                          {"best_energy", s.best_energy}});
    return {
        {"schema_version", kSchemaVersion},
        {"config", config_to_json(rec.config)},
        {"results",
         {{"e_bar", rec.e_bar},
          {"e0", rec.e0},
          {"e1", rec.e1},
          {"metric", rec.metric},
          {"n_evals", rec.n_evals},
          {"n_iterations", rec.n_iterations},
          {"status", to_string(rec.status)},
          {"seed_used", rec.seed_used},
          {"wall_time", rec.wall_time}}},
        {"stages", stages},
        {"best_params", rec.best_params},
        {"trace", trace},
    };
}

VqeRunRecord record_from_json(const json &j) {
    try {
        if (j.at("schema_version").get<int>() != kSchemaVersion)
            throw Error(ErrorCode::InvalidConfig, "record: unsupported schema_version");
        VqeRunRecord rec;
        rec.config = config_from_json(j.at("config"), "record.config");
        const json &r = j.at("results");
        rec.e_bar = r.at("e_bar").get<double>();
        rec.e0 = r.at("e0").get<double>();
        rec.e1 = r.at("e1").get<double>();
        rec.metric = r.at("metric").get<double>();
        rec.n_evals = r.at("n_evals").get<std::size_t>();
        rec.n_iterations = r.at("n_iterations").get<std::size_t>();
        rec.status = r.at("status").get<std::string>() == "converged"
                         ? LocalStatus::Converged
                         : LocalStatus::BudgetExhausted;
        rec.seed_used = r.at("seed_used").get<std::uint64_t>();
        rec.wall_time = r.at("wall_time").get<double>();
        for (const json &s : j.at("stages"))
            rec.stages.push_back({s.at("layers").get<std::size_t>(),
                                  s.at("params").get<std::size_t>(),
                                  s.at("evals").get<std::size_t>(),
                                  s.at("start_energy").get<double>(),
                                  s.at("best_energy").get<double>()});
        rec.best_params = j.at("best_params").get<std::vector<double>>();
        for (const json &p : j.at("trace"))
            rec.trace.push_back({p.at(0).get<std::size_t>(), p.at(1).get<double>(),
                                 p.at(2).get<int>()});
        return rec;
    } catch (const json::exception &e) {
        throw Error(ErrorCode::InvalidConfig, std::string("record: ") + e.what());
    }
}

void write_file_atomic(const std::filesystem::path &file, const std::string &contents) {
    const std::filesystem::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::Io, "cannot write " + tmp.string());
        out << contents;
        if (!out.flush())
            throw Error(ErrorCode::Io, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, file, ec);
    if (ec)
        throw Error(ErrorCode::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

void save_record(const std::filesystem::path &file, const VqeRunRecord &rec) {
    write_file_atomic(file, record_to_json(rec).dump(1) + "\n");
}

VqeRunRecord load_record(const std::filesystem::path &file) {
    return record_from_json(parse_json(read_text(file), file.string()));
}

std::string trace_csv(const VqeRunRecord &rec) {
    std::string out = "eval,energy\n";
    for (const TracePoint &p : rec.trace)
        out += std::to_string(p.eval) + "," + fmt_double(p.energy) + "\n";
    return out;
}

std::string summary_csv(const std::vector<VqeRunRecord> &records) {
    std::string out = "name,n_qubits,boundary,j1,j2,layers,diagonals,E0,E1,E_bar,metric,n_evals,status\n";
    for (const VqeRunRecord &r : records) {
        const VqeConfig &c = r.config;
        out += c.name + "," + std::to_string(c.n_qubits()) + "," + std::string(to_string(c.boundary)) +
               "," + fmt_double(c.j1) + "," + fmt_double(c.j2) + "," + std::to_string(c.n_layers) +
               "," + (c.include_diagonals ? "true" : "false") + "," + fmt_double(r.e0) + "," +
               fmt_double(r.e1) + "," + fmt_double(r.e_bar) + "," + fmt_double(r.metric) + "," +
               std::to_string(r.n_evals) + "," + std::string(to_string(r.status)) + "\n";
    }
    return out;
}

std::string scan_csv(const ScanResult &scan) {
    std::string out = "n_qubits,min_layers,min_two_qubit_gates,min_params\n";
    for (const ScanRow &r : scan.rows)
        out += std::to_string(r.n_qubits) + "," + std::to_string(r.min_layers) + "," +
               std::to_string(r.min_two_qubit_gates) + "," + std::to_string(r.min_params) + "\n";
    return out;
}

std::vector<std::pair<double, double>> read_scan_points(const std::filesystem::path &file,
                                                        const std::string &column) {
    std::istringstream in(read_text(file));
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::EmptyInput, file.string() + " is empty");
    const auto split = [](const std::string &s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        return cells;
    };
    const auto header = split(line);
    const auto find = [&](const std::string &name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw Error(ErrorCode::InvalidConfig, file.string() + ": no column \"" + name + "\"");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t nx = find("n_qubits");
    const std::size_t ny = find(column);
    std::vector<std::pair<double, double>> points;
    for (std::size_t row = 2; std::getline(in, line); ++row) {
        if (line.empty())
            continue;
        const auto cells = split(line);
        try {
            points.emplace_back(std::stod(cells.at(nx)), std::stod(cells.at(ny)));
        } catch (const std::exception &) {
            throw Error(ErrorCode::InvalidConfig,
                        file.string() + ": malformed row " + std::to_string(row));
        }
    }
    return points;
}

std::string correlation_csv(const CorrelationMatrix &c) {
    std::string out;
    for (Eigen::Index i = 0; i < c.values.rows(); ++i) {
        for (Eigen::Index j = 0; j < c.values.cols(); ++j) {
            if (j > 0)
                out += ',';
            out += fmt_double(c.values(i, j));
        }
        out += '\n';
    }
    return out;
}

ExperimentOutcome run_experiment(const ExperimentConfig &cfg, std::ostream &log) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec)
        throw Error(ErrorCode::Io, "cannot create " + cfg.output_dir.string() + ": " + ec.message());

    std::mutex mu;
    const auto say = [&](const std::string &msg) {
        std::lock_guard lock(mu);
        log << msg << std::endl;
    };

    // Exact levels are shared by every run on the same Hamiltonian.
    using Key = std::tuple<std::size_t, std::size_t, int, double, double>;
    std::map<Key, std::optional<SpectrumResult>> spectra;
    for (const VqeConfig &r : cfg.runs)
        spectra.emplace(Key{r.rows, r.cols, static_cast<int>(r.boundary), r.j1, r.j2}, std::nullopt);

    ExperimentOutcome out;
    std::map<Key, std::string> spectrum_errors;
    for (auto &[key, slot] : spectra) {
        const auto &[rows, cols, boundary, j1, j2] = key;
        try {
            const Lattice lat = build_lattice(rows, cols, static_cast<Boundary>(boundary));
            slot = lowest_two(build_hamiltonian(lat, j1, j2), cfg.analysis.correlations);
        } catch (const Error &e) {
            spectrum_errors[key] = e.what();
        }
    }

    std::vector<std::optional<VqeRunRecord>> results(cfg.runs.size());
    std::vector<std::string> errors(cfg.runs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < cfg.runs.size(); k = next++) {
            const VqeConfig &run = cfg.runs[k];
            const Key key{run.rows, run.cols, static_cast<int>(run.boundary), run.j1, run.j2};
            try {
                if (const auto it = spectrum_errors.find(key); it != spectrum_errors.end())
                    throw Error(ErrorCode::NonConvergence, it->second);
                const SpectrumResult &spec = *spectra.at(key);
                say("[" + run.name + "] start: " + std::to_string(run.n_qubits()) + " qubits, " +
                    std::to_string(run.n_layers) + " layers");
                VqeRunRecord rec = vqe_run(run, ExactLevels{spec.e0, spec.e1});
                save_record(cfg.output_dir / (run.name + ".record.json"), rec);
                write_file_atomic(cfg.output_dir / (run.name + ".trace.csv"), trace_csv(rec));
                if (cfg.analysis.correlations) {
                    const auto axis = cfg.analysis.correlation_axis;
                    const std::string tag = std::string(1, static_cast<char>(std::tolower(to_char(axis))));
                    const StateVector psi = prepare_state(run, rec.best_params);
                    write_file_atomic(cfg.output_dir / (run.name + ".corr_" + tag + ".vqe.csv"),
                                      correlation_csv(correlation_matrix(psi, axis)));
                    write_file_atomic(cfg.output_dir / (run.name + ".corr_" + tag + ".exact.csv"),
                                      correlation_csv(correlation_matrix(*spec.ground_vec, axis)));
                }
                say("[" + run.name + "] done: E_bar=" + fmt_double(rec.e_bar) +
                    " metric=" + fmt_double(rec.metric) + " evals=" + std::to_string(rec.n_evals));
                results[k] = std::move(rec);
            } catch (const std::exception &e) {
                errors[k] = e.what();
                say("[" + run.name + "] failed: " + e.what());
            }
        }
    };
    const std::size_t n_threads = std::max<std::size_t>(1, std::min(cfg.workers, cfg.runs.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (std::thread &t : pool)
        t.join();

    for (std::size_t k = 0; k < cfg.runs.size(); ++k) {
        if (results[k])
            out.records.push_back(std::move(*results[k]));
        else
            out.failures.push_back(cfg.runs[k].name + ": " + errors[k]);
    }

    write_file_atomic(cfg.output_dir / "summary.csv", summary_csv(out.records));

    if ((cfg.analysis.scan || cfg.analysis.fit) && !out.records.empty()) {
        const ScanResult scan = min_resources_scan(out.records);
        for (const std::string &w : scan.warnings)
            say("warning: " + w);
        write_file_atomic(cfg.output_dir / "scan.csv", scan_csv(scan));
        if (cfg.analysis.fit) {
            if (scan.rows.size() < 2) {
                say("warning: fit skipped, fewer than two converged lattice sizes");
            } else {
                json fits = json::object();
                const auto add_fit = [&](const std::string &name, auto value) {
                    std::vector<std::pair<double, double>> pts;
                    for (const ScanRow &r : scan.rows)
                        pts.emplace_back(double(r.n_qubits), double(value(r)));
                    const PowerLawFit fit = power_law_fit(pts);
                    fits[name] = {{"prefactor", fit.prefactor},
                                  {"exponent", fit.exponent},
                                  {"residual", fit.residual},
                                  {"at_64", extrapolate(fit, 64.0)}};
                };
                add_fit("two_qubit_gates", [](const ScanRow &r) { return r.min_two_qubit_gates; });
                add_fit("params", [](const ScanRow &r) { return r.min_params; });
                add_fit("layers", [](const ScanRow &r) { return r.min_layers; });
                write_file_atomic(cfg.output_dir / "fit.json", fits.dump(2) + "\n");
            }
        }
    }
    return out;
}

} // namespace j1j2
