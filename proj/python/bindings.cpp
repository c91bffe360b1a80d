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
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/eigen.h>
#include <pybind11/stl.h>

#include "j1j2vqe/analysis.hpp"
#include "j1j2vqe/ansatz.hpp"
#include "j1j2vqe/error.hpp"
#include "j1j2vqe/experiment.hpp"
#include "j1j2vqe/spectrum.hpp"
#include "j1j2vqe/vqe.hpp"

namespace py = pybind11;
using namespace j1j2;

namespace {

py::array_t<cplx> to_numpy(const StateVector &psi) {
    py::array_t<cplx> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(psi.dim())});
    auto view = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < psi.dim(); ++i)
        view(static_cast<py::ssize_t>(i)) = psi[i];
    return out;
}

StateVector from_numpy(py::array_t<cplx, py::array::c_style | py::array::forcecast> a) {
    if (a.ndim() != 1)
        throw Error(ErrorCode::DimensionMismatch, "state must be a 1-D array");
    const cplx *p = a.data();
    return StateVector::from_amplitudes(std::vector<cplx>(p, p + a.size()));
}

template <std::size_t N>
py::array_t<cplx> square(const std::array<cplx, N> &m) {
    constexpr py::ssize_t d = N == 4 ? 2 : 4;
    py::array_t<cplx> out({d, d});
    std::copy(m.begin(), m.end(), out.mutable_data());
    return out;
}

// Wraps a Python callable taking a float64 array.
Objective wrap(const py::function &f) {
    return [f](std::span<const double> x) {
        py::array_t<double> arr(std::vector<py::ssize_t>{static_cast<py::ssize_t>(x.size())});
        std::copy(x.begin(), x.end(), arr.mutable_data());
        return f(arr).cast<double>();
    };
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Statevector VQE for the J1-J2 Heisenberg model";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::enum_<Boundary>(m, "Boundary")
        .value("OPEN", Boundary::Open)
        .value("PERIODIC", Boundary::Periodic);

    py::class_<Lattice>(m, "Lattice")
        .def(py::init(&build_lattice), py::arg("rows"), py::arg("cols"),
             py::arg("boundary") = Boundary::Open)
        .def_property_readonly("rows", &Lattice::rows)
        .def_property_readonly("cols", &Lattice::cols)
        .def_property_readonly("boundary", &Lattice::boundary)
        .def_property_readonly("n_sites", &Lattice::n_sites)
        .def_property_readonly("nn_edges", &Lattice::nn_edges)
        .def_property_readonly("nnn_edges", &Lattice::nnn_edges)
        .def("__repr__", [](const Lattice &l) {
            return "Lattice(" + std::to_string(l.rows()) + ", " + std::to_string(l.cols()) + ", " +
                   std::string(to_string(l.boundary())) + ")";
        });

    py::enum_<Pauli>(m, "Pauli").value("X", Pauli::X).value("Y", Pauli::Y).value("Z", Pauli::Z);

    py::class_<PauliString>(m, "PauliString")
        .def(py::init<std::size_t, std::vector<std::pair<std::size_t, Pauli>>>(), py::arg("n_sites"),
             py::arg("ops") = std::vector<std::pair<std::size_t, Pauli>>{})
        .def_property_readonly("ops", &PauliString::ops)
        .def_property_readonly("n_sites", &PauliString::n_sites)
        .def("label", &PauliString::label)
        .def("__repr__", &PauliString::label);

    py::class_<ObservableSum>(m, "ObservableSum")
        .def(py::init<std::size_t>(), py::arg("n_sites"))
        .def("add", py::overload_cast<double, const PauliString &>(&ObservableSum::add),
             py::arg("coeff"), py::arg("string"))
        .def_property_readonly("n_sites", &ObservableSum::n_sites)
        .def_property_readonly("terms",
                               [](const ObservableSum &o) {
                                   py::list out;
                                   for (const PauliTerm &t : o.terms())
                                       out.append(py::make_tuple(t.coeff, t.string));
                                   return out;
                               })
        .def("__len__", &ObservableSum::size)
        .def("expectation", [](const ObservableSum &o, py::array_t<cplx> psi) {
            return expectation(o, from_numpy(psi));
        });

    m.def("heisenberg_bond", &heisenberg_bond, py::arg("i"), py::arg("j"), py::arg("coeff"),
          py::arg("n"));
    m.def("build_hamiltonian", &build_hamiltonian, py::arg("lattice"), py::arg("j1") = -1.0,
          py::arg("j2") = -0.5);
    m.def("expectation",
          [](const ObservableSum &o, py::array_t<cplx> psi) { return expectation(o, from_numpy(psi)); },
          py::arg("observable"), py::arg("psi"));

    py::enum_<GateKind>(m, "GateKind")
        .value("X", GateKind::Xp)
        .value("Y", GateKind::Yp)
        .value("Z", GateKind::Zp)
        .value("XX", GateKind::XXp)
        .value("YY", GateKind::YYp)
        .value("ZZ", GateKind::ZZp);
    m.def("gate_matrix", [](GateKind k, double theta) -> py::array_t<cplx> {
        if (is_two_qubit(k))
            return square(two_qubit_matrix(k, theta));
        return square(single_qubit_matrix(k, theta));
    }, py::arg("kind"), py::arg("theta"));

    py::class_<ParamCircuit>(m, "ParamCircuit")
        .def(py::init<std::size_t, std::size_t>(), py::arg("n_qubits"), py::arg("n_params"))
        .def("add_single", &ParamCircuit::add_single, py::arg("kind"), py::arg("q"),
             py::arg("param_index"))
        .def("add_two", &ParamCircuit::add_two, py::arg("kind"), py::arg("i"), py::arg("j"),
             py::arg("param_index"))
        .def_property_readonly("n_qubits", &ParamCircuit::n_qubits)
        .def_property_readonly("n_params", &ParamCircuit::n_params)
        .def_property_readonly("gates", [](const ParamCircuit &c) {
            py::list out;
            for (const GateOp &g : c.gates()) {
                if (is_two_qubit(g.kind))
                    out.append(py::make_tuple(g.kind, py::make_tuple(g.targets[0], g.targets[1]),
                                              g.param_index));
                else
                    out.append(py::make_tuple(g.kind, py::make_tuple(g.targets[0]), g.param_index));
            }
            return out;
        });
    m.def("run_circuit", [](const ParamCircuit &c, const std::vector<double> &params) {
        return to_numpy(run_circuit(c, params));
    }, py::arg("circuit"), py::arg("params"));

    py::class_<ResourceCount>(m, "ResourceCount")
        .def_readonly("two_qubit_gates", &ResourceCount::two_qubit_gates)
        .def_readonly("single_qubit_gates_total", &ResourceCount::single_qubit_gates_total)
        .def_readonly("single_qubit_gates_excl_z", &ResourceCount::single_qubit_gates_excl_z)
        .def_readonly("n_params", &ResourceCount::n_params)
        .def_readonly("n_layers", &ResourceCount::n_layers);

    m.def("build_ansatz", [](const Lattice &l, std::size_t layers, bool diagonals) {
        return build_ansatz({l, layers, diagonals});
    }, py::arg("lattice"), py::arg("layers"), py::arg("diagonals") = false);
    m.def("count_resources", &count_resources, py::arg("circuit"));
    m.def("extend_ansatz",
          [](const Lattice &l, std::size_t layers, bool diagonals, const std::vector<double> &old,
             std::size_t extra, double eps) {
              return extend_ansatz({l, layers, diagonals}, old, extra, eps);
          },
          py::arg("lattice"), py::arg("layers"), py::arg("diagonals"), py::arg("params"),
          py::arg("extra_layers"), py::arg("epsilon") = kDefaultExtendEpsilon);

    m.def("lowest_two", [](const ObservableSum &h, bool want_vector, const std::string &method) {
        SpectrumOptions opts;
        if (method == "dense")
            opts.method = SpectrumMethod::Dense;
        else if (method == "krylov")
            opts.method = SpectrumMethod::IterativeKrylov;
        else if (method != "auto")
            throw Error(ErrorCode::InvalidConfig, "method must be auto, dense or krylov");
        const SpectrumResult r = lowest_two(h, want_vector, opts);
        py::dict out;
        out["e0"] = r.e0;
        out["e1"] = r.e1;
        out["method"] = std::string(to_string(r.method));
        out["matvecs"] = r.matvecs;
        out["ground_vec"] = r.ground_vec ? py::object(to_numpy(*r.ground_vec)) : py::none();
        return out;
    }, py::arg("hamiltonian"), py::arg("want_vector") = false, py::arg("method") = "auto");
    m.def("gap_metric", &gap_metric, py::arg("e_bar"), py::arg("e0"), py::arg("e1"));

    m.def("cobyla_minimize",
          [](const py::function &f, const std::vector<double> &x0, double rho_begin,
             double rho_end, std::size_t max_evals) {
              const LocalResult r = cobyla_minimize(wrap(f), x0, {rho_begin, rho_end, max_evals});
              return py::make_tuple(r.x_best, r.f_best, r.n_evals,
                                    std::string(to_string(r.status)));
          },
          py::arg("f"), py::arg("x0"), py::arg("rho_begin") = 1.0, py::arg("rho_end") = 1e-6,
          py::arg("max_evals") = 100000);
    m.def("basin_hopping",
          [](const py::function &f, const std::vector<double> &x0, std::size_t n_hops,
             double step_size, double temperature, std::uint64_t seed, double rho_begin,
             double rho_end, std::size_t max_evals) {
              const LocalResult r = basin_hopping(wrap(f), x0, {rho_begin, rho_end, max_evals},
                                                  {n_hops, step_size, temperature, seed, 0});
              return py::make_tuple(r.x_best, r.f_best, r.n_evals,
                                    std::string(to_string(r.status)));
          },
          py::arg("f"), py::arg("x0"), py::arg("n_hops"), py::arg("step_size") = 0.5,
          py::arg("temperature") = 1.0, py::arg("seed") = 0, py::arg("rho_begin") = 1.0,
          py::arg("rho_end") = 1e-6, py::arg("max_evals") = 100000);

    // Runs take a JSON-shaped dict, the same schema as one entry of an
    // experiment config, and return the persisted record layout.
    const auto json_module = py::module_::import("json");
    m.def("vqe_run", [json_module](const py::dict &config) {
        const std::string text = json_module.attr("dumps")(config).cast<std::string>();
        const VqeConfig cfg = config_from_json(nlohmann::json::parse(text), "config");
        VqeRunRecord rec;
        {
            py::gil_scoped_release release;
            rec = vqe_run(cfg);
        }
        return json_module.attr("loads")(record_to_json(rec).dump());
    }, py::arg("config"));
    m.def("prepare_state", [json_module](const py::dict &config, const std::vector<double> &params) {
        const std::string text = json_module.attr("dumps")(config).cast<std::string>();
        return to_numpy(prepare_state(config_from_json(nlohmann::json::parse(text), "config"), params));
    }, py::arg("config"), py::arg("params"));

    m.def("correlation_matrix", [](py::array_t<cplx> psi, Pauli axis) {
        return correlation_matrix(from_numpy(psi), axis).values;
    }, py::arg("psi"), py::arg("axis") = Pauli::X);
    m.def("power_law_fit", [](const std::vector<std::pair<double, double>> &points) {
        const PowerLawFit f = power_law_fit(points);
        return py::make_tuple(f.prefactor, f.exponent, f.residual);
    }, py::arg("points"));
    m.def("extrapolate", [](double a, double b, double n) { return extrapolate({a, b, 0.0}, n); },
          py::arg("prefactor"), py::arg("exponent"), py::arg("n"));

    m.attr("SCHEMA_VERSION") = kSchemaVersion;
}
