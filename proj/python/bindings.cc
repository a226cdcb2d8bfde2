// Copyright 2026 The mdst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mdst/analysis.h"
#include "mdst/harness/presets.h"
#include "mdst/harness/report.h"
#include "mdst/tomography.h"

namespace py = pybind11;
using namespace mdst;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

CMatrix to_matrix(const ComplexArray &a) {
    if (a.ndim() != 2) {
        throw PreconditionError("expected a 2-D array");
    }
    CMatrix m(a.shape(0), a.shape(1));
    std::copy(a.data(), a.data() + a.size(), m.entries().begin());
    return m;
}

ComplexArray to_array(const CMatrix &m) {
    ComplexArray out({m.rows(), m.cols()});
    std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
    return out;
}

py::dict record_dict(const ResultRecord &r) {
    py::dict d;
    d["scheme"] = r.scheme;
    d["d"] = r.d;
    d["g"] = r.g ? py::object(py::float_(*r.g)) : py::object(py::none());
    d["N"] = r.n;
    d["trials"] = r.trials;
    d["mean_D"] = r.mean_d;
    d["stderr"] = r.stderr_d;
    d["bias_norm"] = r.bias_norm;
    d["paper_D"] = r.reference_d ? py::object(py::float_(*r.reference_d)) : py::object(py::none());
    d["error"] = r.error;
    return d;
}

RunOptions run_options(uint64_t seed, uint64_t trials, size_t workers, const std::string &ensemble) {
    RunOptions opt;
    opt.seed = seed;
    opt.trials = trials;
    opt.workers = workers;
    opt.ensemble = parse_ensemble(ensemble);
    return opt;
}

}  // namespace

PYBIND11_MODULE(_mdst, m) {
    m.doc() = "Direct state tomography simulator: MDST, DST, Pauli and SU(2) tomography";
    m.attr("__version__") = library_version();

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def(
        "random_state",
        [](size_t d, uint64_t seed, const std::string &ensemble) {
            Rng rng(seed);
            return to_array(random_state(parse_ensemble(ensemble), d, rng).mat());
        },
        py::arg("d"), py::arg("seed"), py::arg("ensemble") = "hs", "Random density matrix from the hs or pure ensemble.");

    m.def(
        "fourier_mub",
        [](size_t d) {
            auto mub = fourier_mub(d);
            return py::make_tuple(to_array(mub.a_basis), to_array(mub.psi_basis));
        },
        py::arg("d"), "Computational basis and its Fourier partner, as column matrices.");

    m.def(
        "trace_distance",
        [](const ComplexArray &a, const ComplexArray &b, bool hermitize) {
            return trace_distance(to_matrix(a), to_matrix(b), hermitize);
        },
        py::arg("a"), py::arg("b"), py::arg("hermitize") = false);

    m.def(
        "coupling_unitary", [](size_t i, double g, size_t d) { return to_array(coupling_unitary(i, g, d)); },
        py::arg("i"), py::arg("g"), py::arg("d"));

    m.def(
        "cd_observables",
        [](double g) {
            auto [q, p] = cd_observables(g);
            return py::make_tuple(to_array(q.mat), to_array(p.mat));
        },
        py::arg("g"), "Coupling-deformed pointer readouts (q(g), p(g)).");

    m.def(
        "analytic_reconstruction",
        [](const ComplexArray &rho, const std::string &scheme) {
            DensityMatrix state(to_matrix(rho));
            auto mub = fourier_mub(state.dim());
            return to_array(analytic_reconstruction(state, TomographyScheme::parse(scheme), mub).mat);
        },
        py::arg("rho"), py::arg("scheme"), "Infinite-statistics reconstruction for mdst:<g>, dst:<g> or pauli.");

    m.def(
        "reconstruct",
        [](const ComplexArray &rho, const std::string &scheme, uint64_t n, uint64_t seed) {
            DensityMatrix state(to_matrix(rho));
            auto mub = fourier_mub(state.dim());
            Rng rng(seed);
            return to_array(run_scheme(TomographyScheme::parse(scheme), state, n, mub, rng).mat);
        },
        py::arg("rho"), py::arg("scheme"), py::arg("n"), py::arg("seed"),
        "Sampled reconstruction of rho from n simulated measurements.");

    m.def("tv1", &tv1_closed_form, py::arg("d"), py::arg("g"));
    m.def("g_opt", &g_opt, py::arg("d"));
    m.def(
        "variance",
        [](const ComplexArray &rho, double g) {
            DensityMatrix state(to_matrix(rho));
            auto v = variance_numeric(state, g, fourier_mub(state.dim()));
            py::dict d;
            d["tv1"] = v.tv1;
            d["second_term"] = v.second_term;
            d["total"] = v.total;
            return d;
        },
        py::arg("rho"), py::arg("g"));

    m.def(
        "run_config",
        [](const std::string &text, std::optional<size_t> workers) {
            auto cfg = parse_config(text);
            if (workers) {
                cfg.workers = *workers;
            }
            py::list out;
            std::vector<ResultRecord> records;
            {
                py::gil_scoped_release release;
                records = run_experiment(cfg);
            }
            for (const auto &r : records) {
                out.append(record_dict(r));
            }
            return out;
        },
        py::arg("text"), py::arg("workers") = py::none(), "Runs a key=value campaign and returns one dict per cell.");

    m.def(
        "run_cell",
        [](const std::string &scheme, size_t d, uint64_t n, uint64_t trials, uint64_t seed, size_t workers,
           const std::string &ensemble) {
            std::vector<CellSpec> cells{{TomographyScheme::parse(scheme), d, n, std::nullopt}};
            std::vector<ResultRecord> records;
            {
                py::gil_scoped_release release;
                records = run_cells(cells, run_options(seed, trials, workers, ensemble));
            }
            return record_dict(records.front());
        },
        py::arg("scheme"), py::arg("d"), py::arg("n"), py::arg("trials") = 1000, py::arg("seed") = 1,
        py::arg("workers") = 1, py::arg("ensemble") = "hs");

    m.def(
        "reference_table",
        [](int number) {
            const auto &t = reference_table(number);
            py::dict d;
            d["d"] = t.d;
            d["g"] = t.g;
            d["n_mdst"] = t.n_mdst;
            d["d_mdst"] = t.d_mdst;
            d["n_su2"] = t.n_su2;
            d["d_su2"] = t.d_su2;
            d["quoted_ratio"] = t.quoted_ratio;
            return d;
        },
        py::arg("number"));
}
