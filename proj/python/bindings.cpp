// Copyright 2026 The bellsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bellsim/engine.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/layout.hpp"
#include "bellsim/photon.hpp"
#include "bellsim/pointer.hpp"
#include "bellsim/statistics.hpp"
#include "bellsim/tensor.hpp"

namespace py = pybind11;
using namespace bellsim;

namespace {

py::dict as_dict(const OutcomeProbabilities &p) {
    py::dict d;
    d["++"] = p.pp;
    d["+-"] = p.pm;
    d["-+"] = p.mp;
    d["--"] = p.mm;
    d["inconclusive"] = p.inconclusive;
    return d;
}

DistributionSource source_for(const ExperimentConfig &config, EvolutionMethod method,
                              std::optional<double> mu) {
    return mu ? nonlocal_engine(config, *mu) : local_engine(config, method);
}

} // namespace

PYBIND11_MODULE(_bellsim, m) {
    m.doc() = "Two-station polarization measurement simulator with pointer apparatuses.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    // Dense linear algebra.
    m.def("kron", py::overload_cast<const ComplexMatrix &, const ComplexMatrix &, std::size_t>(&kron),
          py::arg("a"), py::arg("b"), py::arg("max_dim") = kDefaultMaxDim);
    m.def("expm_hermitian",
          py::overload_cast<const ComplexMatrix &, double, std::size_t>(&expm_hermitian),
          py::arg("h"), py::arg("theta"), py::arg("max_dim") = kDefaultMaxDim,
          "exp(-i theta h) for Hermitian h.");
    m.def("commutator_norm", &commutator_norm, py::arg("a"), py::arg("b"));
    m.def("max_off_diagonal", &max_off_diagonal, py::arg("m"));
    m.def(
        "partial_trace",
        [](const ComplexMatrix &rho, const std::vector<std::pair<std::string, std::size_t>> &dims,
           const std::set<std::string> &keep) {
            std::vector<Subsystem> subs;
            for (const auto &[name, dim] : dims) subs.push_back({name, dim});
            return partial_trace(rho, SubsystemLayout(std::move(subs)), keep);
        },
        py::arg("rho"), py::arg("dims"), py::arg("keep"),
        "Trace out subsystems not in `keep`; `dims` is a list of (name, dim) pairs.");

    py::enum_<EvolutionMethod>(m, "EvolutionMethod")
        .value("exact", EvolutionMethod::exact)
        .value("factorized", EvolutionMethod::factorized)
        .value("branch", EvolutionMethod::branch);

    py::class_<PointerMode>(m, "PointerMode")
        .def_static("delta", &PointerMode::delta)
        .def_static("gaussian", &PointerMode::gaussian, py::arg("sigma"))
        .def_property_readonly("is_delta", &PointerMode::is_delta)
        .def_readonly("sigma", &PointerMode::sigma)
        .def("__repr__", [](const PointerMode &p) {
            return p.is_delta() ? std::string("PointerMode.delta()")
                                : "PointerMode.gaussian(" + std::to_string(p.sigma) + ")";
        });

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init([](double alpha, double beta, std::size_t sites, PointerMode pointer,
                         double time, double coupling, double tolerance, double leak_tolerance,
                         std::uint64_t seed) {
                 ExperimentConfig c;
                 c.analyzers = {alpha, beta};
                 c.pointer_sites = sites;
                 c.pointer_mode = pointer;
                 c.interaction_time = time;
                 c.coupling = coupling;
                 c.tolerance = tolerance;
                 c.leak_tolerance = leak_tolerance;
                 c.seed = seed;
                 c.validate();
                 return c;
             }),
             py::arg("alpha") = 0.0, py::arg("beta") = std::numbers::pi / 8.0,
             py::arg("sites") = 3, py::arg("pointer") = PointerMode::delta(),
             py::arg("time") = 1.0, py::arg("coupling") = 1.0, py::arg("tolerance") = 1e-10,
             py::arg("leak_tolerance") = 1e-6, py::arg("seed") = 0,
             "Angles in radians. Raises ConfigError on invalid settings.")
        .def_property(
            "alpha", [](const ExperimentConfig &c) { return c.analyzers.alpha; },
            [](ExperimentConfig &c, double v) { c.analyzers.alpha = v; })
        .def_property(
            "beta", [](const ExperimentConfig &c) { return c.analyzers.beta; },
            [](ExperimentConfig &c, double v) { c.analyzers.beta = v; })
        .def_readwrite("sites", &ExperimentConfig::pointer_sites)
        .def_readwrite("pointer", &ExperimentConfig::pointer_mode)
        .def_readwrite("time", &ExperimentConfig::interaction_time)
        .def_readwrite("coupling", &ExperimentConfig::coupling)
        .def_readwrite("tolerance", &ExperimentConfig::tolerance)
        .def_readwrite("leak_tolerance", &ExperimentConfig::leak_tolerance)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_property_readonly("epsilon", &ExperimentConfig::epsilon)
        .def("validate", &ExperimentConfig::validate);

    py::class_<EvolutionResult>(m, "EvolutionResult")
        .def_readonly("final_state", &EvolutionResult::final_state)
        .def_readonly("method", &EvolutionResult::method)
        .def_property_readonly("pointer_density",
                               [](const EvolutionResult &r) { return r.pointer_density.matrix(); })
        .def_property_readonly("probabilities",
                               [](const EvolutionResult &r) { return as_dict(r.outcome_probs); });

    // Measurement engine.
    m.def("run", &run, py::arg("config"), py::arg("method") = EvolutionMethod::exact);
    m.def("run_nonlocal", &run_nonlocal, py::arg("config"), py::arg("mu"));
    m.def(
        "closed_form_probabilities",
        [](double alpha, double beta) { return as_dict(closed_form_probabilities({alpha, beta})); },
        py::arg("alpha"), py::arg("beta"));
    m.def(
        "hamiltonians",
        [](const ExperimentConfig &c, std::optional<double> mu) {
            const auto layout = c.layout();
            const auto ha = local_hamiltonian(Station::A, c, layout);
            const auto hb = mu ? nonlocal_hamiltonian(c, *mu, layout)
                               : local_hamiltonian(Station::B, c, layout);
            return std::make_pair(ha, hb);
        },
        py::arg("config"), py::arg("mu") = py::none(),
        "(H_A, H_B) on the full space; H_B also reads photon A when `mu` is given.");
    m.def("initial_state", py::overload_cast<const ExperimentConfig &>(&initial_state),
          py::arg("config"));
    m.def("evolve_exact", &evolve_exact, py::arg("config"), py::arg("h_total"), py::arg("initial"));
    m.def("evolve_factorized", &evolve_factorized, py::arg("config"), py::arg("h_a"),
          py::arg("h_b"), py::arg("initial"));
    m.def("evolve_branch", &evolve_branch, py::arg("config"), py::arg("initial"));
    m.def("factorization_gap", &factorization_gap, py::arg("config"), py::arg("h_a"),
          py::arg("h_b"));
    m.def(
        "order_swap_gap",
        [](const ExperimentConfig &c, const ComplexMatrix &ha, const ComplexMatrix &hb) {
            const auto gap = order_swap_gap(c, ha, hb, initial_state(c));
            return std::make_pair(gap.state_gap, gap.probability_gap);
        },
        py::arg("config"), py::arg("h_a"), py::arg("h_b"),
        "(state gap, probability gap) between the two measurement orders.");
    m.def("displaced_overlap", &displaced_overlap, py::arg("config"));

    // Statistics.
    m.def(
        "chsh",
        [](const ExperimentConfig &c, std::array<double, 4> angles, EvolutionMethod method,
           std::optional<double> mu) {
            const auto r = chsh({angles[0], angles[1], angles[2], angles[3]},
                                source_for(c, method, mu));
            return std::make_pair(r.s, r.correlations);
        },
        py::arg("config"), py::arg("angles"), py::arg("method") = EvolutionMethod::exact,
        py::arg("mu") = py::none(),
        "(S, [E(a,b), E(a,b'), E(a',b), E(a',b')]) for angles (a, a', b, b') in radians.");
    m.def(
        "no_signaling_max_deviation",
        [](const ExperimentConfig &c, std::size_t resolution, std::optional<double> mu) {
            return no_signaling_audit(source_for(c, EvolutionMethod::exact, mu),
                                      angle_grid(resolution))
                .max_deviation();
        },
        py::arg("config"), py::arg("resolution") = 19, py::arg("mu") = py::none());
    m.def(
        "sample",
        [](const ExperimentConfig &c, std::size_t n, std::uint64_t seed) {
            const auto dist = OutcomeDistribution::from(run(c).outcome_probs, c.analyzers);
            const auto seq = sample(dist, n, seed);
            const auto counts = seq.counts();
            py::dict out;
            for (const auto o : kOutcomes) {
                out[py::str(to_string(o))] = counts[static_cast<std::size_t>(o)];
            }
            py::dict result;
            result["counts"] = out;
            std::vector<std::string> outcomes;
            outcomes.reserve(seq.outcomes.size());
            for (const auto o : seq.outcomes) outcomes.push_back(to_string(o));
            result["outcomes"] = outcomes;
            if (n >= 1000) {
                try {
                    const auto x2 = chi_square_self_test(seq, dist);
                    result["chi_square"] = x2.statistic;
                    result["dof"] = x2.dof;
                    result["critical_99"] = chi_square_critical_99(x2.dof);
                } catch (const std::invalid_argument &) {
                    // too few expected counts in some cell
                }
            }
            return result;
        },
        py::arg("config"), py::arg("n"), py::arg("seed") = 0,
        "Seeded outcome draws with counts and, when applicable, a chi-square self test.");
    m.def("chi_square_critical_99", &chi_square_critical_99, py::arg("dof"));
}
