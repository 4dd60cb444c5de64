#include "deltapair/config.hpp"
#include "deltapair/quadrature.hpp"
#include "deltapair/runner.hpp"
#include "deltapair/spectral.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace deltapair;

namespace {

using Pair = std::pair<double, double>;

Vec2 vec(Pair p) { return {p.first, p.second}; }
Pair pair(Vec2 v) { return {v.x, v.y}; }

PulseTrain make_train(const std::vector<std::pair<double, Pair>> &jumps) {
    std::vector<Jump> raw;
    raw.reserve(jumps.size());
    for (const auto &[x, da] : jumps) {
        raw.push_back({x, vec(da)});
    }
    return PulseTrain::normalize(raw);
}

IntegrationSpec make_spec(double rel_tol, std::optional<double> q_max, double u_margin, std::size_t max_evals,
                          const std::string &transverse) {
    IntegrationSpec s;
    s.rel_tol = rel_tol;
    s.q_max = q_max;
    s.u_margin = u_margin;
    s.max_evals = max_evals;
    if (transverse == "analytic") {
        s.transverse = TransverseMethod::analytic;
    } else if (transverse == "cutoff") {
        s.transverse = TransverseMethod::cutoff;
    } else {
        throw py::value_error("transverse must be 'analytic' or 'cutoff'");
    }
    return s;
}

py::dict estimate_dict(const IntegralEstimate &e) {
    py::dict d;
    d["value"] = e.value;
    d["error"] = e.error;
    d["tail_bound"] = e.tail_bound;
    d["evaluations"] = e.evaluations;
    d["converged"] = e.converged;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Positron spectra for photons colliding with delta-pulse trains";
    m.attr("__version__") = std::string(kEngineVersion);
    m.attr("DEFAULT_ALPHA") = kDefaultAlpha;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<PulseTrain>(m, "PulseTrain")
        .def(py::init(&make_train), py::arg("jumps"),
             "Jumps as (x, (da1, da2)); sorted, coincident positions merged, null jumps dropped.")
        .def_property_readonly("jumps",
                               [](const PulseTrain &t) {
                                   std::vector<std::pair<double, Pair>> out;
                                   for (const Jump &j : t.jumps()) {
                                       out.emplace_back(j.x, pair(j.da));
                                   }
                                   return out;
                               })
        .def_property_readonly("potentials",
                               [](const PulseTrain &t) {
                                   std::vector<Pair> out;
                                   for (const Vec2 a : t.potentials()) {
                                       out.push_back(pair(a));
                                   }
                                   return out;
                               })
        .def_property_readonly("merged_count", &PulseTrain::merged_count)
        .def_property_readonly("dropped_count", &PulseTrain::dropped_count)
        .def("__len__", &PulseTrain::size)
        .def("shifted", &PulseTrain::shifted, py::arg("offset"))
        .def("negated", &PulseTrain::negated);

    m.def("single_pulse_train", [](Pair da, double x) { return single_pulse_train(vec(da), x); }, py::arg("da"),
          py::arg("x") = 0.0);
    m.def("opposite_sign_train", &opposite_sign_train, py::arg("xi"), py::arg("theta"));
    m.def("same_sign_train", &same_sign_train, py::arg("xi"), py::arg("theta"));
    m.def("alternating_four_train", &alternating_four_train, py::arg("xi"), py::arg("theta"));

    m.def(
        "density",
        [](const PulseTrain &train, double u, Pair qperp, Pair lperp, double alpha, bool bare) {
            const DensityResult r = SpectralModel(train, PhotonProbe{vec(lperp)}, alpha)
                                        .evaluate(SpectrumPoint(u, vec(qperp)), false);
            return bare ? r.f_total : r.value;
        },
        py::arg("train"), py::arg("u"), py::arg("qperp"), py::arg("lperp") = Pair{0.0, 0.0},
        py::arg("alpha") = kDefaultAlpha, py::arg("bare") = false, "d3P/(du d2q) at one point.");

    m.def(
        "breakdown",
        [](const PulseTrain &train, double u, Pair qperp, Pair lperp, double alpha) {
            const DensityResult r = SpectralModel(train, PhotonProbe{vec(lperp)}, alpha)
                                        .evaluate(SpectrumPoint(u, vec(qperp)), true);
            py::dict d;
            d["value"] = r.value;
            d["f_total"] = r.f_total;
            d["prefactor"] = r.prefactor;
            d["diagonal"] = r.diagonal;
            py::list cross;
            for (const CrossTerm &c : r.cross) {
                cross.append(py::make_tuple(c.i, c.j, c.phase_difference, c.value));
            }
            d["cross"] = cross;
            return d;
        },
        py::arg("train"), py::arg("u"), py::arg("qperp"), py::arg("lperp") = Pair{0.0, 0.0},
        py::arg("alpha") = kDefaultAlpha, "Bare diagonal and cross terms (jump indices from 0).");

    m.def(
        "grid",
        [](const PulseTrain &train, double u, std::tuple<double, double, std::size_t> q1,
           std::tuple<double, double, std::size_t> q2, Pair lperp, double alpha, bool bare, unsigned threads) {
            const GridAxis a1{std::get<0>(q1), std::get<1>(q1), std::get<2>(q1)};
            const GridAxis a2{std::get<0>(q2), std::get<1>(q2), std::get<2>(q2)};
            GridScan scan;
            {
                py::gil_scoped_release release;
                scan = grid_scan(SpectralModel(train, PhotonProbe{vec(lperp)}, alpha), u, a1, a2, false, threads);
            }
            py::array_t<double> out({a1.n, a2.n});
            auto view = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < a1.n; ++i) {
                for (std::size_t j = 0; j < a2.n; ++j) {
                    const DensityResult &r = scan.at(i, j);
                    view(i, j) = bare ? r.f_total : r.value;
                }
            }
            return out;
        },
        py::arg("train"), py::arg("u"), py::arg("q1"), py::arg("q2"), py::arg("lperp") = Pair{0.0, 0.0},
        py::arg("alpha") = kDefaultAlpha, py::arg("bare") = false, py::arg("threads") = 1u,
        "Densities on a grid; axes are (min, max, n) with both endpoints included. Shape (n1, n2).");

    m.def(
        "total_probability",
        [](const PulseTrain &train, Pair lperp, double alpha, double rel_tol, std::optional<double> q_max,
           double u_margin, std::size_t max_evals, const std::string &transverse) {
            const IntegrationSpec spec = make_spec(rel_tol, q_max, u_margin, max_evals, transverse);
            IntegralEstimate e;
            {
                py::gil_scoped_release release;
                e = total_probability(SpectralModel(train, PhotonProbe{vec(lperp)}, alpha), spec);
            }
            return estimate_dict(e);
        },
        py::arg("train"), py::arg("lperp") = Pair{0.0, 0.0}, py::arg("alpha") = kDefaultAlpha,
        py::arg("rel_tol") = 1e-8, py::arg("q_max") = py::none(), py::arg("u_margin") = 1e-9,
        py::arg("max_evals") = std::size_t{20'000'000}, py::arg("transverse") = "analytic");

    m.def(
        "dp_du",
        [](const PulseTrain &train, double u, Pair lperp, double alpha, double rel_tol) {
            IntegrationSpec spec;
            spec.rel_tol = rel_tol;
            return estimate_dict(integrate_qperp_plane(SpectralModel(train, PhotonProbe{vec(lperp)}, alpha), u, spec));
        },
        py::arg("train"), py::arg("u"), py::arg("lperp") = Pair{0.0, 0.0}, py::arg("alpha") = kDefaultAlpha,
        py::arg("rel_tol") = 1e-8, "Transverse integral at fixed u.");

    m.def(
        "density_single",
        [](Pair xi, double u, Pair qperp, Pair lperp) {
            return density_single(vec(xi), PhotonProbe{vec(lperp)}, SpectrumPoint(u, vec(qperp)));
        },
        py::arg("xi"), py::arg("u"), py::arg("qperp"), py::arg("lperp") = Pair{0.0, 0.0});
    m.def(
        "density_opposite",
        [](double xi, double theta, double u, Pair qperp, Pair lperp) {
            return density_opposite(xi, theta, PhotonProbe{vec(lperp)}, SpectrumPoint(u, vec(qperp)));
        },
        py::arg("xi"), py::arg("theta"), py::arg("u"), py::arg("qperp"), py::arg("lperp") = Pair{0.0, 0.0});
    m.def(
        "density_samesign",
        [](double xi, double theta, double u, Pair qperp, Pair lperp) {
            return density_samesign(xi, theta, PhotonProbe{vec(lperp)}, SpectrumPoint(u, vec(qperp)));
        },
        py::arg("xi"), py::arg("theta"), py::arg("u"), py::arg("qperp"), py::arg("lperp") = Pair{0.0, 0.0});
    m.def(
        "density_fourpulse",
        [](double xi, double theta, double u, Pair qperp, Pair lperp) {
            return density_fourpulse(xi, theta, PhotonProbe{vec(lperp)}, SpectrumPoint(u, vec(qperp)));
        },
        py::arg("xi"), py::arg("theta"), py::arg("u"), py::arg("qperp"), py::arg("lperp") = Pair{0.0, 0.0});

    m.def("normalize_config", [](const std::string &text) { return emit_config(parse_config(text)); },
          py::arg("text"), "Parse a JSON run configuration and re-emit it with defaults filled in.");
    m.def(
        "run",
        [](const std::string &command, const std::string &config_text, unsigned threads) {
            const auto c = parse_command(command);
            if (!c) {
                throw py::value_error("unknown command '" + command + "'");
            }
            const RunConfig config = parse_config(config_text);
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run(*c, config, RunOptions{threads});
            }
            return py::make_tuple(r.body, r.metadata, r.ok);
        },
        py::arg("command"), py::arg("config"), py::arg("threads") = 1u,
        "Run a CLI command in memory; returns (body, sidecar_json, ok).");
}
