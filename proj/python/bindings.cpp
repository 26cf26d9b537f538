#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "naqi/advantage.hpp"
#include "naqi/complementarity.hpp"
#include "naqi/scenarios.hpp"

namespace py = pybind11;
using namespace naqi;

namespace {

DensityMatrix to_density(py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast> a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1))
        throw std::invalid_argument("state must be a square matrix");
    const auto n = static_cast<std::size_t>(a.shape(0));
    ComplexMatrix m(n);
    auto v = a.unchecked<2>();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = v(r, c);
    return DensityMatrix(m);
}

py::array_t<std::complex<double>> to_array(const ComplexMatrix& m) {
    const auto n = static_cast<py::ssize_t>(m.dim());
    py::array_t<std::complex<double>> out({n, n});
    auto v = out.mutable_unchecked<2>();
    for (py::ssize_t r = 0; r < n; ++r)
        for (py::ssize_t c = 0; c < n; ++c) v(r, c) = m(r, c);
    return out;
}

NaqiConfig make_config(int grid, int starts, std::uint64_t seed, unsigned workers, bool two_angle) {
    NaqiConfig c;
    c.outer.grid_points_per_dim = grid;
    c.outer.multistart_count = starts;
    c.outer.seed = seed;
    c.outer.workers = workers;
    if (two_angle) c.family = FrameFamily::TwoAngle;
    return c;
}

FamilyTemplate family_template(const std::string& name) {
    if (name == "werner") return [](double p) { return StateFamily::werner(p); };
    if (name == "bell-mixture") return [](double p) { return StateFamily::bell_mixture(p); };
    throw std::invalid_argument("unknown family '" + name + "' (expected werner or bell-mixture)");
}

py::dict result_dict(const NaqiResult& r) {
    py::dict d;
    d["measure"] = std::string(to_string(r.measure));
    d["value"] = r.value;
    d["bound"] = r.value - r.witness;
    d["witness"] = r.witness;
    d["verdict"] = r.verdict;
    d["steerable_implied"] = r.steerable_implied;
    d["frame_family"] = std::string(to_string(r.family));
    d["mub"] = py::make_tuple(r.theta1, r.phi1, r.chi);
    py::list meas;
    for (const auto& a : r.measurement_angles) meas.append(py::make_tuple(a.theta, a.phi));
    d["measurements"] = meas;
    d["certified"] = r.diagnostics.certified;
    return d;
}

py::list exclusion_list(const std::vector<ExclusionRecord>& recs) {
    py::list out;
    for (const auto& rec : recs) {
        py::dict d;
        d["params"] = rec.params;
        d["values"] = py::make_tuple(rec.pairs[0].value, rec.pairs[1].value, rec.pairs[2].value);
        d["count_exceeding"] = rec.count_exceeding;
        out.append(d);
    }
    return out;
}

#define NAQI_CONFIG_ARGS                                                                                     \
    py::arg("grid") = 24, py::arg("starts") = 8, py::arg("seed") = 0, py::arg("workers") = 1,                 \
        py::arg("two_angle") = false

}  // namespace

PYBIND11_MODULE(_pynaqi, m) {
    m.doc() = "Nonlocal advantage of quantum imaginarity";

    py::enum_<Measure>(m, "Measure").value("L1", Measure::L1).value("RelativeEntropy", Measure::RelativeEntropy);

    m.def("parse_measure", [](const std::string& tag) { return parse_measure(tag); });

    m.def(
        "imaginarity",
        [](Measure measure, std::array<double, 3> n, double theta1, double phi1, double chi, int index) {
            if (index < 0 || index > 2) throw std::invalid_argument("index must be 0, 1 or 2");
            const auto t = mub_triple(theta1, phi1, chi);
            return imag_measure(measure, bloch_to_density({n[0], n[1], n[2]}), t.bases[static_cast<std::size_t>(index)]);
        },
        "Imaginarity of a qubit with Bloch vector n in one basis of a MUB triple", py::arg("measure"), py::arg("bloch"),
        py::arg("theta1") = 0.0, py::arg("phi1") = 0.0, py::arg("chi") = 0.0, py::arg("index") = 0);

    m.def(
        "bound",
        [](Measure measure) {
            const auto& b = bound_constant(measure);
            return py::make_tuple(b.value, py::make_tuple(b.maximizer.x, b.maximizer.y, b.maximizer.z));
        },
        "(value, maximizer) of the complementarity bound", py::arg("measure"));

    m.def("werner_state", [](double p) { return to_array(build_state(StateFamily::werner(p)).matrix()); }, py::arg("p"));
    m.def("bell_mixture_state", [](double p) { return to_array(build_state(StateFamily::bell_mixture(p)).matrix()); },
          py::arg("p"));
    m.def(
        "three_qubit_state",
        [](std::array<double, 5> lambda, double phi) {
            return to_array(build_state(StateFamily::three_qubit({lambda, phi})).matrix());
        },
        py::arg("lambda_"), py::arg("phi") = 0.0);

    m.def(
        "naqi",
        [](py::array rho, Measure measure, int grid, int starts, std::uint64_t seed, unsigned workers, bool two_angle) {
            const DensityMatrix state = to_density(rho);
            const NaqiConfig c = make_config(grid, starts, seed, workers, two_angle);
            py::gil_scoped_release release;
            const NaqiResult r = witness(state, measure, c);
            py::gil_scoped_acquire acquire;
            return result_dict(r);
        },
        py::arg("rho"), py::arg("measure"), NAQI_CONFIG_ARGS);

    m.def(
        "scan",
        [](const std::string& family, Measure measure, std::vector<double> grid_values, int grid, int starts,
           std::uint64_t seed, unsigned workers, bool two_angle) {
            const auto fam = family_template(family);
            const auto pts = scan_family(fam, grid_values, measure, make_config(grid, starts, seed, workers, two_angle));
            py::list out;
            for (const auto& p : pts) out.append(py::make_tuple(p.param, p.value, p.witness, p.verdict));
            return out;
        },
        "List of (param, N, witness, verdict)", py::arg("family"), py::arg("measure"), py::arg("params"),
        NAQI_CONFIG_ARGS);

    m.def(
        "threshold",
        [](const std::string& family, Measure measure, double lo, double hi, double tol, int grid, int starts,
           std::uint64_t seed, unsigned workers, bool two_angle) {
            return find_naqi_threshold(family_template(family), measure, lo, hi,
                                       make_config(grid, starts, seed, workers, two_angle), tol);
        },
        py::arg("family"), py::arg("measure"), py::arg("lo") = 0.5, py::arg("hi") = 1.0, py::arg("tol") = 1e-5,
        NAQI_CONFIG_ARGS);

    m.def(
        "exclusion_line",
        [](int points, Measure measure, bool reversed, int grid, int starts, std::uint64_t seed, unsigned workers,
           bool two_angle) {
            return exclusion_list(exclusion_scan_line(points, measure, make_config(grid, starts, seed, workers, two_angle),
                                                      reversed ? PairRoles::Reversed : PairRoles::Forward));
        },
        py::arg("points"), py::arg("measure") = Measure::L1, py::arg("reversed") = false, NAQI_CONFIG_ARGS);

    m.def(
        "exclusion_surface",
        [](int alpha_points, int beta_points, Measure measure, bool reversed, int grid, int starts, std::uint64_t seed,
           unsigned workers, bool two_angle) {
            return exclusion_list(exclusion_scan_surface(alpha_points, beta_points, measure,
                                                         make_config(grid, starts, seed, workers, two_angle),
                                                         reversed ? PairRoles::Reversed : PairRoles::Forward));
        },
        py::arg("alpha_points"), py::arg("beta_points"), py::arg("measure") = Measure::L1, py::arg("reversed") = false,
        NAQI_CONFIG_ARGS);
}
