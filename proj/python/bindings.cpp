#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sphull/error.hpp"
#include "sphull/evt_core.hpp"
#include "sphull/harness.hpp"
#include "sphull/hull_engine.hpp"
#include "sphull/mixture_tails.hpp"
#include "sphull/predictor.hpp"
#include "sphull/quadrature.hpp"
#include "sphull/radial_models.hpp"

namespace py = pybind11;
using namespace sphull;

namespace {

PointCloud cloud_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) fail(ErrorKind::Validation, "point cloud is empty");
    return make_cloud(static_cast<int>(rows.front().size()), rows);
}

py::dict stats_dict(const HullStats& h) {
    py::dict out;
    out["v_n"] = h.v_n;
    out["f_n"] = h.f_n;
    out["area"] = h.area;
    out["volume"] = h.volume;
    out["perimeter"] = h.perimeter ? py::cast(*h.perimeter) : py::none();
    out["vertices"] = h.vertices;
    return out;
}

std::vector<Quantity> quantities(const std::vector<std::string>& names) {
    std::vector<Quantity> qs;
    for (const auto& s : names) qs.push_back(quantity_from_string(s));
    return qs;
}

}  // namespace

PYBIND11_MODULE(_sphull, m) {
    m.doc() = "Convex hulls of spherically symmetric samples: tails, predictions and simulation";

    // one exception type; the error category travels in .kind
    static PyObject* base = PyErr_NewException("sphull.SphullError", PyExc_RuntimeError, nullptr);
    m.add_object("SphullError", py::handle(base));
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = py::reinterpret_borrow<py::object>(base)(e.what());
            err.attr("kind") = to_string(e.kind());
            PyErr_SetObject(base, err.ptr());
        }
    });

    py::class_<RadialLaw>(m, "RadialLaw")
        .def(py::init(&parse_law), py::arg("spec"))
        .def_property_readonly("family", [](const RadialLaw& F) { return std::string(to_string(F.family())); })
        .def_property_readonly("params", &RadialLaw::params)
        .def_property_readonly("upper_endpoint", &RadialLaw::upper_endpoint)
        .def_property_readonly("mda_class", [](const RadialLaw& F) { return std::string(to_string(F.mda_class())); })
        .def_property_readonly("mda_index", &RadialLaw::mda_index)
        .def("survival", &RadialLaw::survival, py::arg("u"))
        .def("cdf", &RadialLaw::cdf, py::arg("u"))
        .def("quantile", &RadialLaw::quantile, py::arg("p"))
        .def("survival_quantile", &RadialLaw::survival_quantile, py::arg("q"))
        .def("density", &RadialLaw::density, py::arg("u"))
        .def("spec_string", &RadialLaw::spec_string)
        .def("__repr__", [](const RadialLaw& F) { return "RadialLaw('" + F.spec_string() + "')"; });

    m.def("parse_law", &parse_law, py::arg("spec"));

    m.def(
        "norming",
        [](const RadialLaw& F, double n, bool declared) {
            const auto g = norming(F, n, declared ? ScalingSource::Declared : ScalingSource::Numeric);
            py::dict out;
            out["n"] = g.n;
            out["b_n"] = g.b_n;
            out["a_n"] = g.a_n;
            out["xi"] = g.xi;
            return out;
        },
        py::arg("law"), py::arg("n"), py::arg("declared_w") = false);
    m.def(
        "scaling_w", [](const RadialLaw& F, double u) { return scaling_from_survival(F, u); }, py::arg("law"),
        py::arg("u"));

    m.def(
        "marginal_survival", [](const RadialLaw& F, int d, double u) { return marginal_survival_Qd(F, d, u); },
        py::arg("law"), py::arg("d"), py::arg("u"));
    m.def(
        "h_survival", [](const RadialLaw& F, double u) { return h_survival(F, u); }, py::arg("law"), py::arg("u"));
    m.def(
        "k_survival", [](const RadialLaw& F, double s) { return k_survival(F, s); }, py::arg("law"), py::arg("s"));

    m.def(
        "vn_bounds",
        [](const RadialLaw& F, int d, double n) {
            const auto b = vn_integral_bounds(F, d, n);
            return py::make_tuple(b.lower, b.upper);
        },
        py::arg("law"), py::arg("d"), py::arg("n"));

    m.def(
        "predict",
        [](const RadialLaw& F, int d, double n, const std::string& formula, const std::string& norm) {
            PredictOptions o;
            if (norm == "q") o.norming = NormingSource::QQuadrature;
            else if (norm != "f") fail(ErrorKind::Validation, "norming must be 'f' or 'q'");
            const auto p = predict(F, d, n, formula_from_string(formula), o);
            py::dict out;
            out["formula_id"] = to_string(p.id);
            out["value"] = p.value;
            out["upper"] = p.upper ? py::cast(*p.upper) : py::none();
            out["xi"] = p.xi;
            out["b_n"] = p.b_n;
            out["caveat"] = p.caveat;
            py::dict extras;
            for (const auto& [k, v] : p.extras) extras[py::str(k)] = v;
            out["extras"] = extras;
            return out;
        },
        py::arg("law"), py::arg("d"), py::arg("n"), py::arg("formula"), py::arg("norming") = "f");

    m.def(
        "hull_stats", [](const std::vector<std::vector<double>>& rows) { return stats_dict(hull_stats(cloud_from_rows(rows))); },
        py::arg("points"));
    m.def(
        "hull_bruteforce",
        [](const std::vector<std::vector<double>>& rows) { return stats_dict(hull_bruteforce(cloud_from_rows(rows))); },
        py::arg("points"));

    m.def(
        "sample",
        [](const RadialLaw& F, int d, std::size_t n, std::uint64_t seed, std::uint64_t replication) {
            const auto c = sample_cloud(F, d, n, seed, replication);
            std::vector<std::vector<double>> rows(c.n);
            for (std::size_t i = 0; i < c.n; ++i) rows[i].assign(c.row(i), c.row(i) + c.d);
            return rows;
        },
        py::arg("law"), py::arg("d"), py::arg("n"), py::arg("seed"), py::arg("replication") = 0);

    m.def(
        "simulate",
        [](const RadialLaw& F, int d, std::size_t n, const std::vector<std::string>& qs, std::size_t reps,
           std::uint64_t seed, unsigned workers) {
            const auto qv = quantities(qs);
            std::vector<EstimateRecord> recs;
            {
                py::gil_scoped_release nogil;
                recs = mc_estimate(F, d, n, qv, reps, seed, {workers});
            }
            py::list out;
            for (const auto& e : recs) {
                py::dict r;
                r["quantity"] = to_string(e.quantity);
                r["n"] = e.n;
                r["d"] = e.d;
                r["replications"] = e.replications;
                r["mean"] = e.mean;
                r["variance"] = e.sample_variance;
                r["ci95"] = e.ci_halfwidth_95;
                out.append(r);
            }
            return out;
        },
        py::arg("law"), py::arg("d"), py::arg("n"), py::arg("quantities") = std::vector<std::string>{"v_n"},
        py::arg("replications") = 100, py::arg("seed") = 1, py::arg("workers") = 1);

    m.def(
        "run_config",
        [](const std::string& text) {
            const auto rec = harness::run_experiment(harness::parse_config(text));
            py::dict out;
            out["run_id"] = rec.run_id;
            out["files"] = rec.files;
            out["manifest"] = rec.manifest_path;
            out["failures"] = rec.failures.size();
            return out;
        },
        py::arg("config_text"));

    m.attr("__version__") = SPHULL_VERSION;
}
