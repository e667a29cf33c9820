#include "ccsl/bounds.hpp"
#include "ccsl/config.hpp"
#include "ccsl/diffusion.hpp"
#include "ccsl/error.hpp"
#include "ccsl/noise.hpp"
#include "ccsl/predict.hpp"
#include "ccsl/registry.hpp"
#include "ccsl/special.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

namespace py = pybind11;
using namespace ccsl;

namespace {

NoiseSpec to_noise(const py::object& o) {
    if (o.is_none())
        return NoiseSpec::white();
    if (py::isinstance<NoiseSpec>(o))
        return o.cast<NoiseSpec>();
    if (py::isinstance<py::str>(o))
        return parse_noise(o.cast<std::string>());
    const double wc = o.cast<double>();
    return std::isinf(wc) ? NoiseSpec::white() : NoiseSpec::exponential(wc);
}

ExperimentDescriptor to_experiment(const py::object& o) {
    if (py::isinstance<py::str>(o))
        return load(o.cast<std::string>());
    return o.cast<ExperimentDescriptor>();
}

py::dict curve_dict(const ExclusionCurve& c) {
    py::list rc, lm;
    for (const auto& p : c.points) {
        rc.append(p.rc);
        lm.append(p.lambda_max);
    }
    py::dict d;
    d["experiment"] = c.experiment_id;
    d["rc"] = rc;
    d["lambda_max"] = lm;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Colored collapse-noise predictions and exclusion bounds";

    static py::exception<Error> error(m, "CcslError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object instance = py::reinterpret_borrow<py::object>(error)(std::string(e.what()));
            instance.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error.ptr(), instance.ptr());
        }
    });

    py::class_<NoiseSpec>(m, "NoiseSpec")
        .def_static("white", &NoiseSpec::white)
        .def_static("exponential", &NoiseSpec::exponential, py::arg("omega_c"))
        .def_static("parse", &parse_noise, py::arg("text"))
        .def_property_readonly("is_white", &NoiseSpec::is_white)
        .def_property_readonly("omega_c", &NoiseSpec::omega_c)
        .def("__eq__", [](const NoiseSpec& a, const NoiseSpec& b) { return a == b; })
        .def("__repr__", [](const NoiseSpec& n) { return "NoiseSpec(" + format_noise(n) + ")"; });

    py::class_<MassDistribution>(m, "MassDistribution")
        .def_static("sphere", [](double r, double rho) { return MassDistribution::sphere(r, rho); },
                    py::arg("radius"), py::arg("density"))
        .def_static("cube", [](double l, double rho) { return MassDistribution::cube(l, rho); },
                    py::arg("side"), py::arg("density"))
        .def_static("cuboid",
                    [](double lx, double ly, double lz, double rho) {
                        return MassDistribution::cuboid(lx, ly, lz, rho);
                    },
                    py::arg("lx"), py::arg("ly"), py::arg("lz"), py::arg("density"))
        .def_static("cylinder",
                    [](double r, double len, double rho, std::array<double, 3> axis) {
                        return MassDistribution::cylinder(r, len, rho, {axis[0], axis[1], axis[2]});
                    },
                    py::arg("radius"), py::arg("length"), py::arg("density"),
                    py::arg("axis") = std::array<double, 3>{0, 0, 1})
        .def_static("point_mass", [](double mass) { return MassDistribution::point_mass(mass); },
                    py::arg("mass"))
        .def_property_readonly("mass", [](const MassDistribution& d) { return total_mass(d); });

    py::class_<ExperimentDescriptor>(m, "Experiment")
        .def_readonly("id", &ExperimentDescriptor::id)
        .def_readonly("provenance", &ExperimentDescriptor::provenance)
        .def_property_readonly("kind", [](const ExperimentDescriptor& e) { return std::string(to_string(e.kind)); })
        .def_property_readonly("ceiling", [](const ExperimentDescriptor& e) { return e.ceiling.value; })
        .def("to_config", [](const ExperimentDescriptor& e) { return serialize(e); })
        .def("__repr__", [](const ExperimentDescriptor& e) { return "Experiment('" + e.id + "')"; });

    m.def("list_bundled", &list_bundled);
    m.def("load", &load, py::arg("name_or_path"));
    m.def("parse", [](const std::string& text) { return parse_descriptor(text); }, py::arg("text"));

    m.def("spectrum", [](const py::object& n, double omega) { return spectrum(to_noise(n), omega); },
          py::arg("noise"), py::arg("omega"));
    m.def("eta",
          [](const MassDistribution& d, double lambda, double rc) { return eta(d, {lambda, rc}).eta; },
          py::arg("geometry"), py::arg("lam"), py::arg("rc"));
    m.def("geometry_factor",
          [](const MassDistribution& d, double rc) { return geometry_factor(d, rc).eta; },
          py::arg("geometry"), py::arg("rc"));

    m.def("force_psd",
          [](const MassDistribution& d, double lambda, double rc, const py::object& n, double omega) {
              return dns_ccsl(d, {lambda, rc}, to_noise(n), omega);
          },
          py::arg("geometry"), py::arg("lam"), py::arg("rc"), py::arg("noise") = py::none(),
          py::arg("omega") = 0.0);
    m.def("xray_normalized",
          [](double lambda, double rc, const py::object& n, double omega) {
              return xray_normalized({lambda, rc}, to_noise(n), omega);
          },
          py::arg("lam"), py::arg("rc"), py::arg("noise"), py::arg("omega"));
    m.def("lambda_eff",
          [](double lambda, double rc, const py::object& n, double v_s) {
              return lambda_eff({lambda, rc}, to_noise(n), PhononModel{v_s});
          },
          py::arg("lam"), py::arg("rc"), py::arg("noise"), py::arg("v_s"));
    m.def("cold_atom_bracket", &cold_atom_bracket, py::arg("t"), py::arg("tau"));

    m.def("predict",
          [](const py::object& e, double lambda, double rc, const py::object& n) {
              return predict_observable(to_experiment(e), {lambda, rc}, to_noise(n));
          },
          py::arg("experiment"), py::arg("lam"), py::arg("rc"), py::arg("noise") = py::none());
    m.def("lambda_max",
          [](const py::object& e, double rc, const py::object& n) {
              return lambda_max(to_experiment(e), to_noise(n), rc);
          },
          py::arg("experiment"), py::arg("rc"), py::arg("noise") = py::none());
    m.def("log_grid", &log_grid, py::arg("lo"), py::arg("hi"), py::arg("n"));
    m.def("default_rc_grid", &default_rc_grid);

    m.def("scan",
          [](const py::list& experiments, const py::object& n, const py::object& grid, unsigned jobs) {
              std::vector<ExperimentDescriptor> ex;
              for (const auto& e : experiments)
                  ex.push_back(to_experiment(py::reinterpret_borrow<py::object>(e)));
              const auto g = grid.is_none() ? default_rc_grid() : grid.cast<std::vector<double>>();
              const NoiseSpec noise = to_noise(n);
              ScanResult res;
              {
                  py::gil_scoped_release release;
                  res = scan(ex, noise, g, jobs);
              }
              py::list curves;
              for (const auto& c : res.curves)
                  curves.append(curve_dict(c));
              py::list errors;
              for (const auto& err : res.errors) {
                  py::dict d;
                  d["experiment"] = err.experiment_id;
                  d["rc"] = err.rc;
                  d["kind"] = std::string(to_string(err.kind));
                  d["message"] = err.message;
                  errors.append(d);
              }
              py::dict out;
              out["curves"] = curves;
              out["errors"] = errors;
              out["envelope"] = res.curves.empty() ? py::object(py::none()) : curve_dict(envelope(res.curves));
              return out;
          },
          py::arg("experiments"), py::arg("noise") = py::none(), py::arg("rc_grid") = py::none(),
          py::arg("jobs") = 0);

    m.def("erfcx", &special::erfcx, py::arg("x"));
    m.def("phonon_suppression", &special::phonon_suppression, py::arg("x"));
}
