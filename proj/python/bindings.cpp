#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "waveguide/bilinear.hpp"
#include "waveguide/counting.hpp"
#include "waveguide/error.hpp"
#include "waveguide/extremizers.hpp"
#include "waveguide/fourier.hpp"
#include "waveguide/imethod.hpp"
#include "waveguide/littlewood_paley.hpp"
#include "waveguide/propagator.hpp"
#include "waveguide/sweep.hpp"

namespace py = pybind11;
using namespace waveguide;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> shape_of(const Geometry& g) {
  return {g.grid_points().begin(), g.grid_points().end()};
}

SpectralField to_field(const Geometry& g, Domain d, const CArray& a) {
  if (static_cast<std::size_t>(a.size()) != g.size()) {
    throw StructuralError("array size does not match the geometry");
  }
  return SpectralField(g, d, std::vector<Complex>(a.data(), a.data() + a.size()));
}

CArray to_array(const SpectralField& f) {
  CArray out(shape_of(f.geometry()));
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

py::dict record_dict(const EstimateRecord& r) {
  py::dict d;
  d["m"] = r.m;
  d["n"] = r.n;
  d["lambda"] = r.lambda;
  d["L"] = r.box_length;
  d["N1"] = r.N1;
  d["N2"] = r.N2;
  d["T"] = r.T;
  d["steps"] = r.steps;
  d["lhs"] = r.lhs;
  d["norm_f"] = r.norm_f;
  d["norm_g"] = r.norm_g;
  d["k_pred"] = r.k_pred;
  d["ratio"] = r.ratio;
  return d;
}

py::dict table_dict(const SweepTable& t) {
  py::dict d;
  d["header"] = t.header;
  d["rows"] = t.rows;
  d["summary"] = py::module_::import("json").attr("loads")(t.summary_json);
  d["failed_rows"] = t.failed_rows;
  d["numerical_aborts"] = t.numerical_aborts;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dispersive estimates on waveguide manifolds";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<UnsupportedRegime>(m, "UnsupportedRegime", PyExc_NotImplementedError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DegenerateFit>(m, "DegenerateFit", PyExc_ValueError);
  py::register_exception<NumericalAbort>(m, "NumericalAbort", PyExc_ArithmeticError);
  py::register_exception<ResourceRefusal>(m, "ResourceRefusal", PyExc_RuntimeError);
  // Carry the modeled cost on the Python exception.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ResourceRefusal& e) {
      py::object cls = py::module_::import("waveguide_lab._core").attr("ResourceRefusal");
      py::object exc = cls(e.what());
      exc.attr("estimate") = e.estimate();
      PyErr_SetObject(cls.ptr(), exc.ptr());
    }
  });

  py::class_<Geometry>(m, "Geometry")
      .def(py::init<int, int, double, double, std::vector<int>>(), py::arg("m"), py::arg("n"),
           py::arg("lam"), py::arg("box_length"), py::arg("grid_points"))
      .def_property_readonly("m", &Geometry::m)
      .def_property_readonly("n", &Geometry::n)
      .def_property_readonly("lam", &Geometry::lambda)
      .def_property_readonly("box_length", &Geometry::box_length)
      .def_property_readonly("shape", [](const Geometry& g) { return shape_of(g); })
      .def("frequency_axis", &Geometry::frequency_axis, py::arg("dir"))
      .def("coordinate_axis", &Geometry::coordinate_axis, py::arg("dir"));

  m.def("forward_transform", [](const Geometry& g, const CArray& a) {
    return to_array(forward_transform(to_field(g, Domain::kPhysical, a)));
  }, py::arg("geometry"), py::arg("samples"));
  m.def("inverse_transform", [](const Geometry& g, const CArray& a) {
    return to_array(inverse_transform(to_field(g, Domain::kFrequency, a)));
  }, py::arg("geometry"), py::arg("spectrum"));
  m.def("propagate", [](const Geometry& g, const CArray& a, double t) {
    return to_array(propagate(to_field(g, Domain::kFrequency, a), t));
  }, py::arg("geometry"), py::arg("spectrum"), py::arg("t"));
  m.def("project_band", [](const Geometry& g, const CArray& a, double scale) {
    return to_array(project_band(to_field(g, Domain::kFrequency, a), DyadicBand::from_scale(scale)));
  }, py::arg("geometry"), py::arg("spectrum"), py::arg("scale"));

  m.def("predicted_constant", &predicted_constant, py::arg("m"), py::arg("n"), py::arg("lam"),
        py::arg("N1"), py::arg("N2"));
  m.def("bilinear_record", [](const Geometry& g, const CArray& f, const CArray& h, double N1,
                              double N2, double T, int steps) {
    return record_dict(estimate_record(to_field(g, Domain::kFrequency, f),
                                       to_field(g, Domain::kFrequency, h),
                                       DyadicBand::from_scale(N1), DyadicBand::from_scale(N2),
                                       TimeWindow(0.0, T, steps)));
  }, py::arg("geometry"), py::arg("f"), py::arg("g"), py::arg("N1"), py::arg("N2"),
     py::arg("T"), py::arg("steps"));

  m.def("slice_length", &slice_length_closed_form, py::arg("mu"), py::arg("thickness") = 1.0);
  m.def("measure", [](double lam, double N1, double N2, std::vector<double> eta, double tau,
                      double thickness, int mm, int n) {
    CountingInstance c;
    c.m = mm;
    c.n = n;
    c.lambda = lam;
    c.N1 = N1;
    c.N2 = N2;
    c.eta = std::move(eta);
    c.tau = tau;
    c.thickness = thickness;
    return measure_C(c);
  }, py::arg("lam"), py::arg("N1"), py::arg("N2"), py::arg("eta"), py::arg("tau"),
     py::arg("thickness") = 1.0, py::arg("m") = 1, py::arg("n") = 1);
  m.def("measure_sup", [](double lam, double N1, double N2, int draws, std::uint64_t seed) {
    const MeasureSup s = measure_C_sup(lam, N1, N2, draws, seed);
    py::dict d;
    d["sup"] = s.sup;
    d["eta"] = s.eta;
    d["tau"] = s.tau;
    d["evaluated"] = s.evaluated;
    return d;
  }, py::arg("lam"), py::arg("N1"), py::arg("N2"), py::arg("draws"), py::arg("seed"));

  m.def("lower_bound", [](const std::string& kind, double lam, double N1, double N2, int mm,
                          int n) {
    ExtremizerCase c;
    c.kind = extremizer_kind_from_string(kind);
    c.m = mm;
    c.n = n;
    c.lambda = lam;
    c.N1 = N1;
    c.N2 = N2;
    const LowerBoundResult r = lower_bound_check(c);
    py::dict d = record_dict(r.record);
    d["degenerate"] = r.degenerate;
    return d;
  }, py::arg("kind"), py::arg("lam"), py::arg("N1"), py::arg("N2"), py::arg("m") = 1,
     py::arg("n") = 1);

  m.def("i_multiplier_profile", &i_multiplier_profile, py::arg("r"), py::arg("s"));
  m.def("increment_point", [](double N, double s, double alpha, int k, std::uint64_t seed,
                              double dt_coefficient, double horizon, double coupling) {
    IncrementDataSpec spec;
    spec.seed = seed;
    spec.dt_coefficient = dt_coefficient;
    spec.horizon = horizon;
    spec.coupling = coupling;
    const IncrementPoint p = increment_point(N, s, alpha, k, spec);
    py::dict d;
    d["N"] = p.N;
    d["lambda"] = p.lambda;
    d["grid"] = p.grid;
    d["dt"] = p.dt;
    d["increment"] = p.increment;
    d["mass_drift"] = p.mass_drift;
    d["energy_drift"] = p.energy_drift;
    return d;
  }, py::arg("N"), py::arg("s"), py::arg("alpha"), py::arg("k") = 1, py::arg("seed") = 1,
     py::arg("dt_coefficient") = 1e-3, py::arg("horizon") = 1.0, py::arg("coupling") = 1.0);

  m.def("estimate_cost", [](const std::string& json) { return estimate_cost(parse_config(json)); },
        py::arg("config_json"));
  m.def("run_experiment", [](const std::string& json, int workers) {
    ExperimentConfig c = parse_config(json);
    if (workers > 0) c.workers = workers;
    SweepTable t;
    {
      py::gil_scoped_release release;
      t = run_experiment(c);
    }
    return table_dict(t);
  }, py::arg("config_json"), py::arg("workers") = 0);
}
