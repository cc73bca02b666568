#include "steklov/bounds.hpp"
#include "steklov/cheeger.hpp"
#include "steklov/dtn.hpp"
#include "steklov/error.hpp"
#include "steklov/geometry.hpp"
#include "steklov/mesh.hpp"
#include "steklov/spectra.hpp"
#include "steklov/surface.hpp"
#include "steklov/verify.hpp"
#include "steklov/version.hpp"
#include "steklov/zoo.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace steklov;

namespace {

// JSON crosses the boundary as text; the python package decodes it.
std::string dump(const nlohmann::json& j) { return j.dump(); }

MixedKind parse_kind(const std::string& kind) {
  if (kind == "N" || kind == "neumann") return MixedKind::Neumann;
  if (kind == "D" || kind == "dirichlet") return MixedKind::Dirichlet;
  throw InvalidArgument("kind must be 'N' or 'D', got '" + kind + "'");
}

py::list closed_form(const ClosedFormSpectrum& s) {
  py::list out;
  for (const auto& e : s.entries) out.append(py::make_tuple(e.value, e.j, std::string(to_string(e.mode))));
  return out;
}

Eigen::MatrixXd vertex_array(const TriMesh& m) {
  Eigen::MatrixXd v(m.vertex_count(), 2);
  for (int i = 0; i < m.vertex_count(); ++i) v.row(i) = m.vertices()[i].transpose();
  return v;
}

Eigen::MatrixXi triangle_array(const TriMesh& m) {
  Eigen::MatrixXi t(m.triangle_count(), 3);
  for (int i = 0; i < m.triangle_count(); ++i)
    for (int c = 0; c < 3; ++c) t(i, c) = m.triangles()[i][c];
  return t;
}

// Mixed problem on the boundary strips, meshed the same way as the CLI does it.
std::pair<TriMesh, SpectrumResult> strip_problem(const MetricSurface& surface, double h, MixedKind kind, int k) {
  const auto strips = boundary_strips(surface);
  MeshOptions mo;
  mo.extra_rows = {strips[0][1], strips[1][0]};
  TriMesh mesh = triangulate_bands(surface, h, strips, mo);
  const std::vector<int> outer{0, 1}, inner{2, 3};
  SpectrumResult r = mixed_spectrum(mesh, outer, inner, kind, k);
  return {std::move(mesh), std::move(r)};
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<MetricSurface>(m, "Surface")
      .def_static("from_json", [](const std::string& text) { return build_surface(parse_surface_spec(text)); })
      .def_static("preset", [](const std::string& id) { return build_surface(zoo_entry(id).spec); })
      .def_property_readonly("family", &MetricSurface::family)
      .def_property_readonly("boundary_count", &MetricSurface::boundary_count)
      .def_property_readonly("boundary_lengths",
                             [](const MetricSurface& s) {
                               std::vector<double> out;
                               for (const auto& c : s.boundaries()) out.push_back(c.length);
                               return out;
                             })
      .def_property_readonly("t_range", [](const MetricSurface& s) { return py::make_tuple(s.t_min(), s.t_max()); })
      .def("circumference", &MetricSurface::circumference, py::arg("t"))
      .def("scaled", &MetricSurface::scaled, py::arg("c"))
      .def("mesh_size", [](const MetricSurface& s, double f) { return mesh_size(s, f); }, py::arg("factor"))
      .def("triangulate", [](const MetricSurface& s, double h) { return triangulate(s, h); }, py::arg("h"));

  py::class_<TriMesh>(m, "Mesh")
      .def_property_readonly("vertex_count", &TriMesh::vertex_count)
      .def_property_readonly("triangle_count", &TriMesh::triangle_count)
      .def_property_readonly("h", &TriMesh::h)
      .def_property_readonly("vertices", &vertex_array)
      .def_property_readonly("triangles", &triangle_array)
      .def_property_readonly("boundary_labels", &TriMesh::boundary_labels)
      .def("boundary_length", &TriMesh::boundary_length, py::arg("label"))
      .def("total_area", &TriMesh::total_area);

  py::class_<SpectrumResult>(m, "Spectrum")
      .def_readonly("eigenvalues", &SpectrumResult::eigenvalues)
      .def_readonly("residuals", &SpectrumResult::residuals)
      .def_readonly("boundary_vertices", &SpectrumResult::boundary_vertices)
      .def_readonly("extensions", &SpectrumResult::extensions)
      .def("sigma", &SpectrumResult::sigma_clean, py::arg("k"))
      .def("max_residual", &SpectrumResult::max_residual);

  m.def("steklov_spectrum", [](const TriMesh& mesh, int k) { return steklov_spectrum(mesh, k); }, py::arg("mesh"),
        py::arg("k"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "strip_spectrum",
      [](const MetricSurface& s, double h, const std::string& kind, int k) {
        return strip_problem(s, h, parse_kind(kind), k).second;
      },
      py::arg("surface"), py::arg("h"), py::arg("kind"), py::arg("k"));

  m.def("geometry_json", [](const MetricSurface& s, const TriMesh& mesh) { return dump(to_json(geometric_data(s, mesh))); },
        py::arg("surface"), py::arg("mesh"));

  m.def(
      "level_set_sweep",
      [](const TriMesh& mesh, const Eigen::VectorXd& u) {
        const auto sw = level_set_sweep(mesh, u);
        py::list rows;
        for (const auto& r : sw.records)
          rows.append(py::make_tuple(r.t, r.perimeter, r.area, r.trace, r.admissible));
        const auto est = cheeger_estimate(sw);
        return py::make_tuple(rows, est.h1, est.h2, est.bound);
      },
      py::arg("mesh"), py::arg("u"));

  m.def("rho", &rho);
  m.def("cylinder_steklov", [](double R, double T, int k) { return closed_form(cylinder_steklov(R, T, k)); },
        py::arg("R"), py::arg("T"), py::arg("k"));
  m.def(
      "cylinder_mixed",
      [](double a, double L, const std::string& kind, int k) { return closed_form(cylinder_mixed(a, L, parse_kind(kind), k)); },
      py::arg("a"), py::arg("L"), py::arg("kind"), py::arg("k"));
  m.def("collar_mixed",
        [](double a, const std::string& kind, int k) { return closed_form(collar_mixed(a, parse_kind(kind), k)); },
        py::arg("a"), py::arg("kind"), py::arg("k"));
  m.def("collar_width", &collar_width, py::arg("l"));
  m.def("collar_test_energy", &collar_test_energy, py::arg("l"));
  m.def(
      "sandwich_bounds",
      [](double a, double L, int b, int k) {
        const auto iv = sandwich_bounds(a, L, b, k);
        return py::make_tuple(iv.lower, iv.upper, iv.j);
      },
      py::arg("a"), py::arg("L"), py::arg("b"), py::arg("k"));
  m.def("constants_json", [](int g, int b) { return dump(to_json(hyperbolic_constants(g, b))); }, py::arg("g"),
        py::arg("b"));

  m.def("zoo_json", [] { return std::string(zoo_document()); });
  m.def("suite_names", &suite_names);
  m.def(
      "verify_json",
      [](const std::string& suite, double h_factor, bool timings) {
        VerifyOptions o;
        o.h_factor = h_factor;
        o.timings = timings;
        VerificationReport r;
        {
          py::gil_scoped_release release;
          r = run_verification(suite, o);
        }
        return dump(to_json(r, timings));
      },
      py::arg("suite"), py::arg("h_factor") = 0.02, py::arg("timings") = true);
}
