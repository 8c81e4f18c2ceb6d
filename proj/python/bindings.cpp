#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rtf/config.hpp"
#include "rtf/driver.hpp"
#include "rtf/errors.hpp"

namespace py = pybind11;
using namespace rtf;

namespace {

py::array_t<double> norms_array(const std::vector<diag::DivergenceReport>& rows) {
  py::array_t<double> a({py::ssize_t(rows.size()), py::ssize_t(10)});
  auto m = a.mutable_unchecked<2>();
  for (py::ssize_t k = 0; k < py::ssize_t(rows.size()); ++k) {
    const auto& r = rows[std::size_t(k)];
    const double v[10] = {double(r.step), r.time,        r.dt,        r.divB_L1,    r.divB_L2,
                          r.divE_res_L1,  r.divE_res_L2, r.divE_acc_L1, r.divE_acc_L2, r.total_entropy};
    for (int c = 0; c < 10; ++c) m(k, c) = v[c];
  }
  return a;
}

// (ny, nx, 18) conserved slots over the interior
py::array_t<double> conserved_array(const Grid2D& g, const Field& U) {
  constexpr int n = int(kNumVarsPhm);
  py::array_t<double> a({py::ssize_t(g.ny), py::ssize_t(g.nx), py::ssize_t(n)});
  auto m = a.mutable_unchecked<3>();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      for (int k = 0; k < n; ++k) m(j, i, k) = U(i, j)[std::size_t(k)];
  return a;
}

// (ny, nx, 10): rho ux uy uz p for ions then electrons
py::array_t<double> primitive_array(const Grid2D& g, const PrimField& W) {
  py::array_t<double> a({py::ssize_t(g.ny), py::ssize_t(g.nx), py::ssize_t(10)});
  auto m = a.mutable_unchecked<3>();
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const PrimitiveVector& w = W(i, j);
      int k = 0;
      for (const SpeciesPrimitive* s : {&w.ion, &w.electron})
        for (double x : {s->rho, s->ux, s->uy, s->uz, s->p}) m(j, i, k++) = x;
    }
  return a;
}

}  // namespace

PYBIND11_MODULE(_rtwofluid, mod) {
  mod.doc() = "two-fluid relativistic plasma solver";

  // later registrations are tried first
  py::register_exception<Error>(mod, "SolverError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);

  py::class_<RunConfig>(mod, "Config")
      .def_property_readonly("case", [](const RunConfig& c) { return std::string(to_string(c.test_case)); })
      .def_property_readonly("scheme", [](const RunConfig& c) { return std::string(to_string(c.scheme)); })
      .def_property_readonly("integrator", [](const RunConfig& c) { return std::string(to_string(c.integrator)); })
      .def_readonly("nx", &RunConfig::nx)
      .def_readonly("ny", &RunConfig::ny)
      .def_readonly("cfl", &RunConfig::cfl)
      .def_readonly("t_start", &RunConfig::t_start)
      .def_readonly("t_end", &RunConfig::t_end)
      .def_readonly("max_steps", &RunConfig::max_steps)
      .def_readonly("output_dir", &RunConfig::output_dir)
      .def("override", [](RunConfig& c, const std::string& kv) { apply_override(c, kv); }, py::arg("assignment"))
      .def("desk_scale", [](RunConfig& c) { apply_desk_scale(c); })
      .def("to_text", &serialize_config)
      .def("__repr__", [](const RunConfig& c) {
        return "<Config " + std::string(to_string(c.test_case)) + " " + std::to_string(c.nx) + "x" +
               std::to_string(c.ny) + " " + to_string(c.scheme) + " " + to_string(c.integrator) + ">";
      });

  mod.def("case_names", &case_names);
  mod.def(
      "default_config",
      [](const std::string& name, const std::string& integrator) {
        return case_defaults(parse_case(name), parse_integrator(integrator));
      },
      py::arg("case"), py::arg("integrator") = "imex");
  mod.def("parse_config", &parse_config, py::arg("path"));
  mod.def("parse_config_text", &parse_config_text, py::arg("text"), py::arg("origin") = "<string>");

  mod.def(
      "run",
      [](const RunConfig& cfg, bool write_files) {
        RunOptions opt;
        opt.write_files = write_files;
        RunResult r;
        {
          py::gil_scoped_release nogil;
          r = run(cfg, opt);
        }
        py::dict d;
        d["exit_code"] = r.exit_code;
        d["message"] = r.message;
        d["steps"] = r.steps;
        d["t"] = r.t;
        d["flagged_total"] = r.flagged_total;
        d["newton_total"] = r.newton_total;
        d["norms"] = norms_array(r.norms);
        d["norm_columns"] = std::vector<std::string>{"step",        "time",        "dt",          "divB_L1",
                                                     "divB_L2",     "divEres_L1",  "divEres_L2",  "divEacc_L1",
                                                     "divEacc_L2",  "total_entropy"};
        d["psi"] = r.psi;
        if (r.exit_code == 0) {
          d["conserved"] = conserved_array(r.grid, r.U);
          d["primitive"] = primitive_array(r.grid, r.W);
        }
        return d;
      },
      py::arg("config"), py::arg("write_files") = false);

  mod.def(
      "convergence",
      [](const RunConfig& base, const std::vector<int>& cells) {
        std::vector<ConvergenceRow> rows;
        {
          py::gil_scoped_release nogil;
          rows = convergence_study(base, cells);
        }
        py::list out;
        for (const auto& r : rows) out.append(py::make_tuple(r.cells, r.error, r.order, r.steps));
        return out;
      },
      py::arg("config"), py::arg("cells"));

  mod.def(
      "read_snapshot",
      [](const std::string& path) {
        const Snapshot s = read_snapshot(path);
        py::array_t<double> a({py::ssize_t(s.ny), py::ssize_t(s.nx), py::ssize_t(kSnapshotColumns)});
        auto m = a.mutable_unchecked<3>();
        for (int j = 0; j < s.ny; ++j)
          for (int i = 0; i < s.nx; ++i)
            for (int k = 0; k < kSnapshotColumns; ++k) m(j, i, k) = s.rows[std::size_t(j) * s.nx + i][std::size_t(k)];
        py::dict d;
        d["nx"] = s.nx;
        d["ny"] = s.ny;
        d["dx"] = s.dx;
        d["dy"] = s.dy;
        d["time"] = s.time;
        d["data"] = a;
        return d;
      },
      py::arg("path"));
}
