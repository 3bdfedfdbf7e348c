#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rmmcop/measures.hpp"
#include "rmmcop/sampling.hpp"
#include "rmmcop/specdoc.hpp"
#include "rmmcop/transforms.hpp"

namespace py = pybind11;
using namespace rmmcop;

namespace {

py::dict report_dict(const MeasureReport& r) {
  py::dict d;
  d["value"] = r.value;
  d["error"] = r.error_estimate;
  switch (r.method) {
    case MeasureMethod::quadrature: d["method"] = "quadrature"; break;
    case MeasureMethod::finite_difference:
      d["method"] = "finite-difference";
      break;
    case MeasureMethod::monte_carlo: d["method"] = "monte-carlo"; break;
    default: d["method"] = "limit-extrapolation";
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "reflected maxmin copula toolkit";

  py::class_<BivariateCopula>(m, "BivariateCopula")
      .def("__call__", [](const BivariateCopula& c, double u, double v) {
        return c(u, v);
      })
      .def("raw", &BivariateCopula::raw)
      .def("diagonal", &BivariateCopula::diagonal)
      .def_property_readonly("label", &BivariateCopula::label)
      .def("__repr__", [](const BivariateCopula& c) {
        return "<BivariateCopula " + c.label() + ">";
      });

  py::class_<NCopula>(m, "NCopula")
      .def("__call__",
           [](const NCopula& c, const std::vector<double>& u) { return c(u); })
      .def("raw", [](const NCopula& c, const std::vector<double>& u) {
        return c.raw(u);
      })
      .def_property_readonly("dim", &NCopula::dim)
      .def_property_readonly("label", &NCopula::label)
      .def("__repr__", [](const NCopula& c) {
        return "<NCopula " + c.label() + ">";
      });

  m.def("pi", &independence);
  m.def("m", &comonotone);
  m.def("w", &countermonotone);
  m.def("efgm", &efgm, py::arg("theta"));
  m.def("clayton", &clayton, py::arg("theta"));
  m.def("builtin", &builtin, py::arg("name"),
        py::arg("params") = std::vector<double>{});
  m.def("pi_n", &independence_n, py::arg("dim"));
  m.def("m_n", &comonotone_n, py::arg("dim"));
  m.def("from_bivariate", &from_bivariate);
  m.def("flip_first", &flip_first);
  m.def("flip_second", &flip_second);
  m.def("flip_vars", &flip_vars, py::arg("copula"), py::arg("idx"),
        "inclusion-exclusion flip in the given 0-based coordinates");

  py::class_<Generator>(m, "Generator")
      .def_static("power", &Generator::power, py::arg("a"))
      .def_static("scaled_complement", &Generator::scaled_complement,
                  py::arg("c"))
      .def_static("quadratic", &Generator::quadratic, py::arg("c"))
      .def_static("tent", &Generator::tent)
      .def_static("trunc_linear", &Generator::trunc_linear, py::arg("c"),
                  py::arg("s"))
      .def_static("zero", &Generator::zero)
      .def_static("tabulated", &Generator::tabulated, py::arg("knots"))
      .def("f", &Generator::f)
      .def("f_star", &Generator::f_star)
      .def("f_hat", &Generator::f_hat)
      .def("f_hat_iter", &Generator::f_hat_iter, py::arg("u"), py::arg("n"))
      .def("f_hat_limit", &Generator::f_hat_limit)
      .def_property_readonly("alpha", &Generator::alpha)
      .def("validate",
           [](const Generator& g, int grid_n, double tol) {
             const auto v = g.validate(grid_n, tol);
             py::dict d;
             d["pass"] = v.pass;
             d["f_at_zero_nonzero"] = v.f_at_zero_nonzero;
             d["f_at_zero"] = v.f_at_zero;
             d["worst_boundary"] = v.worst_boundary;
             d["worst_hat_decrease"] = v.worst_hat_decrease;
             d["worst_star_increase"] = v.worst_star_increase;
             return d;
           },
           py::arg("grid_n") = 201, py::arg("tol") = 1e-9)
      .def("__repr__", [](const Generator& g) {
        return "<Generator " + g.label() + ">";
      });

  py::enum_<MMKind>(m, "MMKind")
      .value("F1", MMKind::F1)
      .value("F2", MMKind::F2);

  py::class_<MMGenerator>(m, "MMGenerator")
      .def_static("f1", &MMGenerator::f1, py::arg("rule"))
      .def_static("f2", &MMGenerator::f2, py::arg("rule"))
      .def_static("identity", &MMGenerator::identity, py::arg("kind"))
      .def("map", &MMGenerator::map)
      .def("star", &MMGenerator::star)
      .def_property_readonly("kind", &MMGenerator::kind)
      .def_property_readonly("rule", &MMGenerator::rule)
      .def("__repr__", [](const MMGenerator& g) {
        return "<MMGenerator " + g.label() + ">";
      });

  m.def("from_mm", &from_mm);
  m.def("to_mm", &to_mm, py::arg("generator"), py::arg("kind"));

  m.def("rmm", &rmm, py::arg("c_dot"), py::arg("f"), py::arg("g"));
  m.def("mm", &mm, py::arg("c"), py::arg("phi"), py::arg("psi"));
  m.def("rmm_iter", &rmm_iter, py::arg("c_dot"), py::arg("f"), py::arg("g"),
        py::arg("n"));
  m.def("mm_iter", &mm_iter, py::arg("c"), py::arg("phi"), py::arg("psi"),
        py::arg("n"));
  m.def("rmm_limit", &rmm_limit, py::arg("c_dot"), py::arg("f"), py::arg("g"),
        py::arg("tol") = 1e-9);
  m.def("mm_limit", &mm_limit, py::arg("c"), py::arg("phi"), py::arg("psi"),
        py::arg("tol") = 1e-9);
  m.def("rmm_n", &rmm_n, py::arg("base_reflected"), py::arg("generators"),
        py::arg("p"));
  m.def("mm_n", &mm_n, py::arg("base"), py::arg("generators"), py::arg("p"));
  m.def("rmm_3", &rmm_3, py::arg("base_reflected"), py::arg("f1"),
        py::arg("f2"), py::arg("f3"));
  m.def("n_box_volume",
        [](const NCopula& c, const std::vector<double>& lo,
           const std::vector<double>& hi) { return n_box_volume(c, lo, hi); });

  m.def("validate_copula",
        [](const BivariateCopula& c, int grid_n, double tol) {
          const auto r = validate_copula(c, grid_n, tol);
          py::dict d;
          d["pass"] = r.pass;
          d["worst_grounding"] = r.worst_grounding;
          d["worst_margin"] = r.worst_margin;
          d["worst_volume"] = r.worst_volume;
          return d;
        },
        py::arg("copula"), py::arg("grid_n") = 101, py::arg("tol") = 1e-9);

  m.def("spearman_rho",
        [](const BivariateCopula& c, double tol) {
          return report_dict(spearman_rho(c, tol));
        },
        py::arg("copula"), py::arg("tol") = 1e-4);
  m.def("kendall_tau",
        [](const BivariateCopula& c, double tol) {
          return report_dict(kendall_tau(c, tol));
        },
        py::arg("copula"), py::arg("tol") = 1e-3);
  m.def("tail_coefficients",
        [](const BivariateCopula& c) {
          const auto [lo, hi] = tail_coefficients(c);
          return py::make_tuple(report_dict(lo), report_dict(hi));
        });
  m.def("quadrant_class",
        [](const BivariateCopula& c, int grid_n, double tol) {
          return to_string(quadrant_class(c, grid_n, tol));
        },
        py::arg("copula"), py::arg("grid_n") = 101, py::arg("tol") = 1e-9);

  py::class_<SampleBatch>(m, "SampleBatch")
      .def_readonly("dim", &SampleBatch::dim)
      .def_readonly("seed", &SampleBatch::seed)
      .def_property_readonly("points", [](const SampleBatch& b) {
        py::list out;
        for (const auto& p : b.points) {
          if (b.dim == 2)
            out.append(py::make_tuple(p[0], p[1]));
          else
            out.append(py::make_tuple(p[0], p[1], p[2]));
        }
        return out;
      });

  m.def("sample2", &sample2, py::arg("copula"), py::arg("n"), py::arg("seed"));
  m.def("sample3", &sample3, py::arg("copula"), py::arg("n"), py::arg("seed"));
  m.def("export_csv", &export_csv, py::arg("batch"), py::arg("path"));
  m.def("estimate_measures", [](const SampleBatch& b) {
    const auto [rho, tau] = estimate_measures(b);
    return py::make_tuple(report_dict(rho), report_dict(tau));
  });

  py::class_<ParsedCopula>(m, "ParsedCopula")
      .def_property_readonly("dim",
                             [](const ParsedCopula& p) { return p.dim; })
      .def_property_readonly("label",
                             [](const ParsedCopula& p) { return p.label; })
      .def("eval",
           [](const ParsedCopula& p, const std::vector<double>& point) {
             return p.eval(point);
           })
      .def_property_readonly("bivariate", [](const ParsedCopula& p) {
        return p.bivariate
                   ? py::cast(*p.bivariate)
                   : py::object(py::none());
      });

  m.def("parse_spec", &parse_spec, py::arg("json_text"));

  py::register_exception<SpecError>(m, "SpecError");
}
