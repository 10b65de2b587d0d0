#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ugkit/cli.hpp"
#include "ugkit/core.hpp"
#include "ugkit/document.hpp"
#include "ugkit/error.hpp"
#include "ugkit/lattice.hpp"

namespace py = pybind11;
using namespace ugkit;

namespace {

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

std::vector<std::string> edge_names(const Ultragraph& g, const Path& p) {
  std::vector<std::string> out;
  for (auto e : p) out.push_back(g.edge_name(e));
  return out;
}

}  // namespace

PYBIND11_MODULE(_ugkit, m) {
  m.doc() = "Bindings for the ugkit C++ library";

  static py::exception<Error> error(m, "UgkitError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.attr("REPORT_SCHEMA") = kReportSchema;
  m.def("run", &run_cli, py::arg("args"),
        "Run one command line; returns (exit_code, stdout, stderr).");

  py::class_<Ultragraph>(m, "Ultragraph")
      .def_static("parse", [](const std::string& text) { return parse_document(text); })
      .def_static("from_matrix",
                  [](const std::vector<std::vector<int>>& rows, const std::string& name) {
                    return ultragraph_from_matrix(Matrix01::from_rows(rows), name);
                  },
                  py::arg("rows"), py::arg("name") = "from_matrix")
      .def_property_readonly("name", &Ultragraph::name)
      .def_property_readonly("vertices",
                             [](const Ultragraph& g) {
                               std::vector<std::string> out;
                               for (std::uint32_t i = 0; i < g.universe().core_size(); ++i) {
                                 out.push_back(g.vertex_name(VertexId::core(i)));
                               }
                               return out;
                             })
      .def_property_readonly("rays", [](const Ultragraph& g) { return g.universe().ray_names(); })
      .def_property_readonly("edges",
                             [](const Ultragraph& g) {
                               std::vector<std::string> out;
                               for (const auto& e : g.named_edges()) out.push_back(e.name);
                               return out;
                             })
      .def_property_readonly("families",
                             [](const Ultragraph& g) {
                               std::vector<std::string> out;
                               for (const auto& f : g.families()) out.push_back(f.name);
                               return out;
                             })
      .def("document", &print_document)
      .def("dot", &to_dot)
      .def("range", [](const Ultragraph& g, const std::string& edge) {
        auto e = g.find_edge(edge);
        if (!e) throw Error(ErrorCode::UnknownEdge, "unknown edge '" + edge + "'");
        return format_set(g.universe(), g.range(*e));
      })
      .def("edge_matrix",
           [](const Ultragraph& g) {
             Matrix01 a = edge_matrix(g);
             std::vector<std::vector<int>> rows(a.size(), std::vector<int>(a.size()));
             for (std::size_t i = 0; i < a.size(); ++i) {
               for (std::size_t j = 0; j < a.size(); ++j) rows[i][j] = a.at(i, j);
             }
             return rows;
           })
      .def("condition_l",
           [](const Ultragraph& g) {
             LoopVerdict v = condition_l(g);
             return py::make_tuple(v.holds, edge_names(g, v.witness));
           },
           "Returns (holds, witness loop as edge names).")
      .def("is_unital", [](const Ultragraph& g) { return is_unital(g).has_value(); })
      .def("is_member",
           [](const Ultragraph& g, const std::string& set) {
             return lattice_member(g, parse_set(g.universe(), set)).has_value();
           })
      .def("__repr__", [](const Ultragraph& g) { return "<Ultragraph " + g.name() + ">"; });
}
