// Thin pybind11 layer. Structured results cross the boundary as JSON text so
// the Python side sees exactly the reports the command-line tool emits.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ksetlab/bounds.hpp"
#include "ksetlab/cli.hpp"
#include "ksetlab/errors.hpp"
#include "ksetlab/json_io.hpp"
#include "ksetlab/metrics.hpp"
#include "ksetlab/model.hpp"
#include "ksetlab/solvability.hpp"
#include "ksetlab/topology/homology.hpp"
#include "ksetlab/topology/pseudosphere.hpp"

namespace py = pybind11;
using namespace kset;

namespace {

auto choice_of(const std::string& s) -> GraphChoice {
  if (s == "multiset") return GraphChoice::Multiset;
  if (s == "distinct") return GraphChoice::Distinct;
  throw InvalidInput("choice must be 'multiset' or 'distinct'");
}

auto dump(const json::Json& j) -> std::string { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_kset, m) {
  m.doc() = "Native core of ksetlab";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<ConsistencyViolation>(m, "ConsistencyViolation", PyExc_AssertionError);

  py::class_<Digraph>(m, "Digraph")
      .def(py::init([](int n, const std::vector<Edge>& edges) { return Digraph(n, std::span<const Edge>(edges)); }),
           py::arg("n"), py::arg("edges"))
      .def_static("complete", &Digraph::complete)
      .def_static("identity", &Digraph::identity)
      .def_static("cycle", &Digraph::cycle)
      .def_static("star",
                  [](int n, const std::vector<int>& centers) {
                    ProcessSet s;
                    for (int c : centers) s.insert(c);
                    return Digraph::star(n, s);
                  })
      .def_property_readonly("n", &Digraph::n)
      .def("edges", &Digraph::edges)
      .def("has_edge", &Digraph::has_edge)
      .def("out", [](const Digraph& g, ProcessId p) { return g.out(p).members(); })
      .def("in_", [](const Digraph& g, ProcessId p) { return g.in(p).members(); })
      .def("is_below", &Digraph::is_below)
      .def("to_json", [](const Digraph& g) { return dump(json::to_json(g)); })
      .def_static("from_json", [](const std::string& s) { return json::graph_from_json(json::parse(s)); })
      .def("__eq__", [](const Digraph& a, const Digraph& b) { return a == b; })
      .def("__hash__", [](const Digraph& g) { return DigraphHash{}(g); })
      .def("__repr__", &Digraph::to_string);

  m.def("path_product", [](const Digraph& a, const Digraph& b) { return path_product(a, b); });

  py::class_<Model>(m, "Model")
      .def(py::init<std::vector<Digraph>, bool>(), py::arg("generators"), py::arg("symmetric") = false)
      .def_property_readonly("n", &Model::n)
      .def_property_readonly("symmetric", &Model::symmetric)
      .def_property_readonly("generators", &Model::generators)
      .def_property_readonly("effective_generators", &Model::effective_generators)
      .def("contains", &Model::contains)
      .def("to_json", [](const Model& mo) { return dump(json::to_json(mo)); })
      .def_static("from_json", [](const std::string& s) { return json::model_from_json(json::parse(s)); })
      .def_static("load", [](const std::string& path) { return json::model_from_json(json::read_file(path)); });

  m.def("dom", [](const Digraph& g) { return dom(g); });
  m.def("edom", [](const std::vector<Digraph>& s) { return edom(std::span<const Digraph>(s)); });
  m.def("cov", [](const std::vector<Digraph>& s, int i) { return cov(std::span<const Digraph>(s), i); });
  m.def(
      "edom_over", [](const std::vector<Digraph>& s, const std::string& c) { return edom_over(s, choice_of(c)); },
      py::arg("graphs"), py::arg("choice") = "multiset");
  m.def(
      "max_cov",
      [](const std::vector<Digraph>& s, int i, const std::string& c) { return max_cov(s, i, choice_of(c)); },
      py::arg("graphs"), py::arg("i"), py::arg("choice") = "multiset");
  m.def(
      "metrics_json",
      [](const std::vector<Digraph>& s, const std::string& c) { return dump(json::to_json(metrics_report(s, choice_of(c)))); },
      py::arg("graphs"), py::arg("choice") = "multiset");
  m.def("covering_sequence_json", [](const std::vector<Digraph>& s, int i, int len) {
    return dump(json::to_json(covering_sequence(s, i, len)));
  });

  m.def("product_set", [](const Model& mo, int r) { return product_set(mo, r); });
  m.def("reachability_json", [](const std::vector<Digraph>& base, const Digraph& target) {
    return dump(json::to_json(product_reachability_search(base, target)));
  });

  m.def(
      "bounds_json",
      [](const Model& mo, int r, const std::string& c) {
        BoundsOptions o;
        o.choice = choice_of(c);
        return dump(json::to_json(bounds_report(mo, r, o)));
      },
      py::arg("model"), py::arg("rounds") = 1, py::arg("choice") = "multiset");
  m.def("star_family_json", [](int n, int s) { return dump(json::to_json(star_family_report(n, s))); });

  m.def(
      "solve_json",
      [](const Model& mo, int r, int k, int values, bool replay) {
        const auto res = decide_solvability(mo, r, k, values);
        auto j = json::to_json(res);
        if (replay && res.verdict == Verdict::Sat) j["replay_ok"] = replay_witness(mo, r, k, values, res.witness).ok;
        return dump(j);
      },
      py::arg("model"), py::arg("rounds"), py::arg("k"), py::arg("values"), py::arg("replay") = false);
  m.def("audit_json", [](const Model& mo, int r) { return dump(json::to_json(audit(mo, r))); });
  m.def(
      "simulate_json",
      [](const Model& mo, int r, const std::vector<int>& fixed) {
        MinStrategy st;
        if (!fixed.empty()) {
          ProcessSet p;
          for (int q : fixed) p.insert(q);
          st = MinStrategy::min_of(p);
        }
        return dump(json::to_json(simulate_min_protocol(mo, r, st)));
      },
      py::arg("model"), py::arg("rounds"), py::arg("fixed") = std::vector<int>{});

  m.def("uninterpreted_homology", [](const Model& mo, int up_to) {
    return topology::reduced_homology_ranks(topology::uninterpreted_complex(mo).materialize(), up_to);
  });
  m.def("uninterpreted_nerve_is_full", [](const Model& mo) {
    const auto cover = topology::uninterpreted_complex(mo).cover();
    return topology::is_full_simplex(topology::nerve(cover));
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> argv{"ksetlab"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = cli::run(argv, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
