#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bino/graph_io.hpp"
#include "bino/harness.hpp"
#include "bino/homotopy.hpp"

namespace py = pybind11;
using namespace bino;

namespace {

py::dict checksDict(const RunReport& r) {
  py::dict d;
  for (const auto& c : r.checks) {
    const char* s = c.status == CheckStatus::Passed ? "passed" : c.status == CheckStatus::Failed ? "failed" : "skipped";
    d[py::str(c.name)] = py::make_tuple(s, c.diagnostic);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_bino, m) {
  m.doc() = "Exploration of anonymous port-numbered graphs with binoculars";

  py::class_<PortNumberedGraph>(m, "Graph")
      .def_property_readonly("n", &PortNumberedGraph::vertexCount)
      .def_property_readonly("m", &PortNumberedGraph::edgeCount)
      .def("edges",
           [](const PortNumberedGraph& g) {
             std::vector<std::tuple<VertexId, VertexId, Port, Port>> out;
             for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.portAtU, e.portAtV);
             return out;
           })
      .def("to_json", &graphToJson)
      .def_static("from_json", [](const std::string& s) { return parseGraphJson(s); })
      .def("__repr__", [](const PortNumberedGraph& g) {
        return "<Graph n=" + std::to_string(g.vertexCount()) + " m=" + std::to_string(g.edgeCount()) + ">";
      });

  m.def("generate", [](const std::string& spec) { return generate(parseGeneratorSpec(spec)); },
        py::arg("spec"));
  m.def("load_graph", [](const std::string& path) { return loadGraphFile(path); }, py::arg("path"));

  m.def("is_weetman",
        [](const PortNumberedGraph& g) {
          auto r = isWeetman(g);
          py::dict d;
          d["holds"] = r.holds;
          if (r.witness) {
            d["condition"] = r.witness->condition == Condition::Triangle ? "triangle" : "interval";
            d["root"] = r.witness->root;
            d["vertices"] = r.witness->vertices;
            d["replays"] = witnessReproduces(g, *r.witness);
          }
          return d;
        },
        py::arg("graph"));
  m.def("is_chordal", [](const PortNumberedGraph& g) { return isChordal(g).chordal; }, py::arg("graph"));
  m.def("is_simply_connected",
        [](const PortNumberedGraph& g) { return std::string(toString(isSimplyConnected(g).answer)); },
        py::arg("graph"));
  m.def("cluster_tree", [](const PortNumberedGraph& g, VertexId root) { return clusterDecomposition(g, root).isTree(); },
        py::arg("graph"), py::arg("root") = 0);

  m.def("explore",
        [](const PortNumberedGraph& g, VertexId root, double budgetFactor) {
          if (root >= g.vertexCount()) throw py::index_error("root out of range");
          RunRecord rec = [&] {
            py::gil_scoped_release nogil;
            return runOnGraph("python", "graph", g, root, budgetFactor, {});
          }();
          const auto& r = rec.report;
          py::dict d;
          d["status"] = std::string(toString(r.status));
          d["moves"] = r.moves;
          d["phases"] = r.phases;
          d["moves_per_vertex"] = r.movesPerVertex();
          d["checks"] = checksDict(r);
          d["detail"] = rec.result.outcome.detail;
          d["trace"] = traceToJsonLines(rec.trace);
          d["map"] = mapToJson(rec.result.lastMap);
          return d;
        },
        py::arg("graph"), py::arg("root") = 0, py::arg("budget_factor") = 50.0);

  m.def("verify_trace",
        [](const std::string& traceText, const PortNumberedGraph& g) {
          auto trace = parseTraceJsonLines(traceText);
          py::dict d;
          auto pi = verifyPhaseInvariants(trace, g, trace.root);
          d["phase_invariants"] = pi.ok();
          d["coverage"] = verifyCoverage(trace, g, trace.root).ok();
          return d;
        },
        py::arg("trace"), py::arg("graph"));

  m.def("run_suite_json",
        [](const std::string& config) {
          auto cfg = parseExperimentConfig(config);
          py::gil_scoped_release nogil;
          auto res = runSuite(cfg);
          if (!cfg.outputPath.empty()) writeSuiteOutputs(res, cfg.outputPath);
          return reportsToJson(res);
        },
        py::arg("config"));
}
