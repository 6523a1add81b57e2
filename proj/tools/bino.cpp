// Command-line front end: gen, explore, check, suite.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "bino/graph_io.hpp"
#include "bino/harness.hpp"

using namespace bino;

namespace {

struct Outcome {
  std::string name;
  bool ok;
  std::string detail;
};

int report(const std::vector<Outcome>& outcomes) {
  bool all = true;
  for (const auto& o : outcomes) {
    std::cout << (o.ok ? "ok    " : "FAIL  ") << o.name;
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << '\n';
    all &= o.ok;
  }
  return all ? 0 : 1;
}

std::optional<ExplorationMap> lastSnapshot(const RunTrace& trace) {
  for (auto it = trace.events.rbegin(); it != trace.events.rend(); ++it)
    if (it->kind == TraceEvent::Kind::PhaseEnd && it->map) return *it->map;
  return std::nullopt;
}

std::optional<TraceEvent::Kind> terminal(const RunTrace& trace) {
  if (trace.events.empty()) return std::nullopt;
  auto k = trace.events.back().kind;
  if (k == TraceEvent::Kind::Halt || k == TraceEvent::Kind::BudgetExhausted ||
      k == TraceEvent::Kind::ErrorDetected)
    return k;
  return std::nullopt;
}

int runCheck(const RunTrace& trace, const PortNumberedGraph& g) {
  std::vector<Outcome> out;
  const VertexId v0 = trace.root;
  if (v0 >= g.vertexCount() || trace.graphVertices != g.vertexCount() ||
      trace.graphEdges != g.edgeCount()) {
    out.push_back({"header", false, "trace was recorded on a different graph"});
    return report(out);
  }
  try {
    auto pi = verifyPhaseInvariants(trace, g, v0);
    std::string why;
    if (!pi.phaseOneMatchesBall) why = "phase-1 map differs from the homebase ball";
    for (const auto& p : pi.phases)
      if (!p.ok() && why.empty()) why = "phase " + std::to_string(p.phase) + ": " + p.failures.front();
    out.push_back({"phaseInvariants", why.empty(), why.empty() ? std::to_string(pi.phases.size()) + " phases" : why});
  } catch (const TraceLacksSnapshots& e) {
    out.push_back({"phaseInvariants", false, e.what()});
  }

  const auto end = terminal(trace);
  if (end != TraceEvent::Kind::Halt) {
    std::string how = end ? std::string(toString(*end)) : "trace is truncated";
    std::cout << "run did not halt (" << how << "); map and coverage checks skipped\n";
    return report(out);
  }
  auto cov = verifyCoverage(trace, g, v0);
  out.push_back({"coverage", cov.ok(), cov.ok() ? "" : std::to_string(cov.unvisited.size()) + " vertices unvisited"});
  if (auto map = lastSnapshot(trace)) {
    auto iso = verifyRootedIsomorphism(*map, g, v0);
    out.push_back({"finalIsomorphism", iso.ok(), iso.ok() ? "" : iso.mismatches.front()});
  } else {
    out.push_back({"finalIsomorphism", false, "trace lacks snapshots"});
  }
  return report(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exploration of anonymous graphs with binoculars"};
  app.require_subcommand(1);

  std::string spec, outFile;
  auto* gen = app.add_subcommand("gen", "Generate a port-numbered graph");
  gen->add_option("--spec", spec, "Generator spec, e.g. chordal:n=50,rate=0.3,seed=1;ports=random:2")->required();
  gen->add_option("--out", outFile, "Output graph JSON")->required();

  std::string graphFile, traceFile, mapFile;
  VertexId root = 0;
  double factor = 50.0;
  auto* exp = app.add_subcommand("explore", "Run the explorer and verify the result");
  exp->add_option("--graph", graphFile, "Graph JSON")->required()->check(CLI::ExistingFile);
  exp->add_option("--root", root, "Homebase vertex");
  exp->add_option("--budget-factor", factor, "Move budget per vertex")->check(CLI::PositiveNumber);
  exp->add_option("--trace", traceFile, "Write the trace as JSON lines");
  exp->add_option("--map", mapFile, "Write the final map as JSON");

  auto* chk = app.add_subcommand("check", "Verify a recorded trace against its graph");
  chk->add_option("--trace", traceFile, "Trace JSON lines")->required()->check(CLI::ExistingFile);
  chk->add_option("--graph", graphFile, "Graph JSON")->required()->check(CLI::ExistingFile);

  std::string configFile, outDir;
  auto* suite = app.add_subcommand("suite", "Run an experiment configuration");
  suite->add_option("--config", configFile, "Experiment JSON")->required()->check(CLI::ExistingFile);
  suite->add_option("--out", outDir, "Output directory (overrides outputPath)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      auto g = generate(parseGeneratorSpec(spec));
      saveGraphFile(g, outFile);
      std::cout << "wrote " << g.vertexCount() << " vertices, " << g.edgeCount() << " edges\n";
      return 0;
    }
    if (*exp) {
      auto g = loadGraphFile(graphFile);
      if (root >= g.vertexCount()) throw std::invalid_argument("root out of range");
      auto rec = runOnGraph(graphFile, "file", g, root, factor, {});
      const auto& r = rec.report;
      if (!traceFile.empty()) writeTextFile(traceFile, traceToJsonLines(rec.trace));
      if (!mapFile.empty()) writeTextFile(mapFile, mapToJson(rec.result.lastMap));
      std::cout << "status " << toString(r.status) << ", " << r.moves << " moves, " << r.phases
                << " phases, " << r.movesPerVertex() << " moves/vertex\n";
      if (!rec.result.outcome.detail.empty()) std::cout << "detail: " << rec.result.outcome.detail << '\n';
      std::vector<Outcome> out{{"halted", r.status == RunStatus::Halted, ""}};
      for (const auto& c : r.checks)
        if (c.status != CheckStatus::Skipped)
          out.push_back({c.name, c.status == CheckStatus::Passed, c.diagnostic});
      return report(out);
    }
    if (*chk) {
      return runCheck(parseTraceJsonLines(readTextFile(traceFile)), loadGraphFile(graphFile));
    }
    if (*suite) {
      auto cfg = parseExperimentConfig(readTextFile(configFile));
      if (!outDir.empty()) cfg.outputPath = outDir;
      auto res = runSuite(cfg);
      if (!cfg.outputPath.empty()) writeSuiteOutputs(res, cfg.outputPath);
      std::cout << summaryTable(res);
      return res.allChecksPassed() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
