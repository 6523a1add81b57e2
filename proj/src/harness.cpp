#include "bino/harness.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "bino/graph_io.hpp"
#include "bino/homotopy.hpp"
#include "bino/rng.hpp"

namespace bino {

using nlohmann::json;

namespace {

IsomorphismResult synchronizedTraversal(const PortNumberedGraph& h, VertexId hRoot,
                                        const PortNumberedGraph& g, VertexId gRoot,
                                        bool requireDegrees) {
  IsomorphismResult res;
  res.image.assign(h.vertexCount(), std::nullopt);
  if (!h.contains(hRoot) || !g.contains(gRoot)) {
    res.mismatches.push_back("root out of range");
    return res;
  }
  std::vector<std::optional<VertexId>> preimage(g.vertexCount());
  res.image[hRoot] = gRoot;
  preimage[gRoot] = hRoot;
  std::deque<VertexId> queue{hRoot};
  while (!queue.empty() && res.mismatches.empty()) {
    const auto a = queue.front();
    queue.pop_front();
    const auto x = *res.image[a];
    if (requireDegrees && h.degree(a) != g.degree(x)) {
      res.mismatches.push_back("degree at map vertex " + std::to_string(a) + ": " +
                               std::to_string(h.degree(a)) + " vs " + std::to_string(g.degree(x)));
      break;
    }
    for (const auto& arc : h.incident(a)) {
      auto there = g.viaPort(x, arc.out);
      if (!there || there->in != arc.in) {
        res.mismatches.push_back("port (" + std::to_string(arc.out) + "," +
                                 std::to_string(arc.in) + ") at map vertex " + std::to_string(a) +
                                 " has no counterpart");
        break;
      }
      const auto b = arc.to;
      const auto y = there->to;
      if (!res.image[b]) {
        if (preimage[y]) {
          res.mismatches.push_back("not injective: map vertices " + std::to_string(*preimage[y]) +
                                   " and " + std::to_string(b) + " both reach vertex " +
                                   std::to_string(y));
          break;
        }
        res.image[b] = y;
        preimage[y] = b;
        queue.push_back(b);
      } else if (*res.image[b] != y) {
        res.mismatches.push_back("inconsistent: map vertex " + std::to_string(b) +
                                 " reached as two different vertices");
        break;
      }
    }
  }
  if (res.mismatches.empty())
    for (VertexId a = 0; a < h.vertexCount(); ++a)
      if (!res.image[a]) {
        res.mismatches.push_back("map vertex " + std::to_string(a) + " unreachable from homebase");
        break;
      }
  return res;
}

}  // namespace

IsomorphismResult verifyRootedIsomorphism(const ExplorationMap& map, const PortNumberedGraph& g,
                                          VertexId v0) {
  IsomorphismResult res;
  if (map.vertexCount() == 0) {
    res.mismatches.push_back("vertex count: empty map");
    return res;
  }
  std::vector<std::string> counts;
  if (map.vertexCount() != g.vertexCount())
    counts.push_back("vertex count: map has " + std::to_string(map.vertexCount()) + ", graph " +
                     std::to_string(g.vertexCount()));
  if (map.edgeCount() != g.edgeCount())
    counts.push_back("edge count: map has " + std::to_string(map.edgeCount()) + ", graph " +
                     std::to_string(g.edgeCount()));
  res = synchronizedTraversal(map.toGraph(), 0, g, v0, true);
  res.mismatches.insert(res.mismatches.begin(), counts.begin(), counts.end());
  return res;
}

IsomorphismResult rootedEmbedding(const PortNumberedGraph& h, VertexId hRoot,
                                  const PortNumberedGraph& g, VertexId gRoot) {
  return synchronizedTraversal(h, hRoot, g, gRoot, false);
}

IsomorphismResult verifyTreeCoverPrefix(const ExplorationMap& map, const PortNumberedGraph& g,
                                        VertexId v0) {
  IsomorphismResult res;
  const auto h = map.toGraph();
  std::size_t maxDegree = 0;
  for (VertexId a = 0; a < h.vertexCount(); ++a) maxDegree = std::max(maxDegree, h.degree(a));
  if (h.vertexCount() == 0 || h.edgeCount() + 1 != h.vertexCount() || maxDegree > 2) {
    res.mismatches.push_back("map is not a path");
    return res;
  }
  const auto cover = unfoldTreeCover(g, v0, h.vertexCount());
  res = rootedEmbedding(h, 0, cover.tree, 0);
  if (!res.ok()) return res;
  // induced: tree edges between image vertices all appear in the map
  std::set<VertexId> image;
  for (auto x : res.image) image.insert(*x);
  std::size_t induced = 0;
  for (const auto& e : cover.tree.edges())
    if (image.count(e.u) && image.count(e.v)) ++induced;
  if (induced != h.edgeCount()) res.mismatches.push_back("map misses edges of the cover prefix");
  return res;
}

PhiReconstruction reconstructPhi(const ExplorationMap& map,
                                 const std::map<MapId, VertexId>& exploredAt,
                                 const PortNumberedGraph& g) {
  PhiReconstruction r;
  r.phi.assign(map.vertexCount(), std::nullopt);
  for (MapId n = 0; n < map.vertexCount(); ++n) {
    if (!map.explored(n)) continue;
    auto it = exploredAt.find(n);
    if (it == exploredAt.end())
      r.problems.push_back("explored map vertex " + std::to_string(n) + " was never sensed");
    else
      r.phi[n] = it->second;
  }
  for (MapId f = 0; f < map.vertexCount(); ++f) {
    if (map.explored(f)) continue;
    std::optional<std::pair<MapId, Port>> best;
    for (const auto& arc : map.incident(f)) {
      if (!r.phi[arc.to] || !map.explored(arc.to)) continue;
      std::pair<MapId, Port> cand{arc.to, arc.in};  // (explored m, port at m)
      if (!best || cand < *best) best = cand;
    }
    if (!best) {
      r.problems.push_back("frontier map vertex " + std::to_string(f) + " has no explored neighbour");
      continue;
    }
    auto h = g.viaPort(*r.phi[best->first], best->second);
    if (!h) {
      r.problems.push_back("homomorphism: vertical edge to frontier vertex " + std::to_string(f) +
                           " has no counterpart");
      continue;
    }
    r.phi[f] = h->to;
  }
  return r;
}

bool PhaseInvariantReport::ok() const {
  return phaseOneMatchesBall &&
         std::all_of(phases.begin(), phases.end(), [](const PhaseCheck& p) { return p.ok(); });
}

namespace {

PhaseCheck checkPhase(Phase phase, const ExplorationMap& map,
                      const std::map<MapId, VertexId>& exploredAt, const PortNumberedGraph& g) {
  PhaseCheck check;
  check.phase = phase;
  auto fail = [&](std::string s) {
    if (check.failures.size() < 8) check.failures.push_back(std::move(s));
  };
  const auto rec = reconstructPhi(map, exploredAt, g);
  for (const auto& p : rec.problems) fail("phi: " + p);
  const auto& phi = rec.phi;

  for (MapId a = 0; a < map.vertexCount(); ++a) {
    if (!phi[a]) continue;
    std::vector<VertexId> images;
    for (const auto& arc : map.incident(a)) {
      if (!phi[arc.to]) continue;
      images.push_back(*phi[arc.to]);
      auto there = g.viaPort(*phi[a], arc.out);
      if (!there || there->to != *phi[arc.to] || there->in != arc.in)
        fail("homomorphism: map edge " + std::to_string(a) + "-" + std::to_string(arc.to) +
             " via port " + std::to_string(arc.out));
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
      fail("local injectivity at map vertex " + std::to_string(a));
  }

  for (MapId n = 0; n < map.vertexCount(); ++n) {
    if (!map.explored(n) || !phi[n]) continue;
    const auto x = *phi[n];
    if (map.incident(n).size() != g.degree(x)) {
      fail("local surjectivity at map vertex " + std::to_string(n) + ": degree " +
           std::to_string(map.incident(n).size()) + " vs " + std::to_string(g.degree(x)));
      continue;
    }
    // ground-truth neighbour -> map neighbour
    std::map<VertexId, MapId> back;
    for (const auto& arc : map.incident(n))
      if (phi[arc.to]) back.emplace(*phi[arc.to], arc.to);
    std::size_t trianglesG = 0, trianglesM = 0;
    const auto around = g.incident(x);
    for (std::size_t i = 0; i < around.size(); ++i)
      for (std::size_t j = i + 1; j < around.size(); ++j) {
        if (!g.adjacent(around[i].to, around[j].to)) continue;
        ++trianglesG;
        auto a = back.find(around[i].to), b = back.find(around[j].to);
        if (a == back.end() || b == back.end() || !map.adjacent(a->second, b->second))
          fail("local surjectivity at map vertex " + std::to_string(n) +
               ": edge between neighbours has no preimage");
      }
    const auto arcs = map.incident(n);
    for (std::size_t i = 0; i < arcs.size(); ++i)
      for (std::size_t j = i + 1; j < arcs.size(); ++j)
        if (arcs[i].to != arcs[j].to && map.adjacent(arcs[i].to, arcs[j].to)) ++trianglesM;
    if (trianglesG != trianglesM)
      fail("triangle preservation at map vertex " + std::to_string(n) + ": " +
           std::to_string(trianglesM) + " vs " + std::to_string(trianglesG));
  }
  return check;
}

}  // namespace

PhaseInvariantReport verifyPhaseInvariants(const RunTrace& trace, const PortNumberedGraph& g,
                                           VertexId v0) {
  PhaseInvariantReport rep;
  bool anySnapshot = false;
  std::map<MapId, VertexId> exploredAt;
  VertexId pos = v0;
  for (const auto& e : trace.events) {
    switch (e.kind) {
      case TraceEvent::Kind::Move: {
        auto h = g.viaPort(pos, e.out);
        if (!h || h->in != e.in) throw std::invalid_argument("trace does not replay on this graph");
        pos = h->to;
        break;
      }
      case TraceEvent::Kind::Sense:
        if (e.tag) exploredAt.emplace(static_cast<MapId>(*e.tag), pos);
        break;
      case TraceEvent::Kind::PhaseEnd: {
        if (!e.map) break;
        if (!anySnapshot) {
          const auto& map = *e.map;
          const auto b = ball(g, v0);
          rep.phaseOneMatchesBall = map.vertexCount() == b.vertexCount &&
                                    map.edgeCount() == b.edges.size() &&
                                    signatureOf(map.ballAt(0)) == signatureOf(b);
        }
        anySnapshot = true;
        rep.phases.push_back(checkPhase(e.phase, *e.map, exploredAt, g));
        break;
      }
      default:
        break;
    }
  }
  if (!anySnapshot) {
    bool hadPhase = std::any_of(trace.events.begin(), trace.events.end(), [](const TraceEvent& e) {
      return e.kind == TraceEvent::Kind::PhaseEnd;
    });
    if (hadPhase) throw TraceLacksSnapshots("trace lacks snapshots");
    // a run that never completed a phase has nothing to check
    rep.phaseOneMatchesBall = true;
  }
  return rep;
}

PhiReconstruction finalPhi(const RunTrace& trace, const PortNumberedGraph& g, VertexId v0) {
  std::map<MapId, VertexId> exploredAt;
  const ExplorationMap* last = nullptr;
  VertexId pos = v0;
  for (const auto& e : trace.events) {
    if (e.kind == TraceEvent::Kind::Move) {
      pos = g.viaPort(pos, e.out).value().to;
    } else if (e.kind == TraceEvent::Kind::Sense && e.tag) {
      exploredAt.emplace(static_cast<MapId>(*e.tag), pos);
    } else if (e.kind == TraceEvent::Kind::PhaseEnd && e.map) {
      last = e.map.get();
    }
  }
  if (!last) throw TraceLacksSnapshots("trace lacks snapshots");
  return reconstructPhi(*last, exploredAt, g);
}

CoverageResult verifyCoverage(const RunTrace& trace, const PortNumberedGraph& g, VertexId v0) {
  std::vector<bool> seen(g.vertexCount(), false);
  VertexId pos = v0;
  seen[pos] = true;
  for (const auto& e : trace.events) {
    if (e.kind != TraceEvent::Kind::Move) continue;
    auto h = g.viaPort(pos, e.out);
    if (!h || h->in != e.in) throw std::invalid_argument("trace does not replay on this graph");
    pos = h->to;
    seen[pos] = true;
  }
  CoverageResult r;
  for (VertexId v = 0; v < g.vertexCount(); ++v)
    if (!seen[v]) r.unvisited.push_back(v);
  return r;
}

std::vector<std::string> checkPhiPathIndependence(const ExplorationMap& map,
                                                  const std::vector<std::optional<VertexId>>& phi,
                                                  const PortNumberedGraph& g, VertexId v0,
                                                  std::size_t samples, std::uint64_t seed) {
  std::vector<std::string> out;
  Rng rng(seed);
  const std::size_t walkLength = 2 * map.vertexCount() + 2;
  for (std::size_t s = 0; s < samples && out.empty(); ++s) {
    MapId n = 0;
    VertexId x = v0;
    for (std::size_t step = 0; step < walkLength; ++step) {
      const auto arcs = map.incident(n);
      if (arcs.empty()) break;
      const auto arc = arcs[rng.below(arcs.size())];
      auto h = g.viaPort(x, arc.out);
      if (!h) {
        out.push_back("map path leaves the graph at map vertex " + std::to_string(n));
        break;
      }
      n = arc.to;
      x = h->to;
      if (!phi.at(n) || *phi[n] != x) {
        out.push_back("map vertex " + std::to_string(n) + " reached as vertex " +
                      std::to_string(x) + " by some path");
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string familyName(const GeneratorSpec& spec) {
  return std::visit(
      [](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, family::Johnson>) return "johnson";
        if constexpr (std::is_same_v<F, family::RandomChordal>) return "chordal";
        if constexpr (std::is_same_v<F, family::Complete>) return "complete";
        if constexpr (std::is_same_v<F, family::Path>) return "path";
        if constexpr (std::is_same_v<F, family::Cycle>) return "cycle";
        if constexpr (std::is_same_v<F, family::Tree>) return "tree";
        if constexpr (std::is_same_v<F, family::Grid>) return "grid";
        return "?";
      },
      spec.family);
}

std::pair<std::uint64_t, std::uint64_t> RunReport::movesPerVertexRational() const {
  if (n == 0) return {0, 1};
  const auto d = std::gcd(moves, static_cast<std::uint64_t>(n));
  return {moves / d, n / d};
}

bool RunReport::allChecksPassed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::Failed; });
}

bool SuiteResult::allChecksPassed() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const RunReport& r) { return r.allChecksPassed(); });
}

RunRecord runOnGraph(const std::string& specEcho, const std::string& family,
                     const PortNumberedGraph& g, VertexId root, double budgetFactor,
                     const Checks& checks) {
  Environment env(g, root, defaultBudget(g.vertexCount(), budgetFactor));
  auto result = explore(env);
  RunRecord rec{{}, env.takeTrace(), std::move(result)};
  auto& rep = rec.report;
  rep.spec = specEcho;
  rep.family = family;
  rep.root = root;
  rep.status = rec.result.outcome.status;
  rep.moves = rec.result.outcome.moves;
  rep.n = g.vertexCount();
  rep.m = g.edgeCount();
  rep.phases = rec.result.stats.phases;
  const bool halted = rep.status == RunStatus::Halted;

  auto add = [&](std::string name, bool requested, bool applicable, auto&& body) {
    CheckResult c{std::move(name), CheckStatus::Skipped, {}};
    if (requested && applicable) {
      std::string diag = body();
      c.status = diag.empty() ? CheckStatus::Passed : CheckStatus::Failed;
      c.diagnostic = std::move(diag);
    }
    rep.checks.push_back(std::move(c));
  };

  add("phaseInvariants", checks.phaseInvariants, true, [&]() -> std::string {
    try {
      auto pi = verifyPhaseInvariants(rec.trace, g, root);
      if (!pi.phaseOneMatchesBall) return "phase-1 map differs from the homebase ball";
      for (const auto& p : pi.phases)
        if (!p.ok()) return "phase " + std::to_string(p.phase) + ": " + p.failures.front();
      if (rec.result.stats.reentries) return "a vertex was sensed in two phases";
      return {};
    } catch (const std::exception& e) {
      return e.what();
    }
  });
  add("finalIsomorphism", checks.finalIsomorphism, halted, [&]() -> std::string {
    auto iso = verifyRootedIsomorphism(*rec.result.outcome.finalMap, g, root);
    return iso.ok() ? std::string{} : iso.mismatches.front();
  });
  add("coverage", checks.coverage, halted, [&]() -> std::string {
    auto cov = verifyCoverage(rec.trace, g, root);
    return cov.ok() ? std::string{} : std::to_string(cov.unvisited.size()) + " vertices unvisited";
  });
  add("covering", checks.covering, halted, [&]() -> std::string {
    const auto phi = finalPhi(rec.trace, g, root);
    if (!phi.problems.empty()) return phi.problems.front();
    std::vector<VertexId> flat;
    for (auto x : phi.phi) flat.push_back(x.value_or(0));
    auto v = verifySimplicialCovering(rec.result.outcome.finalMap->toGraph(), g, flat);
    return v ? v->kind + " at map vertex " + std::to_string(v->vertex) : std::string{};
  });
  add("clusterTree", checks.clusterTree, halted, [&]() -> std::string {
    return clusterDecomposition(g, root).isTree() ? std::string{} : "cluster graph is not a tree";
  });
  return rec;
}

RunRecord runOne(const GeneratorSpec& spec, const PortNumberedGraph& g, VertexId root,
                 double budgetFactor, const Checks& checks) {
  return runOnGraph(toString(spec), familyName(spec), g, root, budgetFactor, checks);
}

std::vector<VertexId> chooseRoots(const RootsPolicy& policy, std::size_t n, std::string_view specKey) {
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), VertexId{0});
  if (policy.all || policy.sample >= n) return all;
  std::uint64_t h = policy.seed ^ 0xcbf29ce484222325ull;
  for (char c : specKey) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
  Rng rng(h);
  rng.shuffle(std::span<VertexId>(all));
  all.resize(policy.sample);
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

double parseFactor(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto text = j.get<std::string>();
  const auto slash = text.find('/');
  std::size_t used = 0;
  double num = std::stod(text.substr(0, slash), &used);
  if (slash == std::string::npos) {
    if (used != text.size()) throw std::invalid_argument("budgetFactor: '" + text + "'");
    return num;
  }
  const auto denText = text.substr(slash + 1);
  double den = std::stod(denText, &used);
  if (used != denText.size() || den == 0) throw std::invalid_argument("budgetFactor: '" + text + "'");
  return num / den;
}

}  // namespace

ExperimentConfig parseExperimentConfig(std::string_view text) {
  ExperimentConfig cfg;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  try {
    for (const auto& s : j.at("generatorSpecs")) cfg.generatorSpecs.push_back(s.get<std::string>());
    if (j.contains("rootsPolicy")) {
      const auto& r = j["rootsPolicy"];
      if (r.is_string()) {
        if (r.get<std::string>() != "all") throw std::invalid_argument("config: rootsPolicy must be \"all\" or {\"sample\": k}");
        cfg.roots.all = true;
      } else {
        cfg.roots.sample = r.at("sample").get<std::size_t>();
        cfg.roots.seed = r.value("seed", std::uint64_t{0});
      }
    }
    if (j.contains("portSchemes"))
      for (const auto& s : j["portSchemes"]) cfg.portSchemes.push_back(parsePortScheme(s.get<std::string>()));
    if (j.contains("budgetFactor")) cfg.budgetFactor = parseFactor(j["budgetFactor"]);
    if (j.contains("checks")) {
      const auto& c = j["checks"];
      for (const auto& [key, value] : c.items())
        if (key != "phaseInvariants" && key != "finalIsomorphism" && key != "coverage" &&
            key != "clusterTree" && key != "covering")
          throw std::invalid_argument("config: unknown check '" + key + "'");
      cfg.checks.phaseInvariants = c.value("phaseInvariants", true);
      cfg.checks.finalIsomorphism = c.value("finalIsomorphism", true);
      cfg.checks.coverage = c.value("coverage", true);
      cfg.checks.clusterTree = c.value("clusterTree", true);
      cfg.checks.covering = c.value("covering", true);
    }
    if (j.contains("outputPath")) cfg.outputPath = j["outputPath"].get<std::string>();
    cfg.threads = j.value("threads", 0u);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  for (const auto& s : cfg.generatorSpecs) parseGeneratorSpec(s);
  if (!(cfg.budgetFactor > 0)) throw std::invalid_argument("config: budgetFactor must be positive");
  return cfg;
}

std::vector<GroupSummary> summarize(const std::vector<RunReport>& reports) {
  std::map<std::pair<std::string, std::size_t>, GroupSummary> groups;
  for (const auto& r : reports) {
    auto& g = groups[{r.family, r.n}];
    g.family = r.family;
    g.n = r.n;
    ++g.runs;
    g.halted += r.status == RunStatus::Halted;
    g.maxMovesPerVertex = std::max(g.maxMovesPerVertex, r.movesPerVertex());
    g.meanMovesPerVertex += r.movesPerVertex();
    for (const auto& c : r.checks) g.failedChecks += c.status == CheckStatus::Failed;
  }
  std::vector<GroupSummary> out;
  for (auto& [k, g] : groups) {
    g.meanMovesPerVertex /= static_cast<double>(g.runs);
    out.push_back(g);
  }
  return out;
}

SuiteResult runSuite(const ExperimentConfig& config) {
  struct Job {
    GeneratorSpec spec;
    std::shared_ptr<const PortNumberedGraph> graph;
    VertexId root;
  };
  std::vector<Job> jobs;
  for (const auto& text : config.generatorSpecs) {
    const auto base = parseGeneratorSpec(text);
    std::vector<PortScheme> schemes = config.portSchemes;
    if (schemes.empty()) schemes.push_back(base.ports);
    for (const auto& scheme : schemes) {
      GeneratorSpec spec = base;
      spec.ports = scheme;
      auto graph = std::make_shared<const PortNumberedGraph>(generate(spec));
      for (auto root : chooseRoots(config.roots, graph->vertexCount(), toString(spec)))
        jobs.push_back({spec, graph, root});
    }
  }
  SuiteResult suite;
  suite.reports.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto i = next++; i < jobs.size(); i = next++) {
      auto rec = runOne(jobs[i].spec, *jobs[i].graph, jobs[i].root, config.budgetFactor,
                        config.checks);
      suite.reports[i] = std::move(rec.report);
    }
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  suite.summary = summarize(suite.reports);
  return suite;
}

namespace {

std::string_view toString(CheckStatus s) {
  switch (s) {
    case CheckStatus::Passed: return "passed";
    case CheckStatus::Failed: return "failed";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

json reportValue(const RunReport& r) {
  const auto [num, den] = r.movesPerVertexRational();
  json checks = json::object();
  for (const auto& c : r.checks) {
    json entry{{"status", toString(c.status)}};
    if (!c.diagnostic.empty()) entry["diagnostic"] = c.diagnostic;
    checks[c.name] = std::move(entry);
  }
  return {{"spec", r.spec},
          {"family", r.family},
          {"root", r.root},
          {"status", toString(r.status)},
          {"moves", r.moves},
          {"n", r.n},
          {"m", r.m},
          {"phases", r.phases},
          {"movesPerVertex", {{"num", num}, {"den", den}}},
          {"checks", std::move(checks)}};
}

}  // namespace

std::string reportToJson(const RunReport& report) { return reportValue(report).dump(); }

std::string reportsToJson(const SuiteResult& suite) {
  json runs = json::array();
  for (const auto& r : suite.reports) runs.push_back(reportValue(r));
  json groups = json::array();
  for (const auto& g : suite.summary) {
    std::ostringstream mean;
    mean << std::fixed << std::setprecision(6) << g.meanMovesPerVertex;
    std::ostringstream mx;
    mx << std::fixed << std::setprecision(6) << g.maxMovesPerVertex;
    groups.push_back({{"family", g.family},
                      {"n", g.n},
                      {"runs", g.runs},
                      {"halted", g.halted},
                      {"maxMovesPerVertex", mx.str()},
                      {"meanMovesPerVertex", mean.str()},
                      {"failedChecks", g.failedChecks}});
  }
  json doc{{"runs", std::move(runs)}, {"summary", std::move(groups)},
           {"allChecksPassed", suite.allChecksPassed()}};
  return doc.dump(2) + "\n";
}

std::string summaryTable(const SuiteResult& suite) {
  std::ostringstream os;
  os << std::left << std::setw(10) << "family" << std::right << std::setw(6) << "n" << std::setw(7)
     << "runs" << std::setw(8) << "halted" << std::setw(12) << "max m/n" << std::setw(12)
     << "mean m/n" << std::setw(10) << "failures" << '\n';
  for (const auto& g : suite.summary)
    os << std::left << std::setw(10) << g.family << std::right << std::setw(6) << g.n
       << std::setw(7) << g.runs << std::setw(8) << g.halted << std::setw(12) << std::fixed
       << std::setprecision(3) << g.maxMovesPerVertex << std::setw(12) << g.meanMovesPerVertex
       << std::setw(10) << g.failedChecks << '\n';
  os << (suite.allChecksPassed() ? "all checks passed\n" : "some checks FAILED\n");
  return os.str();
}

void writeSuiteOutputs(const SuiteResult& suite, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  writeTextFile(dir / "report.json", reportsToJson(suite));
  writeTextFile(dir / "summary.txt", summaryTable(suite));
}

}  // namespace bino
