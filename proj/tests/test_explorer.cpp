#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <functional>

#include "bino/explorer.hpp"
#include "bino/families.hpp"
#include "bino/harness.hpp"
#include "bino/union_find.hpp"
#include "oracles.hpp"

using namespace bino;

namespace {

PortNumberedGraph gen(const std::string& s) { return generate(parseGeneratorSpec(s)); }

std::string name(RunStatus s) { return std::string(toString(s)); }

// v0 sees u, x, v; u-x-v is a path and w hangs below u and v, whose
// predecessors {u, v} are not adjacent
PortNumberedGraph gadget() {
  const std::array<EdgeRecord, 7> e{{{0, 1, 0, 0},
                                     {0, 2, 1, 0},
                                     {0, 3, 2, 0},
                                     {1, 2, 1, 1},
                                     {2, 3, 2, 1},
                                     {1, 4, 2, 0},
                                     {3, 4, 2, 1}}};
  return PortNumberedGraph::checked(5, e);
}

// two triangles sharing the edge ab: v0-a, v0-b, a-b, a-w, b-w
PortNumberedGraph diamond() {
  const std::array<EdgeRecord, 5> e{
      {{0, 1, 0, 0}, {0, 2, 1, 0}, {1, 2, 1, 1}, {1, 3, 2, 0}, {2, 3, 2, 1}}};
  return PortNumberedGraph::checked(4, e);
}

/// Runs the explorer phase by phase, calling `inspect` after each step.
RunStatus drive(const PortNumberedGraph& g, VertexId v0,
                const std::function<void(const Explorer&)>& inspect, std::uint64_t budget = 0) {
  Environment env(g, v0, budget ? budget : defaultBudget(g.vertexCount()));
  AgentContext ctx(env);
  Explorer e;
  e.onStart(ctx);
  try {
    for (;;) {
      auto r = e.step(ctx);
      if (r == StepResult::Halt) return RunStatus::Halted;
      if (r == StepResult::Error) return RunStatus::ErrorDetected;
      inspect(e);
    }
  } catch (const BudgetExhausted&) {
    return RunStatus::BudgetExhausted;
  }
}

void checkMapInvariants(const ExplorationMap& m) {
  for (MapId n = 0; n < m.vertexCount(); ++n) {
    std::set<Port> ports;
    for (const auto& a : m.incident(n)) CHECK(ports.insert(a.out).second);
    if (!m.explored(n)) {
      bool touches = false;
      for (const auto& a : m.incident(n)) touches |= m.explored(a.to);
      CHECK(touches);
    }
  }
}

void checkLedgerInvariants(const PreVertexLedger& l) {
  for (const auto& [a, b] : l.equivPairs) {
    CHECK(l.preVerts.count(a));
    CHECK(l.preVerts.count(b));
  }
  for (const auto& h : l.horRecords) {
    CHECK(h.p1 != h.p2);
    CHECK(l.preVerts.count({h.n, h.p1}));
    CHECK(l.preVerts.count({h.n, h.p2}));
  }
  for (const auto& [n, b] : l.balls) CHECK(b.center < b.vertexCount);
}

}  // namespace

TEST_CASE("path(3) from an endpoint") {
  auto g = gen("path:3");
  Environment env(g, 0, defaultBudget(3));
  auto r = explore(env);
  CHECK(name(r.outcome.status) == "halted");
  CHECK(r.outcome.moves == 2);
  CHECK(r.stats.phases == 3);
  REQUIRE(r.outcome.finalMap);
  CHECK(oracle::rootedPortIsomorphic(*r.outcome.finalMap, g, 0));
}

TEST_CASE("K3 from every vertex") {
  auto g = gen("complete:3;ports=random:4");
  for (VertexId v0 = 0; v0 < 3; ++v0) {
    Environment env(g, v0, defaultBudget(3));
    auto r = explore(env);
    CHECK(name(r.outcome.status) == "halted");
    CHECK(r.outcome.moves == 2);
    CHECK(r.stats.phases == 2);
    REQUIRE(r.outcome.finalMap);
    CHECK(oracle::rootedPortIsomorphic(*r.outcome.finalMap, g, v0));

    const ExplorationMap* first = nullptr;
    for (const auto& e : env.trace().events)
      if (e.kind == TraceEvent::Kind::PhaseEnd && !first) first = e.map.get();
    REQUIRE(first);
    CHECK(first->vertexCount() == 3);
    CHECK(first->edgeCount() == 3);
    CHECK(first->frontier().size() == 2);
    CHECK(signatureOf(first->ballAt(0)) == signatureOf(ball(g, v0)));
  }
}

TEST_CASE("complete graphs need n-1 moves") {
  for (unsigned n : {4u, 7u, 12u}) {
    auto g = gen("complete:" + std::to_string(n) + ";ports=random:" + std::to_string(n));
    Environment env(g, 1, defaultBudget(n));
    auto r = explore(env);
    CHECK(name(r.outcome.status) == "halted");
    CHECK(r.outcome.moves == n - 1);
  }
}

TEST_CASE("cycles exhaust the budget with a tree-cover prefix") {
  for (unsigned k : {4u, 6u, 9u}) {
    auto g = gen("cycle:" + std::to_string(k));
    Environment env(g, 0, defaultBudget(k));
    auto r = explore(env);
    CHECK(name(r.outcome.status) == "budgetExhausted");
    CHECK_FALSE(r.outcome.finalMap);
    auto prefix = verifyTreeCoverPrefix(r.lastMap, g, 0);
    CHECK(prefix.ok());
    CHECK(r.lastMap.vertexCount() > k);
  }
}

TEST_CASE("interval-condition gadget is not explored correctly") {
  auto g = gadget();
  CHECK_FALSE(checkIntervalCondition(g, 0).holds);
  Environment env(g, 0, defaultBudget(5));
  auto r = explore(env);
  CAPTURE(r.outcome.detail);
  CHECK(name(r.outcome.status) != "halted");
  // the bottom vertex w is seen from u and from v separately, so the map duplicates it
  CHECK(r.lastMap.vertexCount() > 5);
  auto iso = verifyRootedIsomorphism(r.lastMap, g, 0);
  REQUIRE_FALSE(iso.ok());
  CHECK(iso.mismatches.front().rfind("vertex count", 0) == 0);
}

TEST_CASE("tour planning") {
  ExplorationMap m;
  auto n0 = m.addVertex(1, 0);
  auto a = m.addVertex(std::nullopt, 1);
  auto b = m.addVertex(std::nullopt, 1);
  auto c = m.addVertex(std::nullopt, 2);
  m.addEdge(n0, a, 0, 0);
  m.addEdge(n0, b, 1, 0);
  m.addEdge(a, b, 1, 1);
  m.addEdge(n0, c, 2, 0);

  auto single = planClusterTour(m, n0, {c});
  CHECK(single.ports == std::vector<Port>{2});
  CHECK(single.approachLength == 1);

  auto pair = planClusterTour(m, n0, {a, b});
  CHECK(pair.visitOrder == std::vector<MapId>{a, b});
  CHECK(pair.ports.size() == 2);
  CHECK(pair.walk.back() == b);

  auto here = planClusterTour(m, n0, {n0});
  CHECK(here.approachLength == 0);
  CHECK(here.ports.empty());

  // frontier vertices of other clusters are not used as stepping stones
  ExplorationMap far;
  auto h = far.addVertex(1, 0);
  auto f = far.addVertex(std::nullopt, 1);
  auto g = far.addVertex(std::nullopt, 2);
  far.addEdge(h, f, 0, 0);
  far.addEdge(f, g, 1, 0);
  CHECK_THROWS_AS(planClusterTour(far, h, {g}), std::logic_error);
}

TEST_CASE("recording balls") {
  auto g = gen("johnson:4,2");
  ExplorationMap m;
  PreVertexLedger l;
  auto n0 = m.addVertex(0, 0);
  CHECK(recordBall(m, l, n0, ball(g, 0), 1));
  CHECK(l.balls.at(n0) == ball(g, 0));
  CHECK(m.vis(n0) == 1u);
  CHECK_FALSE(recordBall(m, l, n0, ball(g, 0), 2));
}

TEST_CASE("phase one on K3 by hand") {
  auto g = gen("complete:3");
  ExplorationMap m;
  PreVertexLedger l;
  auto n0 = m.addVertex(0, 0);

  // ordering guard: before the update the bare homebase disagrees with its ball
  recordBall(m, l, n0, ball(g, 0), 1);
  CHECK(checkLocalIso(m, l, {n0}) == n0);

  harvestLedger(m, l, {n0});
  CHECK(l.preVerts.size() == 2);
  CHECK(l.horRecords.size() == 1);
  CHECK(l.equivPairs.empty());
  checkLedgerInvariants(l);

  auto fresh = applyLedger(m, l);
  CHECK(fresh.size() == 2);
  CHECK(m.vertexCount() == 3);
  CHECK(m.edgeCount() == 3);
  CHECK(m.frontier() == fresh);
  CHECK_FALSE(checkLocalIso(m, l, {n0}));

  ClusterStack stack{{}, 1};
  auto pushed = discoverNewClusters(m, fresh, stack);
  REQUIRE(pushed.size() == 1);
  CHECK(m.cir(fresh[0]) == pushed[0]);
  CHECK(m.cir(fresh[1]) == pushed[0]);
  CHECK(stack.stack == pushed);

  // nothing new: nothing pushed, map untouched
  PreVertexLedger empty;
  auto before = m;
  CHECK(applyLedger(m, empty).empty());
  CHECK(m == before);
  CHECK(discoverNewClusters(m, {}, stack).empty());
  CHECK(stack.stack.size() == 1);
}

TEST_CASE("phase one on C6 by hand") {
  auto g = gen("cycle:6");
  ExplorationMap m;
  PreVertexLedger l;
  auto n0 = m.addVertex(0, 0);
  recordBall(m, l, n0, ball(g, 0), 1);
  harvestLedger(m, l, {n0});
  CHECK(l.horRecords.empty());
  auto fresh = applyLedger(m, l);
  CHECK(fresh.size() == 2);
  ClusterStack stack{{}, 1};
  auto pushed = discoverNewClusters(m, fresh, stack);
  CHECK(pushed.size() == 2);
  CHECK(m.cir(fresh[0]) != m.cir(fresh[1]));
  // the last pushed cluster is popped first: the one holding the larger id
  CHECK(m.cir(fresh[1]) == stack.stack.back());
}

TEST_CASE("triangle-free graphs never produce equivalences or horizontal edges") {
  for (const char* s : {"cycle:6", "grid:3,3", "tree:n=20,seed=2;ports=random:1"}) {
    auto g = gen(s);
    drive(g, 0, [](const Explorer& e) {
      CHECK(e.ledger().equivPairs.empty());
      CHECK(e.ledger().horRecords.empty());
    }, 200);
  }
}

TEST_CASE("a new vertex seen from two cluster vertices is identified once") {
  auto g = diamond();
  std::size_t pairs = 0;
  auto status = drive(g, 0, [&](const Explorer& e) { pairs += e.ledger().equivPairs.size(); });
  CHECK(name(status) == "halted");
  CHECK(pairs == 1);
}

TEST_CASE("map and ledger invariants hold after every phase") {
  for (const char* s : {"chordal:n=60,rate=0.5,seed=3;ports=random:2", "johnson:6,2;ports=random:5",
                        "cycle:7", "grid:3,4"}) {
    auto g = gen(s);
    drive(g, 1, [](const Explorer& e) {
      checkMapInvariants(e.map());
      checkLedgerInvariants(e.ledger());
    });
  }
}

TEST_CASE("re-visited vertices are never re-sensed") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = gen("chordal:n=20,rate=0.6,seed=" + std::to_string(seed));
    Environment env(g, 0, defaultBudget(20));
    auto r = explore(env);
    CHECK(name(r.outcome.status) == "halted");
    CHECK(r.stats.reentries == 0);
    CHECK(r.stats.senses == 20);
  }
}

TEST_CASE("exploration is anonymous") {
  auto g = gen("chordal:n=40,rate=0.5,seed=9;ports=random:3");
  std::vector<VertexId> perm(40);
  for (VertexId v = 0; v < 40; ++v) perm[v] = (v * 17 + 5) % 40;
  auto h = g.renamed(perm);
  for (VertexId v0 : {0u, 13u}) {
    Environment a(g, v0, defaultBudget(40)), b(h, perm[v0], defaultBudget(40));
    explore(a);
    explore(b);
    CHECK(a.trace().events == b.trace().events);
  }
}

TEST_CASE("exploration is deterministic") {
  auto g = gen("johnson:6,2;ports=random:1");
  std::string first;
  for (int i = 0; i < 3; ++i) {
    Environment env(g, 7, defaultBudget(15));
    explore(env);
    auto text = traceToJsonLines(env.trace());
    if (i == 0) first = text;
    CHECK(text == first);
  }
}

TEST_CASE("union-find representatives do not depend on union order") {
  std::vector<std::pair<std::size_t, std::size_t>> pairs{{5, 3}, {8, 9}, {3, 9}, {1, 2}, {7, 7}};
  std::vector<std::size_t> reference;
  for (int rot = 0; rot < 5; ++rot) {
    std::rotate(pairs.begin(), pairs.begin() + 1, pairs.end());
    UnionFind uf(10);
    for (auto [a, b] : pairs) uf.unite(b, a);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < 10; ++i) reps.push_back(uf.find(i));
    if (reference.empty()) reference = reps;
    CHECK(reps == reference);
  }
  CHECK(reference[9] == 3);
  CHECK(reference[2] == 1);
}

TEST_CASE("exploration map") {
  ExplorationMap m;
  auto a = m.addVertex(1, 0), b = m.addVertex(), c = m.addVertex();
  CHECK(m.addEdge(a, b, 0, 3));
  CHECK_FALSE(m.addEdge(a, b, 0, 3));
  CHECK_THROWS_AS(m.addEdge(a, c, 0, 1), PortCollision);
  CHECK(m.addEdge(b, c, 1, 0));
  CHECK(m.hasLabel(a, 0, 3));
  CHECK_FALSE(m.hasLabel(a, 0, 2));
  CHECK(m.frontier() == std::vector<MapId>{b, c});
  auto text = mapToJson(m);
  CHECK(parseMapJson(text) == m);
  m.removeEdge(a, 0);
  CHECK_FALSE(m.adjacent(a, b));
  CHECK(m.incident(b).size() == 1);
}
