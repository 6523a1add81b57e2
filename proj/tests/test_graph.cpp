#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <filesystem>
#include <numeric>

#include "bino/families.hpp"
#include "bino/graph.hpp"
#include "bino/graph_io.hpp"
#include "bino/rng.hpp"
#include "oracles.hpp"

using namespace bino;

namespace {

PortNumberedGraph k3() {
  const std::array<EdgeRecord, 3> e{{{0, 1, 0, 0}, {0, 2, 1, 0}, {1, 2, 1, 1}}};
  return PortNumberedGraph::fromEdges(3, e);
}

PortNumberedGraph gen(const char* s) { return generate(parseGeneratorSpec(s)); }

bool hasKind(const std::vector<Violation>& vs, std::string_view kind) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(k3()).empty());

  const std::array<EdgeRecord, 3> dup{{{0, 1, 0, 0}, {0, 2, 0, 0}, {1, 2, 1, 1}}};
  CHECK(hasKind(validate(PortNumberedGraph::fromEdges(3, dup)), "port injectivity"));

  const std::array<EdgeRecord, 2> split{{{0, 1, 0, 0}, {2, 3, 0, 0}}};
  CHECK(hasKind(validate(PortNumberedGraph::fromEdges(4, split)), "disconnected"));

  const std::array<EdgeRecord, 1> loop{{{0, 0, 0, 1}}};
  CHECK(hasKind(validate(PortNumberedGraph::fromEdges(1, loop)), "self loop"));

  const std::array<EdgeRecord, 2> multi{{{0, 1, 0, 0}, {0, 1, 1, 1}}};
  CHECK(hasKind(validate(PortNumberedGraph::fromEdges(2, multi)), "non-simple"));

  CHECK_THROWS_AS(PortNumberedGraph::checked(4, split), std::invalid_argument);
  CHECK(validate(PortNumberedGraph::fromEdges(1, {})).empty());
}

TEST_CASE("ports need not be 0..deg-1") {
  const std::array<EdgeRecord, 2> e{{{0, 1, 7, 3}, {1, 2, 42, 5}}};
  auto g = PortNumberedGraph::checked(3, e);
  CHECK(g.viaPort(1, 42)->to == 2);
  CHECK(g.viaPort(1, 3)->in == 7);
  CHECK_FALSE(g.viaPort(1, 0));
}

TEST_CASE("ball") {
  auto g = k3();
  for (VertexId v = 0; v < 3; ++v) {
    auto b = ball(g, v);
    CHECK(b.vertexCount == 3);
    CHECK(b.edges.size() == 3);
    CHECK(b.centerDegree() == 2);
  }
  auto c6 = gen("cycle:6");
  for (VertexId v = 0; v < 6; ++v) {
    auto b = ball(c6, v);
    CHECK(b.vertexCount == 3);
    CHECK(b.edges.size() == 2);
  }
  auto j = gen("johnson:5,2");
  auto adj = oracle::adjacency(j);
  for (VertexId v = 0; v < j.vertexCount(); ++v) {
    auto b = ball(j, v);
    CHECK(b.vertexCount == 7);
    CHECK(b.centerDegree() == 6);
    std::size_t rim = 0;
    for (auto x : adj[v])
      for (auto y : adj[v])
        if (x < y && adj[x].count(y)) ++rim;
    CHECK(b.edges.size() == 6 + rim);
  }
  CHECK_THROWS(ball(g, 5));
}

TEST_CASE("ball invariants on a random chordal graph") {
  auto g = gen("chordal:n=60,rate=0.5,seed=4;ports=random:9");
  auto adj = oracle::adjacency(g);
  for (VertexId v = 0; v < g.vertexCount(); ++v) {
    auto ib = identifiedBall(g, v);
    REQUIRE(ib.groundTruth.size() == ib.ball.vertexCount);
    CHECK(ib.groundTruth[0] == v);
    CHECK(ib.ball.centerDegree() == g.degree(v));
    for (const auto& e : ib.ball.edges) {
      auto a = ib.groundTruth[e.u], b = ib.groundTruth[e.v];
      auto h = g.edgeBetween(a, b);
      REQUIRE(h);
      CHECK(h->out == e.portAtU);
      CHECK(h->in == e.portAtV);
    }
    std::set<LocalId> spoked;
    for (const auto& e : ib.ball.edges)
      if (e.u == 0 || e.v == 0) spoked.insert(e.u == 0 ? e.v : e.u);
    CHECK(spoked.size() + 1 == ib.ball.vertexCount);
  }
}

TEST_CASE("signature is invariant under renaming") {
  auto g = gen("johnson:5,2;ports=random:2");
  std::vector<VertexId> perm(g.vertexCount());
  std::iota(perm.begin(), perm.end(), 0u);
  Rng rng(11);
  rng.shuffle(std::span<VertexId>(perm));
  auto h = g.renamed(perm);
  for (VertexId v = 0; v < g.vertexCount(); ++v)
    CHECK(signatureOf(ball(g, v)) == signatureOf(ball(h, perm[v])));
}

TEST_CASE("dest") {
  auto g = k3();
  CHECK(dest(g, 1, std::vector<Port>{}) == 1u);
  for (VertexId v = 0; v < 3; ++v)
    for (const auto& e : g.incident(v)) {
      std::array<Port, 2> there_and_back{e.out, e.in};
      CHECK(dest(g, v, there_and_back) == v);
    }
  auto c4 = gen("cycle:4");
  std::array<Port, 4> zeros{0, 0, 0, 0};
  CHECK(dest(c4, 0, zeros) == 0u);
  std::array<Port, 1> missing{9};
  CHECK_FALSE(dest(c4, 0, missing));
}

TEST_CASE("layering") {
  auto l = layering(k3(), 0);
  REQUIRE(l.spheres.size() == 2);
  CHECK(l.spheres[0] == std::vector<VertexId>{0});
  CHECK(l.spheres[1] == std::vector<VertexId>{1, 2});

  auto p5 = gen("path:5");
  auto lp = layering(p5, 0);
  CHECK(lp.spheres.size() == 5);
  for (const auto& s : lp.spheres) CHECK(s.size() == 1);

  auto c6 = gen("cycle:6");
  std::vector<std::size_t> sizes;
  for (const auto& s : layering(c6, 0).spheres) sizes.push_back(s.size());
  CHECK(sizes == oracle::sphereSizes(oracle::adjacency(c6), 0));
  CHECK(sizes == std::vector<std::size_t>{1, 2, 2, 1});
}

TEST_CASE("cluster decomposition") {
  auto d = clusterDecomposition(k3(), 0);
  REQUIRE(d.clusters.size() == 2);
  CHECK(d.clusters[1].vertices == std::vector<VertexId>{1, 2});
  CHECK(d.isTree());
  CHECK(ancestorCluster(d, d.clusterOf[1]) == d.rootCluster());
  CHECK_THROWS_AS(ancestorCluster(d, d.rootCluster()), std::invalid_argument);

  auto c6 = gen("cycle:6");
  auto dc = clusterDecomposition(c6, 0);
  CHECK(dc.clusters.size() == oracle::clusters(oracle::adjacency(c6), 0).size());
  CHECK(dc.clusters.size() == 6);
  CHECK_FALSE(dc.isTree());
  CHECK_THROWS_AS(ancestorCluster(dc, dc.clusterOf[3]), NotATree);

  auto p5 = gen("path:5");
  auto dp = clusterDecomposition(p5, 0);
  for (VertexId i = 1; i < 5; ++i) CHECK(ancestorCluster(dp, dp.clusterOf[i]) == dp.clusterOf[i - 1]);

  auto oct = gen("johnson:4,2");
  auto adj = oracle::adjacency(oct);
  for (VertexId v0 = 0; v0 < 6; ++v0) {
    auto dj = clusterDecomposition(oct, v0);
    REQUIRE(dj.clusters.size() == 3);
    CHECK(dj.clusters[1].vertices.size() == 4);
    CHECK(dj.clusters[2].vertices.size() == 1);
    CHECK(adj[v0].count(dj.clusters[2].vertices[0]) == 0);
    CHECK(dj.edges == std::set<std::pair<ClusterId, ClusterId>>{{0, 1}, {1, 2}});
  }
}

TEST_CASE("cluster decomposition agrees with brute force") {
  for (const char* s : {"chordal:n=40,rate=0.6,seed=1", "grid:3,4", "cycle:7", "johnson:6,2",
                        "tree:n=30,seed=5"}) {
    auto g = gen(s);
    auto adj = oracle::adjacency(g);
    for (VertexId v0 = 0; v0 < g.vertexCount(); v0 += 3) {
      auto d = clusterDecomposition(g, v0);
      CHECK(d.clusters.size() == oracle::clusters(adj, v0).size());
      CHECK(d.isTree() == oracle::clusterGraphIsTree(adj, v0));
    }
  }
}

TEST_CASE("graph json round trip and diagnostics") {
  auto g = gen("chordal:n=20,rate=0.4,seed=3;ports=random:5");
  auto text = graphToJson(g);
  CHECK(parseGraphJson(text) == g);
  CHECK(graphToJson(parseGraphJson(text)) == text);

  const std::string bad = "{\n \"n\": 3,\n \"edges\": [\n  [0, 1, 0, 0],\n  [0, 2, 0, 0],\n  [1, 2, 1, 1]\n ]\n}\n";
  try {
    parseGraphJson(bad);
    FAIL("accepted a port collision");
  } catch (const GraphFormatError& e) {
    std::string what = e.what();
    CHECK(what.find("port injectivity") != std::string::npos);
    CHECK(what.find("line 5") != std::string::npos);
  }
  CHECK_THROWS_AS(parseGraphJson("{\"n\": 2, \"edges\": [[0, 5, 0, 0]]}"), GraphFormatError);
  CHECK_THROWS_AS(parseGraphJson("not json"), GraphFormatError);

  auto dir = std::filesystem::temp_directory_path() / "bino_graph_io";
  saveGraphFile(g, dir / "g.json");
  CHECK(loadGraphFile(dir / "g.json") == g);
  std::filesystem::remove_all(dir);
}
