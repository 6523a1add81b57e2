#include "bino/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace bino {

PortNumberedGraph::PortNumberedGraph(std::size_t n, std::vector<std::vector<HalfEdge>> adjacency,
                                     std::vector<std::string> labels)
    : adj_(std::move(adjacency)), labels_(std::move(labels)) {
  adj_.resize(n);
  byNeighbor_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = adj_[v];
    std::stable_sort(list.begin(), list.end(), [](const HalfEdge& a, const HalfEdge& b) {
      return std::tie(a.out, a.to, a.in) < std::tie(b.out, b.to, b.in);
    });
    auto& index = byNeighbor_[v];
    index.reserve(list.size());
    for (std::uint32_t i = 0; i < list.size(); ++i) index.emplace_back(list[i].to, i);
    std::sort(index.begin(), index.end());
  }
  if (!labels_.empty()) labels_.resize(n);
}

PortNumberedGraph PortNumberedGraph::fromEdges(std::size_t n, std::span<const EdgeRecord> edges,
                                               std::vector<std::string> labels) {
  std::vector<std::vector<HalfEdge>> adj(n);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      std::ostringstream os;
      os << "edge [" << e.u << ", " << e.v << "] references a vertex outside 0.." << n;
      throw std::invalid_argument(os.str());
    }
    adj[e.u].push_back({e.v, e.portAtU, e.portAtV});
    if (e.u != e.v) adj[e.v].push_back({e.u, e.portAtV, e.portAtU});
  }
  return PortNumberedGraph(n, std::move(adj), std::move(labels));
}

PortNumberedGraph PortNumberedGraph::checked(std::size_t n, std::span<const EdgeRecord> edges,
                                             std::vector<std::string> labels) {
  auto g = fromEdges(n, edges, std::move(labels));
  auto violations = validate(g);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid graph:";
    for (const auto& v : violations) os << "\n  " << v.kind << ": " << v.detail;
    throw std::invalid_argument(os.str());
  }
  return g;
}

std::size_t PortNumberedGraph::edgeCount() const {
  std::size_t total = 0;
  for (const auto& list : adj_) total += list.size();
  return total / 2;
}

std::optional<HalfEdge> PortNumberedGraph::viaPort(VertexId v, Port p) const {
  const auto& list = adj_.at(v);
  auto it = std::lower_bound(list.begin(), list.end(), p,
                             [](const HalfEdge& h, Port port) { return h.out < port; });
  if (it == list.end() || it->out != p) return std::nullopt;
  return *it;
}

std::optional<HalfEdge> PortNumberedGraph::edgeBetween(VertexId u, VertexId v) const {
  const auto& index = byNeighbor_.at(u);
  auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(v, std::uint32_t{0}));
  if (it == index.end() || it->first != v) return std::nullopt;
  return adj_[u][it->second];
}

std::vector<EdgeRecord> PortNumberedGraph::edges() const {
  std::vector<EdgeRecord> out;
  for (VertexId u = 0; u < adj_.size(); ++u)
    for (const auto& h : adj_[u])
      if (u < h.to) out.push_back({u, h.to, h.out, h.in});
  std::sort(out.begin(), out.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
    return std::tie(a.u, a.portAtU, a.v, a.portAtV) < std::tie(b.u, b.portAtU, b.v, b.portAtV);
  });
  return out;
}

PortNumberedGraph PortNumberedGraph::renamed(std::span<const VertexId> newId) const {
  const auto n = adj_.size();
  if (newId.size() != n) throw std::invalid_argument("renaming has wrong size");
  std::vector<std::vector<HalfEdge>> adj(n);
  std::vector<std::string> labels(labels_.empty() ? 0 : n);
  for (VertexId v = 0; v < n; ++v) {
    for (const auto& h : adj_[v]) adj.at(newId[v]).push_back({newId[h.to], h.out, h.in});
    if (!labels.empty()) labels[newId[v]] = labels_[v];
  }
  return PortNumberedGraph(n, std::move(adj), std::move(labels));
}

std::vector<Violation> validate(const PortNumberedGraph& g) {
  std::vector<Violation> out;
  const auto n = g.vertexCount();
  if (n == 0) {
    out.push_back({"empty", "graph has no vertices"});
    return out;
  }
  bool rangeOk = true;
  for (VertexId v = 0; v < n; ++v) {
    std::map<Port, int> portUse;
    std::map<VertexId, int> neighborUse;
    for (const auto& h : g.incident(v)) {
      if (h.to >= n) {
        out.push_back({"invalid vertex", "vertex " + std::to_string(v) + " links to " +
                                             std::to_string(h.to)});
        rangeOk = false;
        continue;
      }
      if (h.to == v) out.push_back({"self loop", "at vertex " + std::to_string(v)});
      if (++portUse[h.out] == 2)
        out.push_back({"port injectivity", "port " + std::to_string(h.out) +
                                               " used twice at vertex " + std::to_string(v)});
      if (++neighborUse[h.to] == 2 && h.to != v)
        out.push_back({"non-simple", "multiple edges between " + std::to_string(v) + " and " +
                                         std::to_string(h.to)});
      auto back = g.viaPort(h.to, h.in);
      if (!back || back->to != v || back->in != h.out)
        out.push_back({"asymmetric edge record",
                       "edge " + std::to_string(v) + "->" + std::to_string(h.to) + " ports (" +
                           std::to_string(h.out) + "," + std::to_string(h.in) +
                           ") has no matching reverse record"});
    }
  }
  if (rangeOk) {
    std::vector<bool> seen(n, false);
    std::deque<VertexId> queue{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (const auto& h : g.incident(v))
        if (!seen[h.to]) {
          seen[h.to] = true;
          ++reached;
          queue.push_back(h.to);
        }
    }
    if (reached != n)
      out.push_back({"disconnected", std::to_string(n - reached) +
                                         " vertices unreachable from vertex 0"});
  }
  return out;
}

std::size_t Ball::centerDegree() const {
  return static_cast<std::size_t>(std::count_if(
      edges.begin(), edges.end(), [&](const BallEdge& e) { return e.u == center || e.v == center; }));
}

BallSignature signatureOf(const Ball& b) {
  BallSignature sig;
  sig.vertexCount = b.vertexCount;
  // port at the center leading to each local vertex
  std::vector<std::optional<Port>> spokeOf(b.vertexCount);
  for (const auto& e : b.edges) {
    if (e.u == e.v) {
      sig.simple = false;
      continue;
    }
    if (e.u == b.center || e.v == b.center) {
      const bool centerFirst = e.u == b.center;
      const LocalId other = centerFirst ? e.v : e.u;
      const Port atCenter = centerFirst ? e.portAtU : e.portAtV;
      const Port atOther = centerFirst ? e.portAtV : e.portAtU;
      if (spokeOf[other] || !sig.spokes.emplace(atCenter, atOther).second) sig.simple = false;
      spokeOf[other] = atCenter;
    }
  }
  for (const auto& e : b.edges) {
    if (e.u == e.v || e.u == b.center || e.v == b.center) continue;
    if (!spokeOf[e.u] || !spokeOf[e.v]) {
      sig.simple = false;  // rim edge to a vertex that is not a neighbour
      continue;
    }
    Port a = *spokeOf[e.u], c = *spokeOf[e.v], pa = e.portAtU, pc = e.portAtV;
    if (c < a) {
      std::swap(a, c);
      std::swap(pa, pc);
    }
    if (!sig.rim.emplace(a, c, pa, pc).second) sig.simple = false;
  }
  for (LocalId v = 0; v < b.vertexCount; ++v)
    if (v != b.center && !spokeOf[v]) sig.simple = false;
  return sig;
}

IdentifiedBall identifiedBall(const PortNumberedGraph& g, VertexId v) {
  if (!g.contains(v)) throw std::out_of_range("invalid vertex id " + std::to_string(v));
  IdentifiedBall out;
  out.groundTruth.push_back(v);
  auto around = g.incident(v);
  for (const auto& h : around) {
    out.groundTruth.push_back(h.to);
    out.ball.edges.push_back({0, static_cast<LocalId>(out.groundTruth.size() - 1), h.out, h.in});
  }
  out.ball.center = 0;
  out.ball.vertexCount = out.groundTruth.size();
  for (LocalId i = 1; i < out.groundTruth.size(); ++i)
    for (LocalId j = i + 1; j < out.groundTruth.size(); ++j)
      if (auto e = g.edgeBetween(out.groundTruth[i], out.groundTruth[j]))
        out.ball.edges.push_back({i, j, e->out, e->in});
  return out;
}

Ball ball(const PortNumberedGraph& g, VertexId v) { return identifiedBall(g, v).ball; }

std::optional<VertexId> dest(const PortNumberedGraph& g, VertexId v, std::span<const Port> ports) {
  if (!g.contains(v)) return std::nullopt;
  for (Port p : ports) {
    auto h = g.viaPort(v, p);
    if (!h) return std::nullopt;
    v = h->to;
  }
  return v;
}

std::vector<VertexId> Layering::predecessors(const PortNumberedGraph& g, VertexId v) const {
  std::vector<VertexId> out;
  if (sphereOf.at(v) == 0) return out;
  for (const auto& h : g.incident(v))
    if (sphereOf[h.to] + 1 == sphereOf[v]) out.push_back(h.to);
  std::sort(out.begin(), out.end());
  return out;
}

Layering layering(const PortNumberedGraph& g, VertexId v0) {
  if (!g.contains(v0)) throw std::out_of_range("invalid root " + std::to_string(v0));
  constexpr auto unset = static_cast<std::size_t>(-1);
  Layering l;
  l.root = v0;
  l.sphereOf.assign(g.vertexCount(), unset);
  l.sphereOf[v0] = 0;
  std::deque<VertexId> queue{v0};
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (const auto& h : g.incident(v))
      if (l.sphereOf[h.to] == unset) {
        l.sphereOf[h.to] = l.sphereOf[v] + 1;
        queue.push_back(h.to);
      }
  }
  for (VertexId v = 0; v < g.vertexCount(); ++v) {
    if (l.sphereOf[v] == unset) throw std::invalid_argument("layering needs a connected graph");
    if (l.spheres.size() <= l.sphereOf[v]) l.spheres.resize(l.sphereOf[v] + 1);
    l.spheres[l.sphereOf[v]].push_back(v);
  }
  return l;
}

bool ClusterDecomposition::isTree() const {
  // the cluster graph is connected whenever the input is
  return edges.size() + 1 == clusters.size();
}

std::vector<ClusterId> ClusterDecomposition::neighbors(ClusterId c) const {
  std::vector<ClusterId> out;
  for (auto [a, b] : edges) {
    if (a == c) out.push_back(b);
    if (b == c) out.push_back(a);
  }
  return out;
}

ClusterDecomposition clusterDecomposition(const PortNumberedGraph& g, VertexId v0) {
  const auto lay = layering(g, v0);
  constexpr auto unset = static_cast<ClusterId>(-1);
  ClusterDecomposition dec;
  dec.root = v0;
  dec.clusterOf.assign(g.vertexCount(), unset);
  for (std::size_t s = 0; s < lay.spheres.size(); ++s) {
    auto sphere = lay.spheres[s];
    std::sort(sphere.begin(), sphere.end());
    for (VertexId start : sphere) {
      if (dec.clusterOf[start] != unset) continue;
      Cluster c{static_cast<ClusterId>(dec.clusters.size()), s, {}};
      std::deque<VertexId> queue{start};
      dec.clusterOf[start] = c.id;
      while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        c.vertices.push_back(v);
        for (const auto& h : g.incident(v))
          if (lay.sphereOf[h.to] == s && dec.clusterOf[h.to] == unset) {
            dec.clusterOf[h.to] = c.id;
            queue.push_back(h.to);
          }
      }
      std::sort(c.vertices.begin(), c.vertices.end());
      dec.clusters.push_back(std::move(c));
    }
  }
  for (VertexId u = 0; u < g.vertexCount(); ++u)
    for (const auto& h : g.incident(u)) {
      auto a = dec.clusterOf[u], b = dec.clusterOf[h.to];
      if (a == b) continue;
      if (lay.sphereOf[u] == lay.sphereOf[h.to])
        throw std::logic_error("same-sphere edge between distinct clusters");
      dec.edges.emplace(std::min(a, b), std::max(a, b));
    }
  return dec;
}

ClusterId ancestorCluster(const ClusterDecomposition& dec, ClusterId c) {
  if (c >= dec.clusters.size()) throw std::out_of_range("invalid cluster id");
  if (!dec.isTree()) throw NotATree("cluster graph is not a tree");
  if (c == dec.rootCluster()) throw std::invalid_argument("the root cluster has no ancestor");
  const auto sphere = dec.clusters[c].sphere;
  std::optional<ClusterId> found;
  for (auto n : dec.neighbors(c)) {
    if (dec.clusters[n].sphere + 1 != sphere) continue;
    if (found) throw NotATree("cluster " + std::to_string(c) + " has several predecessors");
    found = n;
  }
  if (!found) throw NotATree("cluster " + std::to_string(c) + " has no predecessor");
  return *found;
}

}  // namespace bino
