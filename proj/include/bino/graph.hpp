#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace bino {

using VertexId = std::uint32_t;
using Port = std::uint32_t;
using LocalId = std::uint32_t;
using ClusterId = std::uint32_t;

/// One side of an undirected edge as seen from its owner vertex.
struct HalfEdge {
  VertexId to;
  Port out;  // port at the owner
  Port in;   // port at `to`
  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

/// Undirected edge record `[u, v, portAtU, portAtV]`, the unit of the JSON format.
struct EdgeRecord {
  VertexId u;
  VertexId v;
  Port portAtU;
  Port portAtV;
  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

struct Violation {
  std::string kind;  // "port injectivity", "disconnected", "self loop", ...
  std::string detail;
};

/// Ground-truth anonymous graph with a port numbering.
///
/// Vertex ids are dense (0..n-1) and exist for array indexing only; agents
/// never see them. The constructor does not validate, so that `validate()`
/// can report on malformed inputs; use `checked()` when an invalid graph
/// should be rejected outright.
class PortNumberedGraph {
 public:
  PortNumberedGraph() = default;
  PortNumberedGraph(std::size_t n, std::vector<std::vector<HalfEdge>> adjacency,
                    std::vector<std::string> labels = {});

  static PortNumberedGraph fromEdges(std::size_t n, std::span<const EdgeRecord> edges,
                                     std::vector<std::string> labels = {});
  /// Throws std::invalid_argument listing every violation.
  static PortNumberedGraph checked(std::size_t n, std::span<const EdgeRecord> edges,
                                   std::vector<std::string> labels = {});

  std::size_t vertexCount() const { return adj_.size(); }
  std::size_t edgeCount() const;
  std::size_t degree(VertexId v) const { return adj_.at(v).size(); }

  /// Incident half-edges of v sorted by out-port.
  std::span<const HalfEdge> incident(VertexId v) const { return adj_.at(v); }
  std::optional<HalfEdge> viaPort(VertexId v, Port p) const;
  /// Half-edge u->v if the two are adjacent.
  std::optional<HalfEdge> edgeBetween(VertexId u, VertexId v) const;
  bool adjacent(VertexId u, VertexId v) const { return edgeBetween(u, v).has_value(); }
  bool contains(VertexId v) const { return v < adj_.size(); }

  /// Edge list with u < v, sorted.
  std::vector<EdgeRecord> edges() const;
  const std::vector<std::string>& labels() const { return labels_; }

  /// Same structure and ports under the vertex renaming `newId[old]`.
  PortNumberedGraph renamed(std::span<const VertexId> newId) const;

  friend bool operator==(const PortNumberedGraph&, const PortNumberedGraph&) = default;

 private:
  std::vector<std::vector<HalfEdge>> adj_;
  // per-vertex (neighbor, index into adj_[v]) sorted by neighbor
  std::vector<std::vector<std::pair<VertexId, std::uint32_t>>> byNeighbor_;
  std::vector<std::string> labels_;
};

/// Every violated model assumption; empty means the graph is usable.
std::vector<Violation> validate(const PortNumberedGraph& g);

struct BallEdge {
  LocalId u;
  LocalId v;
  Port portAtU;
  Port portAtV;
  friend bool operator==(const BallEdge&, const BallEdge&) = default;
};

/// Radius-1 induced ball with ports. Local ids are 0..size-1; `center` is 0
/// for balls produced by `ball()`.
struct Ball {
  LocalId center = 0;
  std::size_t vertexCount = 1;
  std::vector<BallEdge> edges;

  std::size_t centerDegree() const;
  friend bool operator==(const Ball&, const Ball&) = default;
};

/// Ball together with the local-to-ground-truth table. Harness only.
struct IdentifiedBall {
  Ball ball;
  std::vector<VertexId> groundTruth;  // indexed by local id
};

/// Port-level fingerprint of a rooted ball. Since ports are injective, two
/// balls are rooted port-isomorphic iff their signatures are equal.
struct BallSignature {
  std::size_t vertexCount = 0;
  std::set<std::pair<Port, Port>> spokes;  // (port at center, port at neighbor)
  // (center port to a, center port to b, port at a, port at b) with first < second
  std::set<std::tuple<Port, Port, Port, Port>> rim;
  bool simple = true;
  friend bool operator==(const BallSignature&, const BallSignature&) = default;
};

BallSignature signatureOf(const Ball& b);

/// Neighbours get local ids 1..deg in out-port order of v.
IdentifiedBall identifiedBall(const PortNumberedGraph& g, VertexId v);
Ball ball(const PortNumberedGraph& g, VertexId v);

/// Follow out-ports from v; nullopt as soon as a port is missing.
std::optional<VertexId> dest(const PortNumberedGraph& g, VertexId v, std::span<const Port> ports);

struct Layering {
  VertexId root = 0;
  std::vector<std::size_t> sphereOf;
  std::vector<std::vector<VertexId>> spheres;

  /// Neighbours of v one sphere closer to the root.
  std::vector<VertexId> predecessors(const PortNumberedGraph& g, VertexId v) const;
};

Layering layering(const PortNumberedGraph& g, VertexId v0);

struct Cluster {
  ClusterId id;
  std::size_t sphere;
  std::vector<VertexId> vertices;
};

struct ClusterDecomposition {
  VertexId root = 0;
  std::vector<Cluster> clusters;  // ordered by sphere, then smallest vertex
  std::vector<ClusterId> clusterOf;
  std::set<std::pair<ClusterId, ClusterId>> edges;  // (a, b) with a < b

  ClusterId rootCluster() const { return clusterOf.at(root); }
  bool isTree() const;
  std::vector<ClusterId> neighbors(ClusterId c) const;
};

ClusterDecomposition clusterDecomposition(const PortNumberedGraph& g, VertexId v0);

class NotATree : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unique cluster one sphere closer to the root. Throws NotATree when the
/// cluster graph is not a tree, std::invalid_argument for the root cluster.
ClusterId ancestorCluster(const ClusterDecomposition& dec, ClusterId c);

}  // namespace bino
