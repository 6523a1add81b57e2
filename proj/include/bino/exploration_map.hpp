#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bino/graph.hpp"

namespace bino {

using MapId = std::uint32_t;
using Phase = std::uint32_t;

inline constexpr ClusterId kNoCluster = static_cast<ClusterId>(-1);

/// Inserting an edge would give a map vertex two edges on one port.
class PortCollision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The agent's map M: vertices are allocation-ordered ids (homebase 0), ports
/// are copied from what the agent observed, `cir` names the cluster of each
/// vertex and `vis` the phase in which it was explored (nullopt = frontier).
class ExplorationMap {
 public:
  struct Arc {
    MapId to;
    Port out;
    Port in;
    friend bool operator==(const Arc&, const Arc&) = default;
  };

  MapId addVertex(std::optional<Phase> vis = std::nullopt, ClusterId cir = kNoCluster);

  /// False if an edge with the same endpoints and labels is already present.
  /// Throws PortCollision if either port is taken by a different edge.
  bool addEdge(MapId a, MapId b, Port portAtA, Port portAtB);
  void removeEdge(MapId a, Port portAtA);

  std::size_t vertexCount() const { return adj_.size(); }
  std::size_t edgeCount() const;
  bool contains(MapId n) const { return n < adj_.size(); }
  std::span<const Arc> incident(MapId n) const { return adj_.at(n); }
  std::optional<Arc> viaPort(MapId n, Port p) const;
  /// Is there an edge at n labelled (p at n, q at the far end)?
  bool hasLabel(MapId n, Port p, Port q) const;
  bool adjacent(MapId a, MapId b) const;

  ClusterId cir(MapId n) const { return cir_.at(n); }
  void setCir(MapId n, ClusterId c) { cir_.at(n) = c; }
  std::optional<Phase> vis(MapId n) const { return vis_.at(n); }
  void setVis(MapId n, Phase p) { vis_.at(n) = p; }
  bool explored(MapId n) const { return vis_.at(n).has_value(); }
  std::vector<MapId> frontier() const;

  MapId current() const { return current_; }
  void setCurrent(MapId n) { current_ = n; }

  /// B_M(n,1): neighbours in out-port order get local ids 1..k (a neighbour
  /// reached through two ports keeps one id, which makes the ball non-simple).
  Ball ballAt(MapId n) const;

  /// Edge list with a < b.
  std::vector<EdgeRecord> edges() const;
  PortNumberedGraph toGraph() const;

  friend bool operator==(const ExplorationMap&, const ExplorationMap&) = default;

 private:
  std::vector<std::vector<Arc>> adj_;  // sorted by out-port
  std::vector<ClusterId> cir_;
  std::vector<std::optional<Phase>> vis_;
  MapId current_ = 0;
};

/// `{"n", "edges", "cir", "vis", "homebase": 0}`, vis null on the frontier.
std::string mapToJson(const ExplorationMap& map);
ExplorationMap parseMapJson(std::string_view text);

}  // namespace bino
