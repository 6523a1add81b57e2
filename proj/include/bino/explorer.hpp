#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bino/agent.hpp"
#include "bino/exploration_map.hpp"

namespace bino {

/// (n, p): a not-yet-mapped neighbour seen from explored map vertex n behind port p.
struct PreVertexKey {
  MapId n;
  Port p;
  auto operator<=>(const PreVertexKey&) const = default;
};

/// Horizontal edge between NEW(n, p1) and NEW(n, p2) labelled (r at the first, s at the second).
struct HorRecord {
  MapId n;
  Port p1, p2;
  Port r, s;
  auto operator<=>(const HorRecord&) const = default;
};

/// Phase-local identification data plus the balls recorded so far.
struct PreVertexLedger {
  std::map<PreVertexKey, Port> preVerts;  // (n, p) -> q, the port at the far end
  std::set<std::pair<PreVertexKey, PreVertexKey>> equivPairs;
  std::set<HorRecord> horRecords;
  std::map<MapId, Ball> balls;  // ball of n; its center is psi(n)

  /// Clears the phase-local parts; balls persist.
  void startPhase();
  /// Closure of equivPairs: each pre-vertex to the smallest member of its class.
  std::map<PreVertexKey, PreVertexKey> classes() const;
};

struct ClusterStack {
  std::vector<ClusterId> stack;
  ClusterId nextId = 1;  // 0 is the homebase cluster
};

class MapInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TourPlan {
  std::vector<Port> ports;       // moves to make, in order
  std::vector<MapId> walk;       // `from`, then the vertex reached after each port
  std::vector<MapId> visitOrder; // cluster vertices by first visit
  std::size_t approachLength = 0;
};

/// Shortest approach (through explored vertices, smallest port first) to the
/// nearest cluster vertex, then a depth-first walk of the cluster's induced
/// map subgraph, cut after the last new vertex. Throws std::logic_error if
/// the cluster cannot be reached or is not connected in the map.
TourPlan planClusterTour(const ExplorationMap& map, MapId from, const std::vector<MapId>& cluster);

/// Stores the ball and stamps vis(n) = phase. Returns false if n already had
/// a ball (a re-entered vertex).
bool recordBall(ExplorationMap& map, PreVertexLedger& ledger, MapId n, Ball ball, Phase phase);

/// Pre-vertices, equivalence pairs and horizontal records for the cluster.
void harvestLedger(const ExplorationMap& map, PreVertexLedger& ledger,
                   const std::vector<MapId>& cluster);

/// Adds one frontier vertex per class of pre-vertices and the vertical and
/// horizontal edges; returns the new ids in allocation order. Throws
/// MapInconsistency on a port collision or a horizontal self-loop.
std::vector<MapId> applyLedger(ExplorationMap& map, const PreVertexLedger& ledger);

/// First cluster vertex whose recorded ball is not rooted port-isomorphic to
/// its ball in the map; nullopt when all match.
std::optional<MapId> checkLocalIso(const ExplorationMap& map, const PreVertexLedger& ledger,
                                   const std::vector<MapId>& cluster);

/// Components of the new vertices, each a fresh cluster, pushed in ascending
/// order of their smallest id. Returns the pushed cluster ids.
std::vector<ClusterId> discoverNewClusters(ExplorationMap& map, const std::vector<MapId>& newIds,
                                           ClusterStack& stack);

/// Per-run counters the harness asserts on.
struct ExplorerStats {
  Phase phases = 0;
  std::size_t senses = 0;
  std::size_t reentries = 0;  // vertices sensed in more than one phase
};

/// Phase-based cluster exploration with binoculars.
class Explorer final : public Agent {
 public:
  void onStart(AgentContext& ctx) override;
  StepResult step(AgentContext& ctx) override;
  std::optional<ExplorationMap> finalMap() const override;
  std::string errorDetail() const override { return error_; }

  const ExplorationMap& map() const { return map_; }
  const ExplorerStats& stats() const { return stats_; }
  /// Harvest of the last completed phase.
  const PreVertexLedger& ledger() const { return ledger_; }

 private:
  StepResult fail(std::string why);

  ExplorationMap map_;
  PreVertexLedger ledger_;
  ClusterStack stack_;
  ExplorerStats stats_;
  Phase phase_ = 0;
  bool halted_ = false;
  std::string error_;
};

struct ExplorationResult {
  RunOutcome outcome;
  ExplorationMap lastMap;  // map when the run stopped, whatever the status
  ExplorerStats stats;
};

ExplorationResult explore(Environment& env);

}  // namespace bino
