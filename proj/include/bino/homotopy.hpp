#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bino/graph.hpp"

namespace bino {

/// Closed walk `v0 v1 ... vk` with vk == v0; consecutive entries are equal
/// or adjacent. A single entry `(v)` is the constant loop.
using Loop = std::vector<VertexId>;

bool isLoop(const PortNumberedGraph& g, const Loop& loop);

enum class MoveKind {
  Contract,        // drop a stationary repeat: (.. a a ..) -> (.. a ..)
  Stutter,         // inverse of Contract
  Backtrack,       // (.. a b a ..) -> (.. a ..)
  InsertBacktrack, // inverse of Backtrack
  Push,            // across a triangle: (.. a b c ..) -> (.. a c ..) with ac an edge
  PushOut,         // inverse of Push
};

std::string_view toString(MoveKind k);

/// One elementary homotopy. `index` is the position in the closed sequence;
/// `vertex` is the inserted vertex for the growing kinds.
struct HomotopyMove {
  MoveKind kind;
  std::size_t index;
  VertexId vertex = 0;
  friend bool operator==(const HomotopyMove&, const HomotopyMove&) = default;
};

/// Applies a move; nullopt when it is not legal at that position.
std::optional<Loop> applyMove(const PortNumberedGraph& g, const Loop& loop, const HomotopyMove& m);

/// Every loop one elementary homotopy away, in both directions.
std::vector<Loop> elementaryMoves(const PortNumberedGraph& g, const Loop& loop);
std::vector<std::pair<HomotopyMove, Loop>> elementaryMovesWithWitness(const PortNumberedGraph& g,
                                                                      const Loop& loop);

/// Free-loop normal form: stationary repeats dropped (also across the seam),
/// rotated to the lexicographically smallest start, re-closed.
Loop canonicalLoop(const Loop& loop);

enum class Verdict { Contractible, NotContractibleWithinBudget, BudgetExhausted };

/// A step of a reduction: the move applied to the previous (canonical) loop
/// and the canonical loop it yields.
struct ReductionStep {
  HomotopyMove move;
  Loop result;
};

struct ContractibilityAnswer {
  Verdict verdict;
  std::size_t steps = 0;  // search states expanded
  Loop start;             // canonical form of the input
  std::vector<ReductionStep> trace;  // filled for Contractible
};

struct ContractibilityBudget {
  std::optional<std::size_t> maxLoopLength;  // default 2*|loop| + 4
  std::size_t maxSteps = 1'000'000;
};

/// Exhaustive search over the loop-rewriting graph, shortest loops first.
/// NotContractibleWithinBudget means every loop within the length cap was
/// reached without finding a point.
ContractibilityAnswer isContractible(const PortNumberedGraph& g, const Loop& loop,
                                     ContractibilityBudget budget = {});

/// True iff applying the trace to the answer's start ends at length <= 1.
bool replayReduction(const PortNumberedGraph& g, const ContractibilityAnswer& answer);

std::string reductionToJson(const ContractibilityAnswer& answer);

enum class Connectivity { Yes, No, Unknown };
std::string_view toString(Connectivity c);

struct SimpleConnectivityBudget {
  std::size_t maxVertices = 64;
  std::optional<std::size_t> maxCycleLength;  // default n
  std::size_t maxCycles = 2000;
  std::size_t maxStepsPerLoop = 200'000;
};

struct SimpleConnectivityReport {
  Connectivity answer = Connectivity::Unknown;
  std::optional<Loop> offending;  // non-contractible or undecided loop
  std::size_t loopsChecked = 0;
};

bool isTriangleFree(const PortNumberedGraph& g);

/// Checks the fundamental loops of a BFS tree (they generate every loop up to
/// homotopy) and the simple cycles up to a length cap. `No` is returned only
/// when it is provable, i.e. for triangle-free graphs with a cycle.
/// Throws std::length_error above maxVertices.
SimpleConnectivityReport isSimplyConnected(const PortNumberedGraph& g,
                                           SimpleConnectivityBudget budget = {});

/// Simple cycles as closed loops starting at their smallest vertex.
std::vector<Loop> simpleCycles(const PortNumberedGraph& g, std::size_t maxLength,
                               std::size_t maxCount);

struct TreeCover {
  PortNumberedGraph tree;                // vertex 0 is the empty walk
  std::vector<VertexId> projection;      // walk -> endpoint in the base graph
  std::vector<std::size_t> depth;        // walk length
  std::size_t radius = 0;
  bool isBoundary(VertexId w) const { return depth.at(w) == radius; }
};

class HasTriangles : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tree of non-backtracking walks from v0 of length <= radius with inherited
/// ports. Triangle-free inputs only (throws HasTriangles).
TreeCover unfoldTreeCover(const PortNumberedGraph& g, VertexId v0, std::size_t radius);

struct CoveringViolation {
  std::string kind;  // "homomorphism", "port", "local injectivity", "degree", "ball"
  VertexId vertex;
  std::string detail;
};

/// Checks that phi: h -> g is a port-preserving, locally injective
/// homomorphism, and at every vertex not in `exempt` also degree- and
/// ball-preserving.
std::optional<CoveringViolation> verifySimplicialCovering(const PortNumberedGraph& h,
                                                          const PortNumberedGraph& g,
                                                          std::span<const VertexId> phi,
                                                          std::span<const VertexId> exempt = {});

}  // namespace bino
