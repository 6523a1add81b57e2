#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bino/graph.hpp"

namespace bino {

namespace family {
struct Johnson {
  unsigned n, k;
};
/// Random tree on n vertices plus chords added while the graph stays chordal.
/// Up to round(rate * n) chords are added.
struct RandomChordal {
  unsigned n;
  double rate;
  std::uint64_t seed;
};
struct Complete {
  unsigned n;
};
struct Path {
  unsigned n;
};
struct Cycle {
  unsigned n;
};
/// Random recursive tree.
struct Tree {
  unsigned n;
  std::uint64_t seed;
};
/// rows x cols grid; a non-Weetman control.
struct Grid {
  unsigned rows, cols;
};
}  // namespace family

using Family = std::variant<family::Johnson, family::RandomChordal, family::Complete,
                            family::Path, family::Cycle, family::Tree, family::Grid>;

struct CanonicalPorts {};
struct RandomPorts {
  std::uint64_t seed;
};
using PortScheme = std::variant<CanonicalPorts, RandomPorts>;

struct GeneratorSpec {
  Family family;
  PortScheme ports = CanonicalPorts{};
};

/// Spec strings: `johnson:5,2`, `chordal:n=100,rate=0.4,seed=7`, `complete:10`,
/// `path:5`, `cycle:6`, `tree:n=50,seed=3`, `grid:3,4`, optionally followed by
/// `;ports=random:SEED` or `;ports=canonical`. Throws std::invalid_argument.
GeneratorSpec parseGeneratorSpec(std::string_view text);
std::string toString(const GeneratorSpec& spec);
std::string toString(const PortScheme& scheme);
PortScheme parsePortScheme(std::string_view text);

/// Deterministic: equal specs give identical graphs.
PortNumberedGraph generate(const GeneratorSpec& spec);

/// Re-number ports: canonical gives each vertex ports 0..deg-1 by ascending
/// neighbour id; random applies a seeded permutation of 0..deg-1 per vertex.
PortNumberedGraph assignPorts(std::size_t n, const std::vector<std::vector<VertexId>>& neighbors,
                              const PortScheme& scheme);

enum class Condition { Triangle, Interval };

struct ConditionWitness {
  Condition condition;
  VertexId root;
  // Triangle: the two endpoints of the offending same-sphere edge.
  // Interval: the vertex whose predecessors are disconnected.
  std::vector<VertexId> vertices;
};

struct ConditionReport {
  bool holds = true;
  std::optional<ConditionWitness> witness;
};

ConditionReport checkTriangleCondition(const PortNumberedGraph& g, VertexId v0);
ConditionReport checkIntervalCondition(const PortNumberedGraph& g, VertexId v0);
/// Both conditions for every root; reports the first failure.
ConditionReport isWeetman(const PortNumberedGraph& g);

/// True iff the witness still exhibits the failure it claims.
bool witnessReproduces(const PortNumberedGraph& g, const ConditionWitness& w);

struct ChordalityResult {
  bool chordal = false;
  /// Perfect elimination ordering when chordal.
  std::vector<VertexId> eliminationOrder;
};

/// Maximum cardinality search followed by the standard PEO verification.
ChordalityResult isChordal(const PortNumberedGraph& g);
ChordalityResult isChordal(const std::vector<std::vector<VertexId>>& neighbors);

}  // namespace bino
