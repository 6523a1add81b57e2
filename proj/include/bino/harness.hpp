#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bino/agent.hpp"
#include "bino/exploration_map.hpp"
#include "bino/explorer.hpp"
#include "bino/families.hpp"
#include "bino/graph.hpp"

namespace bino {

struct IsomorphismResult {
  std::vector<std::string> mismatches;  // empty iff isomorphic
  std::vector<std::optional<VertexId>> image;  // map id -> ground-truth vertex, as far as matched
  bool ok() const { return mismatches.empty(); }
};

/// Synchronized traversal from (0, v0). With injective ports the only
/// candidate bijection is forced, so any disagreement is a mismatch.
IsomorphismResult verifyRootedIsomorphism(const ExplorationMap& map, const PortNumberedGraph& g,
                                          VertexId v0);

/// Same traversal without the degree/size requirements: is `h` (from hRoot)
/// a port-preserving injective copy of part of `g` (from gRoot)?
IsomorphismResult rootedEmbedding(const PortNumberedGraph& h, VertexId hRoot,
                                  const PortNumberedGraph& g, VertexId gRoot);

/// The map is a path that embeds, from its homebase, into the tree of
/// non-backtracking walks of the (triangle-free) graph from v0.
IsomorphismResult verifyTreeCoverPrefix(const ExplorationMap& map, const PortNumberedGraph& g,
                                        VertexId v0);

/// Map id -> ground truth: explored ids go to where they were sensed,
/// frontier ids follow their lexicographically smallest vertical edge.
struct PhiReconstruction {
  std::vector<std::optional<VertexId>> phi;
  std::vector<std::string> problems;
};

PhiReconstruction reconstructPhi(const ExplorationMap& map,
                                 const std::map<MapId, VertexId>& exploredAt,
                                 const PortNumberedGraph& g);

struct PhaseCheck {
  Phase phase = 0;
  std::vector<std::string> failures;  // prefixed by the invariant name
  bool ok() const { return failures.empty(); }
};

struct PhaseInvariantReport {
  std::vector<PhaseCheck> phases;
  bool phaseOneMatchesBall = false;
  bool ok() const;
};

class TraceLacksSnapshots : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rebuilds phi at every phase end and checks it is a port-preserving
/// homomorphism, locally injective everywhere, locally surjective (ball
/// included) at explored ids, and preserves triangles at explored ids.
PhaseInvariantReport verifyPhaseInvariants(const RunTrace& trace, const PortNumberedGraph& g,
                                           VertexId v0);

/// Phi of the map at the end of the trace (last snapshot).
PhiReconstruction finalPhi(const RunTrace& trace, const PortNumberedGraph& g, VertexId v0);

struct CoverageResult {
  std::vector<VertexId> unvisited;
  bool ok() const { return unvisited.empty(); }
};

CoverageResult verifyCoverage(const RunTrace& trace, const PortNumberedGraph& g, VertexId v0);

/// Follows `samples` random map walks from the homebase and checks that the
/// ground-truth endpoint always equals phi of the map endpoint.
std::vector<std::string> checkPhiPathIndependence(const ExplorationMap& map,
                                                  const std::vector<std::optional<VertexId>>& phi,
                                                  const PortNumberedGraph& g, VertexId v0,
                                                  std::size_t samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Experiments

struct Checks {
  bool phaseInvariants = true;
  bool finalIsomorphism = true;
  bool coverage = true;
  bool clusterTree = true;
  bool covering = true;
};

struct RootsPolicy {
  bool all = false;
  std::size_t sample = 3;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  std::vector<std::string> generatorSpecs;
  RootsPolicy roots;
  std::vector<PortScheme> portSchemes;  // empty: each spec's own scheme
  double budgetFactor = 50.0;
  Checks checks;
  std::filesystem::path outputPath;
  unsigned threads = 0;  // 0: hardware concurrency
};

ExperimentConfig parseExperimentConfig(std::string_view json);

enum class CheckStatus { Passed, Failed, Skipped };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  std::string diagnostic;
};

struct RunReport {
  std::string spec;  // full echo, ports included
  std::string family;
  VertexId root = 0;
  RunStatus status = RunStatus::ErrorDetected;
  std::uint64_t moves = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  Phase phases = 0;
  std::vector<CheckResult> checks;

  /// moves / n exactly, as a reduced fraction.
  std::pair<std::uint64_t, std::uint64_t> movesPerVertexRational() const;
  double movesPerVertex() const { return n ? static_cast<double>(moves) / static_cast<double>(n) : 0.0; }
  bool allChecksPassed() const;
};

struct RunRecord {
  RunReport report;
  RunTrace trace;
  ExplorationResult result;
};

/// One exploration with the requested verifications.
RunRecord runOne(const GeneratorSpec& spec, const PortNumberedGraph& g, VertexId root,
                 double budgetFactor, const Checks& checks);

/// Runs with an already-built graph; `specEcho` goes into the report.
RunRecord runOnGraph(const std::string& specEcho, const std::string& family,
                     const PortNumberedGraph& g, VertexId root, double budgetFactor,
                     const Checks& checks);

struct GroupSummary {
  std::string family;
  std::size_t n = 0;
  std::size_t runs = 0;
  std::size_t halted = 0;
  double maxMovesPerVertex = 0;
  double meanMovesPerVertex = 0;
  std::size_t failedChecks = 0;
};

struct SuiteResult {
  std::vector<RunReport> reports;
  std::vector<GroupSummary> summary;
  bool allChecksPassed() const;
};

/// Roots chosen for a graph under the policy; deterministic.
std::vector<VertexId> chooseRoots(const RootsPolicy& policy, std::size_t n, std::string_view specKey);

SuiteResult runSuite(const ExperimentConfig& config);
std::vector<GroupSummary> summarize(const std::vector<RunReport>& reports);

std::string reportsToJson(const SuiteResult& suite);
std::string summaryTable(const SuiteResult& suite);
std::string reportToJson(const RunReport& report);
/// Writes report.json and summary.txt into the directory.
void writeSuiteOutputs(const SuiteResult& suite, const std::filesystem::path& dir);

std::string familyName(const GeneratorSpec& spec);

}  // namespace bino
