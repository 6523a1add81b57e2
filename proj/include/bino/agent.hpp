#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bino/exploration_map.hpp"
#include "bino/graph.hpp"
#include "bino/rng.hpp"

namespace bino {

/// What the agent gets from one look through the binoculars.
struct Observation {
  Ball ball;                       // centered at local id 0, other ids fresh per sensing
  std::optional<Port> arrivalPort; // in-port of the last move
};

struct TraceEvent {
  enum class Kind { Sense, Move, PhaseStart, PhaseEnd, Halt, BudgetExhausted, ErrorDetected };
  Kind kind = Kind::Sense;
  Ball ball{};                        // Sense
  std::optional<Port> arrivalPort{};  // Sense
  std::optional<std::uint64_t> tag{}; // Sense: agent-side annotation (its own map id)
  Port out = 0, in = 0;               // Move
  Phase phase = 0;                    // PhaseStart / PhaseEnd
  std::shared_ptr<const ExplorationMap> map{};  // PhaseEnd snapshot, optional
  std::string detail{};               // ErrorDetected

  friend bool operator==(const TraceEvent& a, const TraceEvent& b);
};

std::string_view toString(TraceEvent::Kind k);

/// Event log of one run. `root` and the graph size are harness metadata; the
/// events themselves carry no ground-truth ids.
struct RunTrace {
  VertexId root = 0;
  std::size_t graphVertices = 0;
  std::size_t graphEdges = 0;
  std::uint64_t budget = 0;
  std::vector<TraceEvent> events;

  std::size_t moveCount() const;
  /// Ground-truth position after each move, starting with the root.
  std::vector<VertexId> replayPositions(const PortNumberedGraph& g) const;
  /// Observations only, as the agent saw them.
  std::vector<Observation> observations() const;
};

inline constexpr std::string_view kTraceFormat = "bino-trace";
inline constexpr int kTraceVersion = 1;

/// JSON lines: a header object, then one event per line.
std::string traceToJsonLines(const RunTrace& trace);
RunTrace parseTraceJsonLines(std::string_view text);

class NoSuchPort : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnvironmentOptions {
  std::uint64_t relabelSeed = 0x5eed'0ba11;
  bool recordSnapshots = true;
};

/// Hidden ground truth plus the move counter. Only AgentContext is handed to
/// agents.
class Environment {
 public:
  Environment(const PortNumberedGraph& g, VertexId v0, std::uint64_t budget,
              EnvironmentOptions options = {});

  Observation sense(std::optional<std::uint64_t> tag = std::nullopt);
  /// Returns the in-port at the destination.
  Port move(Port out);

  void markPhaseStart(Phase i);
  void markPhaseEnd(Phase i, const ExplorationMap& map);
  void markHalt();
  void markBudgetExhausted();
  void markError(std::string detail);

  std::uint64_t moveCount() const { return moves_; }
  std::uint64_t budget() const { return budget_; }
  const RunTrace& trace() const { return trace_; }
  RunTrace takeTrace() { return std::move(trace_); }

  // harness side
  VertexId position() const { return position_; }
  VertexId root() const { return trace_.root; }
  const PortNumberedGraph& graph() const { return *graph_; }

 private:
  const PortNumberedGraph* graph_;
  VertexId position_;
  std::uint64_t moves_ = 0;
  std::uint64_t budget_;
  std::optional<Port> lastArrival_;
  Rng relabel_;
  EnvironmentOptions options_;
  RunTrace trace_;
};

/// The agent's only window on the environment.
class AgentContext {
 public:
  explicit AgentContext(Environment& env) : env_(env) {}
  Observation sense(std::optional<std::uint64_t> tag = std::nullopt) { return env_.sense(tag); }
  Port move(Port out) { return env_.move(out); }
  std::uint64_t movesSoFar() const { return env_.moveCount(); }
  void phaseStart(Phase i) { env_.markPhaseStart(i); }
  void phaseEnd(Phase i, const ExplorationMap& map) { env_.markPhaseEnd(i, map); }

 private:
  Environment& env_;
};

enum class StepResult { Continue, Halt, Error };

class Agent {
 public:
  virtual ~Agent() = default;
  virtual void onStart(AgentContext&) {}
  virtual StepResult step(AgentContext& ctx) = 0;
  virtual std::optional<ExplorationMap> finalMap() const { return std::nullopt; }
  virtual std::string errorDetail() const { return {}; }
};

enum class RunStatus { Halted, BudgetExhausted, ErrorDetected };
std::string_view toString(RunStatus s);

struct RunOutcome {
  RunStatus status;
  std::uint64_t moves = 0;
  std::optional<ExplorationMap> finalMap;  // present when halted, if the agent builds one
  std::string detail;
};

/// Drives the agent until it halts, declares an error, or runs out of moves.
/// NoSuchPort escapes: it is a bug in the agent.
RunOutcome runAgent(Agent& agent, Environment& env);

/// Default move budget: 50 moves per ground-truth vertex.
inline std::uint64_t defaultBudget(std::size_t n, double factor = 50.0) {
  const auto b = static_cast<std::uint64_t>(factor * static_cast<double>(n));
  return b == 0 ? 1 : b;
}

}  // namespace bino
