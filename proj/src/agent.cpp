#include "bino/agent.hpp"

#include <numeric>
#include <sstream>

#include "json_codec.hpp"

namespace bino {

using nlohmann::json;

bool operator==(const TraceEvent& a, const TraceEvent& b) {
  if (a.kind != b.kind || a.ball != b.ball || a.arrivalPort != b.arrivalPort || a.tag != b.tag ||
      a.out != b.out || a.in != b.in || a.phase != b.phase || a.detail != b.detail)
    return false;
  if (static_cast<bool>(a.map) != static_cast<bool>(b.map)) return false;
  return !a.map || *a.map == *b.map;
}

std::string_view toString(TraceEvent::Kind k) {
  using K = TraceEvent::Kind;
  switch (k) {
    case K::Sense: return "sense";
    case K::Move: return "move";
    case K::PhaseStart: return "phaseStart";
    case K::PhaseEnd: return "phaseEnd";
    case K::Halt: return "halt";
    case K::BudgetExhausted: return "budgetExhausted";
    case K::ErrorDetected: return "errorDetected";
  }
  return "?";
}

std::string_view toString(RunStatus s) {
  switch (s) {
    case RunStatus::Halted: return "halted";
    case RunStatus::BudgetExhausted: return "budgetExhausted";
    case RunStatus::ErrorDetected: return "errorDetected";
  }
  return "?";
}

std::size_t RunTrace::moveCount() const {
  std::size_t c = 0;
  for (const auto& e : events) c += e.kind == TraceEvent::Kind::Move;
  return c;
}

std::vector<VertexId> RunTrace::replayPositions(const PortNumberedGraph& g) const {
  std::vector<VertexId> pos{root};
  for (const auto& e : events) {
    if (e.kind != TraceEvent::Kind::Move) continue;
    auto h = g.viaPort(pos.back(), e.out);
    if (!h || h->in != e.in) throw std::invalid_argument("trace does not replay on this graph");
    pos.push_back(h->to);
  }
  return pos;
}

std::vector<Observation> RunTrace::observations() const {
  std::vector<Observation> out;
  for (const auto& e : events)
    if (e.kind == TraceEvent::Kind::Sense) out.push_back({e.ball, e.arrivalPort});
  return out;
}

std::string traceToJsonLines(const RunTrace& trace) {
  std::ostringstream os;
  nlohmann::ordered_json header{{"format", kTraceFormat}, {"version", kTraceVersion},
                                {"root", trace.root},    {"n", trace.graphVertices},
                                {"m", trace.graphEdges}, {"budget", trace.budget}};
  os << header.dump() << '\n';
  for (const auto& e : trace.events) {
    json j{{"ev", toString(e.kind)}};
    switch (e.kind) {
      case TraceEvent::Kind::Sense:
        j["ball"] = detail::toJsonValue(e.ball);
        j["arrival"] = e.arrivalPort ? json(*e.arrivalPort) : json(nullptr);
        if (e.tag) j["tag"] = *e.tag;
        break;
      case TraceEvent::Kind::Move:
        j["out"] = e.out;
        j["in"] = e.in;
        break;
      case TraceEvent::Kind::PhaseStart:
        j["phase"] = e.phase;
        break;
      case TraceEvent::Kind::PhaseEnd:
        j["phase"] = e.phase;
        if (e.map) j["map"] = detail::toJsonValue(*e.map);
        break;
      case TraceEvent::Kind::ErrorDetected:
        j["detail"] = e.detail;
        break;
      default:
        break;
    }
    os << j.dump() << '\n';
  }
  return os.str();
}

RunTrace parseTraceJsonLines(std::string_view text) {
  RunTrace trace;
  std::size_t lineNo = 0;
  bool sawHeader = false;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineNo;
    if (line.empty()) continue;
    try {
      auto j = json::parse(line);
      if (!sawHeader) {
        if (j.value("format", "") != kTraceFormat || j.value("version", 0) != kTraceVersion)
          throw std::invalid_argument("unsupported trace format or version");
        trace.root = j.at("root").get<VertexId>();
        trace.graphVertices = j.at("n").get<std::size_t>();
        trace.graphEdges = j.at("m").get<std::size_t>();
        trace.budget = j.at("budget").get<std::uint64_t>();
        sawHeader = true;
        continue;
      }
      TraceEvent e{};
      const auto ev = j.at("ev").get<std::string>();
      using K = TraceEvent::Kind;
      if (ev == "sense") {
        e.kind = K::Sense;
        e.ball = detail::ballFromJsonValue(j.at("ball"));
        if (!j.at("arrival").is_null()) e.arrivalPort = j["arrival"].get<Port>();
        if (j.contains("tag")) e.tag = j["tag"].get<std::uint64_t>();
      } else if (ev == "move") {
        e.kind = K::Move;
        e.out = j.at("out").get<Port>();
        e.in = j.at("in").get<Port>();
      } else if (ev == "phaseStart") {
        e.kind = K::PhaseStart;
        e.phase = j.at("phase").get<Phase>();
      } else if (ev == "phaseEnd") {
        e.kind = K::PhaseEnd;
        e.phase = j.at("phase").get<Phase>();
        if (j.contains("map"))
          e.map = std::make_shared<const ExplorationMap>(detail::mapFromJsonValue(j["map"]));
      } else if (ev == "halt") {
        e.kind = K::Halt;
      } else if (ev == "budgetExhausted") {
        e.kind = K::BudgetExhausted;
      } else if (ev == "errorDetected") {
        e.kind = K::ErrorDetected;
        e.detail = j.value("detail", "");
      } else {
        throw std::invalid_argument("unknown event '" + ev + "'");
      }
      trace.events.push_back(std::move(e));
    } catch (const std::exception& ex) {
      throw std::invalid_argument("trace line " + std::to_string(lineNo) + ": " + ex.what());
    }
  }
  if (!sawHeader) throw std::invalid_argument("trace has no header line");
  return trace;
}

Environment::Environment(const PortNumberedGraph& g, VertexId v0, std::uint64_t budget,
                         EnvironmentOptions options)
    : graph_(&g), position_(v0), budget_(budget), relabel_(options.relabelSeed), options_(options) {
  if (!g.contains(v0)) throw std::invalid_argument("homebase is not a vertex of the graph");
  if (budget == 0) throw std::invalid_argument("move budget must be positive");
  trace_.root = v0;
  trace_.graphVertices = g.vertexCount();
  trace_.graphEdges = g.edgeCount();
  trace_.budget = budget;
}

Observation Environment::sense(std::optional<std::uint64_t> tag) {
  auto raw = ball(*graph_, position_);
  // fresh local ids for everything but the center, fresh edge order
  std::vector<LocalId> relabel(raw.vertexCount);
  std::iota(relabel.begin(), relabel.end(), LocalId{0});
  if (relabel.size() > 2) relabel_.shuffle(std::span<LocalId>(relabel).subspan(1));
  Ball b;
  b.center = 0;
  b.vertexCount = raw.vertexCount;
  for (const auto& e : raw.edges) {
    BallEdge x{relabel[e.u], relabel[e.v], e.portAtU, e.portAtV};
    if (relabel_.below(2) == 1) x = {x.v, x.u, x.portAtV, x.portAtU};
    b.edges.push_back(x);
  }
  relabel_.shuffle(std::span<BallEdge>(b.edges));

  Observation obs{std::move(b), lastArrival_};
  TraceEvent ev{};
  ev.kind = TraceEvent::Kind::Sense;
  ev.ball = obs.ball;
  ev.arrivalPort = obs.arrivalPort;
  ev.tag = tag;
  trace_.events.push_back(std::move(ev));
  return obs;
}

Port Environment::move(Port out) {
  auto h = graph_->viaPort(position_, out);
  if (!h) throw NoSuchPort("no port " + std::to_string(out) + " at the current location");
  if (moves_ >= budget_) throw BudgetExhausted("move budget of " + std::to_string(budget_) + " spent");
  ++moves_;
  position_ = h->to;
  lastArrival_ = h->in;
  TraceEvent ev{};
  ev.kind = TraceEvent::Kind::Move;
  ev.out = out;
  ev.in = h->in;
  trace_.events.push_back(std::move(ev));
  return h->in;
}

void Environment::markPhaseStart(Phase i) {
  TraceEvent ev{};
  ev.kind = TraceEvent::Kind::PhaseStart;
  ev.phase = i;
  trace_.events.push_back(std::move(ev));
}

void Environment::markPhaseEnd(Phase i, const ExplorationMap& map) {
  TraceEvent ev{};
  ev.kind = TraceEvent::Kind::PhaseEnd;
  ev.phase = i;
  if (options_.recordSnapshots) ev.map = std::make_shared<const ExplorationMap>(map);
  trace_.events.push_back(std::move(ev));
}

void Environment::markHalt() {
  trace_.events.push_back(TraceEvent{.kind = TraceEvent::Kind::Halt});
}

void Environment::markBudgetExhausted() {
  trace_.events.push_back(TraceEvent{.kind = TraceEvent::Kind::BudgetExhausted});
}

void Environment::markError(std::string detail) {
  TraceEvent ev{};
  ev.kind = TraceEvent::Kind::ErrorDetected;
  ev.detail = std::move(detail);
  trace_.events.push_back(std::move(ev));
}

RunOutcome runAgent(Agent& agent, Environment& env) {
  AgentContext ctx(env);
  // agents that neither move nor stop are a bug; bound their idle steps
  constexpr std::uint64_t maxIdleSteps = 1'000'000;
  std::uint64_t idle = 0;
  try {
    agent.onStart(ctx);
    while (true) {
      const auto before = env.moveCount();
      const auto r = agent.step(ctx);
      if (r == StepResult::Halt) {
        env.markHalt();
        return {RunStatus::Halted, env.moveCount(), agent.finalMap(), {}};
      }
      if (r == StepResult::Error) {
        auto why = agent.errorDetail();
        env.markError(why);
        return {RunStatus::ErrorDetected, env.moveCount(), std::nullopt, why};
      }
      idle = env.moveCount() == before ? idle + 1 : 0;
      if (idle > maxIdleSteps) throw std::logic_error("agent makes no progress");
    }
  } catch (const BudgetExhausted& e) {
    env.markBudgetExhausted();
    return {RunStatus::BudgetExhausted, env.moveCount(), std::nullopt, e.what()};
  }
}

}  // namespace bino
