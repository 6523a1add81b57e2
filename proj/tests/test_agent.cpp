#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bino/agent.hpp"
#include "bino/explorer.hpp"
#include "bino/families.hpp"

using namespace bino;

namespace {

PortNumberedGraph gen(const std::string& s) { return generate(parseGeneratorSpec(s)); }

std::string name(RunStatus s) { return std::string(toString(s)); }

struct Halter : Agent {
  StepResult step(AgentContext&) override { return StepResult::Halt; }
};

struct PortZero : Agent {
  StepResult step(AgentContext& ctx) override {
    ctx.move(0);
    return StepResult::Continue;
  }
};

struct Wanderer : Agent {
  Port port;
  explicit Wanderer(Port p) : port(p) {}
  StepResult step(AgentContext& ctx) override {
    ctx.sense();
    ctx.move(port);
    return StepResult::Continue;
  }
};

}  // namespace

TEST_CASE("environment construction") {
  auto k3 = gen("complete:3");
  Environment env(k3, 0, 100);
  CHECK(env.moveCount() == 0);
  CHECK(env.position() == 0);
  auto c6 = gen("cycle:6");
  Environment other(c6, 3, 10);
  CHECK(other.position() == 3);
  CHECK_THROWS_AS(Environment(k3, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Environment(k3, 7, 10), std::invalid_argument);
}

TEST_CASE("sensing") {
  auto c6 = gen("cycle:6");
  Environment env(c6, 0, 10);
  auto o = env.sense();
  CHECK(o.ball.vertexCount == 3);
  CHECK(o.ball.edges.size() == 2);
  CHECK_FALSE(o.arrivalPort);
  CHECK(o.ball.center == 0);

  auto in = env.move(1);
  auto after = env.sense();
  REQUIRE(after.arrivalPort);
  CHECK(*after.arrivalPort == in);
  CHECK(in == c6.viaPort(0, 1)->in);
}

TEST_CASE("repeated senses are isomorphic with fresh local ids") {
  auto g = gen("johnson:5,2;ports=random:3");
  Environment env(g, 4, 10);
  auto first = env.sense().ball;
  bool differs = false;
  for (int i = 0; i < 8; ++i) {
    auto again = env.sense().ball;
    CHECK(signatureOf(again) == signatureOf(first));
    CHECK(signatureOf(again) == signatureOf(ball(g, 4)));
    differs |= !(again == first);
  }
  CHECK(differs);
}

TEST_CASE("moves") {
  auto k3 = gen("complete:3");
  Environment env(k3, 0, 100);
  auto in = env.move(0);
  env.move(in);
  CHECK(env.position() == 0);
  CHECK(env.moveCount() == 2);
  CHECK_THROWS_AS(env.move(5), NoSuchPort);
  CHECK(env.moveCount() == 2);

  auto c6 = gen("cycle:6;ports=random:8");
  Environment walk(c6, 2, 100);
  Port out = 0;
  for (int i = 0; i < 6; ++i) {
    auto arrived = walk.move(out);
    out = arrived == 0 ? 1 : 0;
  }
  CHECK(walk.position() == 2);
  CHECK(walk.trace().replayPositions(c6).back() == 2);
}

TEST_CASE("runAgent") {
  auto k3 = gen("complete:3");
  {
    Environment env(k3, 0, 10);
    Halter h;
    auto out = runAgent(h, env);
    CHECK(name(out.status) == "halted");
    CHECK(out.moves == 0);
  }
  {
    Environment env(k3, 0, 5);
    PortZero z;
    auto out = runAgent(z, env);
    CHECK(name(out.status) == "budgetExhausted");
    CHECK(out.moves == 5);
    CHECK(toString(env.trace().events.back().kind) == std::string_view("budgetExhausted"));
  }
  {
    Environment env(k3, 0, 5);
    Wanderer w(9);
    CHECK_THROWS_AS(runAgent(w, env), NoSuchPort);
  }
  {
    auto p5 = gen("path:5");
    Environment env(p5, 0, defaultBudget(5));
    Explorer e;
    auto out = runAgent(e, env);
    CHECK(name(out.status) == "halted");
    REQUIRE(out.finalMap);
    CHECK(out.finalMap->vertexCount() == 5);
  }
}

TEST_CASE("trace json lines round trip") {
  auto g = gen("chordal:n=25,rate=0.5,seed=2;ports=random:1");
  Environment env(g, 3, defaultBudget(25));
  auto res = explore(env);
  REQUIRE(name(res.outcome.status) == "halted");
  const auto& trace = env.trace();
  auto text = traceToJsonLines(trace);
  CHECK(text.rfind("{\"format\":\"bino-trace\"", 0) == 0);
  auto back = parseTraceJsonLines(text);
  CHECK(back.root == trace.root);
  CHECK(back.budget == trace.budget);
  CHECK(back.events == trace.events);
  CHECK(traceToJsonLines(back) == text);
  CHECK(back.moveCount() == res.outcome.moves);
  CHECK(back.replayPositions(g) == trace.replayPositions(g));

  CHECK_THROWS(parseTraceJsonLines("{\"format\":\"other\",\"version\":1}\n"));
  CHECK_THROWS(parseTraceJsonLines(""));
}

TEST_CASE("observations carry no ground-truth ids") {
  // the same walk on two renamings of a graph yields identical observations
  auto g = gen("johnson:5,2;ports=random:6");
  std::vector<VertexId> perm{3, 9, 1, 7, 0, 2, 8, 6, 4, 5};
  auto h = g.renamed(perm);
  Environment a(g, 0, 40), b(h, perm[0], 40);
  for (Port p : {0u, 2u, 1u, 4u, 3u, 0u}) {
    CHECK(a.sense().ball == b.sense().ball);
    CHECK(a.move(p) == b.move(p));
  }
  CHECK(a.trace().observations().size() == b.trace().observations().size());
  auto ta = traceToJsonLines(a.trace()), tb = traceToJsonLines(b.trace());
  // headers differ only in root
  CHECK(ta.substr(ta.find('\n')) == tb.substr(tb.find('\n')));
}
