#include "bino/explorer.hpp"

#include <algorithm>
#include <deque>

#include "bino/union_find.hpp"

namespace bino {
namespace {

// A recorded ball seen from its center: spoke labels per local vertex and
// the rim (edges between neighbours).
struct CenteredView {
  std::vector<std::optional<std::pair<Port, Port>>> spoke;  // (port at center, port at vertex)
  std::vector<BallEdge> rim;
};

CenteredView viewOf(const Ball& b) {
  CenteredView v;
  v.spoke.resize(b.vertexCount);
  for (const auto& e : b.edges) {
    if (e.u == b.center && e.v != b.center)
      v.spoke[e.v] = std::pair{e.portAtU, e.portAtV};
    else if (e.v == b.center && e.u != b.center)
      v.spoke[e.u] = std::pair{e.portAtV, e.portAtU};
    else if (e.u != b.center && e.v != b.center && e.u != e.v)
      v.rim.push_back(e);
  }
  return v;
}

}  // namespace

void PreVertexLedger::startPhase() {
  preVerts.clear();
  equivPairs.clear();
  horRecords.clear();
}

std::map<PreVertexKey, PreVertexKey> PreVertexLedger::classes() const {
  std::vector<PreVertexKey> keys;
  for (const auto& [k, q] : preVerts) keys.push_back(k);  // sorted
  auto indexOf = [&](const PreVertexKey& k) {
    return static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), k) - keys.begin());
  };
  UnionFind uf(keys.size());
  for (const auto& [a, b] : equivPairs) uf.unite(indexOf(a), indexOf(b));
  std::map<PreVertexKey, PreVertexKey> out;
  for (std::size_t i = 0; i < keys.size(); ++i) out.emplace(keys[i], keys[uf.find(i)]);
  return out;
}

TourPlan planClusterTour(const ExplorationMap& map, MapId from, const std::vector<MapId>& cluster) {
  if (cluster.empty()) throw std::logic_error("empty cluster");
  const std::set<MapId> members(cluster.begin(), cluster.end());
  for (auto n : members)
    if (!map.contains(n)) throw std::logic_error("cluster vertex not in the map");
  auto allowed = [&](MapId n) { return map.explored(n) || members.count(n); };

  TourPlan plan;
  plan.walk.push_back(from);

  // approach
  std::map<MapId, std::pair<MapId, Port>> parent;
  std::deque<MapId> queue{from};
  std::set<MapId> seen{from};
  std::optional<MapId> entry;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    if (members.count(v)) {
      entry = v;
      break;
    }
    for (const auto& arc : map.incident(v))
      if (allowed(arc.to) && seen.insert(arc.to).second) {
        parent[arc.to] = {v, arc.out};
        queue.push_back(arc.to);
      }
  }
  if (!entry) throw std::logic_error("cluster unreachable in map");
  std::vector<std::pair<Port, MapId>> approach;
  for (auto v = *entry; v != from; v = parent[v].first) approach.emplace_back(parent[v].second, v);
  std::reverse(approach.begin(), approach.end());
  for (auto [p, v] : approach) {
    plan.ports.push_back(p);
    plan.walk.push_back(v);
  }
  plan.approachLength = approach.size();

  // depth-first walk inside the cluster
  std::set<MapId> visited{*entry};
  plan.visitOrder.push_back(*entry);
  std::size_t lastNew = plan.ports.size();
  std::vector<std::pair<MapId, std::size_t>> stack{{*entry, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto arcs = map.incident(v);
    while (next < arcs.size() && (!members.count(arcs[next].to) || visited.count(arcs[next].to)))
      ++next;
    if (next < arcs.size()) {
      const auto arc = arcs[next++];
      visited.insert(arc.to);
      plan.visitOrder.push_back(arc.to);
      plan.ports.push_back(arc.out);
      plan.walk.push_back(arc.to);
      lastNew = plan.ports.size();
      stack.emplace_back(arc.to, 0);
    } else {
      const auto child = v;
      stack.pop_back();
      if (!stack.empty()) {
        // back along the tree edge
        const auto up = stack.back().first;
        auto back = std::find_if(map.incident(child).begin(), map.incident(child).end(),
                                 [&](const auto& a) { return a.to == up; });
        plan.ports.push_back(back->out);
        plan.walk.push_back(up);
      }
    }
  }
  if (visited.size() != members.size()) throw std::logic_error("cluster unreachable in map");
  plan.ports.resize(lastNew);
  plan.walk.resize(lastNew + 1);
  return plan;
}

bool recordBall(ExplorationMap& map, PreVertexLedger& ledger, MapId n, Ball ball, Phase phase) {
  map.setVis(n, phase);
  return ledger.balls.insert_or_assign(n, std::move(ball)).second;
}

void harvestLedger(const ExplorationMap& map, PreVertexLedger& ledger,
                   const std::vector<MapId>& cluster) {
  const std::set<MapId> members(cluster.begin(), cluster.end());
  std::map<MapId, CenteredView> views;
  for (auto n : cluster) {
    auto it = ledger.balls.find(n);
    if (it == ledger.balls.end()) continue;
    views.emplace(n, viewOf(it->second));
  }
  // vertical edges to not-yet-mapped neighbours
  for (const auto& [n, view] : views)
    for (const auto& s : view.spoke)
      if (s && !map.hasLabel(n, s->first, s->second))
        ledger.preVerts.emplace(PreVertexKey{n, s->first}, s->second);

  // triangles through the center
  for (const auto& [n, view] : views) {
    for (const auto& e : view.rim) {
      if (!view.spoke[e.u] || !view.spoke[e.v]) continue;
      for (int orient = 0; orient < 2; ++orient) {
        const LocalId x = orient ? e.v : e.u;
        const LocalId y = orient ? e.u : e.v;
        const Port xy = orient ? e.portAtV : e.portAtU;  // port at x towards y
        const Port yx = orient ? e.portAtU : e.portAtV;
        const auto cx = *view.spoke[x];
        const auto cy = *view.spoke[y];
        const bool cxMapped = map.hasLabel(n, cx.first, cx.second);
        const bool cyMapped = map.hasLabel(n, cy.first, cy.second);
        if (cxMapped && !cyMapped) {
          const MapId m = map.viaPort(n, cx.first)->to;
          if (members.count(m) && views.count(m) && !map.hasLabel(m, xy, yx)) {
            PreVertexKey a{n, cy.first}, b{m, xy};
            if (ledger.preVerts.count(a) && ledger.preVerts.count(b) && a != b)
              ledger.equivPairs.emplace(std::min(a, b), std::max(a, b));
          }
        }
        // one record per edge: the orientation with the smaller center port first
        if (!cxMapped && !cyMapped && cx.first < cy.first)
          ledger.horRecords.insert({n, cx.first, cy.first, xy, yx});
      }
    }
  }
}

std::vector<MapId> applyLedger(ExplorationMap& map, const PreVertexLedger& ledger) {
  const auto classes = ledger.classes();
  std::map<PreVertexKey, MapId> newVertexOfRoot;
  std::vector<MapId> fresh;
  for (const auto& [key, root] : classes)
    if (key == root) {
      auto id = map.addVertex();
      newVertexOfRoot.emplace(root, id);
      fresh.push_back(id);
    }
  auto newOf = [&](const PreVertexKey& k) { return newVertexOfRoot.at(classes.at(k)); };
  try {
    for (const auto& [key, q] : ledger.preVerts) map.addEdge(key.n, newOf(key), key.p, q);
    for (const auto& h : ledger.horRecords) {
      const PreVertexKey a{h.n, h.p1}, b{h.n, h.p2};
      if (!classes.count(a) || !classes.count(b))
        throw MapInconsistency("horizontal record without pre-vertices");
      const auto na = newOf(a), nb = newOf(b);
      if (na == nb) throw MapInconsistency("horizontal edge would be a self-loop");
      map.addEdge(na, nb, h.r, h.s);
    }
  } catch (const PortCollision& e) {
    throw MapInconsistency(e.what());
  }
  return fresh;
}

std::optional<MapId> checkLocalIso(const ExplorationMap& map, const PreVertexLedger& ledger,
                                   const std::vector<MapId>& cluster) {
  for (auto n : cluster) {
    auto it = ledger.balls.find(n);
    if (it == ledger.balls.end()) return n;
    const auto inMap = signatureOf(map.ballAt(n));
    if (!inMap.simple || inMap != signatureOf(it->second)) return n;
  }
  return std::nullopt;
}

std::vector<ClusterId> discoverNewClusters(ExplorationMap& map, const std::vector<MapId>& newIds,
                                           ClusterStack& stack) {
  const std::set<MapId> fresh(newIds.begin(), newIds.end());
  std::set<MapId> assigned;
  std::vector<std::vector<MapId>> components;
  for (auto start : fresh) {  // ascending, so components come out by smallest id
    if (assigned.count(start)) continue;
    std::vector<MapId> comp{start};
    assigned.insert(start);
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (const auto& arc : map.incident(comp[i]))
        if (fresh.count(arc.to) && assigned.insert(arc.to).second) comp.push_back(arc.to);
    components.push_back(std::move(comp));
  }
  std::vector<ClusterId> pushed;
  for (const auto& comp : components) {
    const auto id = stack.nextId++;
    for (auto n : comp) map.setCir(n, id);
    stack.stack.push_back(id);
    pushed.push_back(id);
  }
  return pushed;
}

void Explorer::onStart(AgentContext&) {
  map_ = ExplorationMap{};
  const auto home = map_.addVertex(Phase{0}, ClusterId{0});
  map_.setCurrent(home);
  stack_ = ClusterStack{{0}, 1};
  ledger_ = PreVertexLedger{};
  stats_ = ExplorerStats{};
  phase_ = 0;
  halted_ = false;
  error_.clear();
}

StepResult Explorer::fail(std::string why) {
  error_ = std::move(why);
  return StepResult::Error;
}

StepResult Explorer::step(AgentContext& ctx) {
  if (stack_.stack.empty()) {
    halted_ = true;
    return StepResult::Halt;
  }
  const auto cid = stack_.stack.back();
  stack_.stack.pop_back();
  stats_.phases = ++phase_;

  std::vector<MapId> cluster;
  for (MapId n = 0; n < map_.vertexCount(); ++n)
    if (map_.cir(n) == cid) cluster.push_back(n);

  ctx.phaseStart(phase_);
  ledger_.startPhase();

  TourPlan plan;
  try {
    plan = planClusterTour(map_, map_.current(), cluster);
  } catch (const std::logic_error& e) {
    return fail(e.what());
  }

  const std::set<MapId> members(cluster.begin(), cluster.end());
  std::set<MapId> sensedThisPhase;
  auto senseIfNew = [&](MapId n) {
    if (!members.count(n) || !sensedThisPhase.insert(n).second) return;
    auto obs = ctx.sense(n);
    ++stats_.senses;
    if (!recordBall(map_, ledger_, n, std::move(obs.ball), phase_)) ++stats_.reentries;
  };

  senseIfNew(map_.current());
  for (std::size_t i = 0; i < plan.ports.size(); ++i) {
    const auto expected = map_.viaPort(map_.current(), plan.ports[i]);
    const Port arrived = ctx.move(plan.ports[i]);
    if (!expected || expected->in != arrived)
      return fail("arrival port disagrees with the map at map vertex " +
                  std::to_string(map_.current()));
    map_.setCurrent(expected->to);
    senseIfNew(expected->to);
  }

  harvestLedger(map_, ledger_, cluster);
  std::vector<MapId> fresh;
  try {
    fresh = applyLedger(map_, ledger_);
  } catch (const MapInconsistency& e) {
    return fail(std::string("map update failed: ") + e.what());
  }
  if (auto bad = checkLocalIso(map_, ledger_, cluster))
    return fail("ball of map vertex " + std::to_string(*bad) + " disagrees with its binoculars view");
  discoverNewClusters(map_, fresh, stack_);
  ctx.phaseEnd(phase_, map_);
  return StepResult::Continue;
}

std::optional<ExplorationMap> Explorer::finalMap() const {
  if (!halted_) return std::nullopt;
  return map_;
}

ExplorationResult explore(Environment& env) {
  Explorer agent;
  auto outcome = runAgent(agent, env);
  return {std::move(outcome), agent.map(), agent.stats()};
}

}  // namespace bino
