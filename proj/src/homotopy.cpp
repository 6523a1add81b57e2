#include "bino/homotopy.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include <json.hpp>

namespace bino {
namespace {

struct LoopHash {
  std::size_t operator()(const Loop& l) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : l) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

std::vector<VertexId> commonNeighbors(const PortNumberedGraph& g, VertexId a, VertexId c) {
  std::vector<VertexId> out;
  for (const auto& h : g.incident(a))
    if (h.to != c && g.adjacent(h.to, c)) out.push_back(h.to);
  std::sort(out.begin(), out.end());
  return out;
}

Loop inserted(const Loop& s, std::size_t after, std::initializer_list<VertexId> vs) {
  Loop out(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(after + 1));
  out.insert(out.end(), vs);
  out.insert(out.end(), s.begin() + static_cast<std::ptrdiff_t>(after + 1), s.end());
  return out;
}

Loop erased(const Loop& s, std::size_t from, std::size_t count) {
  Loop out = s;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(from),
            out.begin() + static_cast<std::ptrdiff_t>(from + count));
  return out;
}

}  // namespace

bool isLoop(const PortNumberedGraph& g, const Loop& loop) {
  if (loop.empty() || loop.front() != loop.back()) return false;
  for (auto v : loop)
    if (!g.contains(v)) return false;
  for (std::size_t i = 0; i + 1 < loop.size(); ++i)
    if (loop[i] != loop[i + 1] && !g.adjacent(loop[i], loop[i + 1])) return false;
  return true;
}

std::string_view toString(MoveKind k) {
  switch (k) {
    case MoveKind::Contract: return "contract";
    case MoveKind::Stutter: return "stutter";
    case MoveKind::Backtrack: return "backtrack";
    case MoveKind::InsertBacktrack: return "insert-backtrack";
    case MoveKind::Push: return "push";
    case MoveKind::PushOut: return "push-out";
  }
  return "?";
}

std::optional<Loop> applyMove(const PortNumberedGraph& g, const Loop& s, const HomotopyMove& m) {
  const auto L = s.size();
  const auto i = m.index;
  if (L == 0 || i >= L) return std::nullopt;
  switch (m.kind) {
    case MoveKind::Contract:
      if (i + 1 < L && s[i] == s[i + 1]) return erased(s, i + 1, 1);
      return std::nullopt;
    case MoveKind::Stutter:
      return inserted(s, i, {s[i]});
    case MoveKind::Backtrack:
      if (i >= 1 && i + 1 < L && s[i - 1] == s[i + 1] && s[i] != s[i - 1]) return erased(s, i, 2);
      return std::nullopt;
    case MoveKind::InsertBacktrack:
      if (!g.contains(m.vertex) || !g.adjacent(s[i], m.vertex)) return std::nullopt;
      return inserted(s, i, {m.vertex, s[i]});
    case MoveKind::Push:
      if (i >= 1 && i + 1 < L && s[i - 1] != s[i] && s[i] != s[i + 1] && s[i - 1] != s[i + 1] &&
          g.adjacent(s[i - 1], s[i + 1]))
        return erased(s, i, 1);
      return std::nullopt;
    case MoveKind::PushOut:
      if (i + 1 < L && s[i] != s[i + 1] && g.contains(m.vertex) && m.vertex != s[i] &&
          m.vertex != s[i + 1] && g.adjacent(s[i], m.vertex) && g.adjacent(m.vertex, s[i + 1]))
        return inserted(s, i, {m.vertex});
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<std::pair<HomotopyMove, Loop>> elementaryMovesWithWitness(const PortNumberedGraph& g,
                                                                      const Loop& s) {
  std::vector<std::pair<HomotopyMove, Loop>> out;
  auto tryMove = [&](HomotopyMove m) {
    if (auto r = applyMove(g, s, m)) out.emplace_back(m, std::move(*r));
  };
  const auto L = s.size();
  for (std::size_t i = 0; i < L; ++i) {
    tryMove({MoveKind::Contract, i});
    tryMove({MoveKind::Backtrack, i});
    tryMove({MoveKind::Push, i});
    tryMove({MoveKind::Stutter, i});
    for (const auto& h : g.incident(s[i])) tryMove({MoveKind::InsertBacktrack, i, h.to});
    if (i + 1 < L && s[i] != s[i + 1])
      for (auto b : commonNeighbors(g, s[i], s[i + 1])) tryMove({MoveKind::PushOut, i, b});
  }
  return out;
}

std::vector<Loop> elementaryMoves(const PortNumberedGraph& g, const Loop& loop) {
  std::vector<Loop> out;
  for (auto& [m, l] : elementaryMovesWithWitness(g, loop)) out.push_back(std::move(l));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Loop canonicalLoop(const Loop& loop) {
  if (loop.empty()) return loop;
  // cyclic word without the closing repeat
  Loop c(loop.begin(), loop.end() - (loop.size() > 1 ? 1 : 0));
  Loop compact;
  for (auto v : c)
    if (compact.empty() || compact.back() != v) compact.push_back(v);
  while (compact.size() > 1 && compact.front() == compact.back()) compact.pop_back();
  const auto k = compact.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < k; ++r) {
    for (std::size_t j = 0; j < k; ++j) {
      auto a = compact[(r + j) % k], b = compact[(best + j) % k];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  Loop out;
  out.reserve(k + 1);
  for (std::size_t j = 0; j < k; ++j) out.push_back(compact[(best + j) % k]);
  if (k > 1) out.push_back(out.front());
  return out;
}

ContractibilityAnswer isContractible(const PortNumberedGraph& g, const Loop& loop,
                                     ContractibilityBudget budget) {
  if (!isLoop(g, loop)) throw std::invalid_argument("not a loop of the graph");
  const std::size_t cap = budget.maxLoopLength.value_or(2 * (loop.size() - 1) + 4);
  ContractibilityAnswer ans{Verdict::NotContractibleWithinBudget, 0, canonicalLoop(loop), {}};

  struct Node {
    Loop loop;
    std::size_t parent;
    HomotopyMove move;
  };
  std::vector<Node> nodes;
  std::unordered_map<Loop, std::size_t, LoopHash> seen;
  auto length = [](const Loop& l) { return l.size() - 1; };
  std::vector<std::deque<std::size_t>> buckets(std::max(cap, length(ans.start)) + 1);

  nodes.push_back({ans.start, 0, {}});
  seen.emplace(ans.start, 0);
  buckets[length(ans.start)].push_back(0);

  std::optional<std::size_t> goal;
  if (length(ans.start) == 0) goal = 0;
  while (!goal) {
    auto bucket = std::find_if(buckets.begin(), buckets.end(), [](auto& b) { return !b.empty(); });
    if (bucket == buckets.end()) return ans;  // closure exhausted
    if (ans.steps >= budget.maxSteps) {
      ans.verdict = Verdict::BudgetExhausted;
      return ans;
    }
    const auto id = bucket->front();
    bucket->pop_front();
    ++ans.steps;
    const Loop current = nodes[id].loop;
    for (auto& [move, next] : elementaryMovesWithWitness(g, current)) {
      if (move.kind == MoveKind::Stutter || move.kind == MoveKind::Contract) continue;
      auto canon = canonicalLoop(next);
      if (length(canon) > cap || seen.count(canon)) continue;
      const auto nid = nodes.size();
      seen.emplace(canon, nid);
      nodes.push_back({canon, id, move});
      if (length(canon) == 0) {
        goal = nid;
        break;
      }
      buckets[length(canon)].push_back(nid);
    }
  }
  ans.verdict = Verdict::Contractible;
  for (auto id = *goal; id != 0; id = nodes[id].parent)
    ans.trace.push_back({nodes[id].move, nodes[id].loop});
  std::reverse(ans.trace.begin(), ans.trace.end());
  return ans;
}

bool replayReduction(const PortNumberedGraph& g, const ContractibilityAnswer& answer) {
  if (answer.verdict != Verdict::Contractible) return false;
  Loop current = answer.start;
  for (const auto& step : answer.trace) {
    auto next = applyMove(g, current, step.move);
    if (!next || canonicalLoop(*next) != step.result) return false;
    current = step.result;
  }
  return current.size() <= 1;
}

std::string reductionToJson(const ContractibilityAnswer& answer) {
  nlohmann::json doc;
  doc["loop"] = answer.start;
  doc["moves"] = nlohmann::json::array();
  for (const auto& s : answer.trace) {
    nlohmann::json m{{"kind", toString(s.move.kind)}, {"index", s.move.index}};
    if (s.move.kind == MoveKind::InsertBacktrack || s.move.kind == MoveKind::PushOut)
      m["vertex"] = s.move.vertex;
    m["result"] = s.result;
    doc["moves"].push_back(std::move(m));
  }
  return doc.dump();
}

std::string_view toString(Connectivity c) {
  switch (c) {
    case Connectivity::Yes: return "yes";
    case Connectivity::No: return "no";
    case Connectivity::Unknown: return "unknown";
  }
  return "?";
}

bool isTriangleFree(const PortNumberedGraph& g) {
  for (VertexId u = 0; u < g.vertexCount(); ++u)
    for (const auto& h : g.incident(u))
      if (u < h.to && !commonNeighbors(g, u, h.to).empty()) return false;
  return true;
}

std::vector<Loop> simpleCycles(const PortNumberedGraph& g, std::size_t maxLength,
                               std::size_t maxCount) {
  std::vector<Loop> out;
  const auto n = g.vertexCount();
  std::vector<bool> onPath(n, false);
  Loop path;
  // cycles through `start` using only larger vertices; each found once by
  // requiring path[1] < last
  auto dfs = [&](auto&& self, VertexId start, VertexId v) -> void {
    for (const auto& h : g.incident(v)) {
      if (out.size() >= maxCount) return;
      if (h.to == start && path.size() >= 3 && path[1] < path.back()) {
        Loop cyc = path;
        cyc.push_back(start);
        out.push_back(std::move(cyc));
      } else if (h.to > start && !onPath[h.to] && path.size() < maxLength) {
        onPath[h.to] = true;
        path.push_back(h.to);
        self(self, start, h.to);
        path.pop_back();
        onPath[h.to] = false;
      }
    }
  };
  for (VertexId s = 0; s < n && out.size() < maxCount; ++s) {
    path = {s};
    onPath[s] = true;
    dfs(dfs, s, s);
    onPath[s] = false;
  }
  return out;
}

SimpleConnectivityReport isSimplyConnected(const PortNumberedGraph& g,
                                           SimpleConnectivityBudget budget) {
  const auto n = g.vertexCount();
  if (n > budget.maxVertices)
    throw std::length_error("instance too large for the simple-connectivity oracle");
  SimpleConnectivityReport rep;
  if (n == 0) return rep;

  // BFS tree and its fundamental loops
  std::vector<std::optional<VertexId>> parent(n);
  std::vector<bool> seen(n, false);
  std::deque<VertexId> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (const auto& h : g.incident(v))
      if (!seen[h.to]) {
        seen[h.to] = true;
        parent[h.to] = v;
        queue.push_back(h.to);
      }
  }
  auto toRoot = [&](VertexId v) {
    Loop p{v};
    while (parent[v]) p.push_back(v = *parent[v]);
    return p;
  };
  std::vector<Loop> loops;
  for (VertexId u = 0; u < n; ++u)
    for (const auto& h : g.incident(u)) {
      if (u > h.to || parent[u] == h.to || parent[h.to] == u) continue;
      auto up = toRoot(u), down = toRoot(h.to);
      Loop l(up.rbegin(), up.rend());
      l.insert(l.end(), down.begin(), down.end());
      loops.push_back(std::move(l));
    }
  if (loops.empty()) {
    rep.answer = Connectivity::Yes;
    return rep;
  }
  if (isTriangleFree(g)) {
    // no 2-cells: a cyclically reduced loop of positive length is never contractible
    auto cycles = simpleCycles(g, n, 1);
    rep.answer = Connectivity::No;
    rep.offending = cycles.empty() ? loops.front() : cycles.front();
    rep.loopsChecked = 1;
    return rep;
  }
  const auto cycles = simpleCycles(g, budget.maxCycleLength.value_or(n), budget.maxCycles);
  loops.insert(loops.end(), cycles.begin(), cycles.end());
  for (const auto& l : loops) {
    ++rep.loopsChecked;
    auto ans = isContractible(g, l, {std::nullopt, budget.maxStepsPerLoop});
    if (ans.verdict != Verdict::Contractible) {
      rep.answer = Connectivity::Unknown;
      rep.offending = l;
      return rep;
    }
  }
  rep.answer = Connectivity::Yes;
  return rep;
}

TreeCover unfoldTreeCover(const PortNumberedGraph& g, VertexId v0, std::size_t radius) {
  if (!g.contains(v0)) throw std::out_of_range("invalid root");
  if (!isTriangleFree(g)) throw HasTriangles("tree unfolding needs a triangle-free graph");
  constexpr std::size_t maxNodes = 1'000'000;
  TreeCover cover;
  cover.radius = radius;
  std::vector<std::vector<HalfEdge>> adj(1);
  std::vector<std::optional<Port>> arrival{std::nullopt};
  cover.projection = {v0};
  cover.depth = {0};
  for (VertexId w = 0; w < cover.projection.size(); ++w) {
    if (cover.depth[w] == radius) continue;
    for (const auto& h : g.incident(cover.projection[w])) {
      if (arrival[w] && h.out == *arrival[w]) continue;
      const auto child = static_cast<VertexId>(cover.projection.size());
      if (child >= maxNodes) throw std::length_error("tree unfolding too large");
      cover.projection.push_back(h.to);
      cover.depth.push_back(cover.depth[w] + 1);
      arrival.push_back(h.in);
      adj.emplace_back();
      adj[w].push_back({child, h.out, h.in});
      adj[child].push_back({w, h.in, h.out});
    }
  }
  const auto nodes = adj.size();
  cover.tree = PortNumberedGraph(nodes, std::move(adj));
  return cover;
}

std::optional<CoveringViolation> verifySimplicialCovering(const PortNumberedGraph& h,
                                                          const PortNumberedGraph& g,
                                                          std::span<const VertexId> phi,
                                                          std::span<const VertexId> exempt) {
  if (phi.size() != h.vertexCount()) throw std::invalid_argument("phi must be total on h");
  for (auto x : phi)
    if (!g.contains(x)) throw std::invalid_argument("phi maps outside g");
  std::vector<bool> isExempt(h.vertexCount(), false);
  for (auto v : exempt)
    if (h.contains(v)) isExempt[v] = true;

  for (VertexId u = 0; u < h.vertexCount(); ++u) {
    std::vector<VertexId> images;
    for (const auto& e : h.incident(u)) images.push_back(phi[e.to]);
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
      return CoveringViolation{"local injectivity", u, "two neighbours share an image"};
    for (const auto& e : h.incident(u)) {
      auto there = g.edgeBetween(phi[u], phi[e.to]);
      if (!there)
        return CoveringViolation{"homomorphism", u,
                                 "edge via port " + std::to_string(e.out) + " has no image"};
      if (there->out != e.out || there->in != e.in)
        return CoveringViolation{"port", u,
                                 "edge via port " + std::to_string(e.out) + " maps to ports (" +
                                     std::to_string(there->out) + "," + std::to_string(there->in) +
                                     ")"};
    }
  }
  for (VertexId u = 0; u < h.vertexCount(); ++u) {
    if (isExempt[u]) continue;
    if (h.degree(u) != g.degree(phi[u]))
      return CoveringViolation{"degree", u,
                               std::to_string(h.degree(u)) + " vs " +
                                   std::to_string(g.degree(phi[u]))};
    if (signatureOf(ball(h, u)) != signatureOf(ball(g, phi[u])))
      return CoveringViolation{"ball", u, "binoculars views differ"};
  }
  return std::nullopt;
}

}  // namespace bino
