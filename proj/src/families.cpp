#include "bino/families.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "bino/rng.hpp"

namespace bino {
namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

std::string formatDouble(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::uint64_t parseUnsigned(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("bad value for " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

double parseDouble(std::string_view s, std::string_view what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("bad value for " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

// Positional or key=value parameters mapped onto the family's ordered names.
std::map<std::string, std::string> parseParams(std::string_view body,
                                               const std::vector<std::string>& names) {
  std::map<std::string, std::string> out;
  if (body.empty()) return out;
  std::size_t position = 0;
  for (auto item : split(body, ',')) {
    auto eq = item.find('=');
    std::string key;
    std::string_view value;
    if (eq == std::string_view::npos) {
      if (position >= names.size()) throw std::invalid_argument("too many parameters");
      key = names[position++];
      value = item;
    } else {
      key = std::string(item.substr(0, eq));
      value = item.substr(eq + 1);
      if (std::find(names.begin(), names.end(), key) == names.end())
        throw std::invalid_argument("unknown parameter '" + key + "'");
    }
    if (!out.emplace(key, std::string(value)).second)
      throw std::invalid_argument("parameter '" + key + "' given twice");
  }
  return out;
}

unsigned requireUnsigned(const std::map<std::string, std::string>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument("missing parameter '" + key + "'");
  auto v = parseUnsigned(it->second, key);
  if (v > 1'000'000) throw std::invalid_argument("parameter '" + key + "' too large");
  return static_cast<unsigned>(v);
}

using Adjacency = std::vector<std::vector<VertexId>>;

void addEdge(Adjacency& adj, VertexId u, VertexId v) {
  adj[u].push_back(v);
  adj[v].push_back(u);
}

Adjacency randomTree(unsigned n, Rng& rng) {
  Adjacency adj(n);
  for (VertexId v = 1; v < n; ++v) addEdge(adj, v, static_cast<VertexId>(rng.below(v)));
  return adj;
}

Adjacency johnson(unsigned n, unsigned k) {
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (static_cast<unsigned>(__builtin_popcount(mask)) == k) {
      subsets.push_back(mask);
      if (subsets.size() > 20000) throw std::invalid_argument("johnson: too many vertices");
    }
  Adjacency adj(subsets.size());
  for (VertexId a = 0; a < subsets.size(); ++a)
    for (VertexId b = a + 1; b < subsets.size(); ++b)
      if (static_cast<unsigned>(__builtin_popcount(subsets[a] & subsets[b])) == k - 1)
        addEdge(adj, a, b);
  return adj;
}

Adjacency randomChordal(const family::RandomChordal& spec) {
  Rng rng(spec.seed);
  auto adj = randomTree(spec.n, rng);
  const auto target = static_cast<std::size_t>(std::llround(spec.rate * spec.n));
  const std::size_t attempts = 30 * target + 100;
  std::size_t added = 0;
  for (std::size_t t = 0; t < attempts && added < target && spec.n >= 3; ++t) {
    auto u = static_cast<VertexId>(rng.below(spec.n));
    auto w = adj[u][rng.below(adj[u].size())];
    auto v = adj[w][rng.below(adj[w].size())];
    if (v == u || std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end()) continue;
    addEdge(adj, u, v);
    if (isChordal(adj).chordal) {
      ++added;
    } else {
      adj[u].pop_back();
      adj[v].pop_back();
    }
  }
  return adj;
}

void checkParameters(const Family& family) {
  std::visit(
      Overloaded{
          [](const family::Johnson& f) {
            if (f.k == 0 || f.k > f.n) throw std::invalid_argument("johnson needs 1 <= k <= n");
            if (f.n > 30) throw std::invalid_argument("johnson: n too large");
          },
          [](const family::RandomChordal& f) {
            if (f.n == 0) throw std::invalid_argument("chordal needs n >= 1");
            if (!(f.rate >= 0.0) || f.rate > 100.0)
              throw std::invalid_argument("chordal rate must be in [0, 100]");
          },
          [](const family::Complete& f) {
            if (f.n == 0) throw std::invalid_argument("complete needs n >= 1");
          },
          [](const family::Path& f) {
            if (f.n == 0) throw std::invalid_argument("path needs n >= 1");
          },
          [](const family::Cycle& f) {
            if (f.n < 3) throw std::invalid_argument("cycle needs n >= 3");
          },
          [](const family::Tree& f) {
            if (f.n == 0) throw std::invalid_argument("tree needs n >= 1");
          },
          [](const family::Grid& f) {
            if (f.rows == 0 || f.cols == 0) throw std::invalid_argument("grid needs positive sides");
          },
      },
      family);
}

}  // namespace

PortNumberedGraph assignPorts(std::size_t n, const std::vector<std::vector<VertexId>>& neighbors,
                              const PortScheme& scheme) {
  std::vector<std::vector<Port>> portOf(n);  // portOf[v][i] = port of v towards sorted[v][i]
  std::vector<std::vector<VertexId>> sorted(neighbors.begin(), neighbors.end());
  std::optional<Rng> rng;
  if (auto r = std::get_if<RandomPorts>(&scheme)) rng.emplace(r->seed);
  for (VertexId v = 0; v < n; ++v) {
    std::sort(sorted[v].begin(), sorted[v].end());
    portOf[v].resize(sorted[v].size());
    for (Port p = 0; p < portOf[v].size(); ++p) portOf[v][p] = p;
    if (rng) rng->shuffle(std::span<Port>(portOf[v]));
  }
  auto portTowards = [&](VertexId v, VertexId w) {
    auto it = std::lower_bound(sorted[v].begin(), sorted[v].end(), w);
    return portOf[v][static_cast<std::size_t>(it - sorted[v].begin())];
  };
  std::vector<std::vector<HalfEdge>> adj(n);
  for (VertexId v = 0; v < n; ++v)
    for (VertexId w : sorted[v]) adj[v].push_back({w, portTowards(v, w), portTowards(w, v)});
  return PortNumberedGraph(n, std::move(adj));
}

PortNumberedGraph generate(const GeneratorSpec& spec) {
  checkParameters(spec.family);
  auto adj = std::visit(
      Overloaded{
          [](const family::Johnson& f) { return johnson(f.n, f.k); },
          [](const family::RandomChordal& f) { return randomChordal(f); },
          [](const family::Complete& f) {
            Adjacency a(f.n);
            for (VertexId u = 0; u < f.n; ++u)
              for (VertexId v = u + 1; v < f.n; ++v) addEdge(a, u, v);
            return a;
          },
          [](const family::Path& f) {
            Adjacency a(f.n);
            for (VertexId v = 1; v < f.n; ++v) addEdge(a, v - 1, v);
            return a;
          },
          [](const family::Cycle& f) {
            Adjacency a(f.n);
            for (VertexId v = 0; v < f.n; ++v) addEdge(a, v, (v + 1) % f.n);
            return a;
          },
          [](const family::Tree& f) {
            Rng rng(f.seed);
            return randomTree(f.n, rng);
          },
          [](const family::Grid& f) {
            Adjacency a(static_cast<std::size_t>(f.rows) * f.cols);
            for (VertexId r = 0; r < f.rows; ++r)
              for (VertexId c = 0; c < f.cols; ++c) {
                VertexId v = r * f.cols + c;
                if (c + 1 < f.cols) addEdge(a, v, v + 1);
                if (r + 1 < f.rows) addEdge(a, v, v + f.cols);
              }
            return a;
          },
      },
      spec.family);
  return assignPorts(adj.size(), adj, spec.ports);
}

PortScheme parsePortScheme(std::string_view text) {
  if (text == "canonical") return CanonicalPorts{};
  if (text.starts_with("random:")) return RandomPorts{parseUnsigned(text.substr(7), "ports seed")};
  throw std::invalid_argument("unknown port scheme '" + std::string(text) + "'");
}

std::string toString(const PortScheme& scheme) {
  if (auto r = std::get_if<RandomPorts>(&scheme)) return "random:" + std::to_string(r->seed);
  return "canonical";
}

GeneratorSpec parseGeneratorSpec(std::string_view text) {
  GeneratorSpec spec;
  auto semi = text.find(';');
  if (semi != std::string_view::npos) {
    auto opt = text.substr(semi + 1);
    if (!opt.starts_with("ports="))
      throw std::invalid_argument("expected ';ports=...' in '" + std::string(text) + "'");
    spec.ports = parsePortScheme(opt.substr(6));
    text = text.substr(0, semi);
  }
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("expected FAMILY:PARAMS, got '" + std::string(text) + "'");
  const auto name = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  if (name == "johnson") {
    auto p = parseParams(body, {"n", "k"});
    spec.family = family::Johnson{requireUnsigned(p, "n"), requireUnsigned(p, "k")};
  } else if (name == "chordal") {
    auto p = parseParams(body, {"n", "rate", "seed"});
    family::RandomChordal f{requireUnsigned(p, "n"), 0.3, 0};
    if (p.count("rate")) f.rate = parseDouble(p["rate"], "rate");
    if (p.count("seed")) f.seed = parseUnsigned(p["seed"], "seed");
    spec.family = f;
  } else if (name == "complete") {
    spec.family = family::Complete{requireUnsigned(parseParams(body, {"n"}), "n")};
  } else if (name == "path") {
    spec.family = family::Path{requireUnsigned(parseParams(body, {"n"}), "n")};
  } else if (name == "cycle") {
    spec.family = family::Cycle{requireUnsigned(parseParams(body, {"n"}), "n")};
  } else if (name == "tree") {
    auto p = parseParams(body, {"n", "seed"});
    family::Tree f{requireUnsigned(p, "n"), 0};
    if (p.count("seed")) f.seed = parseUnsigned(p["seed"], "seed");
    spec.family = f;
  } else if (name == "grid") {
    auto p = parseParams(body, {"rows", "cols"});
    spec.family = family::Grid{requireUnsigned(p, "rows"), requireUnsigned(p, "cols")};
  } else {
    throw std::invalid_argument("unknown family '" + std::string(name) + "'");
  }
  checkParameters(spec.family);
  return spec;
}

std::string toString(const GeneratorSpec& spec) {
  auto base = std::visit(
      Overloaded{
          [](const family::Johnson& f) {
            return "johnson:" + std::to_string(f.n) + "," + std::to_string(f.k);
          },
          [](const family::RandomChordal& f) {
            return "chordal:n=" + std::to_string(f.n) + ",rate=" + formatDouble(f.rate) +
                   ",seed=" + std::to_string(f.seed);
          },
          [](const family::Complete& f) { return "complete:" + std::to_string(f.n); },
          [](const family::Path& f) { return "path:" + std::to_string(f.n); },
          [](const family::Cycle& f) { return "cycle:" + std::to_string(f.n); },
          [](const family::Tree& f) {
            return "tree:n=" + std::to_string(f.n) + ",seed=" + std::to_string(f.seed);
          },
          [](const family::Grid& f) {
            return "grid:" + std::to_string(f.rows) + "," + std::to_string(f.cols);
          },
      },
      spec.family);
  if (std::holds_alternative<RandomPorts>(spec.ports)) base += ";ports=" + toString(spec.ports);
  return base;
}

ConditionReport checkTriangleCondition(const PortNumberedGraph& g, VertexId v0) {
  const auto lay = layering(g, v0);
  for (VertexId v = 0; v < g.vertexCount(); ++v)
    for (const auto& h : g.incident(v)) {
      const VertexId w = h.to;
      if (v > w || lay.sphereOf[v] != lay.sphereOf[w]) continue;
      bool found = false;
      for (const auto& hu : g.incident(v))
        if (lay.sphereOf[hu.to] + 1 == lay.sphereOf[v] && g.adjacent(hu.to, w)) {
          found = true;
          break;
        }
      if (!found) return {false, ConditionWitness{Condition::Triangle, v0, {v, w}}};
    }
  return {};
}

namespace {

bool inducesConnected(const PortNumberedGraph& g, const std::vector<VertexId>& vs) {
  if (vs.size() <= 1) return true;
  std::vector<bool> seen(vs.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < vs.size(); ++j)
      if (!seen[j] && g.adjacent(vs[i], vs[j])) {
        seen[j] = true;
        ++reached;
        queue.push_back(j);
      }
  }
  return reached == vs.size();
}

}  // namespace

ConditionReport checkIntervalCondition(const PortNumberedGraph& g, VertexId v0) {
  const auto lay = layering(g, v0);
  for (VertexId v = 0; v < g.vertexCount(); ++v) {
    if (v == v0) continue;
    if (!inducesConnected(g, lay.predecessors(g, v)))
      return {false, ConditionWitness{Condition::Interval, v0, {v}}};
  }
  return {};
}

ConditionReport isWeetman(const PortNumberedGraph& g) {
  for (VertexId v0 = 0; v0 < g.vertexCount(); ++v0) {
    if (auto tc = checkTriangleCondition(g, v0); !tc.holds) return tc;
    if (auto ic = checkIntervalCondition(g, v0); !ic.holds) return ic;
  }
  return {};
}

bool witnessReproduces(const PortNumberedGraph& g, const ConditionWitness& w) {
  if (!g.contains(w.root)) return false;
  const auto lay = layering(g, w.root);
  if (w.condition == Condition::Triangle) {
    if (w.vertices.size() != 2) return false;
    auto [v, x] = std::pair{w.vertices[0], w.vertices[1]};
    if (!g.contains(v) || !g.contains(x) || !g.adjacent(v, x)) return false;
    if (lay.sphereOf[v] != lay.sphereOf[x]) return false;
    for (auto u : lay.predecessors(g, v))
      if (g.adjacent(u, x)) return false;
    return true;
  }
  if (w.vertices.size() != 1 || !g.contains(w.vertices[0]) || w.vertices[0] == w.root) return false;
  return !inducesConnected(g, lay.predecessors(g, w.vertices[0]));
}

ChordalityResult isChordal(const std::vector<std::vector<VertexId>>& neighbors) {
  const auto n = neighbors.size();
  // maximum cardinality search; ties go to the smallest id
  std::vector<std::size_t> weight(n, 0);
  std::vector<bool> numbered(n, false);
  std::vector<VertexId> visit;
  visit.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<VertexId> best;
    for (VertexId v = 0; v < n; ++v)
      if (!numbered[v] && (!best || weight[v] > weight[*best])) best = v;
    numbered[*best] = true;
    visit.push_back(*best);
    for (auto w : neighbors[*best])
      if (!numbered[w]) ++weight[w];
  }
  ChordalityResult res;
  res.eliminationOrder.assign(visit.rbegin(), visit.rend());
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[res.eliminationOrder[i]] = i;
  std::vector<std::set<VertexId>> adj(n);
  for (VertexId v = 0; v < n; ++v) adj[v].insert(neighbors[v].begin(), neighbors[v].end());
  for (VertexId v = 0; v < n; ++v) {
    std::vector<VertexId> later;
    for (auto w : adj[v])
      if (position[w] > position[v]) later.push_back(w);
    if (later.size() < 2) continue;
    auto follower = *std::min_element(later.begin(), later.end(), [&](VertexId a, VertexId b) {
      return position[a] < position[b];
    });
    for (auto w : later)
      if (w != follower && !adj[follower].count(w)) {
        res.eliminationOrder.clear();
        return res;
      }
  }
  res.chordal = true;
  return res;
}

ChordalityResult isChordal(const PortNumberedGraph& g) {
  std::vector<std::vector<VertexId>> nb(g.vertexCount());
  for (VertexId v = 0; v < g.vertexCount(); ++v)
    for (const auto& h : g.incident(v)) nb[v].push_back(h.to);
  return isChordal(nb);
}

}  // namespace bino
