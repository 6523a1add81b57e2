#include "bino/exploration_map.hpp"

#include <algorithm>
#include <map>

#include "json_codec.hpp"

namespace bino {

MapId ExplorationMap::addVertex(std::optional<Phase> vis, ClusterId cir) {
  adj_.emplace_back();
  vis_.push_back(vis);
  cir_.push_back(cir);
  return static_cast<MapId>(adj_.size() - 1);
}

bool ExplorationMap::addEdge(MapId a, MapId b, Port portAtA, Port portAtB) {
  if (!contains(a) || !contains(b)) throw std::out_of_range("map edge endpoint out of range");
  auto existingA = viaPort(a, portAtA);
  auto existingB = viaPort(b, portAtB);
  if (existingA && existingA->to == b && existingA->in == portAtB && existingB &&
      existingB->to == a && existingB->in == portAtA)
    return false;
  if (existingA || existingB || (a == b && portAtA == portAtB))
    throw PortCollision("port " + std::to_string(existingA ? portAtA : portAtB) +
                        " already used at map vertex " + std::to_string(existingA ? a : b));
  auto insert = [this](MapId v, Arc arc) {
    auto& list = adj_[v];
    auto it = std::lower_bound(list.begin(), list.end(), arc.out,
                               [](const Arc& x, Port p) { return x.out < p; });
    list.insert(it, arc);
  };
  insert(a, {b, portAtA, portAtB});
  if (a != b) insert(b, {a, portAtB, portAtA});
  return true;
}

void ExplorationMap::removeEdge(MapId a, Port portAtA) {
  auto arc = viaPort(a, portAtA);
  if (!arc) return;
  auto drop = [this](MapId v, Port p) {
    auto& list = adj_[v];
    list.erase(std::remove_if(list.begin(), list.end(), [&](const Arc& x) { return x.out == p; }),
               list.end());
  };
  drop(a, portAtA);
  drop(arc->to, arc->in);
}

std::size_t ExplorationMap::edgeCount() const {
  std::size_t total = 0;
  for (const auto& l : adj_) total += l.size();
  return total / 2;
}

std::optional<ExplorationMap::Arc> ExplorationMap::viaPort(MapId n, Port p) const {
  const auto& list = adj_.at(n);
  auto it = std::lower_bound(list.begin(), list.end(), p,
                             [](const Arc& x, Port port) { return x.out < port; });
  if (it == list.end() || it->out != p) return std::nullopt;
  return *it;
}

bool ExplorationMap::hasLabel(MapId n, Port p, Port q) const {
  auto arc = viaPort(n, p);
  return arc && arc->in == q;
}

bool ExplorationMap::adjacent(MapId a, MapId b) const {
  const auto& list = adj_.at(a);
  return std::any_of(list.begin(), list.end(), [&](const Arc& x) { return x.to == b; });
}

std::vector<MapId> ExplorationMap::frontier() const {
  std::vector<MapId> out;
  for (MapId n = 0; n < adj_.size(); ++n)
    if (!vis_[n]) out.push_back(n);
  return out;
}

Ball ExplorationMap::ballAt(MapId n) const {
  Ball b;
  std::map<MapId, LocalId> local{{n, 0}};
  for (const auto& arc : adj_.at(n)) local.emplace(arc.to, static_cast<LocalId>(local.size()));
  b.vertexCount = local.size();
  for (const auto& arc : adj_[n]) b.edges.push_back({0, local[arc.to], arc.out, arc.in});
  for (const auto& [x, lx] : local) {
    if (x == n) continue;
    for (const auto& arc : adj_[x]) {
      if (arc.to == n) continue;
      auto it = local.find(arc.to);
      if (it != local.end() && lx < it->second) b.edges.push_back({lx, it->second, arc.out, arc.in});
    }
  }
  return b;
}

std::vector<EdgeRecord> ExplorationMap::edges() const {
  std::vector<EdgeRecord> out;
  for (MapId a = 0; a < adj_.size(); ++a)
    for (const auto& arc : adj_[a])
      if (a < arc.to || (a == arc.to && arc.out < arc.in)) out.push_back({a, arc.to, arc.out, arc.in});
  return out;
}

PortNumberedGraph ExplorationMap::toGraph() const {
  std::vector<std::vector<HalfEdge>> adj(adj_.size());
  for (MapId a = 0; a < adj_.size(); ++a)
    for (const auto& arc : adj_[a]) adj[a].push_back({arc.to, arc.out, arc.in});
  return PortNumberedGraph(adj_.size(), std::move(adj));
}

namespace detail {

nlohmann::json toJsonValue(const ExplorationMap& map) {
  nlohmann::json j;
  j["n"] = map.vertexCount();
  auto edges = nlohmann::json::array();
  for (const auto& e : map.edges()) edges.push_back({e.u, e.v, e.portAtU, e.portAtV});
  j["edges"] = std::move(edges);
  auto cir = nlohmann::json::array();
  auto vis = nlohmann::json::array();
  for (MapId n = 0; n < map.vertexCount(); ++n) {
    cir.push_back(map.cir(n) == kNoCluster ? nlohmann::json(nullptr) : nlohmann::json(map.cir(n)));
    vis.push_back(map.vis(n) ? nlohmann::json(*map.vis(n)) : nlohmann::json(nullptr));
  }
  j["cir"] = std::move(cir);
  j["vis"] = std::move(vis);
  j["homebase"] = 0;
  j["current"] = map.current();
  return j;
}

ExplorationMap mapFromJsonValue(const nlohmann::json& j) {
  ExplorationMap map;
  const auto n = j.at("n").get<std::size_t>();
  const auto& cir = j.at("cir");
  const auto& vis = j.at("vis");
  if (cir.size() != n || vis.size() != n) throw std::invalid_argument("map tables have wrong size");
  for (std::size_t i = 0; i < n; ++i)
    map.addVertex(vis[i].is_null() ? std::nullopt : std::optional<Phase>(vis[i].get<Phase>()),
                  cir[i].is_null() ? kNoCluster : cir[i].get<ClusterId>());
  for (const auto& e : j.at("edges"))
    map.addEdge(e.at(0).get<MapId>(), e.at(1).get<MapId>(), e.at(2).get<Port>(),
                e.at(3).get<Port>());
  if (j.contains("current")) map.setCurrent(j["current"].get<MapId>());
  return map;
}

nlohmann::json toJsonValue(const Ball& ball) {
  auto edges = nlohmann::json::array();
  for (const auto& e : ball.edges) edges.push_back({e.u, e.v, e.portAtU, e.portAtV});
  return {{"center", ball.center}, {"size", ball.vertexCount}, {"edges", std::move(edges)}};
}

Ball ballFromJsonValue(const nlohmann::json& j) {
  Ball b;
  b.center = j.at("center").get<LocalId>();
  b.vertexCount = j.at("size").get<std::size_t>();
  for (const auto& e : j.at("edges"))
    b.edges.push_back({e.at(0).get<LocalId>(), e.at(1).get<LocalId>(), e.at(2).get<Port>(),
                       e.at(3).get<Port>()});
  return b;
}

}  // namespace detail

std::string mapToJson(const ExplorationMap& map) {
  const auto j = detail::toJsonValue(map);
  // one edge per line, as in the graph format
  std::string out = "{\n  \"n\": " + j["n"].dump() + ",\n  \"edges\": [";
  const auto& edges = j["edges"];
  for (std::size_t i = 0; i < edges.size(); ++i)
    out += (i ? ",\n    " : "\n    ") + edges[i].dump();
  out += edges.empty() ? "]" : "\n  ]";
  out += ",\n  \"cir\": " + j["cir"].dump() + ",\n  \"vis\": " + j["vis"].dump() +
         ",\n  \"homebase\": 0\n}\n";
  return out;
}

ExplorationMap parseMapJson(std::string_view text) {
  try {
    return detail::mapFromJsonValue(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad map file: ") + e.what());
  }
}

}  // namespace bino
