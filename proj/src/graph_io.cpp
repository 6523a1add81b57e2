#include "bino/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace bino {
namespace {

using json = nlohmann::json;

std::size_t lineAt(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

// Line of every element of the top-level "edges" array, in order.
std::vector<std::size_t> edgeLines(std::string_view text) {
  std::vector<std::size_t> lines;
  auto key = text.find("\"edges\"");
  if (key == std::string_view::npos) return lines;
  auto open = text.find('[', key);
  if (open == std::string_view::npos) return lines;
  int depth = 0;
  std::size_t line = lineAt(text, open);
  for (std::size_t i = open; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') ++line;
    if (c == '[') {
      ++depth;
      if (depth == 2) lines.push_back(line);
    } else if (c == ']') {
      if (--depth == 0) break;
    }
  }
  return lines;
}

}  // namespace

PortNumberedGraph parseGraphJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GraphFormatError("line " + std::to_string(lineAt(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_unsigned())
    throw GraphFormatError("line 1: expected an object with unsigned field \"n\"");
  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw GraphFormatError("line 1: expected array field \"edges\"");

  const auto n = doc["n"].get<std::size_t>();
  const auto lines = edgeLines(text);
  auto where = [&](std::size_t i) {
    return "line " + (i < lines.size() ? std::to_string(lines[i]) : std::string("?")) +
           " (edges[" + std::to_string(i) + "])";
  };

  std::vector<std::string> problems;
  std::vector<EdgeRecord> edges;
  std::map<std::pair<VertexId, Port>, std::size_t> portOwner;
  std::map<std::pair<VertexId, VertexId>, std::size_t> pairOwner;
  const auto& arr = doc["edges"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& e = arr[i];
    if (!e.is_array() || e.size() != 4 ||
        !std::all_of(e.begin(), e.end(), [](const json& x) { return x.is_number_unsigned(); })) {
      problems.push_back(where(i) + ": expected [u, v, portAtU, portAtV] of naturals");
      continue;
    }
    EdgeRecord r{e[0].get<VertexId>(), e[1].get<VertexId>(), e[2].get<Port>(), e[3].get<Port>()};
    if (r.u >= n || r.v >= n) {
      problems.push_back(where(i) + ": vertex id out of range 0.." + std::to_string(n - 1));
      continue;
    }
    if (r.u == r.v) {
      problems.push_back(where(i) + ": self loop at vertex " + std::to_string(r.u));
      continue;
    }
    auto pair = std::make_pair(std::min(r.u, r.v), std::max(r.u, r.v));
    if (auto [it, fresh] = pairOwner.emplace(pair, i); !fresh)
      problems.push_back(where(i) + ": non-simple, duplicates " + where(it->second));
    for (auto [v, p] : {std::make_pair(r.u, r.portAtU), std::make_pair(r.v, r.portAtV)})
      if (auto [it, fresh] = portOwner.emplace(std::make_pair(v, p), i); !fresh)
        problems.push_back(where(i) + ": port injectivity, port " + std::to_string(p) +
                           " at vertex " + std::to_string(v) + " already used by " +
                           where(it->second));
    edges.push_back(r);
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    const auto& lab = doc["labels"];
    if (!lab.is_object()) {
      problems.push_back("labels: expected an object mapping vertex id to string");
    } else if (!lab.empty()) {
      labels.assign(n, "");
      for (const auto& [k, v] : lab.items()) {
        std::size_t id = 0;
        try {
          id = std::stoul(k);
        } catch (const std::exception&) {
          id = n;
        }
        if (id >= n || !v.is_string())
          problems.push_back("labels: bad entry \"" + k + "\"");
        else
          labels[id] = v.get<std::string>();
      }
    }
  }

  if (problems.empty()) {
    auto g = PortNumberedGraph::fromEdges(n, edges, labels);
    for (const auto& v : validate(g)) problems.push_back(v.kind + ": " + v.detail);
    if (problems.empty()) return g;
  }
  std::ostringstream os;
  os << "invalid graph file";
  for (const auto& p : problems) os << "\n  " << p;
  throw GraphFormatError(os.str());
}

std::string readTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void writeTextFile(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

PortNumberedGraph loadGraphFile(const std::filesystem::path& path) {
  return parseGraphJson(readTextFile(path));
}

std::string graphToJson(const PortNumberedGraph& g) {
  std::ostringstream os;
  os << "{\n  \"n\": " << g.vertexCount() << ",\n  \"edges\": [";
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    os << (i ? ",\n    " : "\n    ") << '[' << e.u << ", " << e.v << ", " << e.portAtU << ", "
       << e.portAtV << ']';
  }
  os << (edges.empty() ? "]" : "\n  ]");
  bool anyLabel = false;
  for (const auto& l : g.labels()) anyLabel = anyLabel || !l.empty();
  if (anyLabel) {
    json lab = json::object();
    for (std::size_t v = 0; v < g.labels().size(); ++v)
      if (!g.labels()[v].empty()) lab[std::to_string(v)] = g.labels()[v];
    os << ",\n  \"labels\": " << lab.dump();
  }
  os << "\n}\n";
  return os.str();
}

void saveGraphFile(const PortNumberedGraph& g, const std::filesystem::path& path) {
  writeTextFile(path, graphToJson(g));
}

}  // namespace bino
