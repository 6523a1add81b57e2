#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bino/graph.hpp"

namespace bino {

/// Raised by the loader; `what()` carries one diagnostic per line, each
/// prefixed with the source line number when it can be located.
class GraphFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `{"n": int, "edges": [[u, v, portAtU, portAtV], ...], "labels": {...}}`
/// and runs validate(); invalid graphs are rejected.
PortNumberedGraph parseGraphJson(std::string_view text);
PortNumberedGraph loadGraphFile(const std::filesystem::path& path);

/// Deterministic text: one edge per line, edges sorted as in edges().
std::string graphToJson(const PortNumberedGraph& g);
void saveGraphFile(const PortNumberedGraph& g, const std::filesystem::path& path);

std::string readTextFile(const std::filesystem::path& path);
void writeTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace bino
