#pragma once

// In-library JSON conversions shared by the map, trace and report writers.

#include <json.hpp>

#include "bino/exploration_map.hpp"
#include "bino/graph.hpp"

namespace bino::detail {

nlohmann::json toJsonValue(const ExplorationMap& map);
ExplorationMap mapFromJsonValue(const nlohmann::json& j);

nlohmann::json toJsonValue(const Ball& ball);
Ball ballFromJsonValue(const nlohmann::json& j);

}  // namespace bino::detail
