#pragma once

#include "terravis/bench.hpp"
#include "terravis/interval_map.hpp"
#include "terravis/terrain.hpp"
#include "terravis/viewshed.hpp"
#include "terravis/vorvis.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace terravis {

/// Instance documents:
///   {"name": ..., "seed": ..., "vertices": [[x, y], ...], "viewpoints": [i, ...]}
/// Malformed text throws Error{Parse}; a well-formed document describing an
/// invalid terrain throws the validation error.
Instance parse_instance(std::string_view text, double eps = kDefaultEpsilon);
Instance read_instance(const std::filesystem::path& path, double eps = kDefaultEpsilon);
std::string dump_instance(const Instance& instance);
void write_instance(const std::filesystem::path& path, const Instance& instance);

enum class MapKind { Vis, ColVis, VorVis, KVorVis };
std::string_view to_string(MapKind kind);
std::optional<MapKind> parse_map_kind(std::string_view text);

/// One labeled interval of a map document: owner (nullopt = none), visible
/// set, or visibility flag depending on the map kind.
struct MapEntry {
    double x_left = 0.0;
    double x_right = 0.0;
    std::variant<std::optional<std::size_t>, IdSet, bool> label;
};

struct MapFile {
    std::string instance;
    MapKind kind = MapKind::VorVis;
    Metric metric = Metric::Euclidean;
    Mode mode = Mode::Both;
    std::optional<std::size_t> k;
    std::vector<MapEntry> intervals;
};

MapFile to_map_file(const VisMap& map);
MapFile to_map_file(const VoronoiMap& map);
MapFile to_map_file(const IntervalMap<IdSet>& map);

MapFile parse_map_file(std::string_view text);
MapFile read_map_file(const std::filesystem::path& path);
std::string dump_map_file(const MapFile& map);

/// Rebuilds the breakpoints on `terrain`; throws Error{Parse} if the
/// intervals do not tile the terrain within eps.
std::vector<TerrainPoint> map_breakpoints(const Terrain& terrain, const MapFile& map);

}  // namespace terravis
