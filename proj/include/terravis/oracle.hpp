#pragma once

#include "terravis/interval_map.hpp"
#include "terravis/terrain.hpp"
#include "terravis/viewshed.hpp"
#include "terravis/vorvis.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace terravis {

/// Brute-force labeling of one terrain point.
struct OracleSample {
    TerrainPoint at;
    /// Visible viewpoints, closest first (ties: see `oracle_closer`).
    std::vector<std::size_t> ranked;

    std::optional<std::size_t> owner() const;
    /// Sorted set of the min(k, #visible) closest.
    IdSet closest(std::size_t k) const;
    IdSet visible() const { return closest(ranked.size()); }
};

/// Naive ordering used by the oracle: metric distance, then (link only) the
/// fraction of the current edge on the viewpoint's side, then lower index.
bool oracle_closer(const Terrain& terrain, Metric metric, const TerrainPoint& q, std::size_t a,
                   std::size_t b);

/// Naive O(n) visibility with the mode filter applied.
bool oracle_sees(const Terrain& terrain, std::size_t viewpoint, const TerrainPoint& q, Mode mode);

OracleSample oracle_at(const Terrain& terrain, const ViewpointSet& viewpoints, Metric metric, Mode mode,
                       const TerrainPoint& q);

/// Sample positions: `samples_per_edge` evenly spaced interior points of
/// every edge, plus the midpoint of every interval of the map given by
/// `breakpoints` and points +-delta around its interior breakpoints
/// (delta = 1e-4 times the x-extent of the edge holding the breakpoint).
std::vector<TerrainPoint> oracle_probes(const Terrain& terrain, const std::vector<TerrainPoint>& breakpoints,
                                        std::size_t samples_per_edge = 20);

std::vector<OracleSample> oracle_map(const Terrain& terrain, const ViewpointSet& viewpoints, Metric metric,
                                     Mode mode, const std::vector<TerrainPoint>& probes);

std::vector<OracleSample> oracle_map(const Terrain& terrain, const ViewpointSet& viewpoints, Metric metric,
                                     Mode mode, std::size_t samples_per_edge);

struct Mismatch {
    double x;
    std::string expected;
    std::string got;
};

struct OracleReport {
    std::vector<Mismatch> mismatches;
    std::size_t checked = 0;
    std::size_t skipped = 0;  // within eps of a breakpoint

    bool ok() const { return mismatches.empty(); }
};

OracleReport compare_map_to_oracle(const VoronoiMap& map, const std::vector<OracleSample>& samples, double eps);

/// For colored (k = m) and k-th order maps.
OracleReport compare_map_to_oracle(const IntervalMap<IdSet>& map, const std::vector<OracleSample>& samples,
                                   std::size_t k, double eps);

OracleReport compare_map_to_oracle(const VisMap& map, const std::vector<OracleSample>& samples, double eps);

std::string format_owner(const std::optional<std::size_t>& owner);
std::string format_set(const IdSet& set);

}  // namespace terravis
