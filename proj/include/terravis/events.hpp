#pragma once

#include "terravis/interval_map.hpp"
#include "terravis/terrain.hpp"
#include "terravis/viewshed.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace terravis {

/// One sweep stop. Everything happening at the same position (within eps)
/// is coalesced into a single composite record.
struct Event {
    TerrainPoint at;
    IdSet gained;
    IdSet lost;
    /// Bisector crossings (i, j), i < j, in index order.
    std::vector<std::pair<std::size_t, std::size_t>> bisectors;
    bool terrain_end = false;
};

/// Potential events sorted left to right, closed by a TerrainEnd record at
/// the rightmost terrain point. `initial` is the visible set of the first
/// colored-map region.
struct EventList {
    IdSet initial;
    std::vector<Event> events;

    std::size_t size() const { return events.size(); }
};

/// Structural invariants: strictly increasing positions,
/// disjoint gain/loss sets, last record is the terrain end.
bool check_event_list(const Terrain& terrain, const EventList& list);

/// Candidate bisector-crossing events of the pair (i, j), 0..2 points.
///
/// Euclidean: the lower viewpoint walks outward on each side to the first
/// crossing of the bisector with the chain; only those two crossings can be
/// seen by both viewpoints. A crossing where the bisector only touches the
/// chain is dropped, as is any crossing not visible from both viewpoints.
/// Geodesic: the single point at equal arc length. Link: the middle vertex
/// (odd number of vertices between) or the midpoint of the middle edge.
std::vector<TerrainPoint> candidate_type3_events(const Terrain& terrain, std::size_t i, std::size_t j,
                                                 Metric metric, const VisibilityIndex& index);

/// Same, with both-direction visibility.
std::vector<TerrainPoint> candidate_type3_events(const Terrain& terrain, std::size_t i, std::size_t j,
                                                 Metric metric);

/// Merges colored-map breakpoints (as gains/losses) with all pairwise
/// candidates and the terminal record.
EventList build_event_list(const Terrain& terrain, const ViewpointSet& viewpoints,
                           const ColoredMap& colored, Metric metric, const VisibilityIndex& index);

EventList build_event_list(const Terrain& terrain, const ViewpointSet& viewpoints,
                           const ColoredMap& colored, Metric metric, Mode mode);

}  // namespace terravis
