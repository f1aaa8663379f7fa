#pragma once

#include "terravis/interval_map.hpp"
#include "terravis/terrain.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace terravis {

/// Which side of itself a viewpoint can see.
enum class Mode { Both, Left, Right };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

/// Closed portion [lo, hi] of the terrain.
struct Interval {
    TerrainPoint lo;
    TerrainPoint hi;

    double length_x() const { return hi.x - lo.x; }
};

/// Maximal closed intervals visible from vertex `v`, left to right. Two
/// angular walks (left and right of v) tracking the current blocking vertex;
/// O(n). In Left/Right mode the result is clipped at v, which is always
/// included (possibly as a single-point interval).
std::vector<Interval> viewshed(const Terrain& terrain, std::size_t v, Mode mode);

/// Viewsheds of every viewpoint, with O(log n) point-visibility queries.
class VisibilityIndex {
public:
    VisibilityIndex(const Terrain& terrain, const ViewpointSet& viewpoints, Mode mode);

    const Terrain& terrain() const { return *terrain_; }
    const ViewpointSet& viewpoints() const { return *viewpoints_; }
    Mode mode() const { return mode_; }

    /// Viewshed of the viewpoint at position `slot` of the viewpoint set.
    const std::vector<Interval>& viewshed_of_slot(std::size_t slot) const { return sheds_[slot]; }
    const std::vector<Interval>& viewshed_of(std::size_t vertex) const;

    /// Is q inside the closed viewshed of the viewpoint at `vertex`?
    bool visible(std::size_t vertex, const TerrainPoint& q) const;

    /// Farthest visible x in the given direction.
    double reach(std::size_t vertex, Side side) const;

    std::size_t query_count() const { return queries_; }

private:
    std::size_t slot_of(std::size_t vertex) const;

    const Terrain* terrain_;
    const ViewpointSet* viewpoints_;
    Mode mode_;
    std::vector<std::vector<Interval>> sheds_;
    mutable std::size_t queries_ = 0;
};

using VisMap = IntervalMap<bool>;
using ColoredMap = DeltaMap;

/// Union of all viewsheds as a visible/invisible partition.
VisMap compute_vis(const Terrain& terrain, const ViewpointSet& viewpoints, Mode mode);
VisMap compute_vis(const VisibilityIndex& index);

/// Common refinement of all viewsheds: first-region visible set plus
/// gain/loss deltas at each breakpoint. Built by a K-way merge of the
/// viewshed endpoints.
ColoredMap compute_colvis(const Terrain& terrain, const ViewpointSet& viewpoints, Mode mode);
ColoredMap compute_colvis(const VisibilityIndex& index);

}  // namespace terravis
