#pragma once

#include "terravis/events.hpp"
#include "terravis/interval_map.hpp"
#include "terravis/terrain.hpp"
#include "terravis/viewshed.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

namespace terravis {

/// Owner per interval; nullopt where nothing is visible.
using VoronoiMap = IntervalMap<std::optional<std::size_t>>;
using KOrderMap = DeltaMap;

struct OpCounters {
    std::size_t tree_ops = 0;
    std::size_t events_processed = 0;
    std::size_t ray_queries = 0;
};

/// Viewpoints currently visible at the sweep position, ordered by their
/// distance to a probe point. Keys are evaluated on demand, never stored;
/// the caller moves the probe only to points where the current order is
/// still valid (strictly between consecutive events).
class VisibleSet {
public:
    VisibleSet(const Terrain& terrain, Metric metric);
    VisibleSet(const VisibleSet&) = delete;
    VisibleSet& operator=(const VisibleSet&) = delete;

    void set_probe(const TerrainPoint& probe);
    const TerrainPoint& probe() const { return probe_; }

    void insert(std::size_t v);
    /// Throws Error{InconsistentEventList} if v is absent.
    void erase(std::size_t v);
    bool contains(std::size_t v) const { return present_[v]; }

    std::size_t size() const { return tree_.size(); }
    bool empty() const { return tree_.empty(); }
    std::optional<std::size_t> closest() const;
    std::optional<std::size_t> predecessor(std::size_t v) const;
    std::optional<std::size_t> successor(std::size_t v) const;
    std::optional<std::size_t> farthest() const;

    /// Strict order at the probe: distance, then lower index.
    bool closer(std::size_t a, std::size_t b) const;

    std::size_t tree_ops() const { return ops_; }
    std::vector<std::size_t> in_order() const { return {tree_.begin(), tree_.end()}; }

private:
    struct Less {
        const VisibleSet* self;
        bool operator()(std::size_t a, std::size_t b) const { return self->closer(a, b); }
    };

    std::set<std::size_t, Less>::iterator locate(std::size_t v) const;

    const Terrain* terrain_;
    Metric metric_;
    TerrainPoint probe_;
    double probe_arc_ = 0.0;
    long probe_code_ = 0;
    double probe_frac_ = 0.0;
    std::set<std::size_t, Less> tree_;
    std::vector<bool> present_;
    std::size_t ops_ = 0;
};

/// Left-to-right sweep over the event list producing the Voronoi
/// visibility map.
VoronoiMap sweep_vorvis(const Terrain& terrain, const ViewpointSet& viewpoints, const EventList& events,
                        Metric metric, OpCounters* counters = nullptr);

VoronoiMap compute_vorvis(const Terrain& terrain, const ViewpointSet& viewpoints, Metric metric,
                          Mode mode, OpCounters* counters = nullptr);

/// k-th order map: per interval the set of the min(k, #visible) closest
/// visible viewpoints, reported as first set plus (in, out) deltas.
/// Throws Error{InvalidK} unless 1 <= k <= m.
KOrderMap compute_kvorvis(const Terrain& terrain, const ViewpointSet& viewpoints, std::size_t k,
                          Metric metric = Metric::Euclidean, Mode mode = Mode::Both,
                          OpCounters* counters = nullptr);

struct RStar {
    double value = 0.0;
    std::size_t viewpoint = 0;
    TerrainPoint point;
};

/// Smallest visibility range that keeps the visibility map unchanged:
/// the largest owner distance over the Voronoi map, attained at an interval
/// end or at a vertex inside an interval.
/// Throws Error{NoViewpoints}.
RStar compute_rstar(const Terrain& terrain, const ViewpointSet& viewpoints);

}  // namespace terravis
