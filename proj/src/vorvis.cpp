#include "terravis/vorvis.hpp"

#include "terravis/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace terravis {

VisibleSet::VisibleSet(const Terrain& terrain, Metric metric)
    : terrain_(&terrain), metric_(metric), probe_(terrain.leftmost()), tree_(Less{this}),
      present_(terrain.size(), false) {
    set_probe(probe_);
}

void VisibleSet::set_probe(const TerrainPoint& probe) {
    probe_ = probe;
    if (metric_ == Metric::Geodesic) probe_arc_ = terrain_->arc_position(probe);
    if (metric_ == Metric::Link) {
        if (auto v = terrain_->vertex_index(probe)) {
            probe_code_ = 2 * static_cast<long>(*v);
            probe_frac_ = 0.0;
        } else {
            const Point a = terrain_->vertex(probe.edge);
            const Point b = terrain_->vertex(probe.edge + 1);
            probe_code_ = 2 * static_cast<long>(probe.edge) + 1;
            probe_frac_ = (probe.x - a.x) / (b.x - a.x);
        }
    }
}

bool VisibleSet::closer(std::size_t a, std::size_t b) const {
    if (a == b) return false;
    switch (metric_) {
        case Metric::Euclidean: {
            const double g = bisector_offset(terrain_->vertex(a), terrain_->vertex(b), probe_.point());
            if (g != 0.0) return g < 0.0;
            break;
        }
        case Metric::Geodesic: {
            const double da = std::abs(probe_arc_ - terrain_->cum_len()[a]);
            const double db = std::abs(probe_arc_ - terrain_->cum_len()[b]);
            if (da != db) return da < db;
            break;
        }
        case Metric::Link: {
            // (vertices strictly between, fraction of the probe's edge on the
            // viewpoint's side): ties across an equidistant open edge split
            // at its midpoint.
            auto key = [&](std::size_t v) {
                const long code = 2 * static_cast<long>(v);
                const long lo = std::min(code, probe_code_);
                const long hi = std::max(code, probe_code_);
                const long count = std::max(0L, (hi + 1) / 2 - 1 - lo / 2);
                double frac = 0.0;
                if (probe_code_ % 2 == 1) frac = code < probe_code_ ? probe_frac_ : 1.0 - probe_frac_;
                return std::pair(count, frac);
            };
            const auto ka = key(a);
            const auto kb = key(b);
            if (ka != kb) return ka < kb;
            break;
        }
    }
    return a < b;
}

std::set<std::size_t, VisibleSet::Less>::iterator VisibleSet::locate(std::size_t v) const {
    auto it = tree_.find(v);
    if (it != tree_.end() && *it == v) return it;
    // Order drifted within rounding; fall back to a scan.
    return std::find(tree_.begin(), tree_.end(), v);
}

void VisibleSet::insert(std::size_t v) {
    if (present_[v]) {
        throw Error(ErrorCode::InconsistentEventList, "viewpoint " + std::to_string(v) + " gained twice", v);
    }
    tree_.insert(v);
    present_[v] = true;
    ++ops_;
}

void VisibleSet::erase(std::size_t v) {
    if (v >= present_.size() || !present_[v]) {
        throw Error(ErrorCode::InconsistentEventList,
                    "viewpoint " + std::to_string(v) + " lost while not visible", v);
    }
    tree_.erase(locate(v));
    present_[v] = false;
    ++ops_;
}

std::optional<std::size_t> VisibleSet::closest() const {
    if (tree_.empty()) return std::nullopt;
    return *tree_.begin();
}

std::optional<std::size_t> VisibleSet::farthest() const {
    if (tree_.empty()) return std::nullopt;
    return *tree_.rbegin();
}

std::optional<std::size_t> VisibleSet::predecessor(std::size_t v) const {
    auto it = locate(v);
    if (it == tree_.begin() || it == tree_.end()) return std::nullopt;
    return *std::prev(it);
}

std::optional<std::size_t> VisibleSet::successor(std::size_t v) const {
    auto it = locate(v);
    if (it == tree_.end() || std::next(it) == tree_.end()) return std::nullopt;
    return *std::next(it);
}

namespace {

// Probe strictly between event `k` and the next one (or the terrain end).
TerrainPoint probe_after(const Terrain& t, const EventList& list, std::size_t k) {
    const double from = k == static_cast<std::size_t>(-1) ? t.x_min() : list.events[k].at.x;
    const double to = list.events[k + 1].at.x;
    const double x = 0.5 * (from + to);
    const std::size_t e = t.edge_at(x);
    return {e, x, t.height_at(x)};
}

constexpr std::size_t kBeforeFirst = static_cast<std::size_t>(-1);

}  // namespace

VoronoiMap sweep_vorvis(const Terrain& terrain, const ViewpointSet& viewpoints, const EventList& list,
                        Metric metric, OpCounters* counters) {
    (void)viewpoints;
    VisibleSet tree(terrain, metric);
    tree.set_probe(probe_after(terrain, list, kBeforeFirst));
    for (std::size_t v : list.initial) tree.insert(v);

    std::optional<std::size_t> owner = tree.closest();
    IntervalMapBuilder<std::optional<std::size_t>> out(terrain.leftmost(), owner, terrain.eps());
    std::size_t processed = 0;
    std::vector<std::size_t> reinsert;

    for (std::size_t k = 0; k < list.events.size(); ++k) {
        const Event& ev = list.events[k];
        ++processed;
        if (ev.terrain_end) break;

        for (std::size_t v : ev.lost) tree.erase(v);
        reinsert.clear();
        for (const auto& [i, j] : ev.bisectors) {
            if (tree.contains(i) && tree.contains(j)) {
                tree.erase(j);
                reinsert.push_back(j);
            }
        }
        tree.set_probe(probe_after(terrain, list, k));
        for (std::size_t j : reinsert) tree.insert(j);
        for (std::size_t v : ev.gained) tree.insert(v);

        const std::optional<std::size_t> closest = tree.closest();
        if (closest != owner) {
            out.cut(ev.at, closest);
            owner = closest;
        }
    }

    if (counters) {
        counters->tree_ops += tree.tree_ops();
        counters->events_processed += processed;
    }
    return std::move(out).finish(terrain.rightmost());
}

VoronoiMap compute_vorvis(const Terrain& terrain, const ViewpointSet& viewpoints, Metric metric, Mode mode,
                          OpCounters* counters) {
    const VisibilityIndex index(terrain, viewpoints, mode);
    const ColoredMap colored = compute_colvis(index);
    const EventList events = build_event_list(terrain, viewpoints, colored, metric, index);
    if (counters) counters->ray_queries += index.query_count();
    return sweep_vorvis(terrain, viewpoints, events, metric, counters);
}

namespace {

// Tracks the ell closest members of the visible set as a prefix of the tree
// ending at `pmax`, and the net membership changes at the current event.
class KClosest {
public:
    KClosest(VisibleSet& tree, std::size_t k, std::size_t n) : tree_(tree), k_(k), inside_(n, false) {}

    void init() {
        std::size_t taken = 0;
        for (std::size_t v : tree_.in_order()) {
            if (taken == k_) break;
            inside_[v] = true;
            pmax_ = v;
            ++taken;
        }
        ell_ = taken;
    }

    IdSet members() const {
        IdSet out;
        for (std::size_t v = 0; v < inside_.size(); ++v) {
            if (inside_[v]) out.push_back(v);
        }
        return out;
    }

    void lose(std::size_t v) {
        if (inside_[v]) {
            if (pmax_ == v) pmax_ = tree_.predecessor(v);
            set_inside(v, false);
            --ell_;
        }
        tree_.erase(v);
    }

    // Called after j has been reinserted at the new probe. The pair was
    // adjacent in the order and has swapped.
    void swap_pair(std::size_t i, std::size_t j, bool in_i, bool in_j) {
        if (in_i && in_j) {
            if (pmax_ == i) pmax_ = j;
            else if (pmax_ == j) pmax_ = i;
        } else if (in_i != in_j) {
            const std::size_t was_in = in_i ? i : j;
            const std::size_t was_out = in_i ? j : i;
            if (tree_.closer(was_out, was_in)) {
                set_inside(was_in, false);
                set_inside(was_out, true);
                if (pmax_ == was_in) pmax_ = was_out;
            }
        }
    }

    void promote() {
        const std::size_t target = std::min(k_, tree_.size());
        while (ell_ < target) {
            const std::optional<std::size_t> next = pmax_ ? tree_.successor(*pmax_) : tree_.closest();
            if (!next) break;
            set_inside(*next, true);
            pmax_ = next;
            ++ell_;
        }
    }

    void gain(IdSet incoming) {
        std::sort(incoming.begin(), incoming.end(),
                  [&](std::size_t a, std::size_t b) { return tree_.closer(a, b); });
        const std::size_t before = tree_.size();
        if (before + incoming.size() <= k_) {
            for (std::size_t v : incoming) admit(v);
            pmax_ = tree_.farthest();
            return;
        }
        std::size_t next = 0;
        if (before < k_) {
            for (; next < k_ - before; ++next) admit(incoming[next]);
            pmax_ = tree_.farthest();
        }
        while (next < incoming.size() && pmax_ && tree_.closer(incoming[next], *pmax_)) {
            admit(incoming[next]);
            const std::size_t evicted = *pmax_;
            pmax_ = tree_.predecessor(evicted);
            set_inside(evicted, false);
            --ell_;
            ++next;
        }
        for (; next < incoming.size(); ++next) tree_.insert(incoming[next]);
    }

    SetDelta take_delta() {
        SetDelta d;
        for (const auto& [v, net] : net_) {
            if (net > 0) d.gained.push_back(v);
            if (net < 0) d.lost.push_back(v);
        }
        net_.clear();
        return d;
    }

    bool inside(std::size_t v) const { return inside_[v]; }

private:
    void admit(std::size_t v) {
        tree_.insert(v);
        set_inside(v, true);
        ++ell_;
    }

    void set_inside(std::size_t v, bool in) {
        if (inside_[v] == in) return;
        inside_[v] = in;
        net_[v] += in ? 1 : -1;
    }

    VisibleSet& tree_;
    std::size_t k_;
    std::vector<bool> inside_;
    std::size_t ell_ = 0;
    std::optional<std::size_t> pmax_;
    std::map<std::size_t, int> net_;
};

}  // namespace

KOrderMap compute_kvorvis(const Terrain& terrain, const ViewpointSet& viewpoints, std::size_t k, Metric metric,
                          Mode mode, OpCounters* counters) {
    if (k < 1 || k > viewpoints.size()) {
        throw Error(ErrorCode::InvalidK, "k must satisfy 1 <= k <= m = " + std::to_string(viewpoints.size()));
    }
    const VisibilityIndex index(terrain, viewpoints, mode);
    const ColoredMap colored = compute_colvis(index);
    const EventList list = build_event_list(terrain, viewpoints, colored, metric, index);

    VisibleSet tree(terrain, metric);
    tree.set_probe(probe_after(terrain, list, kBeforeFirst));
    for (std::size_t v : list.initial) tree.insert(v);
    KClosest top(tree, k, terrain.size());
    top.init();

    std::vector<TerrainPoint> breakpoints{terrain.leftmost()};
    const IdSet initial = top.members();
    std::vector<SetDelta> deltas;
    std::size_t processed = 0;

    for (std::size_t e = 0; e < list.events.size(); ++e) {
        const Event& ev = list.events[e];
        ++processed;
        if (ev.terrain_end) break;

        for (std::size_t v : ev.lost) top.lose(v);

        struct Swap {
            std::size_t i, j;
            bool in_i, in_j;
        };
        std::vector<Swap> swaps;
        for (const auto& [i, j] : ev.bisectors) {
            if (tree.contains(i) && tree.contains(j)) {
                swaps.push_back({i, j, top.inside(i), top.inside(j)});
                tree.erase(j);
            }
        }
        tree.set_probe(probe_after(terrain, list, e));
        for (const Swap& s : swaps) {
            tree.insert(s.j);
            top.swap_pair(s.i, s.j, s.in_i, s.in_j);
        }
        top.promote();
        if (!ev.gained.empty()) top.gain(ev.gained);

        SetDelta d = top.take_delta();
        if (!d.gained.empty() || !d.lost.empty()) {
            breakpoints.push_back(ev.at);
            deltas.push_back(std::move(d));
        }
    }
    breakpoints.push_back(terrain.rightmost());

    if (counters) {
        counters->tree_ops += tree.tree_ops();
        counters->events_processed += processed;
        counters->ray_queries += index.query_count();
    }
    return KOrderMap(std::move(breakpoints), initial, std::move(deltas));
}

RStar compute_rstar(const Terrain& terrain, const ViewpointSet& viewpoints) {
    if (viewpoints.empty()) throw Error(ErrorCode::NoViewpoints, "r* needs at least one viewpoint");
    const VoronoiMap map = compute_vorvis(terrain, viewpoints, Metric::Euclidean, Mode::Both);
    RStar best;
    best.value = -1.0;
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (!map.label(i)) continue;
        const std::size_t owner = *map.label(i);
        auto consider = [&](const TerrainPoint& q) {
            const double d = distance(terrain.vertex(owner), q.point());
            if (d > best.value) best = {d, owner, q};
        };
        // Distance is convex along each edge, so the supremum over the
        // interval sits at one of its ends or at a vertex inside it.
        consider(map.left(i));
        for (std::size_t k = map.left(i).edge + 1; k < terrain.size() && terrain.vertex(k).x < map.right(i).x; ++k) {
            if (terrain.vertex(k).x > map.left(i).x) consider(terrain.vertex_point(k));
        }
        consider(map.right(i));
    }
    return best;
}

}  // namespace terravis
