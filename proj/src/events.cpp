#include "terravis/events.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace terravis {

namespace {

// First crossing of the bisector of (lower, other) met when walking away
// from `lower` on `side`. Gives up past `reach`, since nothing there is
// visible from `lower`, and on a touching (non-crossing) contact.
std::optional<TerrainPoint> first_crossing(const Terrain& t, std::size_t lower, std::size_t other,
                                           Side side, double reach) {
    const double eps = t.eps();
    const Point pl = t.vertex(lower);
    const Point po = t.vertex(other);
    const std::size_t n = t.size();
    const bool right = side == Side::Right;
    auto offset = [&](std::size_t k) { return bisector_offset(pl, po, t.vertex(k)); };

    std::size_t prev = lower;
    double g_prev = offset(lower);
    while (right ? prev + 1 < n : prev > 0) {
        if (right ? t.vertex(prev).x > reach + eps : t.vertex(prev).x < reach - eps) return std::nullopt;
        const std::size_t k = right ? prev + 1 : prev - 1;
        const double g = offset(k);
        if (g >= -eps) {
            if (g <= eps) {
                const bool has_next = right ? k + 1 < n : k > 0;
                if (has_next && offset(right ? k + 1 : k - 1) < -eps) return std::nullopt;  // tangent
                return t.vertex_point(k);
            }
            const Point a = t.vertex(prev);
            const Point b = t.vertex(k);
            const double s = g_prev / (g_prev - g);
            return TerrainPoint{std::min(prev, k), a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
        }
        prev = k;
        g_prev = g;
    }
    return std::nullopt;
}

std::vector<TerrainPoint> raw_candidates(const Terrain& t, std::size_t i, std::size_t j, Metric metric,
                                         const VisibilityIndex& index) {
    std::vector<TerrainPoint> out;
    switch (metric) {
        case Metric::Euclidean: {
            const double yi = t.vertex(i).y;
            const double yj = t.vertex(j).y;
            const std::size_t lower = yi < yj || (yi == yj && i < j) ? i : j;
            const std::size_t other = lower == i ? j : i;
            for (Side side : {Side::Left, Side::Right}) {
                if (auto q = first_crossing(t, lower, other, side, index.reach(lower, side))) {
                    out.push_back(*q);
                }
            }
            break;
        }
        case Metric::Geodesic: {
            const double s = 0.5 * (t.cum_len()[i] + t.cum_len()[j]);
            out.push_back(t.point_at_arc(s));
            break;
        }
        case Metric::Link: {
            const std::size_t a = std::min(i, j);
            const std::size_t b = std::max(i, j);
            if ((b - a) % 2 == 0) {
                out.push_back(t.vertex_point((a + b) / 2));
            } else {
                const std::size_t e = (a + b - 1) / 2;
                const Point mid = 0.5 * (t.vertex(e) + t.vertex(e + 1));
                out.push_back({e, mid.x, mid.y});
            }
            break;
        }
    }
    return out;
}

}  // namespace

std::vector<TerrainPoint> candidate_type3_events(const Terrain& terrain, std::size_t i, std::size_t j,
                                                 Metric metric, const VisibilityIndex& index) {
    std::vector<TerrainPoint> out;
    if (i == j) return out;
    for (const TerrainPoint& q : raw_candidates(terrain, i, j, metric, index)) {
        if (index.visible(i, q) && index.visible(j, q)) out.push_back(q);
    }
    return out;
}

std::vector<TerrainPoint> candidate_type3_events(const Terrain& terrain, std::size_t i, std::size_t j,
                                                 Metric metric) {
    const ViewpointSet pair(terrain, {i, j});
    const VisibilityIndex index(terrain, pair, Mode::Both);
    return candidate_type3_events(terrain, i, j, metric, index);
}

bool check_event_list(const Terrain& terrain, const EventList& list) {
    if (list.events.empty() || !list.events.back().terrain_end) return false;
    if (list.events.back().at.x != terrain.x_max()) return false;
    for (std::size_t k = 0; k < list.events.size(); ++k) {
        const Event& ev = list.events[k];
        if (k > 0 && !(ev.at.x > list.events[k - 1].at.x)) return false;
        if (ev.terrain_end != (k + 1 == list.events.size())) return false;
        for (std::size_t g : ev.gained) {
            if (std::binary_search(ev.lost.begin(), ev.lost.end(), g)) return false;
        }
    }
    return true;
}

EventList build_event_list(const Terrain& terrain, const ViewpointSet& viewpoints,
                           const ColoredMap& colored, Metric metric, const VisibilityIndex& index) {
    const double eps = terrain.eps();

    struct Raw {
        TerrainPoint at;
        int delta = -1;  // index into colored.deltas(), or -1 for a bisector
        std::size_t i = 0;
        std::size_t j = 0;
    };
    std::vector<Raw> cands;
    const auto& ids = viewpoints.indices();
    for (std::size_t a = 0; a < ids.size(); ++a) {
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
            for (const TerrainPoint& q : candidate_type3_events(terrain, ids[a], ids[b], metric, index)) {
                cands.push_back({q, -1, ids[a], ids[b]});
            }
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Raw& a, const Raw& b) {
        return a.at.x < b.at.x || (a.at.x == b.at.x && std::pair(a.i, a.j) < std::pair(b.i, b.j));
    });

    std::vector<Raw> merged;
    merged.reserve(cands.size() + colored.deltas().size());
    {
        const auto& bps = colored.breakpoints();
        std::size_t c = 0;
        for (std::size_t d = 0; d < colored.deltas().size(); ++d) {
            const TerrainPoint& at = bps[d + 1];
            while (c < cands.size() && cands[c].at.x < at.x) merged.push_back(cands[c++]);
            merged.push_back({at, static_cast<int>(d)});
        }
        while (c < cands.size()) merged.push_back(cands[c++]);
    }

    EventList list;
    list.initial = colored.initial();
    std::size_t k = 0;
    while (k < merged.size()) {
        const double x0 = merged[k].at.x;
        std::size_t end = k;
        while (end < merged.size() && merged[end].at.x <= x0 + eps) ++end;
        if (x0 >= terrain.x_max() - eps) break;
        if (x0 <= terrain.x_min() + eps) {
            // Already reflected in the initial set and the initial probe.
            k = end;
            continue;
        }
        Event ev;
        ev.at = merged[k].at;
        for (std::size_t r = k; r < end; ++r) {
            const Raw& raw = merged[r];
            if (raw.delta >= 0) {
                const SetDelta& d = colored.deltas()[static_cast<std::size_t>(raw.delta)];
                ev.at = raw.at;
                ev.gained.insert(ev.gained.end(), d.gained.begin(), d.gained.end());
                ev.lost.insert(ev.lost.end(), d.lost.begin(), d.lost.end());
            } else {
                ev.bisectors.emplace_back(raw.i, raw.j);
            }
        }
        std::sort(ev.gained.begin(), ev.gained.end());
        std::sort(ev.lost.begin(), ev.lost.end());
        std::sort(ev.bisectors.begin(), ev.bisectors.end());
        ev.bisectors.erase(std::unique(ev.bisectors.begin(), ev.bisectors.end()), ev.bisectors.end());
        list.events.push_back(std::move(ev));
        k = end;
    }
    Event last;
    last.at = terrain.rightmost();
    last.terrain_end = true;
    list.events.push_back(std::move(last));
    return list;
}

EventList build_event_list(const Terrain& terrain, const ViewpointSet& viewpoints,
                           const ColoredMap& colored, Metric metric, Mode mode) {
    const VisibilityIndex index(terrain, viewpoints, mode);
    return build_event_list(terrain, viewpoints, colored, metric, index);
}

}  // namespace terravis
