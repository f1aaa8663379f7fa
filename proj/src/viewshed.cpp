#include "terravis/viewshed.hpp"

#include "terravis/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace terravis {

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::Both: return "both";
        case Mode::Left: return "left";
        case Mode::Right: return "right";
    }
    return "both";
}

std::optional<Mode> parse_mode(std::string_view text) {
    if (text == "both") return Mode::Both;
    if (text == "left") return Mode::Left;
    if (text == "right") return Mode::Right;
    return std::nullopt;
}

namespace {

Interval ordered(const TerrainPoint& a, const TerrainPoint& b) {
    return a.x <= b.x ? Interval{a, b} : Interval{b, a};
}

// Walks away from vertex v (dir = +1 right, -1 left) keeping the vertex with
// the steepest sightline as the blocker. Pieces come out in walk order.
std::vector<Interval> angular_walk(const Terrain& t, std::size_t v, int dir) {
    std::vector<Interval> out;
    const std::size_t n = t.size();
    if ((dir > 0 && v + 1 >= n) || (dir < 0 && v == 0)) return out;
    const double eps = t.eps();
    const Point pv = t.vertex(v);

    const std::size_t first = dir > 0 ? v + 1 : v - 1;
    TerrainPoint start = t.vertex_point(v);
    TerrainPoint end = t.vertex_point(first);
    std::size_t blocker = first;
    bool open = true;

    for (std::size_t k = first; dir > 0 ? k + 1 < n : k > 0;) {
        const std::size_t w = dir > 0 ? k + 1 : k - 1;
        const Point pb = t.vertex(blocker);
        const Point pw = t.vertex(w);
        const double slope_w = (pw.y - pv.y) / (pw.x - pv.x);
        const double above = pb.y - (pv.y + slope_w * (pb.x - pv.x));
        if (above <= eps) {
            if (!open) {
                // The sightline over the blocker re-enters the terrain on edge (k, w).
                const Point pk = t.vertex(k);
                const double slope_b = (pb.y - pv.y) / (pb.x - pv.x);
                const double hk = pk.y - (pv.y + slope_b * (pk.x - pv.x));
                const double hw = pw.y - (pv.y + slope_b * (pw.x - pv.x));
                double s = hk - hw != 0.0 ? hk / (hk - hw) : 1.0;
                s = std::clamp(s, 0.0, 1.0);
                if (s >= 1.0) {
                    start = t.vertex_point(w);
                } else {
                    const Point p = pk + s * (pw - pk);
                    start = {std::min(k, w), p.x, p.y};
                }
                open = true;
            }
            end = t.vertex_point(w);
            if (above <= 0.0) blocker = w;
        } else if (open) {
            out.push_back(ordered(start, end));
            open = false;
        }
        k = w;
    }
    if (open) out.push_back(ordered(start, end));
    return out;
}

// Appends `piece` to sorted `out`, fusing it with the last piece if they touch.
void append_fused(std::vector<Interval>& out, const Interval& piece, double eps) {
    if (!out.empty() && piece.lo.x <= out.back().hi.x + eps) {
        if (piece.hi.x > out.back().hi.x) out.back().hi = piece.hi;
        return;
    }
    out.push_back(piece);
}

}  // namespace

std::vector<Interval> viewshed(const Terrain& terrain, std::size_t v, Mode mode) {
    const double eps = terrain.eps();
    const TerrainPoint self = terrain.vertex_point(v);
    std::vector<Interval> out;
    if (mode != Mode::Right) {
        auto left = angular_walk(terrain, v, -1);
        for (auto it = left.rbegin(); it != left.rend(); ++it) append_fused(out, *it, eps);
    }
    append_fused(out, Interval{self, self}, eps);
    if (mode != Mode::Left) {
        for (const Interval& piece : angular_walk(terrain, v, +1)) append_fused(out, piece, eps);
    }
    return out;
}

VisibilityIndex::VisibilityIndex(const Terrain& terrain, const ViewpointSet& viewpoints, Mode mode)
    : terrain_(&terrain), viewpoints_(&viewpoints), mode_(mode) {
    sheds_.reserve(viewpoints.size());
    for (std::size_t v : viewpoints) sheds_.push_back(viewshed(terrain, v, mode));
}

std::size_t VisibilityIndex::slot_of(std::size_t vertex) const {
    const auto& ids = viewpoints_->indices();
    auto it = std::lower_bound(ids.begin(), ids.end(), vertex);
    if (it == ids.end() || *it != vertex) {
        throw Error(ErrorCode::InvalidViewpoints, "vertex " + std::to_string(vertex) + " is not a viewpoint",
                    vertex);
    }
    return static_cast<std::size_t>(it - ids.begin());
}

const std::vector<Interval>& VisibilityIndex::viewshed_of(std::size_t vertex) const {
    return sheds_[slot_of(vertex)];
}

bool VisibilityIndex::visible(std::size_t vertex, const TerrainPoint& q) const {
    ++queries_;
    const auto& shed = sheds_[slot_of(vertex)];
    const double eps = terrain_->eps();
    auto it = std::upper_bound(shed.begin(), shed.end(), q.x + eps,
                               [](double x, const Interval& iv) { return x < iv.lo.x; });
    if (it == shed.begin()) return false;
    return q.x <= std::prev(it)->hi.x + eps;
}

double VisibilityIndex::reach(std::size_t vertex, Side side) const {
    const auto& shed = sheds_[slot_of(vertex)];
    return side == Side::Right ? shed.back().hi.x : shed.front().lo.x;
}

VisMap compute_vis(const Terrain& terrain, const ViewpointSet& viewpoints, Mode mode) {
    const VisibilityIndex index(terrain, viewpoints, mode);
    return compute_vis(index);
}

VisMap compute_vis(const VisibilityIndex& index) {
    const Terrain& t = index.terrain();
    const double eps = t.eps();
    std::vector<Interval> pieces;
    for (std::size_t s = 0; s < index.viewpoints().size(); ++s) {
        for (const Interval& iv : index.viewshed_of_slot(s)) {
            if (iv.length_x() > eps) pieces.push_back(iv);
        }
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const Interval& a, const Interval& b) { return a.lo.x < b.lo.x; });
    std::vector<Interval> unions;
    for (const Interval& iv : pieces) append_fused(unions, iv, eps);

    IntervalMapBuilder<bool> builder(t.leftmost(), false, eps);
    for (const Interval& iv : unions) {
        builder.cut(iv.lo, true);
        builder.cut(iv.hi, false);
    }
    return std::move(builder).finish(t.rightmost());
}

ColoredMap compute_colvis(const Terrain& terrain, const ViewpointSet& viewpoints, Mode mode) {
    const VisibilityIndex index(terrain, viewpoints, mode);
    return compute_colvis(index);
}

ColoredMap compute_colvis(const VisibilityIndex& index) {
    const Terrain& t = index.terrain();
    const ViewpointSet& vps = index.viewpoints();
    const double eps = t.eps();

    struct Endpoint {
        TerrainPoint at;
        std::size_t slot;
        int sign;
    };
    std::vector<Endpoint> ends;
    for (std::size_t s = 0; s < vps.size(); ++s) {
        for (const Interval& iv : index.viewshed_of_slot(s)) {
            if (iv.length_x() <= eps) continue;
            ends.push_back({iv.lo, s, +1});
            ends.push_back({iv.hi, s, -1});
        }
    }
    std::stable_sort(ends.begin(), ends.end(),
                     [](const Endpoint& a, const Endpoint& b) { return a.at.x < b.at.x; });

    std::vector<int> count(vps.size(), 0);
    std::vector<TerrainPoint> breakpoints{t.leftmost()};
    std::vector<SetDelta> deltas;
    IdSet initial;
    std::vector<std::size_t> touched;
    std::vector<bool> before(vps.size());

    std::size_t i = 0;
    bool first_group = true;
    while (i < ends.size()) {
        const TerrainPoint at = ends[i].at;
        const bool at_start = at.x <= t.x_min() + eps;
        const bool at_end = at.x >= t.x_max() - eps;
        touched.clear();
        std::size_t j = i;
        for (; j < ends.size() && ends[j].at.x <= at.x + eps; ++j) {
            const std::size_t s = ends[j].slot;
            if (std::find(touched.begin(), touched.end(), s) == touched.end()) {
                touched.push_back(s);
                before[s] = count[s] > 0;
            }
            count[s] += ends[j].sign;
        }
        i = j;
        if (at_end) break;
        std::sort(touched.begin(), touched.end());
        SetDelta d;
        for (std::size_t s : touched) {
            const bool after = count[s] > 0;
            if (after && !before[s]) d.gained.push_back(vps[s]);
            if (!after && before[s]) d.lost.push_back(vps[s]);
        }
        if (at_start && first_group) {
            initial = d.gained;
            first_group = false;
            continue;
        }
        first_group = false;
        if (d.gained.empty() && d.lost.empty()) continue;
        breakpoints.push_back(at);
        deltas.push_back(std::move(d));
    }
    breakpoints.push_back(t.rightmost());
    return ColoredMap(std::move(breakpoints), std::move(initial), std::move(deltas));
}

}  // namespace terravis
