#include "terravis/terrain.hpp"

#include "terravis/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace terravis {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::NonMonotone: return "NonMonotone";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::InvalidViewpoints: return "InvalidViewpoints";
        case ErrorCode::InconsistentEventList: return "InconsistentEventList";
        case ErrorCode::InvalidK: return "InvalidK";
        case ErrorCode::NoViewpoints: return "NoViewpoints";
        case ErrorCode::ConstructionFailed: return "ConstructionFailed";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

double norm(Point a) { return std::hypot(a.x, a.y); }
double distance(Point a, Point b) { return norm(b - a); }

Terrain validate_terrain(std::span<const Point> raw, double eps) {
    if (raw.size() < 2) {
        throw Error(ErrorCode::TooShort, "terrain needs at least 2 vertices");
    }
    Terrain t;
    t.eps_ = eps;
    t.vertices_.assign(raw.begin(), raw.end());
    t.cum_len_.assign(raw.size(), 0.0);
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
        if (!(raw[i + 1].x > raw[i].x)) {
            throw Error(ErrorCode::NonMonotone,
                        "x-coordinates must be strictly increasing at vertex " + std::to_string(i),
                        i);
        }
        t.cum_len_[i + 1] = t.cum_len_[i] + distance(raw[i], raw[i + 1]);
    }
    return t;
}

TerrainPoint Terrain::vertex_point(std::size_t i) const {
    return {i == 0 ? 0 : i - 1, vertices_[i].x, vertices_[i].y};
}

std::size_t Terrain::edge_at(double x) const {
    auto it = std::upper_bound(vertices_.begin(), vertices_.end(), x,
                               [](double v, const Point& p) { return v < p.x; });
    std::size_t idx = it == vertices_.begin() ? 0 : static_cast<std::size_t>(it - vertices_.begin()) - 1;
    if (idx > 0 && x <= vertices_[idx].x) {
        --idx;  // exactly on vertex idx: canonical lower edge
    }
    return std::min(idx, edge_count() - 1);
}

double Terrain::height_at(double x) const {
    x = std::clamp(x, x_min(), x_max());
    const std::size_t e = edge_at(x);
    const Point& a = vertices_[e];
    const Point& b = vertices_[e + 1];
    const double t = (x - a.x) / (b.x - a.x);
    return a.y + t * (b.y - a.y);
}

std::optional<std::size_t> Terrain::vertex_index(const TerrainPoint& p) const {
    const std::size_t e = std::min(p.edge, edge_count() - 1);
    if (std::abs(p.x - vertices_[e].x) <= eps_) return e;
    if (std::abs(p.x - vertices_[e + 1].x) <= eps_) return e + 1;
    return std::nullopt;
}

double Terrain::arc_position(const TerrainPoint& p) const {
    const std::size_t e = std::min(p.edge, edge_count() - 1);
    return cum_len_[e] + distance(vertices_[e], p.point());
}

TerrainPoint Terrain::point_at_arc(double s) const {
    s = std::clamp(s, 0.0, cum_len_.back());
    auto it = std::upper_bound(cum_len_.begin(), cum_len_.end(), s);
    std::size_t e = it == cum_len_.begin() ? 0 : static_cast<std::size_t>(it - cum_len_.begin()) - 1;
    e = std::min(e, edge_count() - 1);
    const Point& a = vertices_[e];
    const Point& b = vertices_[e + 1];
    const double t = (s - cum_len_[e]) / (cum_len_[e + 1] - cum_len_[e]);
    if (t <= 0.0) return vertex_point(e);
    if (t >= 1.0) return vertex_point(e + 1);
    return {e, a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

ViewpointSet::ViewpointSet(const Terrain& terrain, std::vector<std::size_t> indices)
    : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] >= terrain.size()) {
            throw Error(ErrorCode::InvalidViewpoints,
                        "viewpoint " + std::to_string(indices_[i]) + " is not a vertex", indices_[i]);
        }
        if (i > 0 && indices_[i] == indices_[i - 1]) {
            throw Error(ErrorCode::InvalidViewpoints,
                        "duplicate viewpoint " + std::to_string(indices_[i]), indices_[i]);
        }
    }
    if (!indices_.empty() && indices_.size() >= terrain.size()) {
        throw Error(ErrorCode::InvalidViewpoints, "need fewer viewpoints than vertices (m < n)");
    }
}

bool ViewpointSet::contains(std::size_t vertex) const {
    return std::binary_search(indices_.begin(), indices_.end(), vertex);
}

std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::Euclidean: return "euclidean";
        case Metric::Geodesic: return "geodesic";
        case Metric::Link: return "link";
    }
    return "euclidean";
}

std::optional<Metric> parse_metric(std::string_view text) {
    if (text == "euclidean") return Metric::Euclidean;
    if (text == "geodesic") return Metric::Geodesic;
    if (text == "link") return Metric::Link;
    return std::nullopt;
}

TerrainPoint point_at_x(const Terrain& terrain, double x) {
    const double eps = terrain.eps();
    if (x < terrain.x_min() - eps || x > terrain.x_max() + eps) {
        throw Error(ErrorCode::OutOfRange, "x = " + std::to_string(x) + " outside the terrain");
    }
    x = std::clamp(x, terrain.x_min(), terrain.x_max());
    const std::size_t e = terrain.edge_at(x);
    if (std::abs(x - terrain.vertex(e).x) <= eps) return terrain.vertex_point(e);
    if (std::abs(x - terrain.vertex(e + 1).x) <= eps) return terrain.vertex_point(e + 1);
    return {e, x, terrain.height_at(x)};
}

bool sees(const Terrain& terrain, const TerrainPoint& a, const TerrainPoint& b) {
    const TerrainPoint& l = a.x <= b.x ? a : b;
    const TerrainPoint& r = a.x <= b.x ? b : a;
    const double dx = r.x - l.x;
    const double eps = terrain.eps();
    if (dx <= eps) return true;
    const double slope = (r.y - l.y) / dx;
    const auto& vs = terrain.vertices();
    for (std::size_t k = l.edge + 1; k < vs.size() && vs[k].x < r.x - eps; ++k) {
        if (vs[k].x <= l.x + eps) continue;
        const double above = vs[k].y - (l.y + slope * (vs[k].x - l.x));
        if (above > eps) return false;
    }
    return true;
}

std::optional<TerrainPoint> ray_first_hit(const Terrain& terrain, Point origin, Point through,
                                          Side side) {
    const double eps = terrain.eps();
    const double run = through.x - origin.x;
    if (std::abs(run) <= eps) return std::nullopt;
    if ((side == Side::Right) != (run > 0)) return std::nullopt;
    const double slope = (through.y - origin.y) / run;
    auto gap = [&](double x) { return origin.y + slope * (x - origin.x) - terrain.height_at(x); };
    const auto& vs = terrain.vertices();

    // Scan each edge portion [from, to] ordered along the ray direction.
    auto scan = [&](double from, double to, bool clipped) -> std::optional<TerrainPoint> {
        if (std::abs(to - through.x) <= eps || std::abs(to - from) <= eps) return std::nullopt;
        const double ga = gap(from);
        const double gb = gap(to);
        const bool za = std::abs(ga) <= eps;
        const bool zb = std::abs(gb) <= eps;
        if (za && zb) return std::nullopt;  // runs along the terrain
        if (zb) return point_at_x(terrain, to);
        if (za) {
            if (clipped) return std::nullopt;
            return point_at_x(terrain, from);
        }
        if ((ga < 0) != (gb < 0)) {
            const double t = ga / (ga - gb);
            const double x = from + t * (to - from);
            if (std::abs(x - through.x) > eps) return point_at_x(terrain, x);
        }
        return std::nullopt;
    };

    if (side == Side::Right) {
        for (std::size_t e = terrain.edge_at(through.x); e < terrain.edge_count(); ++e) {
            const bool clipped = vs[e].x <= through.x;
            const double from = std::max(vs[e].x, through.x);
            if (auto hit = scan(from, vs[e + 1].x, clipped)) return hit;
        }
    } else {
        for (std::size_t e = terrain.edge_at(through.x) + 1; e-- > 0;) {
            const bool clipped = vs[e + 1].x >= through.x;
            const double from = std::min(vs[e + 1].x, through.x);
            if (auto hit = scan(from, vs[e].x, clipped)) return hit;
        }
    }
    return std::nullopt;
}

namespace {

// Vertex k -> 2k, interior of edge e -> 2e + 1.
long position_code(const Terrain& terrain, const TerrainPoint& p) {
    if (auto v = terrain.vertex_index(p)) return 2 * static_cast<long>(*v);
    return 2 * static_cast<long>(p.edge) + 1;
}

}  // namespace

long link_distance(const Terrain& terrain, const TerrainPoint& a, const TerrainPoint& b) {
    long lo = position_code(terrain, a);
    long hi = position_code(terrain, b);
    if (lo > hi) std::swap(lo, hi);
    // vertices k with lo < 2k < hi
    const long first = lo / 2 + 1;
    const long last = (hi + 1) / 2 - 1;
    return std::max(0L, last - first + 1);
}

double metric_distance(const Terrain& terrain, Metric metric, const TerrainPoint& a,
                       const TerrainPoint& b) {
    switch (metric) {
        case Metric::Euclidean: return distance(a.point(), b.point());
        case Metric::Geodesic: return std::abs(terrain.arc_position(b) - terrain.arc_position(a));
        case Metric::Link: return static_cast<double>(link_distance(terrain, a, b));
    }
    return 0.0;
}

}  // namespace terravis
