#include "terravis/general_position.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace terravis {

std::vector<TerrainPoint> bisector_crossings(const Terrain& terrain, std::size_t i, std::size_t j) {
    const Point pi = terrain.vertex(i);
    const Point pj = terrain.vertex(j);
    const double eps = terrain.eps();
    std::vector<TerrainPoint> out;
    std::vector<double> g(terrain.size());
    for (std::size_t k = 0; k < terrain.size(); ++k) g[k] = bisector_offset(pi, pj, terrain.vertex(k));
    for (std::size_t k = 0; k < terrain.size(); ++k) {
        if (std::abs(g[k]) <= eps) {
            out.push_back(terrain.vertex_point(k));
            continue;
        }
        if (k + 1 < terrain.size() && std::abs(g[k + 1]) > eps && (g[k] < 0) != (g[k + 1] < 0)) {
            const Point a = terrain.vertex(k);
            const Point b = terrain.vertex(k + 1);
            const double t = g[k] / (g[k] - g[k + 1]);
            out.push_back({k, a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    return out;
}

GeneralPositionReport check_general_position(const Terrain& terrain, const ViewpointSet& viewpoints) {
    GeneralPositionReport report;
    const double eps = terrain.eps();
    const auto& vs = terrain.vertices();
    const std::size_t n = vs.size();

    // Collinear triples: per apex, sort the others by slope and test neighbours.
    std::set<std::array<std::size_t, 3>> triples;
    std::vector<std::pair<double, std::size_t>> fan;
    for (std::size_t i = 0; i < n; ++i) {
        fan.clear();
        for (std::size_t j = i + 1; j < n; ++j) {
            fan.emplace_back((vs[j].y - vs[i].y) / (vs[j].x - vs[i].x), j);
        }
        std::sort(fan.begin(), fan.end());
        for (std::size_t a = 0; a + 1 < fan.size(); ++a) {
            const std::size_t j = fan[a].second;
            const std::size_t k = fan[a + 1].second;
            const Point dir = vs[j] - vs[i];
            const double off = std::abs(cross(dir, vs[k] - vs[i])) / norm(dir);
            if (off <= eps) {
                std::array<std::size_t, 3> t{i, j, k};
                std::sort(t.begin(), t.end());
                triples.insert(t);
            }
        }
    }
    report.collinear_triples.assign(triples.begin(), triples.end());

    const auto& ps = viewpoints.indices();
    std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> seen;
    for (std::size_t a = 0; a < ps.size(); ++a) {
        for (std::size_t b = a + 1; b < ps.size(); ++b) {
            const Point pi = vs[ps[a]];
            const Point pj = vs[ps[b]];
            for (std::size_t e = 0; e + 1 < n; ++e) {
                if (std::abs(bisector_offset(pi, pj, vs[e])) <= eps &&
                    std::abs(bisector_offset(pi, pj, vs[e + 1])) <= eps) {
                    report.edge_on_bisector.push_back({e, ps[a], ps[b]});
                }
            }
            for (const TerrainPoint& q : bisector_crossings(terrain, ps[a], ps[b])) {
                const double d = distance(pi, q.point());
                for (std::size_t c = 0; c < ps.size(); ++c) {
                    if (c == a || c == b) continue;
                    if (std::abs(distance(vs[ps[c]], q.point()) - d) > eps * std::max(1.0, d)) continue;
                    std::array<std::size_t, 3> t{ps[a], ps[b], ps[c]};
                    std::sort(t.begin(), t.end());
                    const std::size_t vkey = terrain.vertex_index(q).value_or(n + q.edge);
                    if (seen.emplace(t[0], t[1], t[2], vkey).second) {
                        report.triple_equidistant.push_back({q, t[0], t[1], t[2]});
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace terravis
