#include "terravis/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace terravis {

std::optional<std::size_t> OracleSample::owner() const {
    if (ranked.empty()) return std::nullopt;
    return ranked.front();
}

IdSet OracleSample::closest(std::size_t k) const {
    IdSet out(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(std::min(k, ranked.size())));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Fraction of q's edge lying between q and the viewpoint's side of it.
double side_fraction(const Terrain& t, std::size_t viewpoint, const TerrainPoint& q) {
    if (t.vertex_index(q)) return 0.0;
    const double x0 = t.vertex(q.edge).x;
    const double x1 = t.vertex(q.edge + 1).x;
    const double s = (q.x - x0) / (x1 - x0);
    return viewpoint <= q.edge ? s : 1.0 - s;
}

}  // namespace

bool oracle_closer(const Terrain& terrain, Metric metric, const TerrainPoint& q, std::size_t a, std::size_t b) {
    if (a == b) return false;
    const double da = metric_distance(terrain, metric, terrain.vertex_point(a), q);
    const double db = metric_distance(terrain, metric, terrain.vertex_point(b), q);
    if (da != db) return da < db;
    if (metric == Metric::Link) {
        const double fa = side_fraction(terrain, a, q);
        const double fb = side_fraction(terrain, b, q);
        if (fa != fb) return fa < fb;
    }
    return a < b;
}

bool oracle_sees(const Terrain& terrain, std::size_t viewpoint, const TerrainPoint& q, Mode mode) {
    const double eps = terrain.eps();
    const double vx = terrain.vertex(viewpoint).x;
    if (mode == Mode::Left && q.x > vx + eps) return false;
    if (mode == Mode::Right && q.x < vx - eps) return false;
    return sees(terrain, terrain.vertex_point(viewpoint), q);
}

OracleSample oracle_at(const Terrain& terrain, const ViewpointSet& viewpoints, Metric metric, Mode mode,
                       const TerrainPoint& q) {
    OracleSample s{q, {}};
    for (std::size_t v : viewpoints) {
        if (oracle_sees(terrain, v, q, mode)) s.ranked.push_back(v);
    }
    std::sort(s.ranked.begin(), s.ranked.end(),
              [&](std::size_t a, std::size_t b) { return oracle_closer(terrain, metric, q, a, b); });
    return s;
}

std::vector<TerrainPoint> oracle_probes(const Terrain& terrain, const std::vector<TerrainPoint>& breakpoints,
                                        std::size_t samples_per_edge) {
    std::vector<double> xs;
    const auto& vs = terrain.vertices();
    for (std::size_t e = 0; e < terrain.edge_count(); ++e) {
        for (std::size_t s = 0; s < samples_per_edge; ++s) {
            const double f = (static_cast<double>(s) + 0.5) / static_cast<double>(samples_per_edge);
            xs.push_back(vs[e].x + f * (vs[e + 1].x - vs[e].x));
        }
    }
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        xs.push_back(0.5 * (breakpoints[i].x + breakpoints[i + 1].x));
    }
    for (std::size_t i = 1; i + 1 < breakpoints.size(); ++i) {
        const double x = breakpoints[i].x;
        const std::size_t e = terrain.edge_at(x);
        const double delta = 1e-4 * (vs[e + 1].x - vs[e].x);
        xs.push_back(x - delta);
        xs.push_back(x + delta);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<TerrainPoint> out;
    out.reserve(xs.size());
    for (double x : xs) {
        if (x < terrain.x_min() || x > terrain.x_max()) continue;
        out.push_back(point_at_x(terrain, x));
    }
    return out;
}

std::vector<OracleSample> oracle_map(const Terrain& terrain, const ViewpointSet& viewpoints, Metric metric,
                                     Mode mode, const std::vector<TerrainPoint>& probes) {
    std::vector<OracleSample> out;
    out.reserve(probes.size());
    for (const TerrainPoint& q : probes) out.push_back(oracle_at(terrain, viewpoints, metric, mode, q));
    return out;
}

std::vector<OracleSample> oracle_map(const Terrain& terrain, const ViewpointSet& viewpoints, Metric metric,
                                     Mode mode, std::size_t samples_per_edge) {
    return oracle_map(terrain, viewpoints, metric, mode, oracle_probes(terrain, {}, samples_per_edge));
}

std::string format_owner(const std::optional<std::size_t>& owner) {
    return owner ? std::to_string(*owner) : std::string("none");
}

std::string format_set(const IdSet& set) {
    std::string out = "{";
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(set[i]);
    }
    return out + "}";
}

namespace {

template <typename L, typename Expect, typename Format>
OracleReport compare(const IntervalMap<L>& map, const std::vector<OracleSample>& samples, double eps,
                     Expect expect, Format format) {
    OracleReport report;
    for (const OracleSample& s : samples) {
        if (map.distance_to_breakpoint(s.at.x) <= eps) {
            ++report.skipped;
            continue;
        }
        ++report.checked;
        const L want = expect(s);
        const L& got = map.label_at(s.at.x);
        if (!(want == got)) report.mismatches.push_back({s.at.x, format(want), format(got)});
    }
    return report;
}

}  // namespace

OracleReport compare_map_to_oracle(const VoronoiMap& map, const std::vector<OracleSample>& samples, double eps) {
    return compare(
        map, samples, eps, [](const OracleSample& s) { return s.owner(); }, format_owner);
}

OracleReport compare_map_to_oracle(const IntervalMap<IdSet>& map, const std::vector<OracleSample>& samples,
                                   std::size_t k, double eps) {
    return compare(
        map, samples, eps, [k](const OracleSample& s) { return s.closest(k); }, format_set);
}

OracleReport compare_map_to_oracle(const VisMap& map, const std::vector<OracleSample>& samples, double eps) {
    return compare(
        map, samples, eps, [](const OracleSample& s) { return !s.ranked.empty(); },
        [](bool b) { return std::string(b ? "visible" : "invisible"); });
}

}  // namespace terravis
