#include "terravis/bench.hpp"

#include "terravis/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace terravis {

std::size_t count_extra_breakpoints(const Terrain& terrain, const std::vector<TerrainPoint>& breakpoints) {
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < breakpoints.size(); ++i) {
        if (!terrain.vertex_index(breakpoints[i])) ++count;
    }
    return count;
}

ComplexityCounts count_complexities(const Terrain& terrain, const ViewpointSet& viewpoints, Mode mode) {
    const ColoredMap colored = compute_colvis(terrain, viewpoints, mode);
    const VoronoiMap voronoi = compute_vorvis(terrain, viewpoints, Metric::Euclidean, mode);
    ComplexityCounts c;
    c.n = terrain.size();
    c.m = viewpoints.size();
    c.k_c = c.n + count_extra_breakpoints(terrain, colored.breakpoints());
    c.k_v = c.n + count_extra_breakpoints(terrain, voronoi.breakpoints());
    return c;
}

bool check_theorem_bound(const ComplexityCounts& c) {
    const std::size_t a = c.k_c + c.m * c.m;
    const std::size_t b = 2 * c.k_c + 8 * c.m;
    // 2k_c + 8m - 4 without unsigned underflow
    return c.k_v <= a && c.k_v + 4 <= b;
}

std::size_t visible_parts(const VoronoiMap& map) {
    return static_cast<std::size_t>(
        std::count_if(map.labels().begin(), map.labels().end(), [](const auto& l) { return l.has_value(); }));
}

namespace {

// Explicit conversions keep instances identical across standard libraries
// (std::uniform_real_distribution is implementation-defined).
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

}  // namespace

Instance gen_random_terrain(const InstanceSpec& spec) {
    if (spec.m >= spec.n) {
        throw Error(ErrorCode::InvalidViewpoints, "need m < n (m = " + std::to_string(spec.m) +
                                                      ", n = " + std::to_string(spec.n) + ")");
    }
    std::mt19937_64 rng(spec.seed);
    const double lo = spec.height_min;
    const double hi = spec.height_max;
    std::vector<Point> pts;
    pts.reserve(spec.n);
    double x = 0.0;
    double walk = uniform(rng, lo, hi);
    for (std::size_t i = 0; i < spec.n; ++i) {
        if (i > 0) x += uniform(rng, spec.step_min, spec.step_max);
        walk = std::clamp(walk + uniform(rng, -0.25, 0.25) * (hi - lo), lo, hi);
        const double flat = uniform(rng, lo, hi);
        pts.push_back({x, (1.0 - spec.roughness) * flat + spec.roughness * walk});
    }

    std::vector<std::size_t> ids(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) ids[i] = i;
    for (std::size_t i = 0; i < spec.m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (spec.n - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(spec.m);

    Instance out;
    out.name = "random-" + std::to_string(spec.n) + "-" + std::to_string(spec.m) + "-" + std::to_string(spec.seed);
    out.seed = spec.seed;
    out.terrain = validate_terrain(pts);
    out.viewpoints = ViewpointSet(out.terrain, std::move(ids));
    return out;
}

namespace {

struct BowlParams {
    double steep;      // wall slope magnitude at the top viewpoint
    double curve;      // slope increase per wall edge
    double margin;     // clearance above the top bisector at the right rim
};

Instance build_bowl(std::size_t m, const BowlParams& p) {
    std::vector<Point> pts;
    std::vector<std::size_t> ids;
    const double cliff = 1e3;

    pts.push_back({-0.5, -cliff});
    pts.push_back({0.0, 0.0});  // left rim
    double slope = -p.steep - p.curve;
    for (std::size_t j = 0; j < m; ++j) {
        slope += p.curve;
        const Point last = pts.back();
        pts.push_back({last.x + 1.0, last.y + slope});
        ids.push_back(pts.size() - 1);
    }
    for (double s : {-3.0, -1.0, -0.2}) {
        const Point last = pts.back();
        pts.push_back({last.x + 1.0, last.y + s});
    }

    // Rise until clearly above the bisector of the two top viewpoints.
    const Point w1 = pts[ids[0]];
    const Point w2 = pts[ids[1]];
    auto above_top = [&](Point q) { return bisector_offset(w2, w1, q) > p.margin; };
    double rise = 0.3;
    for (int guard = 0; guard < 200 && !above_top(pts.back()); ++guard) {
        const Point last = pts.back();
        pts.push_back({last.x + 1.0, last.y + rise});
        rise *= 1.5;
    }
    const Point rim = pts.back();
    pts.push_back({rim.x + 0.5, rim.y - cliff});

    Instance out;
    out.name = "fig4b-" + std::to_string(m);
    out.terrain = validate_terrain(pts);
    out.viewpoints = ViewpointSet(out.terrain, std::move(ids));
    return out;
}

bool realizes_example(const Instance& inst) {
    const std::size_t m = inst.viewpoints.size();
    const ColoredMap colored = compute_colvis(inst.terrain, inst.viewpoints, Mode::Both);
    if (colored.size() != 3) return false;
    const VoronoiMap voronoi = compute_vorvis(inst.terrain, inst.viewpoints, Metric::Euclidean, Mode::Both);
    if (visible_parts(voronoi) != 2 * m - 1) return false;
    const ComplexityCounts c = count_complexities(inst.terrain, inst.viewpoints);
    return c.k_v == c.k_c + 2 * m - 2;
}

}  // namespace

Instance gen_fig4b(std::size_t m) {
    if (m < 2) throw Error(ErrorCode::ConstructionFailed, "the example needs m >= 2");
    for (double steep : {8.0, 12.0, 6.0, 16.0}) {
        for (double curve : {0.05, 0.02, 0.1}) {
            for (double margin : {0.5, 2.0}) {
                Instance inst = build_bowl(m, {steep, curve, margin});
                if (realizes_example(inst)) return inst;
            }
        }
    }
    throw Error(ErrorCode::ConstructionFailed, "no parameters realize the example for m = " + std::to_string(m));
}

}  // namespace terravis
