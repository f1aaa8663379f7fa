#include "terravis/bench.hpp"
#include "terravis/viewshed.hpp"

#include <doctest.h>

using namespace terravis;

namespace {

Terrain flat() { return validate_terrain(std::vector<Point>{{0, 0}, {4, 0}, {6, 0}, {10, 0}}); }
Terrain peak() { return validate_terrain(std::vector<Point>{{0, 0}, {5, 5}, {10, 0}}); }
Terrain two_peak() { return validate_terrain(std::vector<Point>{{0, 0}, {1, 2}, {2, 0}, {3, 2}, {4, 0}}); }

// Visible set at x by direct segment tests.
IdSet naive_visible(const Terrain& t, const ViewpointSet& p, double x, Mode mode) {
    IdSet out;
    const TerrainPoint q = point_at_x(t, x);
    for (std::size_t v : p) {
        const double vx = t.vertex(v).x;
        if (mode == Mode::Left && x > vx) continue;
        if (mode == Mode::Right && x < vx) continue;
        if (sees(t, t.vertex_point(v), q)) out.push_back(v);
    }
    return out;
}

std::vector<double> sample_xs(const Terrain& t, int per_edge) {
    std::vector<double> xs;
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        for (int s = 0; s < per_edge; ++s) {
            xs.push_back(t.vertex(e).x + (s + 0.5) / per_edge * (t.vertex(e + 1).x - t.vertex(e).x));
        }
    }
    return xs;
}

}  // namespace

TEST_CASE("viewshed") {
    const Terrain p = peak();
    auto a = viewshed(p, 0, Mode::Both);
    REQUIRE(a.size() == 1);
    CHECK(a[0].lo.x == 0);
    CHECK(a[0].hi.x == 5);

    auto b = viewshed(p, 1, Mode::Both);
    REQUIRE(b.size() == 1);
    CHECK(b[0].lo.x == 0);
    CHECK(b[0].hi.x == 10);

    const Terrain f = flat();
    auto c = viewshed(f, 1, Mode::Left);
    REQUIRE(c.size() == 1);
    CHECK(c[0].lo.x == 0);
    CHECK(c[0].hi.x == 4);

    // A viewpoint always sees itself, even facing a wall.
    auto d = viewshed(p, 0, Mode::Left);
    REQUIRE(d.size() == 1);
    CHECK(d[0].lo.x == 0);
    CHECK(d[0].hi.x == 0);
}

TEST_CASE("compute_vis") {
    const Terrain p = peak();
    const VisMap whole = compute_vis(p, ViewpointSet(p, {0, 2}), Mode::Both);
    REQUIRE(whole.size() == 1);
    CHECK(whole.label(0));

    // From v0 the first peak hides everything beyond x = 1.
    const Terrain t = two_peak();
    const VisMap m = compute_vis(t, ViewpointSet(t, {0}), Mode::Both);
    REQUIRE(m.size() == 2);
    CHECK(m.label(0));
    CHECK(m.right(0).x == 1);
    CHECK_FALSE(m.label(1));
    for (double x : sample_xs(t, 20)) CHECK(m.label_at(x) == !naive_visible(t, ViewpointSet(t, {0}), x, Mode::Both).empty());

    const VisMap none = compute_vis(p, ViewpointSet(), Mode::Both);
    REQUIRE(none.size() == 1);
    CHECK_FALSE(none.label(0));
}

TEST_CASE("compute_colvis") {
    const Terrain f = flat();
    const ColoredMap a = compute_colvis(f, ViewpointSet(f, {1, 2}), Mode::Both);
    CHECK(a.size() == 1);
    CHECK(a.initial() == IdSet{1, 2});

    const Terrain p = peak();
    const ColoredMap b = compute_colvis(p, ViewpointSet(p, {0, 2}), Mode::Both);
    REQUIRE(b.size() == 2);
    CHECK(b.initial() == IdSet{0});
    CHECK(b.breakpoints()[1].x == 5);
    CHECK(b.deltas()[0].gained == IdSet{2});
    CHECK(b.deltas()[0].lost == IdSet{0});

    const Terrain t = two_peak();
    const ViewpointSet vp(t, {0, 4});
    const auto labels = compute_colvis(t, vp, Mode::Both).materialize();
    for (double x : sample_xs(t, 20)) CHECK(labels.label_at(x) == naive_visible(t, vp, x, Mode::Both));
}

TEST_CASE("random instances: oracle, replay, and Vis == collapsed ColVis") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        InstanceSpec spec;
        spec.seed = seed;
        spec.n = 10 + seed % 30;
        spec.m = 1 + seed % 6;
        const Instance inst = gen_random_terrain(spec);
        const Terrain& t = inst.terrain;
        for (Mode mode : {Mode::Both, Mode::Left, Mode::Right}) {
            const ColoredMap colored = compute_colvis(t, inst.viewpoints, mode);
            REQUIRE(colored.check_invariants(t));
            const auto labels = colored.materialize();
            CHECK(labels.is_partition_of(t));
            for (std::size_t i = 0; i < labels.size(); ++i) {
                const double mid = 0.5 * (labels.left(i).x + labels.right(i).x);
                CHECK(labels.label(i) == naive_visible(t, inst.viewpoints, mid, mode));
            }
            const VisMap vis = compute_vis(t, inst.viewpoints, mode);
            const VisMap collapsed = labels.transform([](const IdSet& s) { return !s.empty(); });
            REQUIRE(vis.size() == collapsed.size());
            for (std::size_t i = 0; i < vis.size(); ++i) {
                CHECK(vis.label(i) == collapsed.label(i));
                CHECK(vis.right(i).x == doctest::Approx(collapsed.right(i).x).epsilon(1e-12));
            }
            // Closed boundaries: every region endpoint with a visible side is
            // seen by some viewpoint.
            for (std::size_t i = 0; i < labels.size(); ++i) {
                if (labels.label(i).empty()) continue;
                CHECK_FALSE(naive_visible(t, inst.viewpoints, labels.left(i).x, mode).empty());
            }
        }
    }
}

TEST_CASE("viewshed modes clip at the viewpoint") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        InstanceSpec spec;
        spec.seed = seed;
        spec.n = 25;
        spec.m = 3;
        const Instance inst = gen_random_terrain(spec);
        for (std::size_t v : inst.viewpoints) {
            const double vx = inst.terrain.vertex(v).x;
            for (const Interval& iv : viewshed(inst.terrain, v, Mode::Left)) CHECK(iv.hi.x <= vx);
            for (const Interval& iv : viewshed(inst.terrain, v, Mode::Right)) CHECK(iv.lo.x >= vx);
        }
    }
}
