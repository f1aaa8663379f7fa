#include "terravis/error.hpp"
#include "terravis/io.hpp"
#include "terravis/svg.hpp"

#include <doctest.h>

#include <cmath>

using namespace terravis;

TEST_CASE("instance documents round-trip") {
    InstanceSpec spec;
    spec.seed = 17;
    spec.n = 30;
    spec.m = 4;
    const Instance a = gen_random_terrain(spec);
    const std::string text = dump_instance(a);
    const Instance b = parse_instance(text);
    CHECK(b.terrain.vertices() == a.terrain.vertices());  // bit-exact
    CHECK(b.viewpoints.indices() == a.viewpoints.indices());
    CHECK(b.name == a.name);
    CHECK(b.seed == a.seed);
    CHECK(dump_instance(b) == text);

    const Instance c = parse_instance(R"({"vertices": [[-1, 0.30000000000000004], [1e-3, 2]]})");
    const Instance d = parse_instance(dump_instance(c));
    CHECK(d.terrain.vertex(0).y == 0.1 + 0.2);
    CHECK(d.terrain.vertex(1).x == 1e-3);
}

TEST_CASE("instance document errors") {
    auto code_of = [](const char* text) {
        try {
            parse_instance(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ConstructionFailed;  // no error
    };
    CHECK(code_of(R"({"vertices": [[0, 0], [4, 0])") == ErrorCode::Parse);
    CHECK(code_of(R"({"vertices": [[0, 0], [4]], "viewpoints": []})") == ErrorCode::Parse);
    CHECK(code_of(R"({"vertices": "no"})") == ErrorCode::Parse);
    CHECK(code_of(R"([1, 2])") == ErrorCode::Parse);
    CHECK(code_of(R"({"vertices": [[0, 0], [0, 5]]})") == ErrorCode::NonMonotone);
    CHECK(code_of(R"({"vertices": [[0, 0], [1, 5]], "viewpoints": [4]})") == ErrorCode::InvalidViewpoints);
}

TEST_CASE("map documents") {
    const Instance inst = parse_instance(R"({"name": "flat", "vertices": [[0, 0], [4, 0], [6, 0], [10, 0]],
                                             "viewpoints": [1, 2]})");
    MapFile mf = to_map_file(compute_vorvis(inst.terrain, inst.viewpoints, Metric::Euclidean, Mode::Both));
    mf.instance = inst.name;
    const std::string text = dump_map_file(mf);
    const MapFile back = parse_map_file(text);
    CHECK(dump_map_file(back) == text);
    REQUIRE(back.intervals.size() == 2);
    CHECK(back.intervals[0].x_right == 5);
    CHECK(std::get<std::optional<std::size_t>>(back.intervals[0].label) == std::optional<std::size_t>(1));

    const auto bps = map_breakpoints(inst.terrain, back);
    CHECK(bps.size() == 3);
    CHECK(bps[1].x == 5);

    MapFile gap = back;
    gap.intervals[1].x_left = 6;
    CHECK_THROWS_AS(map_breakpoints(inst.terrain, gap), Error);

    MapFile colored = to_map_file(compute_colvis(inst.terrain, inst.viewpoints, Mode::Both).materialize());
    const MapFile colored_back = parse_map_file(dump_map_file(colored));
    CHECK(std::get<IdSet>(colored_back.intervals[0].label) == IdSet{1, 2});

    MapFile vis = to_map_file(compute_vis(inst.terrain, inst.viewpoints, Mode::Left));
    vis.mode = Mode::Left;
    const MapFile vis_back = parse_map_file(dump_map_file(vis));
    CHECK(vis_back.mode == Mode::Left);
    CHECK(std::get<bool>(vis_back.intervals[0].label));

    CHECK_THROWS_AS(parse_map_file(R"({"map": "nope", "intervals": []})"), Error);
}

TEST_CASE("svg rendering") {
    const Instance inst = parse_instance(R"({"vertices": [[0, 0], [5, 5], [10, 0]], "viewpoints": [0, 2]})");
    const MapFile mf = to_map_file(compute_vorvis(inst.terrain, inst.viewpoints, Metric::Euclidean, Mode::Both));
    const std::string svg = render_svg(inst, mf);
    CHECK(svg.find("viewBox=\"0 0 1000 400\"") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("<line") != std::string::npos);  // breakpoint tick at the apex
    CHECK(render_svg(inst, mf) == svg);
    // Terrain is drawn upright: the apex has the smallest SVG y.
    CHECK(svg.find("500.00,20.00") != std::string::npos);
}
