// terravis: visibility and Voronoi-visibility maps of 1.5D terrains.
//
// Exit codes: 0 success, 1 invalid input / failed check, 2 unreadable or
// malformed document.

#include "terravis/bench.hpp"
#include "terravis/error.hpp"
#include "terravis/general_position.hpp"
#include "terravis/io.hpp"
#include "terravis/oracle.hpp"
#include "terravis/svg.hpp"
#include "terravis/viewshed.hpp"
#include "terravis/vorvis.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

using namespace terravis;

namespace {

double epsilon_from_env() {
    if (const char* s = std::getenv("TERRAVIS_EPS")) {
        char* end = nullptr;
        const double v = std::strtod(s, &end);
        if (end != s && v >= 0.0) return v;
        std::cerr << "warning: ignoring TERRAVIS_EPS=" << s << "\n";
    }
    return kDefaultEpsilon;
}

int exit_code(const Error& e) { return e.code() == ErrorCode::Parse ? 2 : 1; }

void print_general_position(const GeneralPositionReport& r) {
    if (r.clean()) {
        std::cout << "general position: ok\n";
        return;
    }
    std::cout << "warning: general position violated\n";
    for (const auto& t : r.collinear_triples) {
        std::cout << "  collinear vertices " << t[0] << " " << t[1] << " " << t[2] << "\n";
    }
    for (const auto& e : r.edge_on_bisector) {
        std::cout << "  edge " << e.edge << " lies on the bisector of " << e.i << " and " << e.j << "\n";
    }
    for (const auto& e : r.triple_equidistant) {
        std::cout << "  point (" << e.point.x << ", " << e.point.y << ") equidistant from " << e.i << " " << e.j
                  << " " << e.k << "\n";
    }
}

void print_counts(const ComplexityCounts& c) {
    std::cout << "n=" << c.n << " m=" << c.m << " k_c=" << c.k_c << " k_v=" << c.k_v
              << " k_v-k_c=" << static_cast<long>(c.k_v) - static_cast<long>(c.k_c) << "\n";
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Parse, "cannot write " + path);
    out << text;
}

struct MapOptions {
    std::string map = "vorvis";
    std::string metric = "euclidean";
    std::string mode = "both";
    std::size_t k = 0;
};

MapFile build_map(const Instance& inst, MapKind kind, Metric metric, Mode mode, std::size_t k) {
    MapFile out;
    switch (kind) {
        case MapKind::Vis: out = to_map_file(compute_vis(inst.terrain, inst.viewpoints, mode)); break;
        case MapKind::ColVis:
            out = to_map_file(compute_colvis(inst.terrain, inst.viewpoints, mode).materialize());
            break;
        case MapKind::VorVis: out = to_map_file(compute_vorvis(inst.terrain, inst.viewpoints, metric, mode)); break;
        case MapKind::KVorVis:
            out = to_map_file(compute_kvorvis(inst.terrain, inst.viewpoints, k, metric, mode).materialize());
            out.k = k;
            break;
    }
    out.kind = kind;
    out.metric = metric;
    out.mode = mode;
    out.instance = inst.name;
    return out;
}

// Oracle check of a map document against its instance.
bool check_map_file(const Instance& inst, const MapFile& map) {
    const double eps = inst.terrain.eps();
    const auto bps = map_breakpoints(inst.terrain, map);
    const auto probes = oracle_probes(inst.terrain, bps);
    const auto samples = oracle_map(inst.terrain, inst.viewpoints, map.metric, map.mode, probes);
    OracleReport report;
    auto labels = [&](auto tag) {
        using L = decltype(tag);
        std::vector<L> out;
        for (const MapEntry& e : map.intervals) {
            const L* l = std::get_if<L>(&e.label);
            if (!l) throw Error(ErrorCode::Parse, "interval label does not match the map kind");
            out.push_back(*l);
        }
        return IntervalMap<L>(bps, std::move(out));
    };
    switch (map.kind) {
        case MapKind::Vis: report = compare_map_to_oracle(labels(bool{}), samples, eps); break;
        case MapKind::VorVis:
            report = compare_map_to_oracle(labels(std::optional<std::size_t>{}), samples, eps);
            break;
        case MapKind::ColVis:
            report = compare_map_to_oracle(labels(IdSet{}), samples, inst.viewpoints.size(), eps);
            break;
        case MapKind::KVorVis:
            if (!map.k) throw Error(ErrorCode::Parse, "kvorvis map without k");
            report = compare_map_to_oracle(labels(IdSet{}), samples, *map.k, eps);
            break;
    }
    std::cout << "map file: " << report.checked << " samples checked, " << report.mismatches.size()
              << " mismatches\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(report.mismatches.size(), 5); ++i) {
        const Mismatch& mm = report.mismatches[i];
        std::cout << "  x=" << mm.x << " expected " << mm.expected << " got " << mm.got << "\n";
    }
    return report.ok();
}

// Full self-check of one instance; prints a summary, returns pass/fail.
bool verify_instance(const Instance& inst, Metric metric, Mode mode, std::size_t k, bool quiet) {
    const Terrain& t = inst.terrain;
    const double eps = t.eps();
    bool ok = true;
    auto fail = [&](const std::string& what) {
        std::cout << "FAIL " << (inst.name.empty() ? "instance" : inst.name) << ": " << what << "\n";
        ok = false;
    };

    const ColoredMap colored = compute_colvis(t, inst.viewpoints, mode);
    if (!colored.check_invariants(t)) fail("colored map invariants");

    OpCounters counters;
    std::vector<TerrainPoint> bps;
    OracleReport report;
    if (k > 0) {
        const KOrderMap map = compute_kvorvis(t, inst.viewpoints, k, metric, mode, &counters);
        if (!map.check_invariants(t)) fail("k-order map invariants");
        const auto labels = map.materialize();
        const auto samples = oracle_map(t, inst.viewpoints, metric, mode, oracle_probes(t, map.breakpoints()));
        report = compare_map_to_oracle(labels, samples, k, eps);
    } else {
        const VoronoiMap map = compute_vorvis(t, inst.viewpoints, metric, mode, &counters);
        if (!map.is_partition_of(t)) fail("voronoi map is not a partition");
        const auto samples = oracle_map(t, inst.viewpoints, metric, mode, oracle_probes(t, map.breakpoints()));
        report = compare_map_to_oracle(map, samples, eps);
    }
    if (!report.ok()) {
        fail(std::to_string(report.mismatches.size()) + " oracle mismatches (first at x=" +
             std::to_string(report.mismatches.front().x) + ": expected " + report.mismatches.front().expected +
             ", got " + report.mismatches.front().got + ")");
    }

    if (metric == Metric::Euclidean) {
        const ComplexityCounts c = count_complexities(t, inst.viewpoints, mode);
        if (!check_theorem_bound(c)) fail("complexity bound violated");
        if (!quiet) print_counts(c);
    }
    if (!quiet) {
        std::cout << "samples=" << report.checked << " tree_ops=" << counters.tree_ops
                  << " events_processed=" << counters.events_processed << " ray_queries=" << counters.ray_queries
                  << "\n";
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Visibility and Voronoi-visibility maps of 1.5D terrains"};
    app.require_subcommand(1);
    const double eps = epsilon_from_env();

    std::string path;

    auto* validate = app.add_subcommand("validate", "Check an instance file");
    validate->add_option("path", path, "Instance file")->required();

    MapOptions mo;
    std::string out_path, svg_path;
    auto* map = app.add_subcommand("map", "Compute a map");
    map->add_option("path", path, "Instance file")->required();
    map->add_option("--map", mo.map, "vis | colvis | vorvis | kvorvis")
        ->check(CLI::IsMember({"vis", "colvis", "vorvis", "kvorvis"}));
    map->add_option("--metric", mo.metric, "euclidean | geodesic | link")
        ->check(CLI::IsMember({"euclidean", "geodesic", "link"}));
    map->add_option("--mode", mo.mode, "both | left | right")->check(CLI::IsMember({"both", "left", "right"}));
    map->add_option("-k", mo.k, "Order of a kvorvis map");
    map->add_option("--out", out_path, "Map file (default: stdout)");
    map->add_option("--svg", svg_path, "Also render an SVG");

    auto* rstar = app.add_subcommand("rstar", "Minimum visibility range");
    rstar->add_option("path", path, "Instance file")->required();

    std::vector<std::uint64_t> random_args;
    std::string map_file;
    auto* verify = app.add_subcommand("verify", "Check maps against the brute-force oracle");
    verify->add_option("path", path, "Instance file");
    verify->add_option("--random", random_args, "SEED COUNT")->expected(2);
    verify->add_option("--metric", mo.metric)->check(CLI::IsMember({"euclidean", "geodesic", "link"}));
    verify->add_option("--mode", mo.mode)->check(CLI::IsMember({"both", "left", "right"}));
    verify->add_option("-k", mo.k, "Verify the k-th order map instead");
    verify->add_option("--map-file", map_file, "Verify this map document against the instance");

    std::vector<std::uint64_t> gen_random;
    std::size_t gen_fig = 0;
    auto* gen = app.add_subcommand("gen", "Generate an instance");
    auto* gen_r = gen->add_option("--random", gen_random, "N M SEED")->expected(3);
    auto* gen_f = gen->add_option("--fig4b", gen_fig, "Lower-bound example with M viewpoints");
    gen_r->excludes(gen_f);
    gen->add_option("--out", out_path, "Output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            const Instance inst = read_instance(path, eps);
            std::cout << "valid: n=" << inst.terrain.size() << " m=" << inst.viewpoints.size() << "\n";
            print_general_position(check_general_position(inst.terrain, inst.viewpoints));
            return 0;
        }

        if (*map) {
            const Instance inst = read_instance(path, eps);
            const MapKind kind = *parse_map_kind(mo.map);
            if ((kind == MapKind::KVorVis) != (mo.k > 0)) {
                std::cerr << "error: -k is required for, and only for, --map kvorvis\n";
                return 1;
            }
            const MapFile mf = build_map(inst, kind, *parse_metric(mo.metric), *parse_mode(mo.mode), mo.k);
            write_text(out_path, dump_map_file(mf));
            if (!svg_path.empty()) write_text(svg_path, render_svg(inst, mf));
            return 0;
        }

        if (*rstar) {
            const Instance inst = read_instance(path, eps);
            const RStar r = compute_rstar(inst.terrain, inst.viewpoints);
            std::printf("%.17g\n", r.value);
            std::printf("viewpoint %zu point (%.17g, %.17g)\n", r.viewpoint, r.point.x, r.point.y);
            return 0;
        }

        if (*verify) {
            const Metric metric = *parse_metric(mo.metric);
            const Mode mode = *parse_mode(mo.mode);
            if (!random_args.empty()) {
                const std::uint64_t first = random_args[0];
                const std::uint64_t count = random_args[1];
                std::size_t failed = 0;
                for (std::uint64_t s = first; s < first + count; ++s) {
                    InstanceSpec spec;
                    spec.seed = s;
                    spec.n = 10 + static_cast<std::size_t>(s % 51);
                    spec.m = 1 + static_cast<std::size_t>(s % 8);
                    const Instance inst = gen_random_terrain(spec);
                    const std::size_t k = std::min(mo.k, inst.viewpoints.size());
                    if (!verify_instance(inst, metric, mode, k, true)) {
                        std::cout << "reproduce: terravis gen --random " << spec.n << " " << spec.m << " " << s
                                  << "\n";
                        ++failed;
                    }
                }
                std::cout << count - failed << "/" << count << " instances passed\n";
                return failed == 0 ? 0 : 1;
            }
            if (path.empty()) {
                std::cerr << "error: give an instance path or --random SEED COUNT\n";
                return 1;
            }
            const Instance inst = read_instance(path, eps);
            if (!map_file.empty()) return check_map_file(inst, read_map_file(map_file)) ? 0 : 1;
            const bool ok = verify_instance(inst, metric, mode, mo.k, false);
            std::cout << (ok ? "ok" : "FAILED") << "\n";
            return ok ? 0 : 1;
        }

        if (*gen) {
            Instance inst;
            if (!gen_random.empty()) {
                InstanceSpec spec;
                spec.n = gen_random[0];
                spec.m = gen_random[1];
                spec.seed = gen_random[2];
                inst = gen_random_terrain(spec);
            } else if (gen_fig > 0) {
                inst = gen_fig4b(gen_fig);
            } else {
                std::cerr << "error: give --random N M SEED or --fig4b M\n";
                return 1;
            }
            write_text(out_path, dump_instance(inst));
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code(e);
    }
    return 0;
}
