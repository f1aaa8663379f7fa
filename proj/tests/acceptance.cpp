// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "terravis/bench.hpp"
#include "terravis/general_position.hpp"
#include "terravis/oracle.hpp"
#include "terravis/viewshed.hpp"
#include "terravis/vorvis.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

using namespace terravis;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& title, const std::string& detail) {
    std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

// Instances of criterion 1: n <= 60, m <= 8.
Instance base_instance(std::uint64_t k) {
    InstanceSpec spec;
    spec.seed = k;
    spec.n = 10 + static_cast<std::size_t>(k % 51);
    spec.m = 1 + static_cast<std::size_t>(k % 8);
    return gen_random_terrain(spec);
}

// Instances of criterion 2 use a disjoint seed range.
Instance variant_instance(std::uint64_t k) { return base_instance(1000 + k); }

struct OracleTally {
    std::size_t instances = 0;
    std::size_t samples = 0;
    std::size_t mismatches = 0;
    std::string first;
};

void oracle_check(OracleTally& tally, const Instance& inst, Metric metric, Mode mode) {
    const VoronoiMap map = compute_vorvis(inst.terrain, inst.viewpoints, metric, mode);
    ++tally.instances;
    if (!map.is_partition_of(inst.terrain)) {
        ++tally.mismatches;
        if (tally.first.empty()) tally.first = inst.name + " is not a partition";
        return;
    }
    const auto samples = oracle_map(inst.terrain, inst.viewpoints, metric, mode,
                                    oracle_probes(inst.terrain, map.breakpoints(), 20));
    const OracleReport r = compare_map_to_oracle(map, samples, inst.terrain.eps());
    tally.samples += r.checked;
    tally.mismatches += r.mismatches.size();
    if (!r.ok() && tally.first.empty()) {
        std::ostringstream s;
        s << inst.name << " " << to_string(metric) << "/" << to_string(mode) << " x=" << r.mismatches[0].x
          << " expected " << r.mismatches[0].expected << " got " << r.mismatches[0].got;
        tally.first = s.str();
    }
}

std::string tally_text(const OracleTally& t) {
    std::ostringstream s;
    s << t.instances << " instances, " << t.samples << " samples, " << t.mismatches << " mismatches";
    if (!t.first.empty()) s << " (first: " << t.first << ")";
    return s.str();
}

// Same breakpoints (within eps) and labels.
template <typename A, typename B>
bool same_partition(const IntervalMap<A>& a, const IntervalMap<B>& b, double eps) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.breakpoints().size(); ++i) {
        if (std::abs(a.breakpoints()[i].x - b.breakpoints()[i].x) > eps) return false;
    }
    return a.labels() == b.labels();
}

// Is x covered by a viewshed clipped to radius r?
bool covered(const Instance& inst, const TerrainPoint& q, double r) {
    for (std::size_t v : inst.viewpoints) {
        if (distance(inst.terrain.vertex(v), q.point()) <= r && sees(inst.terrain, inst.terrain.vertex_point(v), q)) {
            return true;
        }
    }
    return false;
}

bool visible_at_all(const Instance& inst, const TerrainPoint& q) { return covered(inst, q, INFINITY); }

Terrain flat() { return validate_terrain(std::vector<Point>{{0, 0}, {4, 0}, {6, 0}, {10, 0}}); }
Terrain peak() { return validate_terrain(std::vector<Point>{{0, 0}, {5, 5}, {10, 0}}); }

}  // namespace

int main() {
    constexpr std::size_t kBase = 200;
    constexpr std::size_t kVariant = 100;
    std::vector<Instance> base;
    for (std::uint64_t k = 0; k < kBase; ++k) base.push_back(base_instance(k));
    std::vector<Instance> variants;
    for (std::uint64_t k = 0; k < kVariant; ++k) variants.push_back(variant_instance(k));

    // 1. Euclidean, both directions.
    {
        const auto t0 = Clock::now();
        OracleTally tally;
        for (const Instance& inst : base) oracle_check(tally, inst, Metric::Euclidean, Mode::Both);
        const double secs = seconds_since(t0);
        char buf[64];
        std::snprintf(buf, sizeof buf, ", %.2f s (limit 60 s)", secs);
        report(1, tally.mismatches == 0 && tally.instances == kBase && secs < 60.0,
               "oracle equivalence, euclidean/both", tally_text(tally) + buf);
    }

    // 2. Other modes and metrics.
    {
        OracleTally tally;
        std::size_t runs = 0;
        for (Metric metric : {Metric::Euclidean, Metric::Geodesic, Metric::Link}) {
            for (Mode mode : {Mode::Both, Mode::Left, Mode::Right}) {
                if (metric == Metric::Euclidean && mode == Mode::Both) continue;
                for (const Instance& inst : variants) oracle_check(tally, inst, metric, mode);
                ++runs;
            }
        }
        report(2, tally.mismatches == 0, "oracle equivalence, left/right modes and geodesic/link metrics",
               std::to_string(runs) + " metric/mode combinations x " + std::to_string(kVariant) + ": " +
                   tally_text(tally));
    }

    // 3. Complexity bound.
    {
        std::size_t checked = 0, violated = 0;
        std::string first;
        auto check = [&](const Instance& inst, Mode mode) {
            const ComplexityCounts c = count_complexities(inst.terrain, inst.viewpoints, mode);
            ++checked;
            if (!check_theorem_bound(c)) {
                ++violated;
                if (first.empty()) {
                    first = inst.name + " k_c=" + std::to_string(c.k_c) + " k_v=" + std::to_string(c.k_v);
                }
            }
        };
        for (const Instance& inst : base) check(inst, Mode::Both);
        for (const Instance& inst : variants) {
            for (Mode mode : {Mode::Both, Mode::Left, Mode::Right}) check(inst, mode);
        }
        for (std::size_t m = 2; m <= 8; ++m) check(gen_fig4b(m), Mode::Both);
        report(3, violated == 0, "k_v <= min(k_c + m^2, 2k_c + 8m - 4)",
               std::to_string(checked) + " instance/mode runs (incl. lower-bound family m=2..8), " +
                   std::to_string(violated) + " violations" + (first.empty() ? "" : " (first: " + first + ")"));
    }

    // 4. Lower-bound family.
    {
        bool ok = true;
        std::ostringstream s;
        for (std::size_t m = 2; m <= 8; ++m) {
            const Instance inst = gen_fig4b(m);
            const std::size_t regions = compute_colvis(inst.terrain, inst.viewpoints, Mode::Both).size();
            const std::size_t parts =
                visible_parts(compute_vorvis(inst.terrain, inst.viewpoints, Metric::Euclidean, Mode::Both));
            const ComplexityCounts c = count_complexities(inst.terrain, inst.viewpoints);
            const long gap = static_cast<long>(c.k_v) - static_cast<long>(c.k_c);
            const bool good = regions == 3 && parts == 2 * m - 1 && gap == static_cast<long>(2 * m - 2);
            ok = ok && good;
            s << (m > 2 ? "; " : "") << "m=" << m << ": regions=" << regions << " parts=" << parts
              << " k_v-k_c=" << gap;
        }
        report(4, ok, "lower-bound family: 3 colored regions, 2m-1 parts, k_v - k_c = 2m - 2", s.str());
    }

    // 5. k-order consistency.
    {
        std::size_t k1_bad = 0, km_bad = 0;
        for (const Instance& inst : base) {
            const double eps = inst.terrain.eps();
            const auto k1 = compute_kvorvis(inst.terrain, inst.viewpoints, 1).materialize().merged();
            const auto v = compute_vorvis(inst.terrain, inst.viewpoints, Metric::Euclidean, Mode::Both);
            const auto v_sets =
                v.transform([](const std::optional<std::size_t>& o) { return o ? IdSet{*o} : IdSet{}; });
            if (!same_partition(k1, v_sets, eps)) ++k1_bad;
            const auto km =
                compute_kvorvis(inst.terrain, inst.viewpoints, inst.viewpoints.size()).materialize().merged();
            const auto colored = compute_colvis(inst.terrain, inst.viewpoints, Mode::Both).materialize();
            if (!same_partition(km, colored, eps)) ++km_bad;
        }
        report(5, k1_bad == 0 && km_bad == 0, "k-order consistency (k=1 vs VorVis, k=m vs ColVis)",
               std::to_string(base.size()) + " instances, " + std::to_string(k1_bad) + " k=1 differences, " +
                   std::to_string(km_bad) + " k=m differences");
    }

    // 6. r*.
    {
        std::size_t at_bad = 0, below_bad = 0, positive = 0;
        for (const Instance& inst : base) {
            const RStar r = compute_rstar(inst.terrain, inst.viewpoints);
            const VoronoiMap v = compute_vorvis(inst.terrain, inst.viewpoints, Metric::Euclidean, Mode::Both);
            auto probes = oracle_probes(inst.terrain, v.breakpoints(), 20);
            probes.push_back(r.point);
            bool equal_at = true;
            for (const TerrainPoint& q : probes) {
                if (covered(inst, q, r.value) != visible_at_all(inst, q)) equal_at = false;
            }
            if (!equal_at) ++at_bad;
            if (r.value > 0) {
                ++positive;
                const double shrunk = (1 - 1e-3) * r.value;
                bool differs = false;
                for (const TerrainPoint& q : probes) {
                    if (covered(inst, q, shrunk) != visible_at_all(inst, q)) differs = true;
                }
                if (!differs) ++below_bad;
            }
        }
        const Terrain f = flat();
        const Terrain p = peak();
        const double r1 = compute_rstar(f, ViewpointSet(f, {1})).value;
        const double r2 = compute_rstar(f, ViewpointSet(f, {1, 2})).value;
        const double r3 = compute_rstar(p, ViewpointSet(p, {1})).value;
        const bool exact = std::abs(r1 - 6) <= 1e-9 && std::abs(r2 - 4) <= 1e-9 && std::abs(r3 - std::sqrt(50.0)) <= 1e-9;
        char buf[160];
        std::snprintf(buf, sizeof buf, "; canonical r* = %.17g, %.17g, %.17g (want 6, 4, sqrt(50))", r1, r2, r3);
        report(6, at_bad == 0 && below_bad == 0 && exact, "r* minimality and canonical values",
               std::to_string(base.size()) + " instances: " + std::to_string(at_bad) +
                   " differ at r*, " + std::to_string(below_bad) + "/" + std::to_string(positive) +
                   " unchanged at 0.999 r*" + buf);
    }

    // 7. Canonical goldens.
    {
        const Terrain f = flat();
        const VoronoiMap a = compute_vorvis(f, ViewpointSet(f, {1, 2}), Metric::Euclidean, Mode::Both);
        const Terrain p = peak();
        const VoronoiMap b = compute_vorvis(p, ViewpointSet(p, {0, 2}), Metric::Euclidean, Mode::Both);
        const bool flat_ok = a.size() == 2 && std::abs(a.right(0).x - 5) <= 1e-9;
        const bool peak_ok = b.size() == 2 && p.vertex_index(b.right(0)) == std::optional<std::size_t>(1);
        char buf[160];
        std::snprintf(buf, sizeof buf, "flat breakpoint x=%.17g; peak breakpoint (%.17g, %.17g)",
                      a.size() == 2 ? a.right(0).x : NAN, b.size() == 2 ? b.right(0).x : NAN,
                      b.size() == 2 ? b.right(0).y : NAN);
        report(7, flat_ok && peak_ok, "canonical goldens", buf);
    }

    // 8. Operation counts.
    {
        std::size_t tree_bad = 0, event_bad = 0;
        double worst_tree = 0, worst_events = 0;
        for (const Instance& inst : base) {
            OpCounters c;
            compute_vorvis(inst.terrain, inst.viewpoints, Metric::Euclidean, Mode::Both, &c);
            const ComplexityCounts k = count_complexities(inst.terrain, inst.viewpoints);
            const double tree_cap = 4.0 * static_cast<double>(k.k_c + k.m * k.m + k.n);
            const double event_cap = static_cast<double>(k.k_c + k.m * k.m + 1);
            if (c.tree_ops > tree_cap) ++tree_bad;
            if (c.events_processed > event_cap) ++event_bad;
            worst_tree = std::max(worst_tree, static_cast<double>(c.tree_ops) / tree_cap);
            worst_events = std::max(worst_events, static_cast<double>(c.events_processed) / event_cap);
        }
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "%zu instances: %zu over tree_ops cap, %zu over events cap (worst ratios %.3f, %.3f)",
                      base.size(), tree_bad, event_bad, worst_tree, worst_events);
        report(8, tree_bad == 0 && event_bad == 0, "operation counts", buf);
    }

    // 9. Bisector lemma and order claim.
    {
        constexpr std::size_t kTarget = 10000;
        std::size_t lemma_checks = 0, lemma_bad = 0;
        for (std::uint64_t k = 0; lemma_checks < kTarget && k < 100000; ++k) {
            InstanceSpec spec;
            spec.seed = 50000 + k;
            spec.n = 30;
            spec.m = 5;
            const Instance inst = gen_random_terrain(spec);
            const Terrain& t = inst.terrain;
            for (std::size_t i : inst.viewpoints) {
                for (std::size_t j : inst.viewpoints) {
                    if (!(t.vertex(i).y < t.vertex(j).y)) continue;
                    for (const TerrainPoint& q : bisector_crossings(t, i, j)) {
                        const bool right = q.x > t.vertex(i).x;
                        const double end = right ? t.x_max() : t.x_min();
                        for (int s = 1; s <= 16; ++s) {
                            const double x = q.x + (end - q.x) * s / 16.0;
                            if (std::abs(x - q.x) <= 1e-6) continue;
                            const TerrainPoint r = point_at_x(t, x);
                            if (!sees(t, t.vertex_point(i), r)) continue;
                            ++lemma_checks;
                            if (!(distance(t.vertex(j), r.point()) < distance(t.vertex(i), r.point()))) ++lemma_bad;
                        }
                    }
                }
            }
        }

        std::size_t order_checks = 0, order_bad = 0;
        std::mt19937_64 rng(2024);
        for (std::uint64_t k = 0; order_checks < kTarget && k < 100000; ++k) {
            InstanceSpec spec;
            spec.seed = 90000 + k;
            spec.n = 20;
            spec.m = 1;
            spec.roughness = 1.0;
            const Terrain t = gen_random_terrain(spec).terrain;
            std::uniform_real_distribution<double> ux(t.x_min(), t.x_max());
            for (int trial = 0; trial < 200; ++trial) {
                double xs[4] = {ux(rng), ux(rng), ux(rng), ux(rng)};
                std::sort(xs, xs + 4);
                if (!(xs[0] < xs[1] && xs[1] < xs[2] && xs[2] < xs[3])) continue;
                const TerrainPoint a = point_at_x(t, xs[0]), b = point_at_x(t, xs[1]);
                const TerrainPoint c = point_at_x(t, xs[2]), d = point_at_x(t, xs[3]);
                if (!(sees(t, a, c) && sees(t, b, d))) continue;
                ++order_checks;
                if (!sees(t, a, d)) ++order_bad;
            }
        }
        report(9, lemma_bad == 0 && order_bad == 0 && lemma_checks >= kTarget && order_checks >= kTarget,
               "bisector lemma and order claim",
               std::to_string(lemma_checks) + " lemma checks / " + std::to_string(lemma_bad) + " violations; " +
                   std::to_string(order_checks) + " quadruples / " + std::to_string(order_bad) + " violations");
    }

    // 10. Scale.
    {
        InstanceSpec spec;
        spec.seed = 1;
        spec.n = 100000;
        spec.m = 100;
        spec.height_max = 100.0;
        spec.roughness = 1.0;
        const Instance inst = gen_random_terrain(spec);
        const auto t0 = Clock::now();
        OpCounters c;
        const VoronoiMap v = compute_vorvis(inst.terrain, inst.viewpoints, Metric::Euclidean, Mode::Both, &c);
        const double secs = seconds_since(t0);
        char buf[200];
        std::snprintf(buf, sizeof buf, "n=100000 m=100: %.3f s (limit 10 s), %zu intervals, %zu events", secs,
                      v.size(), c.events_processed);
        report(10, secs < 10.0 && v.is_partition_of(inst.terrain), "scale", buf);
    }

    std::printf("%s: %d of 10 criteria failed\n", failures ? "FAILED" : "PASSED", failures);
    return failures ? 1 : 0;
}
