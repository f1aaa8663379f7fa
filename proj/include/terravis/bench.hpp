#pragma once

#include "terravis/terrain.hpp"
#include "terravis/viewshed.hpp"
#include "terravis/vorvis.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace terravis {

/// Map complexities counted with the n terrain vertices included: an event
/// point that is itself a vertex is not counted twice.
struct ComplexityCounts {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t k_c = 0;
    std::size_t k_v = 0;
};

/// Interior breakpoints that do not coincide with a vertex.
std::size_t count_extra_breakpoints(const Terrain& terrain, const std::vector<TerrainPoint>& breakpoints);

/// Euclidean ColVis / VorVis complexities.
ComplexityCounts count_complexities(const Terrain& terrain, const ViewpointSet& viewpoints, Mode mode = Mode::Both);

/// k_v <= min(k_c + m^2, 2 k_c + 8m - 4).
bool check_theorem_bound(const ComplexityCounts& c);

struct Instance {
    std::string name;
    std::optional<std::uint64_t> seed;
    Terrain terrain;
    ViewpointSet viewpoints;
};

struct InstanceSpec {
    std::uint64_t seed = 0;
    std::size_t n = 20;
    std::size_t m = 4;
    double height_min = 0.0;
    double height_max = 10.0;
    /// 0 = independent uniform heights, 1 = pure random walk.
    double roughness = 0.5;
    /// x steps are drawn from [step_min, step_max].
    double step_min = 0.5;
    double step_max = 1.5;
};

/// Deterministic per seed. Throws Error{InvalidViewpoints} if m >= n.
Instance gen_random_terrain(const InstanceSpec& spec);

/// The lower-bound example: every viewpoint sees one common portion, which
/// the Voronoi visibility map cuts into 2m - 1 parts. The geometry is a
/// strictly convex bowl with the viewpoints on its steep left wall, flanked
/// by cliffs. Parameters are searched until the counts verify; throws
/// Error{ConstructionFailed} otherwise.
Instance gen_fig4b(std::size_t m);

/// Number of intervals of a Voronoi map that have an owner.
std::size_t visible_parts(const VoronoiMap& map);

}  // namespace terravis
