#pragma once

#include "terravis/terrain.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace terravis {

struct EdgeOnBisector {
    std::size_t edge;
    std::size_t i;
    std::size_t j;
};

struct TripleEquidistant {
    TerrainPoint point;
    std::size_t i;
    std::size_t j;
    std::size_t k;
};

/// Violations of the standing assumptions. Advisory: every computation
/// still runs on violating inputs, with lower-index tie-breaks.
struct GeneralPositionReport {
    std::vector<std::array<std::size_t, 3>> collinear_triples;
    std::vector<EdgeOnBisector> edge_on_bisector;
    std::vector<TripleEquidistant> triple_equidistant;

    bool clean() const {
        return collinear_triples.empty() && edge_on_bisector.empty() && triple_equidistant.empty();
    }
};

GeneralPositionReport check_general_position(const Terrain& terrain, const ViewpointSet& viewpoints);

/// Every crossing of the Euclidean bisector of vertices i and j with the
/// chain, left to right. Edges lying on the bisector contribute their ends.
std::vector<TerrainPoint> bisector_crossings(const Terrain& terrain, std::size_t i, std::size_t j);

}  // namespace terravis
