#pragma once

#include "terravis/bench.hpp"
#include "terravis/io.hpp"

#include <string>

namespace terravis {

/// SVG 1.1 drawing of the terrain, its viewpoints and a map: one colored
/// stroke per labeled interval (unlabeled/invisible intervals are left
/// bare) and a tick at every breakpoint. Fixed 1000x400 viewBox, uniform
/// scale, y axis pointing up.
std::string render_svg(const Instance& instance, const MapFile& map);

}  // namespace terravis
