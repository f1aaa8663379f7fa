#include "terravis/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <sstream>

namespace terravis {

namespace {

constexpr double kWidth = 1000.0;
constexpr double kHeight = 400.0;
constexpr double kPad = 20.0;

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Frame {
    double x0, y0, scale, off_x, off_y;

    Frame(const Terrain& t) {
        double ylo = t.vertex(0).y, yhi = ylo;
        for (const Point& p : t.vertices()) {
            ylo = std::min(ylo, p.y);
            yhi = std::max(yhi, p.y);
        }
        const double w = std::max(t.x_max() - t.x_min(), 1e-12);
        const double h = std::max(yhi - ylo, 1e-12);
        scale = std::min((kWidth - 2 * kPad) / w, (kHeight - 2 * kPad) / h);
        x0 = t.x_min();
        y0 = ylo;
        off_x = (kWidth - w * scale) / 2;
        off_y = (kHeight - h * scale) / 2;
    }

    double sx(double x) const { return off_x + (x - x0) * scale; }
    double sy(double y) const { return kHeight - (off_y + (y - y0) * scale); }
};

// Terrain polyline restricted to [xl, xr].
std::string polyline(const Terrain& t, const Frame& f, double xl, double xr) {
    std::string pts = num(f.sx(xl)) + "," + num(f.sy(t.height_at(xl)));
    for (const Point& p : t.vertices()) {
        if (p.x > xl && p.x < xr) pts += " " + num(f.sx(p.x)) + "," + num(f.sy(p.y));
    }
    pts += " " + num(f.sx(xr)) + "," + num(f.sy(t.height_at(xr)));
    return pts;
}

}  // namespace

std::string render_svg(const Instance& instance, const MapFile& map) {
    const Terrain& t = instance.terrain;
    const Frame f(t);
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\""
        << polyline(t, f, t.x_min(), t.x_max()) << "\"/>\n";

    // Colors: owners by viewpoint slot, sets by first appearance.
    std::map<IdSet, std::size_t> set_colors;
    auto color_of = [&](const MapEntry& e) -> std::optional<std::size_t> {
        if (const auto* owner = std::get_if<std::optional<std::size_t>>(&e.label)) {
            if (!*owner) return std::nullopt;
            const auto& ids = instance.viewpoints.indices();
            return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), **owner) - ids.begin());
        }
        if (const auto* set = std::get_if<IdSet>(&e.label)) {
            if (set->empty()) return std::nullopt;
            return set_colors.emplace(*set, set_colors.size()).first->second;
        }
        if (std::get<bool>(e.label)) return std::size_t{0};
        return std::nullopt;
    };

    for (const MapEntry& e : map.intervals) {
        const auto c = color_of(e);
        if (!c) continue;
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[*c % kPalette.size()]
            << "\" stroke-width=\"4\" stroke-opacity=\"0.8\" points=\"" << polyline(t, f, e.x_left, e.x_right)
            << "\"/>\n";
    }
    for (std::size_t i = 0; i + 1 < map.intervals.size(); ++i) {
        const double x = map.intervals[i].x_right;
        const double y = f.sy(t.height_at(x));
        out << "<line x1=\"" << num(f.sx(x)) << "\" y1=\"" << num(y - 6) << "\" x2=\"" << num(f.sx(x))
            << "\" y2=\"" << num(y + 6) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    for (std::size_t v : instance.viewpoints) {
        const Point p = t.vertex(v);
        out << "<circle cx=\"" << num(f.sx(p.x)) << "\" cy=\"" << num(f.sy(p.y))
            << "\" r=\"4\" fill=\"red\" stroke=\"black\" stroke-width=\"0.5\"><title>v" << v
            << "</title></circle>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace terravis
