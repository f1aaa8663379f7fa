#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace terravis {

inline constexpr double kDefaultEpsilon = 1e-9;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double squared_norm(Point a) { return dot(a, a); }
double norm(Point a);
double distance(Point a, Point b);

/// Signed distance from x to the perpendicular bisector of pi and pj;
/// negative on pi's side. Written in the cancellation-free form
/// (pj - pi).(2x - pi - pj) / (2|pj - pi|).
inline double bisector_offset(Point pi, Point pj, Point x) {
    const Point d = pj - pi;
    return dot(d, (x - pi) + (x - pj)) / (2.0 * std::sqrt(squared_norm(d)));
}

/// A point on the terrain. Vertices use the lower of their two adjacent
/// edge indices, so vertex k > 0 sits at the right end of edge k - 1.
struct TerrainPoint {
    std::size_t edge = 0;
    double x = 0.0;
    double y = 0.0;

    Point point() const { return {x, y}; }
};

/// x-monotone polygonal chain with cumulative arc lengths.
class Terrain {
public:
    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<double>& cum_len() const { return cum_len_; }
    std::size_t size() const { return vertices_.size(); }
    std::size_t edge_count() const { return vertices_.size() - 1; }
    const Point& vertex(std::size_t i) const { return vertices_[i]; }
    double x_min() const { return vertices_.front().x; }
    double x_max() const { return vertices_.back().x; }
    double eps() const { return eps_; }

    TerrainPoint vertex_point(std::size_t i) const;
    TerrainPoint leftmost() const { return vertex_point(0); }
    TerrainPoint rightmost() const { return vertex_point(size() - 1); }

    /// Terrain height at x (x clamped into range).
    double height_at(double x) const;
    /// Index of the edge containing x, canonical at vertices.
    std::size_t edge_at(double x) const;
    /// Vertex index if p coincides with a vertex (within eps).
    std::optional<std::size_t> vertex_index(const TerrainPoint& p) const;
    /// Arc length from the leftmost vertex to p.
    double arc_position(const TerrainPoint& p) const;
    /// Inverse of arc_position.
    TerrainPoint point_at_arc(double s) const;

private:
    friend Terrain validate_terrain(std::span<const Point>, double);
    std::vector<Point> vertices_;
    std::vector<double> cum_len_;
    double eps_ = kDefaultEpsilon;
};

/// Builds a Terrain; throws Error{TooShort|NonMonotone}.
Terrain validate_terrain(std::span<const Point> raw, double eps = kDefaultEpsilon);

/// Sorted distinct vertex indices; throws Error{InvalidViewpoints}.
class ViewpointSet {
public:
    ViewpointSet() = default;
    ViewpointSet(const Terrain& terrain, std::vector<std::size_t> indices);

    const std::vector<std::size_t>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    std::size_t operator[](std::size_t i) const { return indices_[i]; }
    auto begin() const { return indices_.begin(); }
    auto end() const { return indices_.end(); }
    bool contains(std::size_t vertex) const;

private:
    std::vector<std::size_t> indices_;
};

enum class Metric { Euclidean, Geodesic, Link };
enum class Side { Left, Right };

std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view text);

/// OutOfRange if x lies outside [x_min, x_max] by more than eps.
TerrainPoint point_at_x(const Terrain& terrain, double x);

/// True iff segment ab has no point strictly below the terrain. Grazing
/// contact counts as visible.
bool sees(const Terrain& terrain, const TerrainPoint& a, const TerrainPoint& b);

/// First terrain point strictly beyond `through` (in direction `side`) where
/// the ray origin->through meets the chain. Stretches where the ray runs
/// along the terrain are not hits. O(n) walk.
std::optional<TerrainPoint> ray_first_hit(const Terrain& terrain, Point origin, Point through,
                                          Side side);

double metric_distance(const Terrain& terrain, Metric metric, const TerrainPoint& a,
                       const TerrainPoint& b);

/// Number of vertices strictly inside the open portion between a and b.
long link_distance(const Terrain& terrain, const TerrainPoint& a, const TerrainPoint& b);

}  // namespace terravis
