#include "terravis/io.hpp"

#include "terravis/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace terravis {

using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Parse, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Parse, "cannot write " + path.string());
    out << text;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
}

// Runs a field extraction, mapping nlohmann type errors to Error{Parse}.
template <typename F>
auto fields(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
}

}  // namespace

Instance parse_instance(std::string_view text, double eps) {
    const json doc = parse_json(text);
    auto [pts, ids, name, seed] = fields([&] {
        if (!doc.is_object()) throw Error(ErrorCode::Parse, "instance must be an object");
        std::vector<Point> pts;
        for (const json& v : doc.at("vertices")) {
            if (!v.is_array() || v.size() != 2) throw Error(ErrorCode::Parse, "vertex must be [x, y]");
            pts.push_back({v[0].get<double>(), v[1].get<double>()});
        }
        std::vector<std::size_t> ids = doc.value("viewpoints", std::vector<std::size_t>{});
        std::string name = doc.value("name", std::string{});
        std::optional<std::uint64_t> seed;
        if (doc.contains("seed") && !doc["seed"].is_null()) seed = doc["seed"].get<std::uint64_t>();
        return std::tuple(std::move(pts), std::move(ids), std::move(name), seed);
    });
    Instance out;
    out.name = std::move(name);
    out.seed = seed;
    out.terrain = validate_terrain(pts, eps);
    out.viewpoints = ViewpointSet(out.terrain, std::move(ids));
    return out;
}

Instance read_instance(const std::filesystem::path& path, double eps) { return parse_instance(slurp(path), eps); }

std::string dump_instance(const Instance& instance) {
    json doc = json::object();
    doc["name"] = instance.name;
    doc["seed"] = instance.seed ? json(*instance.seed) : json(nullptr);
    json verts = json::array();
    for (const Point& p : instance.terrain.vertices()) verts.push_back({p.x, p.y});
    doc["vertices"] = std::move(verts);
    doc["viewpoints"] = instance.viewpoints.indices();
    return doc.dump(1) + "\n";
}

void write_instance(const std::filesystem::path& path, const Instance& instance) {
    spill(path, dump_instance(instance));
}

std::string_view to_string(MapKind kind) {
    switch (kind) {
        case MapKind::Vis: return "vis";
        case MapKind::ColVis: return "colvis";
        case MapKind::VorVis: return "vorvis";
        case MapKind::KVorVis: return "kvorvis";
    }
    return "vorvis";
}

std::optional<MapKind> parse_map_kind(std::string_view text) {
    if (text == "vis") return MapKind::Vis;
    if (text == "colvis") return MapKind::ColVis;
    if (text == "vorvis") return MapKind::VorVis;
    if (text == "kvorvis") return MapKind::KVorVis;
    return std::nullopt;
}

namespace {

template <typename L>
MapFile entries(const IntervalMap<L>& map, MapKind kind) {
    MapFile out;
    out.kind = kind;
    for (std::size_t i = 0; i < map.size(); ++i) {
        out.intervals.push_back({map.left(i).x, map.right(i).x, L(map.label(i))});
    }
    return out;
}

}  // namespace

MapFile to_map_file(const VisMap& map) { return entries(map, MapKind::Vis); }
MapFile to_map_file(const VoronoiMap& map) { return entries(map, MapKind::VorVis); }
MapFile to_map_file(const IntervalMap<IdSet>& map) { return entries(map, MapKind::ColVis); }

std::string dump_map_file(const MapFile& map) {
    json doc = json::object();
    doc["instance"] = map.instance;
    doc["map"] = std::string(to_string(map.kind));
    doc["metric"] = std::string(to_string(map.metric));
    doc["mode"] = std::string(to_string(map.mode));
    doc["k"] = map.k ? json(*map.k) : json(nullptr);
    json list = json::array();
    for (const MapEntry& e : map.intervals) {
        json item = json::object();
        item["interval"] = {e.x_left, e.x_right};
        if (const auto* owner = std::get_if<std::optional<std::size_t>>(&e.label)) {
            item["owner"] = *owner ? json(**owner) : json(nullptr);
        } else if (const auto* set = std::get_if<IdSet>(&e.label)) {
            item["set"] = *set;
        } else {
            item["visible"] = std::get<bool>(e.label);
        }
        list.push_back(std::move(item));
    }
    doc["intervals"] = std::move(list);
    return doc.dump(1) + "\n";
}

MapFile parse_map_file(std::string_view text) {
    const json doc = parse_json(text);
    return fields([&] {
        MapFile out;
        out.instance = doc.value("instance", std::string{});
        const auto kind = parse_map_kind(doc.at("map").get<std::string>());
        const auto metric = parse_metric(doc.value("metric", std::string("euclidean")));
        const auto mode = parse_mode(doc.value("mode", std::string("both")));
        if (!kind || !metric || !mode) throw Error(ErrorCode::Parse, "unknown map, metric or mode");
        out.kind = *kind;
        out.metric = *metric;
        out.mode = *mode;
        if (doc.contains("k") && !doc["k"].is_null()) out.k = doc["k"].get<std::size_t>();
        for (const json& item : doc.at("intervals")) {
            const json& iv = item.at("interval");
            if (!iv.is_array() || iv.size() != 2) throw Error(ErrorCode::Parse, "interval must be [xl, xr]");
            MapEntry e;
            e.x_left = iv[0].get<double>();
            e.x_right = iv[1].get<double>();
            if (item.contains("owner")) {
                const json& o = item["owner"];
                e.label = o.is_null() ? std::optional<std::size_t>() : std::optional(o.get<std::size_t>());
            } else if (item.contains("set")) {
                e.label = item["set"].get<IdSet>();
            } else {
                e.label = item.at("visible").get<bool>();
            }
            out.intervals.push_back(std::move(e));
        }
        return out;
    });
}

MapFile read_map_file(const std::filesystem::path& path) { return parse_map_file(slurp(path)); }

std::vector<TerrainPoint> map_breakpoints(const Terrain& terrain, const MapFile& map) {
    const double eps = terrain.eps();
    if (map.intervals.empty()) throw Error(ErrorCode::Parse, "map has no intervals");
    if (std::abs(map.intervals.front().x_left - terrain.x_min()) > eps ||
        std::abs(map.intervals.back().x_right - terrain.x_max()) > eps) {
        throw Error(ErrorCode::Parse, "map does not span the terrain");
    }
    std::vector<TerrainPoint> out{terrain.leftmost()};
    for (std::size_t i = 0; i < map.intervals.size(); ++i) {
        const MapEntry& e = map.intervals[i];
        if (!(e.x_right > e.x_left)) throw Error(ErrorCode::Parse, "empty or reversed interval");
        if (i > 0 && std::abs(e.x_left - map.intervals[i - 1].x_right) > eps) {
            throw Error(ErrorCode::Parse, "intervals leave a gap or overlap");
        }
        out.push_back(i + 1 == map.intervals.size() ? terrain.rightmost() : point_at_x(terrain, e.x_right));
    }
    return out;
}

}  // namespace terravis
