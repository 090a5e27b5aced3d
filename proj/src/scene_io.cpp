#include "architect/scene_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace architect {

namespace {

using nlohmann::json;

// Minimal ordered JSON emitter; nlohmann's writer would re-serialize doubles
// in shortest-round-trip form instead of the canonical %.9g.
struct Writer {
    std::ostringstream out;
    int depth = 0;

    void indent() {
        for (int i = 0; i < depth; ++i) out << "  ";
    }
    void str(const std::string& s) {
        out << '"';
        for (char c : s) {
            switch (c) {
                case '"': out << "\\\""; break;
                case '\\': out << "\\\\"; break;
                case '\n': out << "\\n"; break;
                case '\r': out << "\\r"; break;
                case '\t': out << "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out << buf;
                    } else {
                        out << c;
                    }
            }
        }
        out << '"';
    }
    void num(double v) { out << format_double(v); }
    void vec3(const Vec3& v) {
        out << '[';
        num(v.x());
        out << ", ";
        num(v.y());
        out << ", ";
        num(v.z());
        out << ']';
    }
    void vec2(const Vec2& v) {
        out << '[';
        num(v.x());
        out << ", ";
        num(v.y());
        out << ']';
    }
    void key(const std::string& k) {
        indent();
        str(k);
        out << ": ";
    }
};

void emit_opening_list(Writer& w, const std::vector<WallOpening>& list) {
    if (list.empty()) {
        w.out << "[]";
        return;
    }
    w.out << "[\n";
    ++w.depth;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& o = list[i];
        w.indent();
        w.out << "{\"wall\": " << o.wall << ", \"offset\": " << format_double(o.offset)
              << ", \"width\": " << format_double(o.width)
              << ", \"height\": " << format_double(o.height)
              << ", \"bottom\": " << format_double(o.bottom) << "}";
        w.out << (i + 1 < list.size() ? ",\n" : "\n");
    }
    --w.depth;
    w.indent();
    w.out << ']';
}

WallOpening parse_opening(const json& j) {
    WallOpening o;
    o.wall = j.at("wall").get<int>();
    o.offset = canon(j.at("offset").get<double>());
    o.width = canon(j.at("width").get<double>());
    o.height = canon(j.at("height").get<double>());
    o.bottom = canon(j.value("bottom", 0.0));
    return o;
}

Vec3 parse_vec3(const json& j) {
    if (!j.is_array() || j.size() != 3) throw ParseError("expected [x, y, z]");
    return canon(Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>()));
}

Vec2 parse_vec2(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("expected [x, y]");
    return canon(Vec2(j[0].get<double>(), j[1].get<double>()));
}

// Recovers local asset dims from a serialized pose so the bbox-consistency
// invariant keeps holding after a round trip. Exact for canonical yaws;
// at yaw == 45 deg the split is ambiguous and an equal split is used.
Vec3 local_dims_from(const Aabb3& bbox, double yaw, const Vec3& scale) {
    double X = bbox.max.x() - bbox.min.x();
    double Y = bbox.max.y() - bbox.min.y();
    double Z = bbox.max.z() - bbox.min.z();
    double c = std::abs(std::cos(yaw));
    double s = std::abs(std::sin(yaw));
    double det = c * c - s * s;
    double dx, dy;
    if (std::abs(det) < 1e-9) {
        dx = dy = (X + Y) / (2 * (c + s));
    } else {
        dx = (c * X - s * Y) / det;
        dy = (c * Y - s * X) / det;
    }
    dx = std::max(dx, 1e-12);
    dy = std::max(dy, 1e-12);
    return {dx / scale.x(), dy / scale.y(), std::max(Z, 1e-12) / scale.z()};
}

}  // namespace

std::string serialize_scene(const SceneState& scene) {
    Writer w;
    w.out << "{\n";
    ++w.depth;

    w.key("room");
    w.out << "{\n";
    ++w.depth;
    w.key("origin");
    w.vec2(scene.room.origin);
    w.out << ",\n";
    w.key("extent");
    w.vec2(scene.room.extent);
    w.out << ",\n";
    w.key("wall_height");
    w.num(scene.room.wall_height);
    w.out << ",\n";
    w.key("doors");
    emit_opening_list(w, scene.room.doors);
    w.out << ",\n";
    w.key("windows");
    emit_opening_list(w, scene.room.windows);
    w.out << "\n";
    --w.depth;
    w.indent();
    w.out << "},\n";

    w.key("instances");
    if (scene.instances.empty()) {
        w.out << "[],\n";
    } else {
        w.out << "[\n";
        ++w.depth;
        for (std::size_t i = 0; i < scene.instances.size(); ++i) {
            const auto& inst = scene.instances[i];
            w.indent();
            w.out << "{\n";
            ++w.depth;
            w.key("id");
            w.str(inst.id);
            w.out << ",\n";
            w.key("name");
            w.str(inst.spec.name);
            w.out << ",\n";
            w.key("description");
            w.str(inst.spec.description);
            w.out << ",\n";
            w.key("category");
            w.str(to_string(inst.spec.category));
            w.out << ",\n";
            w.key("asset_id");
            w.str(inst.asset_id);
            w.out << ",\n";
            w.key("position");
            w.vec3(inst.position);
            w.out << ",\n";
            w.key("yaw");
            w.num(inst.yaw);
            w.out << ",\n";
            w.key("scale");
            w.vec3(inst.scale);
            w.out << ",\n";
            w.key("bbox");
            w.out << "{\"min\": ";
            w.vec3(inst.world_bbox.min);
            w.out << ", \"max\": ";
            w.vec3(inst.world_bbox.max);
            w.out << "}\n";
            --w.depth;
            w.indent();
            w.out << (i + 1 < scene.instances.size() ? "},\n" : "}\n");
        }
        --w.depth;
        w.indent();
        w.out << "],\n";
    }

    w.key("seed");
    w.out << scene.rng_seed << ",\n";

    w.key("log");
    if (scene.pass_log.empty()) {
        w.out << "[]\n";
    } else {
        w.out << "[\n";
        ++w.depth;
        for (std::size_t i = 0; i < scene.pass_log.size(); ++i) {
            const auto& e = scene.pass_log[i];
            w.indent();
            w.out << "{\"ordinal\": " << e.ordinal << ", \"kind\": ";
            w.str(e.kind);
            w.out << ", \"payload\": ";
            w.str(e.payload);
            w.out << (i + 1 < scene.pass_log.size() ? "},\n" : "}\n");
        }
        --w.depth;
        w.indent();
        w.out << "]\n";
    }

    --w.depth;
    w.out << "}\n";
    return w.out.str();
}

SceneState deserialize_scene(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("scene parse: ") + e.what());
    }
    try {
        SceneState scene;
        const json& jr = doc.at("room");
        scene.room.origin = parse_vec2(jr.at("origin"));
        scene.room.extent = parse_vec2(jr.at("extent"));
        scene.room.wall_height = canon(jr.at("wall_height").get<double>());
        for (const auto& jo : jr.value("doors", json::array())) scene.room.doors.push_back(parse_opening(jo));
        for (const auto& jo : jr.value("windows", json::array())) scene.room.windows.push_back(parse_opening(jo));

        for (const auto& ji : doc.at("instances")) {
            ObjectInstance inst;
            inst.id = ji.at("id").get<std::string>();
            inst.spec.name = ji.at("name").get<std::string>();
            inst.spec.description = ji.at("description").get<std::string>();
            inst.spec.category = category_from_string(ji.at("category").get<std::string>());
            inst.asset_id = ji.at("asset_id").get<std::string>();
            inst.position = parse_vec3(ji.at("position"));
            inst.yaw = canon(ji.at("yaw").get<double>());
            inst.scale = parse_vec3(ji.at("scale"));
            inst.world_bbox.min = parse_vec3(ji.at("bbox").at("min"));
            inst.world_bbox.max = parse_vec3(ji.at("bbox").at("max"));
            inst.asset_dims = local_dims_from(inst.world_bbox, inst.yaw, inst.scale);
            scene.instances.push_back(std::move(inst));
        }

        scene.rng_seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& je : doc.value("log", json::array())) {
            PassEvent e;
            e.ordinal = je.at("ordinal").get<int>();
            e.kind = je.at("kind").get<std::string>();
            e.payload = je.at("payload").get<std::string>();
            scene.pass_log.push_back(std::move(e));
        }
        return scene;
    } catch (const json::exception& e) {
        throw ParseError(std::string("scene schema: ") + e.what());
    }
}

void write_scene(const std::string& path, const SceneState& scene) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << serialize_scene(scene);
}

SceneState read_scene(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return deserialize_scene(ss.str());
}

bool scenes_equal(const SceneState& a, const SceneState& b) {
    return serialize_scene(a) == serialize_scene(b);
}

}  // namespace architect
