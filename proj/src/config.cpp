#include "architect/config.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace architect {

namespace {

using nlohmann::json;

Room room_from_json(const json& jr) {
    Room room;
    if (jr.contains("origin"))
        room.origin = {jr["origin"].at(0).get<double>(), jr["origin"].at(1).get<double>()};
    room.extent = {jr.at("extent").at(0).get<double>(), jr.at("extent").at(1).get<double>()};
    room.wall_height = jr.value("wall_height", 2.8);
    auto parse_openings = [&](const char* key, std::vector<WallOpening>& dst) {
        for (const auto& jo : jr.value(key, json::array())) {
            WallOpening o;
            o.wall = jo.at("wall").get<int>();
            o.offset = jo.at("offset").get<double>();
            o.width = jo.at("width").get<double>();
            o.height = jo.at("height").get<double>();
            o.bottom = jo.value("bottom", 0.0);
            dst.push_back(o);
        }
    };
    parse_openings("doors", room.doors);
    parse_openings("windows", room.windows);
    room.check();
    return room;
}

void env_override(std::string& value, const char* name) {
    if (const char* v = std::getenv(name); v && *v) value = v;
}

}  // namespace

Room parse_room_json(const std::string& text) {
    try {
        return room_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw ParseError(std::string("room spec: ") + e.what());
    }
}

void PipelineConfig::validate() const {
    if (room.has_value() == !scene_path.empty())
        throw UsageError("config must provide exactly one of room / scene_path");
    if (resolution < 16) throw UsageError("config: resolution too small");
    if (catalog_path.empty()) throw UsageError("config: catalog_path is required");
    bool remote = !inpaint_url.empty() || !depth_url.empty() || !annotate_url.empty() ||
                  !detect_url.empty();
    if (mock_script.empty()) {
        if (!remote) throw UsageError("config: no mock script and no backend endpoints");
        if (inpaint_url.empty() || depth_url.empty() || annotate_url.empty() ||
            detect_url.empty())
            throw UsageError("config: remote mode needs all four endpoints");
    }
}

PipelineConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    PipelineConfig cfg;
    try {
        if (doc.contains("room")) cfg.room = room_from_json(doc["room"]);
        cfg.scene_path = doc.value("scene", "");
        cfg.caption = doc.value("caption", cfg.caption);
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.resolution = doc.value("resolution", cfg.resolution);
        cfg.fov_deg = doc.value("fov_deg", cfg.fov_deg);
        cfg.eye_height = doc.value("eye_height", cfg.eye_height);
        cfg.look_height = doc.value("look_height", cfg.look_height);
        cfg.stop.occupancy_threshold = doc.value("occupancy_threshold", cfg.stop.occupancy_threshold);
        cfg.stop.max_views = doc.value("max_views", cfg.stop.max_views);

        if (doc.contains("mask")) {
            const auto& jm = doc["mask"];
            cfg.mask.centered_width_frac = jm.value("centered_width_frac", cfg.mask.centered_width_frac);
            cfg.mask.centered_height_frac =
                jm.value("centered_height_frac", cfg.mask.centered_height_frac);
            cfg.mask.cube_shrink = jm.value("cube_shrink", cfg.mask.cube_shrink);
            cfg.mask.on_top_cube_height = jm.value("on_top_cube_height", cfg.mask.on_top_cube_height);
        }
        cfg.soften_radius_px = doc.value("soften_radius_px", cfg.soften_radius_px);
        cfg.soften_sigma_px = doc.value("soften_sigma_px", cfg.soften_sigma_px);

        cfg.min_count_room = doc.value("min_count_room", cfg.min_count_room);
        cfg.min_count_small = doc.value("min_count_small", cfg.min_count_small);
        cfg.max_attempts = doc.value("max_attempts", cfg.max_attempts);
        cfg.samples_per_view = doc.value("samples_per_view", cfg.samples_per_view);

        cfg.cluster.eps = doc.value("cluster_eps", cfg.cluster.eps);
        cfg.cluster.min_pts = doc.value("cluster_min_pts", cfg.cluster.min_pts);

        if (doc.contains("thresholds")) {
            const auto& jt = doc["thresholds"];
            cfg.thresholds.edge_eps = jt.value("edge_eps", cfg.thresholds.edge_eps);
            cfg.thresholds.middle_eps = jt.value("middle_eps", cfg.thresholds.middle_eps);
            cfg.thresholds.near_eps = jt.value("near_eps", cfg.thresholds.near_eps);
            cfg.thresholds.far_eps = jt.value("far_eps", cfg.thresholds.far_eps);
            cfg.thresholds.align_eps = jt.value("align_eps", cfg.thresholds.align_eps);
            cfg.thresholds.overlap_frac = jt.value("overlap_frac", cfg.thresholds.overlap_frac);
            cfg.thresholds.wall_adjacency = jt.value("wall_adjacency", cfg.thresholds.wall_adjacency);
        }
        cfg.placer.thresholds = cfg.thresholds;
        cfg.placer.grid_step = doc.value("grid_step", cfg.placer.grid_step);
        cfg.placer.branch = doc.value("branch", cfg.placer.branch);
        cfg.placer.max_nodes = doc.value("max_nodes", cfg.placer.max_nodes);
        if (doc.contains("weights")) {
            const auto& jw = doc["weights"];
            cfg.placer.weights.w_loc = jw.value("w_loc", cfg.placer.weights.w_loc);
            cfg.placer.weights.w_rotation = jw.value("w_rotation", cfg.placer.weights.w_rotation);
            cfg.placer.weights.w_object = jw.value("w_object", cfg.placer.weights.w_object);
            cfg.placer.weights.w_cur = jw.value("w_cur", cfg.placer.weights.w_cur);
            cfg.placer.weights.constant = jw.value("constant", cfg.placer.weights.constant);
            cfg.placer.weights.delta_floor = jw.value("delta_floor", cfg.placer.weights.delta_floor);
        }
        cfg.select_lambda = doc.value("select_lambda", cfg.select_lambda);
        cfg.retrieve_k = doc.value("retrieve_k", cfg.retrieve_k);

        cfg.catalog_path = doc.value("catalog", "");
        cfg.mock_script = doc.value("mock_script", "");
        if (doc.contains("backends")) {
            const auto& jb = doc["backends"];
            cfg.inpaint_url = jb.value("inpaint", "");
            cfg.depth_url = jb.value("depth", "");
            cfg.annotate_url = jb.value("annotate", "");
            cfg.detect_url = jb.value("detect", "");
        }
        cfg.depth_is_ray_length = doc.value("depth_is_ray_length", false);
        cfg.out_dir = doc.value("out_dir", cfg.out_dir);
        cfg.emit_debug = doc.value("emit_debug", cfg.emit_debug);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config schema: ") + e.what());
    }

    env_override(cfg.inpaint_url, "ARCHITECT_INPAINT_URL");
    env_override(cfg.depth_url, "ARCHITECT_DEPTH_URL");
    env_override(cfg.annotate_url, "ARCHITECT_ANNOTATE_URL");
    env_override(cfg.detect_url, "ARCHITECT_DETECT_URL");
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace architect
