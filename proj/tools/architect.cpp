#include "architect/config.hpp"
#include "architect/constraints.hpp"
#include "architect/depth_lift.hpp"
#include "architect/image.hpp"
#include "architect/pipeline.hpp"
#include "architect/placer.hpp"
#include "architect/raster.hpp"
#include "architect/scene_io.hpp"
#include "architect/view_mask.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace architect;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Room load_room_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return parse_room_json(arg);
    return parse_room_json(slurp(arg));
}

std::vector<Detection3d> load_detections(const std::string& path) {
    nlohmann::json doc = nlohmann::json::parse(slurp(path));
    std::vector<Detection3d> out;
    int counter = 0;
    for (const auto& jd : doc) {
        Detection3d d;
        d.spec.name = jd.at("name").get<std::string>();
        d.spec.description = jd.value("description", d.spec.name);
        d.spec.category = category_from_string(jd.value("category", std::string("floor-object")));
        d.id = jd.value("id", d.spec.name + "#" + std::to_string(counter));
        ++counter;
        auto v3 = [](const nlohmann::json& a) {
            return Vec3(a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>());
        };
        d.bbox = {v3(jd.at("bbox").at("min")), v3(jd.at("bbox").at("max"))};
        out.push_back(std::move(d));
    }
    return out;
}

InpaintMask load_mask_png(const std::string& path) {
    std::string bytes = slurp(path);
    ImageGray g = decode_png_gray(reinterpret_cast<const std::uint8_t*>(bytes.data()),
                                  bytes.size());
    InpaintMask mask(g.width, g.height);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) mask.set(x, y, g.at(x, y) / 255.0);
    return mask;
}

int cmd_generate(const std::string& config_path, const std::string& mock,
                 const std::optional<std::uint64_t>& seed, const std::string& out_dir) {
    PipelineConfig cfg = load_config(config_path);
    if (!mock.empty()) cfg.mock_script = mock;
    if (seed) cfg.seed = *seed;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    std::string path = generate(cfg);
    std::cout << path << "\n";
    return 0;
}

int cmd_lift(const std::string& depth_path, const std::string& ref_path,
             const std::string& mask_path, const std::string& out_path) {
    DepthMap estimated = read_dpth(depth_path);
    DepthMap reference = read_dpth(ref_path);
    InpaintMask mask = load_mask_png(mask_path);
    InstanceIdMap ids(mask.width, mask.height);  // reference pixels come from the mask alone
    ReferenceSet refs = select_reference_pixels(ReferenceMode::RoomContext, ids, mask);
    RescaledDepth out = rescale_or_shift(estimated, reference, refs);
    write_dpth(out_path, out.map);
    nlohmann::ordered_json stats;
    stats["scale"] = out.stats.scale;
    stats["shift"] = out.stats.shift;
    stats["max_r"] = out.stats.max_r;
    stats["min_r"] = out.stats.min_r;
    stats["max_e"] = out.stats.max_e;
    stats["min_e"] = out.stats.min_e;
    stats["n"] = out.stats.n;
    std::cout << stats.dump(2) << "\n";
    return 0;
}

int cmd_place(const std::string& detections_path, const std::string& room_arg,
              const std::string& out_dir) {
    SceneState scene;
    scene.room = load_room_arg(room_arg);
    auto dets = load_detections(detections_path);

    std::vector<Detection3d> floor, wall;
    for (auto& d : dets)
        (d.spec.category == ObjectCategory::WallObject ? wall : floor).push_back(d);

    std::vector<Detection3d> demoted;
    ConstraintSet wall_cs = derive_wall_constraints(wall, floor, scene.room, {}, &demoted);
    for (auto d : demoted) {
        d.spec.category = ObjectCategory::FloorObject;
        floor.push_back(std::move(d));
    }
    ConstraintSet floor_cs = derive_floor_constraints(floor, scene.room);
    for (auto& c : rotation_constraints(floor, floor_cs.order, scene, "", nullptr, true))
        floor_cs.add(std::move(c));

    PlacerParams params;
    auto placeables = [](const std::vector<Detection3d>& pool) {
        std::vector<PlaceableObject> out;
        for (const auto& d : pool) out.push_back({d.id, d.spec, d.bbox.sizes().cwiseMax(0.01)});
        return out;
    };
    auto commit = [&](const PlacementSolution& sol, const std::vector<Detection3d>& pool) {
        for (const auto& p : sol.placements) {
            const Detection3d* det = nullptr;
            for (const auto& d : pool)
                if (d.id == p.id) det = &d;
            Vec3 dims = det->bbox.sizes().cwiseMax(0.01);
            Vec3 pos{p.candidate.position.x(), p.candidate.position.y(), p.candidate.box.min.z()};
            scene.instances.push_back(make_instance(det->id, det->spec, "box:" + det->spec.name,
                                                    dims, pos, p.candidate.yaw, {1, 1, 1}));
            scene.log("object-placed", det->id);
        }
        for (const auto& id : sol.skipped) scene.log("object-skipped", id);
    };
    commit(dfs_place(placeables(floor), floor_cs, scene, params), floor);
    commit(place_wall_objects(placeables(wall), wall_cs, scene, params), wall);

    std::filesystem::create_directories(out_dir);
    std::string path = out_dir + "/placed.scene.json";
    write_scene(path, scene);
    std::cout << path << "\n";
    return 0;
}

int cmd_plan_views(const std::string& room_arg) {
    Room room = load_room_arg(room_arg);
    ViewPlan plan = room_views(room);
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& cam : plan.cameras) {
        nlohmann::ordered_json j;
        j["eye"] = {cam.eye.x(), cam.eye.y(), cam.eye.z()};
        j["target"] = {cam.target.x(), cam.target.y(), cam.target.z()};
        j["fov_deg"] = cam.fov_deg;
        j["width"] = cam.width;
        j["height"] = cam.height;
        out.push_back(j);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_validate(const std::string& scene_path) {
    SceneState scene = read_scene(scene_path);
    auto problems = validate_scene(scene);
    if (problems.empty()) {
        std::cout << "valid\n";
        return 0;
    }
    for (const auto& p : problems) std::cerr << p << "\n";
    return 1;
}

int cmd_render_debug(const std::string& scene_path, int view, const std::string& out_dir) {
    SceneState scene = read_scene(scene_path);
    ViewPlan plan = room_views(scene.room);
    if (view < 0 || view >= static_cast<int>(plan.cameras.size()))
        throw UsageError("view index out of range (0..2)");
    Frame frame = rasterize(scene, plan.cameras[view]);
    std::filesystem::create_directories(out_dir);
    write_png(out_dir + "/view" + std::to_string(view) + "_depth.png", depth_to_gray(frame.depth));
    write_png(out_dir + "/view" + std::to_string(view) + "_ids.png", ids_to_rgb(frame.ids));
    write_dpth(out_dir + "/view" + std::to_string(view) + ".dpth", frame.depth);
    std::cout << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scene-layout synthesis engine"};
    app.require_subcommand(1);

    std::string config_path, mock, out_dir, depth_path, ref_path, mask_path, detections_path,
        room_arg, scene_path, out_path = "rescaled.dpth";
    std::optional<std::uint64_t> seed;
    int view = 0;

    auto* g = app.add_subcommand("generate", "run the full pipeline");
    g->add_option("--config", config_path, "pipeline config")->required();
    g->add_option("--mock", mock, "mock script path (overrides config)");
    g->add_option("--seed", seed, "seed override");
    g->add_option("--out", out_dir, "output directory override");

    auto* l = app.add_subcommand("lift", "standalone depth rescaling");
    l->add_option("--depth", depth_path, "estimated depth (DPTH)")->required();
    l->add_option("--ref", ref_path, "reference depth (DPTH)")->required();
    l->add_option("--mask", mask_path, "inpaint mask (grayscale PNG)")->required();
    l->add_option("--out", out_path, "output DPTH path");

    auto* p = app.add_subcommand("place", "constraint derivation + placement");
    p->add_option("--detections", detections_path, "detections JSON")->required();
    p->add_option("--room", room_arg, "room spec (file or inline JSON)")->required();
    p->add_option("--out", out_dir, "output directory")->default_val(".");

    auto* v = app.add_subcommand("plan-views", "print the room view plan");
    v->add_option("--room", room_arg, "room spec (file or inline JSON)")->required();

    auto* val = app.add_subcommand("validate", "check scene invariants");
    val->add_option("--scene", scene_path, "scene file")->required();

    auto* r = app.add_subcommand("render-debug", "emit depth/id debug rasters");
    r->add_option("--scene", scene_path, "scene file")->required();
    r->add_option("--view", view, "room view index (0..2)")->default_val(0);
    r->add_option("--out", out_dir, "output directory")->default_val(".");

    CLI11_PARSE(app, argc, argv);

    try {
        if (g->parsed()) return cmd_generate(config_path, mock, seed, out_dir);
        if (l->parsed()) return cmd_lift(depth_path, ref_path, mask_path, out_path);
        if (p->parsed()) return cmd_place(detections_path, room_arg, out_dir);
        if (v->parsed()) return cmd_plan_views(room_arg);
        if (val->parsed()) return cmd_validate(scene_path);
        if (r->parsed()) return cmd_render_debug(scene_path, view, out_dir);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
