#include "architect/pipeline.hpp"

#include "architect/depth_lift.hpp"
#include "architect/mock_rig.hpp"
#include "architect/placer.hpp"
#include "architect/raster.hpp"
#include "architect/scene_io.hpp"
#include "architect/view_mask.hpp"
#include "architect/wire_client.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

namespace architect {

namespace {

struct RemoteBundle {
    RemoteInpaintBackend inpaint;
    RemoteDepthBackend depth;
    RemoteVisionBackend vision;
    RemoteBundle(const PipelineConfig& cfg)
        : inpaint(cfg.inpaint_url), depth(cfg.depth_url),
          vision(cfg.annotate_url, cfg.detect_url) {}
};

std::string next_instance_id(const SceneState& scene, const std::string& name) {
    for (int k = 0;; ++k) {
        std::string id = name + "_" + std::to_string(k);
        if (!scene.find(id)) return id;
    }
}

std::uint64_t call_seed(std::uint64_t seed, int view, int attempt, int sample) {
    return seed * 1000003ull + static_cast<std::uint64_t>(view) * 10007ull +
           static_cast<std::uint64_t>(attempt) * 101ull + static_cast<std::uint64_t>(sample);
}

DepthMap ray_length_to_z(const DepthMap& in, const CameraView& cam) {
    DepthMap out(in.width, in.height);
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < in.width; ++x)
            if (in.is_valid(x, y))
                out.set(x, y, in.at(x, y) / pixel_ray(x + 0.5, y + 0.5, cam).norm());
    return out;
}

InpaintMask soften_for(const PipelineConfig& cfg, const InpaintMask& mask) {
    if (cfg.soften_radius_px >= 0 && cfg.soften_sigma_px >= 0)
        return soften_mask(mask, cfg.soften_radius_px, cfg.soften_sigma_px);
    return soften_mask_default(mask);
}

struct AcceptedSample {
    InpaintResponse resp;
    std::vector<Detection> detections;
};

// The inpaint/recognize/filter loop of one view. Returns nullopt when every
// attempt was rejected; events are logged either way.
std::optional<AcceptedSample> inpaint_until_accepted(SceneState& scene, const PipelineConfig& cfg,
                                                     PipelineServices& services,
                                                     const ImageRgb& template_img,
                                                     const InpaintMask& soft_mask, int view_index,
                                                     int min_count) {
    PromptPair prompts;
    try {
        prompts = build_prompts(inventory_summary(scene), cfg.caption, services.language,
                                services.retry);
    } catch (const Error&) {
        prompts = {cfg.caption, ""};  // prompt-build error: caption-only fallback
    }

    for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        for (int sample = 0; sample < cfg.samples_per_view; ++sample) {
            InpaintRequest req;
            req.image = template_img;
            req.mask = soft_mask;
            req.prompt = prompts.positive;
            req.negative_prompt = prompts.negative;
            req.seed = call_seed(cfg.seed, view_index, attempt, sample);
            AcceptedSample out;
            try {
                out.resp = inpaint(req, *services.inpaint, services.retry);
                auto annots = annotate_objects(out.resp.image, *services.vision, services.retry);
                std::vector<std::string> tags;
                for (const auto& a : annots)
                    if (std::find(tags.begin(), tags.end(), a.name) == tags.end())
                        tags.push_back(a.name);
                out.detections = detect_segment(out.resp.image, tags, *services.vision,
                                                services.retry);
            } catch (const Error&) {
                continue;  // this sample yields nothing
            }
            if (accept_image(out.detections, min_count)) {
                scene.log("inpaint-accepted",
                          "view " + std::to_string(view_index) + " attempt " +
                              std::to_string(attempt) + " sample " + std::to_string(sample) +
                              " detections " + std::to_string(out.detections.size()));
                return out;
            }
        }
        scene.log("inpaint-rejected",
                  "view " + std::to_string(view_index) + " attempt " + std::to_string(attempt));
    }
    return std::nullopt;
}

struct LiftedDetections {
    std::vector<Detection3d> floor;
    std::vector<Detection3d> wall;
    std::vector<Detection3d> small;
    std::map<std::string, std::string> descriptions;  // id -> description
};

LiftedDetections lift_detections(SceneState& scene, const PipelineConfig& cfg,
                                 const std::vector<Detection>& detections,
                                 const DepthMap& rescaled, const CameraView& cam) {
    LiftedDetections out;
    int counter = 0;
    for (const auto& det : detections) {
        LiftedInstance lifted;
        try {
            lifted = lift_instance(rescaled, cam, det.mask, cfg.cluster);
        } catch (const Error& e) {
            scene.log("object-skipped", det.name + ": " + e.what());
            continue;
        }
        Rect2 fp = footprint_of(lifted.bbox);
        Rect2 room_rect{{scene.room.x0(), scene.room.y0()}, {scene.room.x1(), scene.room.y1()}};
        if (!rect_intersects(fp, room_rect, 0.0)) {
            scene.log("object-skipped", det.name + ": lifted outside the room");
            continue;
        }
        Detection3d d3;
        d3.id = det.name + "#" + std::to_string(counter++);
        d3.spec.name = det.name;
        d3.spec.description = det.description;
        d3.spec.category = det.category;
        // Degenerate extents happen on grazing views; keep boxes placeable.
        Vec3 dims = lifted.bbox.sizes().cwiseMax(0.01);
        Vec3 c = lifted.bbox.center();
        d3.bbox = {c - dims / 2, c + dims / 2};
        out.descriptions[d3.id] = det.description;
        scene.log("object-lifted", d3.id + " dims " + format_double(dims.x()) + "x" +
                                       format_double(dims.y()) + "x" + format_double(dims.z()));
        switch (det.category) {
            case ObjectCategory::FloorObject: out.floor.push_back(std::move(d3)); break;
            case ObjectCategory::WallObject: out.wall.push_back(std::move(d3)); break;
            default: out.small.push_back(std::move(d3)); break;
        }
    }
    return out;
}

struct ChosenAsset {
    std::string asset_id;
    Vec3 mesh_dims;
};

ChosenAsset choose_asset(const PipelineConfig& cfg, const PipelineServices& services,
                         const Detection3d& det) {
    auto candidates = retrieve_candidates(det.spec.description.empty() ? det.spec.name
                                                                       : det.spec.description,
                                          services.catalog, cfg.retrieve_k);
    const AssetRecord& rec = select_asset(candidates, det.bbox.sizes(), std::nullopt,
                                          cfg.select_lambda);
    return {rec.asset_id, rec.mesh_bbox};
}

void commit_solution(SceneState& scene, const PipelineConfig& cfg,
                     const PipelineServices& services, const PlacementSolution& sol,
                     const std::vector<Detection3d>& dets, bool wall_mode) {
    std::map<std::string, const Detection3d*> by_id;
    for (const auto& d : dets) by_id[d.id] = &d;
    for (const auto& p : sol.placements) {
        const Detection3d* det = by_id.at(p.id);
        ChosenAsset asset = choose_asset(cfg, services, *det);
        Vec3 dims = det->bbox.sizes().cwiseMax(0.01);
        Vec3 scale = dims.cwiseQuotient(asset.mesh_dims);
        std::string id = next_instance_id(scene, det->spec.name);
        Vec3 pos{p.candidate.position.x(), p.candidate.position.y(), p.candidate.box.min.z()};
        scene.instances.push_back(
            make_instance(id, det->spec, asset.asset_id, asset.mesh_dims, pos, p.candidate.yaw,
                          scale));
        scene.log("object-placed", id + (wall_mode ? " wall" : " floor") + " at " +
                                       format_double(pos.x()) + "," + format_double(pos.y()));
    }
    for (const auto& id : sol.skipped) scene.log("object-skipped", id + ": unplaceable");
}

void emit_view_debug(const PipelineConfig& cfg, const Frame& frame, const InpaintMask& mask,
                     const std::string& stem) {
    if (!cfg.emit_debug) return;
    std::filesystem::create_directories(cfg.out_dir);
    write_png(cfg.out_dir + "/" + stem + "_depth.png", depth_to_gray(frame.depth));
    write_png(cfg.out_dir + "/" + stem + "_ids.png", ids_to_rgb(frame.ids));
    ImageGray g(mask.width, mask.height);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            g.set(x, y, static_cast<std::uint8_t>(std::lround(mask.at(x, y) * 255)));
    write_png(cfg.out_dir + "/" + stem + "_mask.png", g);
}

}  // namespace

ServiceOwner make_services(const PipelineConfig& cfg) {
    ServiceOwner owner;
    if (!cfg.mock_script.empty()) {
        auto rig = std::make_shared<MockRig>(MockScript::load(cfg.mock_script));
        owner.services.inpaint = rig.get();
        owner.services.depth = rig.get();
        owner.services.vision = rig.get();
        owner.services.language = rig.get();
        owner.services.sink = rig.get();
        owner.services.retry = {3, std::chrono::milliseconds(1)};
        owner.holder = rig;
    } else {
        auto remote = std::make_shared<RemoteBundle>(cfg);
        owner.services.inpaint = &remote->inpaint;
        owner.services.depth = &remote->depth;
        owner.services.vision = &remote->vision;
        owner.services.language = nullptr;  // language backends are in-process only
        owner.holder = remote;
    }
    owner.services.catalog = AssetCatalog::load(cfg.catalog_path, cfg.seed);
    return owner;
}

SceneState run_furniture_pass(SceneState scene, const PipelineConfig& cfg,
                              PipelineServices& services) {
    ViewPlan plan = room_views(scene.room, cfg.eye_height, cfg.look_height, cfg.fov_deg,
                               cfg.resolution, cfg.resolution);
    plan.stop = cfg.stop;

    int views_used = 0;
    for (std::size_t vi = 0; vi < plan.cameras.size(); ++vi) {
        if (!should_continue(scene, views_used, plan.stop)) break;
        ++views_used;
        scene.log("view-selected", "view " + std::to_string(vi));
        const CameraView& cam = plan.cameras[vi];

        Frame frame = rasterize(scene, cam);
        if (services.sink) services.sink->set_frame_context({scene.room, cam, frame});

        InpaintMask mask;
        try {
            mask = build_inpaint_mask(MaskKind::RoomCentered, frame, cam, nullptr, -1,
                                      ObjectViewKind::OnTop, cfg.mask);
        } catch (const EmptyMaskError& e) {
            scene.log("inpaint-rejected", std::string("view mask empty: ") + e.what());
            continue;
        }
        InpaintMask soft = soften_for(cfg, mask);
        emit_view_debug(cfg, frame, soft, "furniture_view" + std::to_string(vi));

        ImageRgb template_img = render_template_image(frame);
        auto accepted = inpaint_until_accepted(scene, cfg, services, template_img, soft,
                                               static_cast<int>(vi), cfg.min_count_room);
        if (!accepted) continue;

        try {
            DepthMap estimated = estimate_depth(accepted->resp.image, *services.depth,
                                                services.retry);
            if (cfg.depth_is_ray_length) estimated = ray_length_to_z(estimated, cam);
            ReferenceSet refs = select_reference_pixels(ReferenceMode::RoomContext, frame.ids,
                                                        soft);
            RescaledDepth rescaled = rescale_or_shift(estimated, frame.depth, refs);

            LiftedDetections lifted = lift_detections(scene, cfg, accepted->detections,
                                                      rescaled.map, cam);

            // Wall objects too far from a wall re-enter the floor pool.
            std::vector<Detection3d> demoted;
            std::vector<Detection3d> floor_context = lifted.floor;
            for (const auto& inst : scene.instances)
                if (inst.spec.category == ObjectCategory::FloorObject)
                    floor_context.push_back({inst.id, inst.spec, inst.world_bbox});
            ConstraintSet wall_cs = derive_wall_constraints(lifted.wall, floor_context,
                                                            scene.room, cfg.thresholds, &demoted);
            for (auto d : demoted) {
                d.spec.category = ObjectCategory::FloorObject;
                scene.log("object-skipped", d.id + ": demoted to floor candidate");
                lifted.floor.push_back(std::move(d));
            }

            ConstraintSet floor_cs = derive_floor_constraints(lifted.floor, scene.room,
                                                              cfg.thresholds);
            for (auto& c : rotation_constraints(lifted.floor, floor_cs.order, scene, cfg.caption,
                                                services.language, true))
                floor_cs.add(std::move(c));

            std::vector<PlaceableObject> floor_objs;
            for (const auto& d : lifted.floor)
                floor_objs.push_back({d.id, d.spec, d.bbox.sizes().cwiseMax(0.01)});
            PlacerParams params = cfg.placer;
            params.thresholds = cfg.thresholds;
            PlacementSolution sol = dfs_place(floor_objs, floor_cs, scene, params);
            commit_solution(scene, cfg, services, sol, lifted.floor, false);

            std::vector<PlaceableObject> wall_objs;
            for (const auto& d : lifted.wall)
                wall_objs.push_back({d.id, d.spec, d.bbox.sizes().cwiseMax(0.01)});
            PlacementSolution wall_sol = place_wall_objects(wall_objs, wall_cs, scene, params);
            commit_solution(scene, cfg, services, wall_sol, lifted.wall, true);
        } catch (const Error& e) {
            scene.log("object-skipped", "view " + std::to_string(vi) + " failed: " + e.what());
            continue;
        }
    }
    return scene;
}

SceneState run_small_object_pass(SceneState scene, const PipelineConfig& cfg,
                                 PipelineServices& services) {
    // Receptacle marking: the language backend (or a name heuristic inside
    // the mock) decides which floor objects can host small items.
    std::vector<std::string> floor_names;
    for (const auto& inst : scene.instances)
        if (inst.spec.category == ObjectCategory::FloorObject)
            floor_names.push_back(inst.spec.name);
    std::vector<std::string> receptacle_names;
    if (services.language) {
        try {
            receptacle_names = services.language->receptacle_names(floor_names);
        } catch (const Error&) {
            receptacle_names.clear();
        }
    }
    if (!services.language) {
        for (const auto& n : floor_names) {
            std::string low = n;
            std::transform(low.begin(), low.end(), low.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            for (const char* w : {"table", "desk", "shelf", "cabinet"})
                if (low.find(w) != std::string::npos) {
                    receptacle_names.push_back(n);
                    break;
                }
        }
    }

    struct Receptacle {
        std::string id;
        double area;
    };
    std::vector<Receptacle> receptacles;
    for (const auto& inst : scene.instances) {
        if (inst.spec.category != ObjectCategory::FloorObject) continue;
        if (std::find(receptacle_names.begin(), receptacle_names.end(), inst.spec.name) ==
            receptacle_names.end())
            continue;
        receptacles.push_back({inst.id, footprint_of(inst.world_bbox).area()});
    }
    std::sort(receptacles.begin(), receptacles.end(), [](const Receptacle& a, const Receptacle& b) {
        if (a.area != b.area) return a.area > b.area;
        return a.id < b.id;
    });

    for (const auto& rcp : receptacles) {
        // Index and instance are re-resolved per receptacle: commits above may
        // have grown the instance list.
        int support_index = -1;
        for (std::size_t i = 0; i < scene.instances.size(); ++i)
            if (scene.instances[i].id == rcp.id) support_index = static_cast<int>(i);
        if (support_index < 0) continue;
        ObjectInstance support = scene.instances[support_index];

        std::string low = support.spec.name;
        std::transform(low.begin(), low.end(), low.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        ObjectViewKind kind = (low.find("shelf") != std::string::npos ||
                               low.find("cabinet") != std::string::npos ||
                               low.find("bookcase") != std::string::npos)
                                  ? ObjectViewKind::Inside
                                  : ObjectViewKind::OnTop;

        CameraView cam;
        Frame frame;
        InpaintMask mask;
        try {
            cam = object_view(support, kind, cfg.fov_deg, cfg.resolution, cfg.resolution);
            frame = rasterize(scene, cam);
            if (services.sink) services.sink->set_frame_context({scene.room, cam, frame});
            mask = build_inpaint_mask(MaskKind::CubeFill, frame, cam, &support, support_index,
                                      kind, cfg.mask);
        } catch (const Error& e) {
            scene.log("object-skipped", rcp.id + ": " + e.what());
            continue;
        }
        InpaintMask soft = soften_for(cfg, mask);
        emit_view_debug(cfg, frame, soft, "small_" + rcp.id);

        auto accepted = inpaint_until_accepted(scene, cfg, services, render_template_image(frame),
                                               soft, 100 + support_index, cfg.min_count_small);
        if (!accepted) continue;

        try {
            DepthMap estimated = estimate_depth(accepted->resp.image, *services.depth,
                                                services.retry);
            if (cfg.depth_is_ray_length) estimated = ray_length_to_z(estimated, cam);
            ReferenceSet refs = select_reference_pixels(ReferenceMode::FurnitureContext,
                                                        frame.ids, soft, support_index);
            RescaledDepth rescaled = rescale_or_shift(estimated, frame.depth, refs);

            int counter = 0;
            for (const auto& det : accepted->detections) {
                LiftedInstance lifted;
                try {
                    lifted = lift_instance(rescaled.map, cam, det.mask, cfg.cluster);
                } catch (const Error& e) {
                    scene.log("object-skipped", det.name + ": " + e.what());
                    continue;
                }
                Detection3d d3;
                d3.id = det.name + "#s" + std::to_string(counter++);
                d3.spec.name = det.name;
                d3.spec.description = det.description;
                d3.spec.category = ObjectCategory::SmallObject;
                d3.bbox = lifted.bbox;
                scene.log("object-lifted", d3.id);

                try {
                    ChosenAsset asset = choose_asset(cfg, services, d3);
                    std::string id = next_instance_id(scene, det.name);
                    ObjectInstance inst = place_small_object(d3.bbox, id, d3.spec, asset.asset_id,
                                                             asset.mesh_dims, cam.forward,
                                                             support);
                    bool collides = false;
                    for (const auto& other : scene.instances)
                        if (other.spec.category == ObjectCategory::SmallObject &&
                            aabb_intersects(inst.world_bbox, other.world_bbox, 0.0))
                            collides = true;
                    if (collides) {
                        scene.log("object-skipped", id + ": collides with another small object");
                        continue;
                    }
                    scene.instances.push_back(inst);
                    scene.log("object-placed", id + " on " + support.id);
                } catch (const Error& e) {
                    scene.log("object-skipped", d3.id + ": " + e.what());
                }
            }
        } catch (const Error& e) {
            scene.log("object-skipped", rcp.id + ": " + e.what());
            continue;
        }
    }
    return scene;
}

std::string generate(const PipelineConfig& cfg) {
    cfg.validate();
    ServiceOwner owner = make_services(cfg);

    SceneState scene;
    if (cfg.room) {
        cfg.room->check();
        scene.room = *cfg.room;
    } else {
        scene = read_scene(cfg.scene_path);
    }
    scene.rng_seed = cfg.seed;

    scene = run_furniture_pass(std::move(scene), cfg, owner.services);
    scene = run_small_object_pass(std::move(scene), cfg, owner.services);

    auto problems = validate_scene(scene);
    if (!problems.empty()) {
        std::ostringstream msg;
        msg << "scene validation failed:";
        for (const auto& p : problems) msg << "\n  " << p;
        throw ValidationError(msg.str());
    }

    std::filesystem::create_directories(cfg.out_dir);
    std::string path = cfg.out_dir + "/scene.scene.json";
    write_scene(path, scene);
    return path;
}

}  // namespace architect
