#include "architect/scene.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace architect {

std::string to_string(ObjectCategory c) {
    switch (c) {
        case ObjectCategory::FloorObject: return "floor-object";
        case ObjectCategory::WallObject: return "wall-object";
        default: return "small-object";
    }
}

ObjectCategory category_from_string(const std::string& s) {
    if (s == "floor-object") return ObjectCategory::FloorObject;
    if (s == "wall-object") return ObjectCategory::WallObject;
    if (s == "small-object") return ObjectCategory::SmallObject;
    throw ParseError("unknown object category: " + s);
}

Aabb3 world_bbox_from(const Vec3& asset_dims, const Vec3& position, double yaw,
                      const Vec3& scale) {
    double dx = asset_dims.x() * scale.x();
    double dy = asset_dims.y() * scale.y();
    double dz = asset_dims.z() * scale.z();
    double c = std::abs(std::cos(yaw));
    double s = std::abs(std::sin(yaw));
    double ex = dx * c + dy * s;  // rotated footprint bounds
    double ey = dx * s + dy * c;
    Aabb3 box;
    box.min = {position.x() - ex / 2, position.y() - ey / 2, position.z()};
    box.max = {position.x() + ex / 2, position.y() + ey / 2, position.z() + dz};
    return box;
}

ObjectInstance make_instance(std::string id, ObjectSpec spec, std::string asset_id,
                             const Vec3& asset_dims, const Vec3& position, double yaw,
                             const Vec3& scale) {
    if (!(asset_dims.array() > 0).all()) throw ValidationError("asset dims must be positive");
    if (!(scale.array() > 0).all()) throw ValidationError("scale must be positive");
    ObjectInstance inst;
    inst.id = std::move(id);
    inst.spec = std::move(spec);
    inst.asset_id = std::move(asset_id);
    inst.asset_dims = canon(asset_dims);
    inst.position = canon(position);
    inst.yaw = canon(wrap_yaw(yaw));
    inst.scale = canon(scale);
    Aabb3 raw = world_bbox_from(inst.asset_dims, inst.position, inst.yaw, inst.scale);
    inst.world_bbox = {canon(raw.min), canon(raw.max)};
    return inst;
}

std::vector<std::pair<std::string, int>> inventory_summary(const SceneState& scene) {
    std::map<std::string, int> counts;
    for (const auto& inst : scene.instances) ++counts[inst.spec.name];
    return {counts.begin(), counts.end()};
}

std::vector<std::string> validate_scene(const SceneState& scene) {
    std::vector<std::string> problems;
    try {
        scene.room.check();
    } catch (const Error& e) {
        problems.emplace_back(e.what());
    }

    std::set<std::string> ids;
    for (const auto& inst : scene.instances) {
        if (!ids.insert(inst.id).second) problems.push_back("duplicate instance id: " + inst.id);
        if (!inst.world_bbox.valid()) problems.push_back(inst.id + ": inverted bbox");
        if (!(inst.scale.array() > 0).all()) problems.push_back(inst.id + ": nonpositive scale");
        if (inst.yaw < 0 || inst.yaw >= 2 * kPi) problems.push_back(inst.id + ": yaw out of range");
        if (!scene.room.contains(inst.world_bbox))
            problems.push_back(inst.id + ": outside room bounds");

        Aabb3 redo = world_bbox_from(inst.asset_dims, inst.position, inst.yaw, inst.scale);
        redo = {canon(redo.min), canon(redo.max)};
        double err = std::max((redo.min - inst.world_bbox.min).cwiseAbs().maxCoeff(),
                              (redo.max - inst.world_bbox.max).cwiseAbs().maxCoeff());
        if (err > 1e-9) problems.push_back(inst.id + ": bbox inconsistent with pose");

        if (inst.spec.category == ObjectCategory::WallObject) {
            Vec2 center = inst.world_bbox.center().head<2>();
            int wall = scene.room.nearest_wall(center);
            Vec2 inward = scene.room.wall_inward_normal(wall);
            if (inst.front().dot(inward) < 1.0 - 1e-6)
                problems.push_back(inst.id + ": wall object not facing away from its wall");
        }
    }

    for (std::size_t i = 0; i < scene.instances.size(); ++i) {
        const auto& a = scene.instances[i];
        if (a.spec.category != ObjectCategory::FloorObject) continue;
        for (std::size_t j = i + 1; j < scene.instances.size(); ++j) {
            const auto& b = scene.instances[j];
            if (b.spec.category != ObjectCategory::FloorObject) continue;
            if (aabb_intersects(a.world_bbox, b.world_bbox, 0.0))
                problems.push_back("floor objects overlap: " + a.id + " / " + b.id);
        }
    }
    return problems;
}

}  // namespace architect
