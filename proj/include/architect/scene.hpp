#pragma once

#include "architect/aabb.hpp"
#include "architect/room.hpp"
#include "architect/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace architect {

enum class ObjectCategory { FloorObject, WallObject, SmallObject };

std::string to_string(ObjectCategory c);
ObjectCategory category_from_string(const std::string& s);

struct ObjectSpec {
    std::string name;
    std::string description;
    ObjectCategory category = ObjectCategory::FloorObject;
    std::optional<Vec3> nominal_scale;  // common-sense dims in meters, if annotated
};

// Placed object. The asset occupies x in [-dx/2, dx/2], y in [-dy/2, dy/2],
// z in [0, dz] in its local frame; `position` is the world location of the
// base center, `yaw` rotates about +z, and the front axis at yaw 0 is +x.
// `world_bbox` is the axis-aligned bounds of the transformed asset box.
struct ObjectInstance {
    std::string id;
    ObjectSpec spec;
    std::string asset_id;
    Vec3 position{0, 0, 0};
    double yaw = 0;
    Vec3 scale{1, 1, 1};
    Aabb3 world_bbox;
    Vec3 asset_dims{1, 1, 1};  // derived cache, not serialized

    Vec2 front() const { return {std::cos(yaw), std::sin(yaw)}; }
};

struct PassEvent {
    int ordinal = 0;
    std::string kind;  // view-selected | inpaint-accepted | inpaint-rejected |
                       // object-lifted | object-placed | object-skipped
    std::string payload;
};

struct SceneState {
    Room room;
    std::vector<ObjectInstance> instances;
    std::uint64_t rng_seed = 0;
    std::vector<PassEvent> pass_log;

    void log(const std::string& kind, const std::string& payload) {
        pass_log.push_back({static_cast<int>(pass_log.size()), kind, payload});
    }
    const ObjectInstance* find(const std::string& id) const {
        for (const auto& inst : instances)
            if (inst.id == id) return &inst;
        return nullptr;
    }
};

// World bounds of the asset box under (position, yaw, scale).
Aabb3 world_bbox_from(const Vec3& asset_dims, const Vec3& position, double yaw, const Vec3& scale);

// Builds an instance with canonicalized float fields and a consistent bbox.
ObjectInstance make_instance(std::string id, ObjectSpec spec, std::string asset_id,
                             const Vec3& asset_dims, const Vec3& position, double yaw,
                             const Vec3& scale);

// Name/count pairs grouped by spec.name, sorted by name.
std::vector<std::pair<std::string, int>> inventory_summary(const SceneState& scene);

// Checks every SceneState invariant (unique ids, containment, floor-object
// disjointness, bbox consistency, wall-object orientation). Returns human
// readable violations; empty means valid.
std::vector<std::string> validate_scene(const SceneState& scene);

}  // namespace architect
