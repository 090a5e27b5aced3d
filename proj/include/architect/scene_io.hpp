#pragma once

#include "architect/scene.hpp"

#include <string>

namespace architect {

// Canonical scene document (.scene.json): top-level keys room, instances,
// seed, log in that order; instances carry id, name, description, category,
// asset_id, position, yaw, scale, bbox. All floats use the canonical
// 9-significant-digit decimal form, so serialization is deterministic and
// byte-exact for equal states.
std::string serialize_scene(const SceneState& scene);
SceneState deserialize_scene(const std::string& text);

void write_scene(const std::string& path, const SceneState& scene);
SceneState read_scene(const std::string& path);

// Field-wise equality over everything the canonical document stores.
bool scenes_equal(const SceneState& a, const SceneState& b);

}  // namespace architect
