#pragma once

#include "architect/camera.hpp"
#include "architect/depth_map.hpp"
#include "architect/image.hpp"
#include "architect/scene.hpp"

#include <vector>

namespace architect {

using Footprint = Rect2;

struct Frame {
    DepthMap depth;
    InstanceIdMap ids;
};

struct RasterBox {
    int id = 0;  // nonnegative label reported in the id map
    Aabb3 box;
};

// Visible-surface distance of a pixel ray against one box, in the z-depth
// parameter of pixel_ray (entry face from outside, exit face from inside);
// +inf on a miss.
double ray_box_depth(const Vec3& origin, const Vec3& dir, const Aabb3& box);

// Ray-cast depth/id buffers of the room shell (floor, walls, ceiling) plus a
// set of labeled boxes. Depth is z-depth through pixel centers, matching
// backproject exactly. Depth ties prefer boxes over the shell, then the lower
// id.
Frame rasterize_boxes(const Room& room, const std::vector<RasterBox>& boxes,
                      const CameraView& cam);

// Scene instances are labeled by their index in scene.instances; assets are
// rendered as their world_bbox box proxies.
Frame rasterize(const SceneState& scene, const CameraView& cam);

// Fraction of the floor footprint visible from `cam` in an empty room. A
// floor cell counts as visible when any point of the vertical column above it
// (up to wall height) projects on-screen with positive depth and is not
// blocked by a wall. Instances are ignored; there is no ceiling in this
// model, so elevated cameras can look into the room.
double floor_visibility(const Room& room, const CameraView& cam, int grid = 200,
                        int column_samples = 64);

// Union area of floor-object footprints over the room floor area, evaluated
// on a fixed uniform grid so overlaps are counted once.
double occupancy(const SceneState& scene, int grid = 512);

// Flat-shaded template image used as the inpainting background.
ImageRgb render_template_image(const Frame& frame);

// Debug rasters: depth normalized to grayscale, ids to a fixed palette.
ImageGray depth_to_gray(const DepthMap& depth);
ImageRgb ids_to_rgb(const InstanceIdMap& ids);

}  // namespace architect
