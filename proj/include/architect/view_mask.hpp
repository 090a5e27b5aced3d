#pragma once

#include "architect/camera.hpp"
#include "architect/mask.hpp"
#include "architect/raster.hpp"
#include "architect/scene.hpp"

#include <vector>

namespace architect {

struct StopPolicy {
    double occupancy_threshold = 0.7;
    int max_views = 3;
};

struct ViewPlan {
    std::vector<CameraView> cameras;
    StopPolicy stop;
};

enum class ObjectViewKind { OnTop, Inside };
enum class MaskKind { RoomCentered, CubeFill };

struct MaskParams {
    double centered_width_frac = 0.70;
    double centered_height_frac = 0.60;
    double cube_shrink = 0.90;
    double on_top_cube_height = 0.35;  // meters
};

// The three room views: corner (x,y) -> (0,0), front middle -> back middle,
// corner (0,y) -> (x,0); eyes at 1.8 m looking at 0.5 m height.
ViewPlan room_views(const Room& room, double eye_height = 1.8, double look_height = 0.5,
                    double fov_deg = 84.0, int width = 512, int height = 512);

// True while occupancy(scene) <= threshold and views_used < max_views.
bool should_continue(const SceneState& scene, int views_used, const StopPolicy& stop = {});

// Camera for small-object inpainting around one piece of furniture: a 30deg
// front-top view for on-top placement, a level front view for inside. The
// distance starts at (max lateral extent / 2) / tan(fov/2) * 1.2 and grows
// until every bbox corner projects within a 2% frame margin.
CameraView object_view(const ObjectInstance& instance, ObjectViewKind kind, double fov_deg = 84.0,
                       int width = 512, int height = 512);

// Room-centered: an axis-aligned rectangle covering the configured fractions
// of the frame, minus every pixel of an existing instance. Cube-fill: the
// projection of a virtual cube placed on top of (fixed height) or inside
// (shrunk) `target`, keeping pixels where the cube would be the nearest
// surface; pixels of any other instance are excluded and recorded, so
// existing objects never get painted over while the target's own surface
// stays paintable. Throws EmptyMaskError when nothing remains.
InpaintMask build_inpaint_mask(MaskKind kind, const Frame& frame, const CameraView& cam,
                               const ObjectInstance* target = nullptr, int target_id = -1,
                               ObjectViewKind cube_kind = ObjectViewKind::OnTop,
                               const MaskParams& params = {});

// Virtual cube used by the cube-fill mask.
Aabb3 cube_fill_box(const ObjectInstance& target, ObjectViewKind kind,
                    const MaskParams& params = {});

// Binary erosion by a disc then truncated Gaussian blur (3 sigma). radius and
// sigma 0 are the identity.
InpaintMask soften_mask(const InpaintMask& mask, double erosion_radius_px, double blur_sigma_px);

// Default softening scaled with resolution: radius 4 px and sigma 8 px at 512.
InpaintMask soften_mask_default(const InpaintMask& mask);

}  // namespace architect
