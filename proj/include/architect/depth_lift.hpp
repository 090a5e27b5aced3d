#pragma once

#include "architect/aabb.hpp"
#include "architect/camera.hpp"
#include "architect/depth_map.hpp"
#include "architect/mask.hpp"
#include "architect/types.hpp"

#include <vector>

namespace architect {

struct PointCloud {
    std::vector<Vec3> points;
};

enum class ReferenceMode { RoomContext, FurnitureContext };

struct ReferenceSet {
    std::vector<Vec2i> pixels;
    ReferenceMode mode = ReferenceMode::RoomContext;
};

struct RescaleStats {
    double max_r = 0, min_r = 0, max_e = 0, min_e = 0;
    double scale = 1.0;
    double shift = 0.0;  // -mean(D_e | P_r) * scale + mean(D_r | P_r)
    std::size_t n = 0;
};

struct RescaledDepth {
    DepthMap map;
    RescaleStats stats;
};

struct ClusterParams {
    double eps = 0;    // meters; <= 0 selects the scale-relative default
    int min_pts = 0;   // <= 0 selects the size-relative default
};

// Room context: every pixel with mask weight 0. Furniture context: those
// pixels whose id equals furniture_id. Throws InsufficientReferenceError when
// fewer than 2 pixels qualify.
ReferenceSet select_reference_pixels(ReferenceMode mode, const InstanceIdMap& id_map,
                                     const InpaintMask& inpaint_mask, int furniture_id = -1);

// D_rescaled = D_e * scale - mean(D_e|P_r) * scale + mean(D_r|P_r) with
// scale = (max_r - min_r) / (max_e - min_e) over the reference pixels.
// Reference pixels invalid in either map are dropped; fewer than 2 left is an
// InsufficientReferenceError, a zero estimated range a DegenerateScaleError.
// Output pixels whose rescaled value is nonpositive are marked invalid.
RescaledDepth rescale_depth(const DepthMap& estimated, const DepthMap& reference,
                            const ReferenceSet& refs);

// Mean-shift alignment used as the degenerate-scale fallback.
RescaledDepth rescale_depth_shift_only(const DepthMap& estimated, const DepthMap& reference,
                                       const ReferenceSet& refs);

// rescale_depth with automatic fallback on DegenerateScaleError.
RescaledDepth rescale_or_shift(const DepthMap& estimated, const DepthMap& reference,
                               const ReferenceSet& refs);

// DBSCAN labels: -1 noise, else cluster ids assigned in scan order (so the
// cluster containing the lowest-index core point gets id 0). Neighborhoods
// are closed balls (dist <= eps) counting the point itself.
std::vector<int> dbscan_labels(const std::vector<Vec3>& points, double eps, int min_pts);

// eps = 5% of the cloud bbox diagonal, min_pts = max(4, 1% of cloud size).
ClusterParams default_cluster_params(const std::vector<Vec3>& points);

// Indices of the largest cluster, ascending (ties -> lowest cluster id).
// Throws NoClusterError when every point is noise.
std::vector<std::size_t> largest_cluster(const std::vector<Vec3>& points,
                                         const ClusterParams& params);

struct LiftedInstance {
    PointCloud cloud;
    Aabb3 bbox;
};

// Back-projects the masked valid pixels of a rescaled depth map, keeps the
// densest cluster and returns it with its bounds.
LiftedInstance lift_instance(const DepthMap& rescaled, const CameraView& cam,
                             const BinaryMask& instance_mask, const ClusterParams& params);

}  // namespace architect
