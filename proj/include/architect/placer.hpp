#pragma once

#include "architect/constraints.hpp"
#include "architect/scene.hpp"

#include <map>
#include <string>
#include <vector>

namespace architect {

struct OversizeError : Error {
    using Error::Error;
};

struct ScoringWeights {
    double w_loc = 1.0;       // W_loc
    double w_rotation = 5.0;  // W_rotation
    double w_object = 1.0;    // default w_i
    double w_cur = 1.0;
    double constant = 1.0;  // C, keeps scores positive
    double delta_floor = 0.01;
    std::map<std::string, double> per_object;  // w_i overrides by object id

    double object_weight(const std::string& id) const {
        auto it = per_object.find(id);
        return it == per_object.end() ? w_object : it->second;
    }
};

struct PlacerParams {
    double grid_step = 0.1;
    int branch = 3;
    long max_nodes = 2000;  // explored-node budget of the DFS
    ScoringWeights weights;
    ConstraintThresholds thresholds;
};

// What the placer needs to know about an object before it has a pose:
// world-space box dims at yaw 0 (asset dims pre-multiplied by scale).
struct PlaceableObject {
    std::string id;
    ObjectSpec spec;
    Vec3 dims{1, 1, 1};
};

struct Candidate {
    Vec2 position{0, 0};  // footprint center, grid-snapped
    double yaw = 0;
    Aabb3 box;  // world bounds at (position, yaw)
    double delta_cur = 0;
    double sum_delta_w = 0;  // sum over placed objects of dist * w_i
    int rotation_satisfied = 0;
    double score = 0;
};

struct Placement {
    std::string id;
    Candidate candidate;
};

struct PlacementSolution {
    std::vector<Placement> placements;
    std::vector<std::string> skipped;
    double total_score = 0;
    long nodes_expanded = 0;
    long nodes_pruned = 0;
};

// S_p = W_loc * (sum_i delta_i * w_i + w_cur / max(delta_cur, delta_floor) + C)
//     + W_rotation * rotation_satisfied. Higher is better.
double score_placement(const Candidate& c, const ScoringWeights& w);

// Axis-aligned bounds of a `dims` box footprint-centered at `position` with
// the given yaw, base at z = base_z.
Aabb3 candidate_box(const Vec3& dims, const Vec2& position, double yaw, double base_z = 0.0);

// Floor-object candidates: grid positions at grid_step spacing, the four
// canonical yaws plus FaceTo-implied headings, filtered by room containment,
// the object's hard global constraints, and collision against the scene's
// instances. Score terms are computed against the scene's floor objects.
// Empty result means the object is unplaceable in this context.
std::vector<Candidate> enumerate_candidates(const PlaceableObject& object,
                                            const ConstraintSet& constraints,
                                            const SceneState& scene, const PlacerParams& params);

// Wall-object candidates along the wall planes; the vertical coordinate comes
// from the Height constraint and yaw from the wall's inward normal. Collision
// is checked against doors, windows and other wall objects.
std::vector<Candidate> enumerate_wall_candidates(const PlaceableObject& object,
                                                 const ConstraintSet& constraints,
                                                 const SceneState& scene,
                                                 const PlacerParams& params);

// Greedy depth-first search in `constraints.order`: at every node the
// candidates are scored and the `branch` best (ties by (x, y, yaw)) are
// expanded, within the explored-node budget; objects with no feasible
// candidate under a prefix are skipped there. Returns the best completed
// assignment found. With branch >= candidate count and an unlimited budget
// the search is exhaustive.
PlacementSolution dfs_place(const std::vector<PlaceableObject>& objects,
                            const ConstraintSet& constraints, const SceneState& scene,
                            const PlacerParams& params);

// Same search over wall objects.
PlacementSolution place_wall_objects(const std::vector<PlaceableObject>& objects,
                                     const ConstraintSet& constraints, const SceneState& scene,
                                     const PlacerParams& params);

// Small-object insertion: position at the target footprint center, base
// snapped onto the support surface underneath (top face, or the box floor for
// interior placement), yaw from the target's dominant horizontal axis, and a
// single uniform scale from the two bbox dimensions most perpendicular to
// view_dir (geometric mean of the ratios). Throws OversizeError when the
// scaled footprint exceeds the support's by more than 20%.
ObjectInstance place_small_object(const Aabb3& target_bbox, const std::string& instance_id,
                                  const ObjectSpec& spec, const std::string& asset_id,
                                  const Vec3& asset_dims, const Vec3& view_dir,
                                  const ObjectInstance& support);

}  // namespace architect
