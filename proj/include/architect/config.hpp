#pragma once

#include "architect/constraints.hpp"
#include "architect/depth_lift.hpp"
#include "architect/placer.hpp"
#include "architect/room.hpp"
#include "architect/view_mask.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace architect {

struct PipelineConfig {
    // Exactly one of `room` / `scene_path` must be set.
    std::optional<Room> room;
    std::string scene_path;

    std::string caption = "a room";
    std::uint64_t seed = 0;

    int resolution = 512;
    double fov_deg = 84.0;
    double eye_height = 1.8;
    double look_height = 0.5;
    StopPolicy stop;

    MaskParams mask;
    double soften_radius_px = -1;  // < 0 -> resolution-scaled default (4 @ 512)
    double soften_sigma_px = -1;   // < 0 -> resolution-scaled default (8 @ 512)

    int min_count_room = 2;
    int min_count_small = 3;
    int max_attempts = 4;
    int samples_per_view = 2;

    ClusterParams cluster;  // zeros -> per-cloud defaults
    ConstraintThresholds thresholds;
    PlacerParams placer;
    double select_lambda = 0.5;
    int retrieve_k = 5;

    std::string catalog_path;
    std::string mock_script;  // mock mode when nonempty
    std::string inpaint_url;
    std::string depth_url;
    std::string annotate_url;
    std::string detect_url;
    bool depth_is_ray_length = false;  // convert remote ray-length depth to z-depth

    std::string out_dir = ".";
    bool emit_debug = false;

    void validate() const;
};

// Structured-text config mirroring the fields above; ARCHITECT_INPAINT_URL,
// ARCHITECT_DEPTH_URL, ARCHITECT_ANNOTATE_URL and ARCHITECT_DETECT_URL
// override the endpoints.
PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& text);

Room parse_room_json(const std::string& text);

}  // namespace architect
