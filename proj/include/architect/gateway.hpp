#pragma once

#include "architect/constraints.hpp"
#include "architect/depth_map.hpp"
#include "architect/image.hpp"
#include "architect/mask.hpp"
#include "architect/raster.hpp"
#include "architect/scene.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace architect {

struct InpaintRequest {
    ImageRgb image;
    InpaintMask mask;
    std::string prompt;
    std::string negative_prompt;
    std::uint64_t seed = 0;
};

struct InpaintResponse {
    ImageRgb image;
};

struct Annotation {
    std::string name;
    std::string description;
    ObjectCategory category = ObjectCategory::FloorObject;
};

struct Detection {
    std::string name;
    std::string description;
    ObjectCategory category = ObjectCategory::FloorObject;
    std::array<int, 4> box{0, 0, 0, 0};  // x0, y0, x1, y1
    BinaryMask mask;
};

struct PromptPair {
    std::string positive;
    std::string negative;
};

struct PromptLists {
    std::vector<std::string> reached_limit;
    std::vector<std::string> lacking;
};

// ---- Backend contracts ----------------------------------------------------

struct InpaintBackend {
    virtual ~InpaintBackend() = default;
    virtual InpaintResponse inpaint(const InpaintRequest& req) = 0;
};

struct DepthBackend {
    virtual ~DepthBackend() = default;
    // Relative depth; callers must rescale before back-projecting.
    virtual DepthMap estimate_depth(const ImageRgb& image) = 0;
};

struct VisionBackend {
    virtual ~VisionBackend() = default;
    // Raw recognition lines, one object per line:
    //   name: description | floor-object/wall-object
    virtual std::string annotate_text(const ImageRgb& image) = 0;
    virtual std::vector<Detection> detect(const ImageRgb& image,
                                          const std::vector<std::string>& tags) = 0;
};

struct LanguageBackend : AnnotatorService {
    // Raw prompt-list reply:
    //   reached limit: object A, object B
    //   lacking: object C, object D
    virtual std::string prompt_lists_text(const std::string& inventory_text,
                                          const std::string& room_caption) = 0;
    virtual std::vector<std::string> receptacle_names(
        const std::vector<std::string>& instance_names) = 0;
};

// Geometry-aware backends (the mock rig) receive the pre-inpaint ground truth
// before each round of calls; remote backends simply don't implement this.
struct FrameContext {
    Room room;
    CameraView cam;
    Frame frame;
};

struct FrameContextSink {
    virtual ~FrameContextSink() = default;
    virtual void set_frame_context(const FrameContext& ctx) = 0;
};

struct RetryPolicy {
    int attempts = 3;
    std::chrono::milliseconds base_delay{500};  // doubled per retry
};

// ---- Gateway operations ----------------------------------------------------

// Calls the backend with retries, checks the response dimensions and restores
// every zero-weight pixel from the request, so mask preservation holds for
// any backend.
InpaintResponse inpaint(const InpaintRequest& req, InpaintBackend& backend,
                        const RetryPolicy& retry = {});

DepthMap estimate_depth(const ImageRgb& image, DepthBackend& backend,
                        const RetryPolicy& retry = {});

// Parses the recognition line format; malformed lines are dropped (collected
// in *warnings when given). Zero parseable lines is a ParseError.
std::vector<Annotation> annotate_objects(const ImageRgb& image, VisionBackend& backend,
                                         const RetryPolicy& retry = {},
                                         std::vector<std::string>* warnings = nullptr);

std::vector<Detection> detect_segment(const ImageRgb& image, const std::vector<std::string>& tags,
                                      VisionBackend& backend, const RetryPolicy& retry = {});

// Parses the backend's reached-limit/lacking reply (a ParseError when neither
// line is present or the lists intersect) and assembles the prompts:
// positive = caption + ", " + lacking; negative = reached-limit.
PromptLists parse_prompt_lists(const std::string& text);
PromptPair build_prompts(const std::vector<std::pair<std::string, int>>& inventory,
                         const std::string& room_caption, LanguageBackend* backend,
                         const RetryPolicy& retry = {});

// Inventory rendered the way prompts expect: "2 sofa, 1 coffee table".
std::string inventory_text(const std::vector<std::pair<std::string, int>>& inventory);

// The acceptance gate of the inpainting loop.
bool accept_image(const std::vector<Detection>& detections, int min_count);

// Parses one recognition line; false when malformed.
bool parse_annotation_line(const std::string& line, Annotation* out);

}  // namespace architect
