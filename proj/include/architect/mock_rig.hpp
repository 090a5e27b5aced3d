#pragma once

#include "architect/gateway.hpp"

#include <optional>
#include <string>
#include <vector>

namespace architect {

// Scripted behavior of the whole perception stack. `calls` are keyed by
// inpaint call index: each entry lists the synthetic objects (with ground
// truth world boxes) the mock inpainter paints into the masked region of that
// call. Depth estimates are the ground-truth depth of scene + sprites mapped
// through a*d + b (or a constant, to exercise the degenerate-scale fallback).
struct MockScript {
    struct ScriptObject {
        std::string name;
        std::string description;
        ObjectCategory category = ObjectCategory::FloorObject;
        Aabb3 bbox;
    };
    struct Call {
        std::vector<ScriptObject> objects;
    };

    double depth_a = 1.0;
    double depth_b = 0.0;
    std::optional<double> depth_constant;
    int min_sprite_pixels = 20;
    std::vector<Call> calls;
    std::vector<PromptLists> prompt_lists;
    std::vector<std::pair<std::string, std::string>> rotation_hints;  // by object name
    std::vector<std::string> receptacles;                             // by instance name
    std::vector<std::string> annotate_extra_lines;

    static MockScript load(const std::string& path);
    static MockScript parse_json(const std::string& text);
};

// Deterministic in-process stand-in for the inpainting, depth, detection and
// language services. Needs the pre-inpaint ground-truth frame before each
// round of calls (FrameContextSink).
class MockRig final : public InpaintBackend,
                      public DepthBackend,
                      public VisionBackend,
                      public LanguageBackend,
                      public FrameContextSink {
  public:
    explicit MockRig(MockScript script) : script_(std::move(script)) {}

    void set_frame_context(const FrameContext& ctx) override;

    InpaintResponse inpaint(const InpaintRequest& req) override;
    DepthMap estimate_depth(const ImageRgb& image) override;
    std::string annotate_text(const ImageRgb& image) override;
    std::vector<Detection> detect(const ImageRgb& image,
                                  const std::vector<std::string>& tags) override;
    std::string prompt_lists_text(const std::string& inventory_text,
                                  const std::string& room_caption) override;
    std::vector<std::string> receptacle_names(
        const std::vector<std::string>& instance_names) override;
    std::vector<std::pair<std::string, std::string>> rotation_hints(
        const std::vector<Detection3d>& objects, const std::string& scene_summary) override;

    int inpaint_calls() const { return inpaint_calls_; }
    // Ground-truth boxes of the sprites stamped by the last inpaint call.
    const std::vector<MockScript::ScriptObject>& last_sprites() const { return last_objects_; }

  private:
    struct Sprite {
        MockScript::ScriptObject obj;
        BinaryMask stamped;
        long stamped_count = 0;
    };

    MockScript script_;
    std::optional<FrameContext> ctx_;
    int inpaint_calls_ = 0;
    int prompt_calls_ = 0;
    std::vector<Sprite> sprites_;
    std::vector<MockScript::ScriptObject> last_objects_;
    DepthMap eval_depth_;  // what a depth model would see on the stamped image
};

}  // namespace architect
