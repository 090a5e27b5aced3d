#pragma once

#include "architect/asset_catalog.hpp"
#include "architect/config.hpp"
#include "architect/gateway.hpp"
#include "architect/scene.hpp"

#include <memory>
#include <string>

namespace architect {

// The service bundle the passes run against. `sink`, when set, receives the
// pre-inpaint ground-truth frame before each round of backend calls
// (geometry-aware mocks); `language` may be null, in which case prompt
// building degrades to the caption and receptacle/rotation fall back to
// heuristics.
struct PipelineServices {
    InpaintBackend* inpaint = nullptr;
    DepthBackend* depth = nullptr;
    VisionBackend* vision = nullptr;
    LanguageBackend* language = nullptr;
    FrameContextSink* sink = nullptr;
    AssetCatalog catalog;
    RetryPolicy retry;
};

// Owns backends built from a config (mock rig or remote clients).
struct ServiceOwner {
    PipelineServices services;
    std::shared_ptr<void> holder;
};
ServiceOwner make_services(const PipelineConfig& cfg);

// One Initializing -> Inpainting -> Visual Perception -> Placing loop over
// the room views, stopping on the occupancy rule. Failures skip the view;
// the pass never throws for a view-level problem.
SceneState run_furniture_pass(SceneState scene, const PipelineConfig& cfg,
                              PipelineServices& services);

// Per-receptacle small-object insertion (largest receptacles first).
SceneState run_small_object_pass(SceneState scene, const PipelineConfig& cfg,
                                 PipelineServices& services);

// Loads or builds the room, runs both passes, validates the invariants and
// writes the canonical scene file. Returns the scene file path.
std::string generate(const PipelineConfig& cfg);

}  // namespace architect
