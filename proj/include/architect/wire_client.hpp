#pragma once

#include "architect/gateway.hpp"

#include <memory>
#include <string>

namespace architect {

// JSON-over-HTTP clients for external model servers. Field names are fixed:
//   POST /inpaint  {image_b64, mask_b64, prompt, negative_prompt, seed}
//                  -> {image_b64}
//   POST /depth    {image_b64} -> {depth_b64}
//   POST /annotate {image_b64} -> {text}
//   POST /detect   {image_b64, tags} -> {detections: [{name, box, mask_b64,
//                                                      category, description}]}
// Images and masks travel as base64 PNG (masks 8-bit grayscale), depth as a
// base64 DPTH raster. Failures surface as ServiceError; retry policy is the
// caller's.
struct WireOptions {
    int timeout_seconds = 120;
};

// base_url like "http://127.0.0.1:8901".
class RemoteInpaintBackend final : public InpaintBackend {
  public:
    explicit RemoteInpaintBackend(std::string base_url, WireOptions opts = {});
    InpaintResponse inpaint(const InpaintRequest& req) override;

  private:
    std::string base_url_;
    WireOptions opts_;
};

class RemoteDepthBackend final : public DepthBackend {
  public:
    explicit RemoteDepthBackend(std::string base_url, WireOptions opts = {});
    DepthMap estimate_depth(const ImageRgb& image) override;

  private:
    std::string base_url_;
    WireOptions opts_;
};

class RemoteVisionBackend final : public VisionBackend {
  public:
    // Annotation and detection may live on different servers.
    RemoteVisionBackend(std::string annotate_url, std::string detect_url, WireOptions opts = {});
    std::string annotate_text(const ImageRgb& image) override;
    std::vector<Detection> detect(const ImageRgb& image,
                                  const std::vector<std::string>& tags) override;

  private:
    std::string annotate_url_;
    std::string detect_url_;
    WireOptions opts_;
};

// Wire payload helpers (shared with tests and any server implementation).
std::string image_to_b64_png(const ImageRgb& image);
ImageRgb image_from_b64_png(const std::string& b64);
std::string mask_to_b64_png(const InpaintMask& mask);
std::string depth_to_b64(const DepthMap& depth);
DepthMap depth_from_b64(const std::string& b64);

}  // namespace architect
