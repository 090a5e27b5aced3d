#include "architect/wire_client.hpp"

#include "architect/base64.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <cmath>

namespace architect {

namespace {

using nlohmann::json;

json post_json(const std::string& base_url, const std::string& path, const json& body,
               const WireOptions& opts) {
    httplib::Client client(base_url);
    client.set_connection_timeout(opts.timeout_seconds, 0);
    client.set_read_timeout(opts.timeout_seconds, 0);
    client.set_write_timeout(opts.timeout_seconds, 0);
    auto res = client.Post(path, body.dump(), "application/json");
    if (!res) throw ServiceError(path + ": " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw ServiceError(path + ": HTTP " + std::to_string(res->status));
    try {
        return json::parse(res->body);
    } catch (const json::exception& e) {
        throw ServiceError(path + ": bad JSON reply: " + e.what());
    }
}

}  // namespace

std::string image_to_b64_png(const ImageRgb& image) { return base64_encode(encode_png(image)); }

ImageRgb image_from_b64_png(const std::string& b64) {
    auto bytes = base64_decode(b64);
    return decode_png_rgb(bytes.data(), bytes.size());
}

std::string mask_to_b64_png(const InpaintMask& mask) {
    ImageGray g(mask.width, mask.height);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            g.set(x, y, static_cast<std::uint8_t>(std::lround(std::clamp(mask.at(x, y), 0.0, 1.0) * 255.0)));
    return base64_encode(encode_png(g));
}

std::string depth_to_b64(const DepthMap& depth) { return base64_encode(encode_dpth(depth)); }

DepthMap depth_from_b64(const std::string& b64) {
    auto bytes = base64_decode(b64);
    return decode_dpth(bytes.data(), bytes.size());
}

RemoteInpaintBackend::RemoteInpaintBackend(std::string base_url, WireOptions opts)
    : base_url_(std::move(base_url)), opts_(opts) {}

InpaintResponse RemoteInpaintBackend::inpaint(const InpaintRequest& req) {
    json body;
    body["image_b64"] = image_to_b64_png(req.image);
    body["mask_b64"] = mask_to_b64_png(req.mask);
    body["prompt"] = req.prompt;
    body["negative_prompt"] = req.negative_prompt;
    body["seed"] = req.seed;
    json reply = post_json(base_url_, "/inpaint", body, opts_);
    try {
        return {image_from_b64_png(reply.at("image_b64").get<std::string>())};
    } catch (const ParseError& e) {
        throw ServiceError(std::string("/inpaint: ") + e.what());
    } catch (const json::exception& e) {
        throw ServiceError(std::string("/inpaint: ") + e.what());
    }
}

RemoteDepthBackend::RemoteDepthBackend(std::string base_url, WireOptions opts)
    : base_url_(std::move(base_url)), opts_(opts) {}

DepthMap RemoteDepthBackend::estimate_depth(const ImageRgb& image) {
    json body;
    body["image_b64"] = image_to_b64_png(image);
    json reply = post_json(base_url_, "/depth", body, opts_);
    try {
        return depth_from_b64(reply.at("depth_b64").get<std::string>());
    } catch (const ParseError& e) {
        throw ServiceError(std::string("/depth: ") + e.what());
    } catch (const json::exception& e) {
        throw ServiceError(std::string("/depth: ") + e.what());
    }
}

RemoteVisionBackend::RemoteVisionBackend(std::string annotate_url, std::string detect_url,
                                         WireOptions opts)
    : annotate_url_(std::move(annotate_url)), detect_url_(std::move(detect_url)), opts_(opts) {}

std::string RemoteVisionBackend::annotate_text(const ImageRgb& image) {
    json body;
    body["image_b64"] = image_to_b64_png(image);
    json reply = post_json(annotate_url_, "/annotate", body, opts_);
    try {
        return reply.at("text").get<std::string>();
    } catch (const json::exception& e) {
        throw ServiceError(std::string("/annotate: ") + e.what());
    }
}

std::vector<Detection> RemoteVisionBackend::detect(const ImageRgb& image,
                                                   const std::vector<std::string>& tags) {
    json body;
    body["image_b64"] = image_to_b64_png(image);
    body["tags"] = tags;
    json reply = post_json(detect_url_, "/detect", body, opts_);
    std::vector<Detection> out;
    try {
        for (const auto& jd : reply.at("detections")) {
            Detection d;
            d.name = jd.at("name").get<std::string>();
            d.description = jd.value("description", "");
            d.category = category_from_string(jd.value("category", std::string("floor-object")));
            auto jb = jd.at("box");
            d.box = {jb.at(0).get<int>(), jb.at(1).get<int>(), jb.at(2).get<int>(),
                     jb.at(3).get<int>()};
            auto mask_bytes = base64_decode(jd.at("mask_b64").get<std::string>());
            ImageGray g = decode_png_gray(mask_bytes.data(), mask_bytes.size());
            if (g.width != image.width || g.height != image.height)
                throw ServiceError("/detect: mask dimensions do not match the image");
            d.mask = BinaryMask(g.width, g.height);
            for (int y = 0; y < g.height; ++y)
                for (int x = 0; x < g.width; ++x)
                    if (g.at(x, y) >= 128) d.mask.set(x, y);
            out.push_back(std::move(d));
        }
    } catch (const ParseError& e) {
        throw ServiceError(std::string("/detect: ") + e.what());
    } catch (const json::exception& e) {
        throw ServiceError(std::string("/detect: ") + e.what());
    }
    return out;
}

}  // namespace architect
