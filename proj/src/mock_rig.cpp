#include "architect/mock_rig.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace architect {

namespace {

using nlohmann::json;

Aabb3 parse_bbox(const json& j) {
    auto v3 = [](const json& a) { return Vec3(a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>()); };
    return {v3(j.at("min")), v3(j.at("max"))};
}

}  // namespace

MockScript MockScript::parse_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("mock script: ") + e.what());
    }
    MockScript s;
    if (doc.contains("depth_affine")) {
        s.depth_a = doc["depth_affine"].value("a", 1.0);
        s.depth_b = doc["depth_affine"].value("b", 0.0);
    }
    if (doc.contains("depth_constant")) s.depth_constant = doc["depth_constant"].get<double>();
    s.min_sprite_pixels = doc.value("min_sprite_pixels", 20);
    for (const auto& jc : doc.value("calls", json::array())) {
        Call call;
        for (const auto& jo : jc.value("objects", json::array())) {
            ScriptObject obj;
            obj.name = jo.at("name").get<std::string>();
            obj.description = jo.value("description", obj.name);
            obj.category = category_from_string(jo.value("category", std::string("floor-object")));
            obj.bbox = parse_bbox(jo.at("bbox"));
            call.objects.push_back(std::move(obj));
        }
        s.calls.push_back(std::move(call));
    }
    for (const auto& jp : doc.value("prompt_lists", json::array())) {
        PromptLists p;
        for (const auto& r : jp.value("reached_limit", json::array()))
            p.reached_limit.push_back(r.get<std::string>());
        for (const auto& l : jp.value("lacking", json::array()))
            p.lacking.push_back(l.get<std::string>());
        s.prompt_lists.push_back(std::move(p));
    }
    for (const auto& jh : doc.value("rotation_hints", json::array()))
        s.rotation_hints.emplace_back(jh.at("subject").get<std::string>(),
                                      jh.at("target").get<std::string>());
    for (const auto& r : doc.value("receptacles", json::array()))
        s.receptacles.push_back(r.get<std::string>());
    for (const auto& l : doc.value("annotate_extra_lines", json::array()))
        s.annotate_extra_lines.push_back(l.get<std::string>());
    return s;
}

MockScript MockScript::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open mock script: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

void MockRig::set_frame_context(const FrameContext& ctx) { ctx_ = ctx; }

InpaintResponse MockRig::inpaint(const InpaintRequest& req) {
    if (!ctx_) throw ServiceError("mock rig: no frame context set");
    const Frame& frame = ctx_->frame;
    if (frame.depth.width != req.image.width || frame.depth.height != req.image.height)
        throw ServiceError("mock rig: frame context does not match request dimensions");

    int call = inpaint_calls_++;
    last_objects_.clear();
    if (call < static_cast<int>(script_.calls.size()))
        last_objects_ = script_.calls[call].objects;

    const int w = req.image.width, h = req.image.height;
    sprites_.clear();
    sprites_.reserve(last_objects_.size());
    for (const auto& obj : last_objects_) sprites_.push_back({obj, BinaryMask(w, h), 0});

    eval_depth_ = frame.depth;
    InpaintResponse resp{req.image};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            Vec3 dir = pixel_ray(x + 0.5, y + 0.5, ctx_->cam);
            double best = frame.depth.is_valid(x, y) ? frame.depth.at(x, y)
                                                     : std::numeric_limits<double>::infinity();
            int owner = -1;
            for (std::size_t s = 0; s < sprites_.size(); ++s) {
                double t = ray_box_depth(ctx_->cam.eye, dir, sprites_[s].obj.bbox);
                if (t < best) {
                    best = t;
                    owner = static_cast<int>(s);
                }
            }
            if (owner < 0 || req.mask.at(x, y) <= 0.0) continue;
            sprites_[owner].stamped.set(x, y);
            ++sprites_[owner].stamped_count;
            eval_depth_.set(x, y, best);
            std::uint32_t hsh = (static_cast<std::uint32_t>(owner) + 7) * 2654435761u;
            resp.image.set(x, y, static_cast<std::uint8_t>(80 + (hsh & 0x7f)),
                           static_cast<std::uint8_t>(80 + ((hsh >> 8) & 0x7f)),
                           static_cast<std::uint8_t>(80 + ((hsh >> 16) & 0x7f)));
        }
    }
    return resp;
}

DepthMap MockRig::estimate_depth(const ImageRgb& image) {
    if (!ctx_) throw ServiceError("mock rig: no frame context set");
    DepthMap out(image.width, image.height);
    if (script_.depth_constant) {
        for (int y = 0; y < out.height; ++y)
            for (int x = 0; x < out.width; ++x) out.set(x, y, *script_.depth_constant);
        return out;
    }
    if (eval_depth_.width != image.width || eval_depth_.height != image.height)
        throw ServiceError("mock rig: depth requested before inpaint");
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            if (eval_depth_.is_valid(x, y))
                out.set(x, y, script_.depth_a * eval_depth_.at(x, y) + script_.depth_b);
    return out;
}

std::string MockRig::annotate_text(const ImageRgb&) {
    std::ostringstream out;
    for (const auto& s : sprites_)
        if (s.stamped_count >= script_.min_sprite_pixels)
            out << s.obj.name << ": " << s.obj.description << " | " << to_string(s.obj.category)
                << '\n';
    for (const auto& l : script_.annotate_extra_lines) out << l << '\n';
    return out.str();
}

std::vector<Detection> MockRig::detect(const ImageRgb&, const std::vector<std::string>& tags) {
    std::vector<Detection> out;
    for (const auto& s : sprites_) {
        if (s.stamped_count < script_.min_sprite_pixels) continue;
        if (std::find(tags.begin(), tags.end(), s.obj.name) == tags.end()) continue;
        Detection d;
        d.name = s.obj.name;
        d.description = s.obj.description;
        d.category = s.obj.category;
        d.mask = s.stamped;
        int x0 = s.stamped.width, y0 = s.stamped.height, x1 = -1, y1 = -1;
        for (int y = 0; y < s.stamped.height; ++y)
            for (int x = 0; x < s.stamped.width; ++x)
                if (s.stamped.at(x, y)) {
                    x0 = std::min(x0, x);
                    y0 = std::min(y0, y);
                    x1 = std::max(x1, x);
                    y1 = std::max(y1, y);
                }
        d.box = {x0, y0, x1, y1};
        out.push_back(std::move(d));
    }
    return out;
}

std::string MockRig::prompt_lists_text(const std::string&, const std::string&) {
    PromptLists lists;
    if (prompt_calls_ < static_cast<int>(script_.prompt_lists.size()))
        lists = script_.prompt_lists[prompt_calls_];
    else
        lists.lacking = {"sofa", "table"};
    ++prompt_calls_;
    std::ostringstream out;
    out << "reached limit: ";
    for (std::size_t i = 0; i < lists.reached_limit.size(); ++i)
        out << (i ? ", " : "") << lists.reached_limit[i];
    out << "\nlacking: ";
    for (std::size_t i = 0; i < lists.lacking.size(); ++i) out << (i ? ", " : "") << lists.lacking[i];
    out << "\n";
    return out.str();
}

std::vector<std::string> MockRig::receptacle_names(const std::vector<std::string>& instance_names) {
    std::vector<std::string> out;
    if (!script_.receptacles.empty()) {
        for (const auto& n : instance_names)
            if (std::find(script_.receptacles.begin(), script_.receptacles.end(), n) !=
                script_.receptacles.end())
                out.push_back(n);
        return out;
    }
    for (const auto& n : instance_names) {
        std::string low = n;
        std::transform(low.begin(), low.end(), low.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        for (const char* w : {"table", "desk", "shelf", "cabinet", "bookcase", "dresser",
                              "nightstand", "counter"})
            if (low.find(w) != std::string::npos) {
                out.push_back(n);
                break;
            }
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> MockRig::rotation_hints(
    const std::vector<Detection3d>& objects, const std::string&) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [sn, tn] : script_.rotation_hints) {
        const Detection3d* subject = nullptr;
        const Detection3d* target = nullptr;
        for (const auto& o : objects) {
            if (!subject && o.spec.name == sn) subject = &o;
            if (!target && o.spec.name == tn) target = &o;
        }
        if (subject && target && subject->id != target->id)
            out.emplace_back(subject->id, target->id);
    }
    return out;
}

}  // namespace architect
