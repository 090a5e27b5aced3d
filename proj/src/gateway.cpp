#include "architect/gateway.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>

namespace architect {

namespace {

template <typename Fn>
auto with_retries(Fn&& fn, const RetryPolicy& retry) {
    std::chrono::milliseconds delay = retry.base_delay;
    int attempt = 0;
    for (;;) {
        try {
            return fn();
        } catch (const ServiceError&) {
            if (++attempt >= retry.attempts) throw;
            std::this_thread::sleep_for(delay);
            delay *= 2;
        }
    }
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        std::string t = trim(item);
        if (!t.empty() && t != "none") out.push_back(t);
    }
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

InpaintResponse inpaint(const InpaintRequest& req, InpaintBackend& backend,
                        const RetryPolicy& retry) {
    if (req.mask.width != req.image.width || req.mask.height != req.image.height)
        throw UsageError("inpaint: mask does not match image dimensions");
    InpaintResponse resp = with_retries([&] { return backend.inpaint(req); }, retry);
    if (resp.image.width != req.image.width || resp.image.height != req.image.height)
        throw ServiceError("inpaint backend changed the image dimensions");
    // Zero-weight pixels are kept verbatim regardless of the backend.
    for (int y = 0; y < req.image.height; ++y)
        for (int x = 0; x < req.image.width; ++x)
            if (req.mask.at(x, y) <= 0.0) {
                auto o = req.image.offset(x, y);
                resp.image.pixels[o] = req.image.pixels[o];
                resp.image.pixels[o + 1] = req.image.pixels[o + 1];
                resp.image.pixels[o + 2] = req.image.pixels[o + 2];
            }
    return resp;
}

DepthMap estimate_depth(const ImageRgb& image, DepthBackend& backend, const RetryPolicy& retry) {
    DepthMap d = with_retries([&] { return backend.estimate_depth(image); }, retry);
    if (d.width != image.width || d.height != image.height)
        throw ServiceError("depth backend returned mismatched dimensions");
    return d;
}

bool parse_annotation_line(const std::string& line, Annotation* out) {
    std::size_t colon = line.find(':');
    std::size_t bar = line.find('|');
    if (colon == std::string::npos || bar == std::string::npos || bar < colon) return false;
    std::string name = trim(line.substr(0, colon));
    std::string desc = trim(line.substr(colon + 1, bar - colon - 1));
    std::string cat = lower(trim(line.substr(bar + 1)));
    if (name.empty()) return false;
    ObjectCategory category;
    if (cat == "floor-object")
        category = ObjectCategory::FloorObject;
    else if (cat == "wall-object")
        category = ObjectCategory::WallObject;
    else if (cat == "small-object")
        category = ObjectCategory::SmallObject;
    else
        return false;
    if (out) *out = {name, desc, category};
    return true;
}

std::vector<Annotation> annotate_objects(const ImageRgb& image, VisionBackend& backend,
                                         const RetryPolicy& retry,
                                         std::vector<std::string>* warnings) {
    std::string text = with_retries([&] { return backend.annotate_text(image); }, retry);
    std::vector<Annotation> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        Annotation a;
        if (parse_annotation_line(line, &a)) {
            out.push_back(std::move(a));
        } else if (warnings) {
            warnings->push_back("dropped malformed annotation line: " + line);
        }
    }
    if (out.empty()) throw ParseError("annotation backend produced no parseable lines");
    return out;
}

std::vector<Detection> detect_segment(const ImageRgb& image, const std::vector<std::string>& tags,
                                      VisionBackend& backend, const RetryPolicy& retry) {
    if (tags.empty()) throw UsageError("detect_segment: tags must be nonempty");
    return with_retries([&] { return backend.detect(image, tags); }, retry);
}

std::string inventory_text(const std::vector<std::pair<std::string, int>>& inventory) {
    std::ostringstream out;
    for (std::size_t i = 0; i < inventory.size(); ++i) {
        if (i) out << ", ";
        out << inventory[i].second << ' ' << inventory[i].first;
    }
    return out.str();
}

PromptLists parse_prompt_lists(const std::string& text) {
    PromptLists lists;
    bool saw_any = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::string low = lower(line);
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string tail = line.substr(colon + 1);
        if (low.rfind("reached limit", 0) == 0) {
            lists.reached_limit = split_list(tail);
            saw_any = true;
        } else if (low.rfind("lacking", 0) == 0) {
            lists.lacking = split_list(tail);
            saw_any = true;
        }
    }
    if (!saw_any) throw ParseError("prompt reply lacks 'reached limit:'/'lacking:' lines");
    std::set<std::string> reached(lists.reached_limit.begin(), lists.reached_limit.end());
    for (const auto& l : lists.lacking)
        if (reached.count(l)) throw ParseError("prompt reply lists '" + l + "' as both reached and lacking");
    return lists;
}

PromptPair build_prompts(const std::vector<std::pair<std::string, int>>& inventory,
                         const std::string& room_caption, LanguageBackend* backend,
                         const RetryPolicy& retry) {
    PromptPair out;
    out.positive = room_caption;
    if (!backend) return out;
    std::string text = with_retries(
        [&] { return backend->prompt_lists_text(inventory_text(inventory), room_caption); }, retry);
    PromptLists lists = parse_prompt_lists(text);
    std::string lacking;
    for (std::size_t i = 0; i < lists.lacking.size(); ++i)
        lacking += (i ? ", " : "") + lists.lacking[i];
    std::string reached;
    for (std::size_t i = 0; i < lists.reached_limit.size(); ++i)
        reached += (i ? ", " : "") + lists.reached_limit[i];
    if (!lacking.empty()) out.positive += ", " + lacking;
    out.negative = reached;
    return out;
}

bool accept_image(const std::vector<Detection>& detections, int min_count) {
    if (min_count < 0) throw UsageError("accept_image: negative min_count");
    return static_cast<int>(detections.size()) >= min_count;
}

}  // namespace architect
