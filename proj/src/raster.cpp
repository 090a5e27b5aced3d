#include "architect/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace architect {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTEps = 1e-9;

// Slab intersection in the z-depth parameter t (dir is the pixel ray, not
// normalized). Returns the visible surface distance: the entry face from
// outside, the exit face when the origin is inside the box.
double ray_box_t(const Vec3& origin, const Vec3& dir, const Aabb3& box) {
    double t0 = -kInf, t1 = kInf;
    for (int k = 0; k < 3; ++k) {
        if (std::abs(dir[k]) < 1e-15) {
            if (origin[k] < box.min[k] || origin[k] > box.max[k]) return kInf;
            continue;
        }
        double a = (box.min[k] - origin[k]) / dir[k];
        double b = (box.max[k] - origin[k]) / dir[k];
        if (a > b) std::swap(a, b);
        t0 = std::max(t0, a);
        t1 = std::min(t1, b);
        if (t0 > t1) return kInf;
    }
    if (t0 > kTEps) return t0;
    if (t1 > kTEps) return t1;
    return kInf;
}

}  // namespace

double ray_box_depth(const Vec3& origin, const Vec3& dir, const Aabb3& box) {
    return ray_box_t(origin, dir, box);
}

namespace {

struct ShellHit {
    double t = kInf;
    int id = InstanceIdMap::kNone;
};

ShellHit shell_hit(const Room& room, const Vec3& origin, const Vec3& dir) {
    Aabb3 shell{{room.x0(), room.y0(), 0.0}, {room.x1(), room.y1(), room.wall_height}};
    double t = ray_box_t(origin, dir, shell);
    ShellHit hit;
    if (!std::isfinite(t)) return hit;
    hit.t = t;
    Vec3 p = origin + t * dir;
    if (std::abs(p.z()) < 1e-7)
        hit.id = InstanceIdMap::kFloor;
    else if (std::abs(p.z() - room.wall_height) < 1e-7)
        hit.id = InstanceIdMap::kCeiling;
    else
        hit.id = InstanceIdMap::kWall;
    return hit;
}

}  // namespace

Frame rasterize_boxes(const Room& room, const std::vector<RasterBox>& boxes,
                      const CameraView& cam) {
    Frame frame;
    frame.depth = DepthMap(cam.width, cam.height);
    frame.ids = InstanceIdMap(cam.width, cam.height);

    for (int y = 0; y < cam.height; ++y) {
        for (int x = 0; x < cam.width; ++x) {
            Vec3 dir = pixel_ray(x + 0.5, y + 0.5, cam);
            ShellHit shell = shell_hit(room, cam.eye, dir);
            double best_t = shell.t;
            int best_id = shell.id;
            for (const auto& rb : boxes) {
                double t = ray_box_t(cam.eye, dir, rb.box);
                // Boxes beat the shell on ties; lower id beats higher.
                bool wins = t < best_t || (t == best_t && std::isfinite(t) &&
                                           (best_id < 0 || rb.id < best_id));
                if (wins) {
                    best_t = t;
                    best_id = rb.id;
                }
            }
            if (std::isfinite(best_t)) {
                frame.depth.set(x, y, best_t);
                frame.ids.at(x, y) = best_id;
            }
        }
    }
    return frame;
}

Frame rasterize(const SceneState& scene, const CameraView& cam) {
    std::vector<RasterBox> boxes;
    boxes.reserve(scene.instances.size());
    for (std::size_t i = 0; i < scene.instances.size(); ++i)
        boxes.push_back({static_cast<int>(i), scene.instances[i].world_bbox});
    return rasterize_boxes(scene.room, boxes, cam);
}

namespace {

bool wall_blocks(const Room& room, const Vec3& a, const Vec3& b) {
    struct Plane {
        int axis;
        double value;
    };
    const Plane planes[4] = {{1, room.y0()}, {0, room.x1()}, {1, room.y1()}, {0, room.x0()}};
    for (const auto& pl : planes) {
        double da = a[pl.axis] - pl.value;
        double db = b[pl.axis] - pl.value;
        if (da * db >= 0) continue;  // no crossing
        double s = da / (da - db);
        Vec3 p = a + s * (b - a);
        if (p.z() < -1e-9 || p.z() > room.wall_height + 1e-9) continue;
        int other = 1 - pl.axis;
        double lo = other == 0 ? room.x0() : room.y0();
        double hi = other == 0 ? room.x1() : room.y1();
        if (p[other] >= lo - 1e-9 && p[other] <= hi + 1e-9) return true;
    }
    return false;
}

bool point_visible(const Room& room, const CameraView& cam, const Vec3& p) {
    auto px = project(p, cam);
    if (!px) return false;
    if (px->u < 0 || px->u >= cam.width || px->v < 0 || px->v >= cam.height) return false;
    return !wall_blocks(room, cam.eye, p);
}

}  // namespace

double floor_visibility(const Room& room, const CameraView& cam, int grid, int column_samples) {
    grid = std::max(grid, 200);
    int visible = 0;
    for (int j = 0; j < grid; ++j) {
        for (int i = 0; i < grid; ++i) {
            double x = room.x0() + (i + 0.5) / grid * room.extent.x();
            double y = room.y0() + (j + 0.5) / grid * room.extent.y();
            bool seen = point_visible(room, cam, {x, y, 0.0});
            for (int k = 0; k < column_samples && !seen; ++k) {
                double z = (k + 0.5) / column_samples * room.wall_height;
                seen = point_visible(room, cam, {x, y, z});
            }
            if (seen) ++visible;
        }
    }
    return static_cast<double>(visible) / (static_cast<double>(grid) * grid);
}

double occupancy(const SceneState& scene, int grid) {
    std::vector<Rect2> rects;
    for (const auto& inst : scene.instances)
        if (inst.spec.category == ObjectCategory::FloorObject)
            rects.push_back(footprint_of(inst.world_bbox));
    if (rects.empty()) return 0.0;

    const Room& room = scene.room;
    long covered = 0;
    for (int j = 0; j < grid; ++j) {
        double y = room.y0() + (j + 0.5) / grid * room.extent.y();
        for (int i = 0; i < grid; ++i) {
            double x = room.x0() + (i + 0.5) / grid * room.extent.x();
            for (const auto& r : rects) {
                if (r.contains({x, y})) {
                    ++covered;
                    break;
                }
            }
        }
    }
    return static_cast<double>(covered) / (static_cast<double>(grid) * grid);
}

ImageRgb render_template_image(const Frame& frame) {
    const int w = frame.depth.width;
    const int h = frame.depth.height;
    ImageRgb img(w, h);
    double dmax = 1.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (frame.depth.is_valid(x, y)) dmax = std::max(dmax, frame.depth.at(x, y));
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!frame.depth.is_valid(x, y)) {
                img.set(x, y, 0, 0, 0);
                continue;
            }
            double shade = 1.0 - 0.7 * frame.depth.at(x, y) / dmax;
            auto level = static_cast<std::uint8_t>(std::clamp(shade * 255.0, 0.0, 255.0));
            int id = frame.ids.at(x, y);
            if (id >= 0) {
                // Stable per-id tint so instances are tellable apart.
                std::uint32_t hsh = static_cast<std::uint32_t>(id) * 2654435761u;
                img.set(x, y, static_cast<std::uint8_t>((level + (hsh & 0x3f)) / 2 + 64),
                        static_cast<std::uint8_t>((level + ((hsh >> 8) & 0x3f)) / 2 + 32),
                        static_cast<std::uint8_t>((level + ((hsh >> 16) & 0x3f)) / 2));
            } else {
                img.set(x, y, level, level, level);
            }
        }
    }
    return img;
}

ImageGray depth_to_gray(const DepthMap& depth) {
    ImageGray img(depth.width, depth.height);
    double lo = kInf, hi = -kInf;
    for (int y = 0; y < depth.height; ++y)
        for (int x = 0; x < depth.width; ++x)
            if (depth.is_valid(x, y)) {
                lo = std::min(lo, depth.at(x, y));
                hi = std::max(hi, depth.at(x, y));
            }
    if (!(hi > lo)) return img;
    for (int y = 0; y < depth.height; ++y)
        for (int x = 0; x < depth.width; ++x)
            if (depth.is_valid(x, y)) {
                double u = (depth.at(x, y) - lo) / (hi - lo);
                img.set(x, y, static_cast<std::uint8_t>(std::clamp(255.0 * (1.0 - u), 0.0, 255.0)));
            }
    return img;
}

ImageRgb ids_to_rgb(const InstanceIdMap& ids) {
    ImageRgb img(ids.width, ids.height);
    for (int y = 0; y < ids.height; ++y) {
        for (int x = 0; x < ids.width; ++x) {
            int id = ids.at(x, y);
            if (id >= 0) {
                std::uint32_t hsh = (static_cast<std::uint32_t>(id) + 1) * 2654435761u;
                img.set(x, y, static_cast<std::uint8_t>(64 + (hsh & 0xbf)),
                        static_cast<std::uint8_t>(64 + ((hsh >> 8) & 0xbf)),
                        static_cast<std::uint8_t>(64 + ((hsh >> 16) & 0xbf)));
            } else if (id == InstanceIdMap::kFloor) {
                img.set(x, y, 40, 40, 40);
            } else if (id == InstanceIdMap::kWall) {
                img.set(x, y, 90, 90, 90);
            } else if (id == InstanceIdMap::kCeiling) {
                img.set(x, y, 140, 140, 140);
            }
        }
    }
    return img;
}

}  // namespace architect
