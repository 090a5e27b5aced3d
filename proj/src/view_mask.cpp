#include "architect/view_mask.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace architect {

ViewPlan room_views(const Room& room, double eye_height, double look_height, double fov_deg,
                    int width, int height) {
    if (!(room.extent.x() > 0 && room.extent.y() > 0))
        throw GeometryError("room_views: nonpositive room extent");
    double x0 = room.x0(), y0 = room.y0(), x1 = room.x1(), y1 = room.y1();
    double xm = 0.5 * (x0 + x1);
    ViewPlan plan;
    plan.cameras.push_back(camera_from_lookat({x1, y1, eye_height}, {x0, y0, look_height}, fov_deg,
                                              width, height));
    plan.cameras.push_back(camera_from_lookat({xm, y0, eye_height}, {xm, y1, look_height}, fov_deg,
                                              width, height));
    plan.cameras.push_back(camera_from_lookat({x0, y1, eye_height}, {x1, y0, look_height}, fov_deg,
                                              width, height));
    return plan;
}

bool should_continue(const SceneState& scene, int views_used, const StopPolicy& stop) {
    if (views_used >= stop.max_views) return false;
    return occupancy(scene) <= stop.occupancy_threshold;
}

CameraView object_view(const ObjectInstance& instance, ObjectViewKind kind, double fov_deg,
                       int width, int height) {
    const Aabb3& box = instance.world_bbox;
    Vec3 ext = box.sizes();
    if (!(ext.minCoeff() > 0)) throw GeometryError("object_view: zero-extent bbox");

    Vec2 f2 = instance.front();
    Vec3 front(f2.x(), f2.y(), 0);
    Vec3 target, offset_dir;
    if (kind == ObjectViewKind::OnTop) {
        target = {box.center().x(), box.center().y(), box.max.z()};
        double pitch = deg_to_rad(30.0);
        offset_dir = std::sin(pitch) * front + std::cos(pitch) * Vec3(0, 0, 1);
    } else {
        target = box.center();
        offset_dir = front;
    }

    // Lateral extent: the two box axes least aligned with the view direction.
    Vec3 view_dir = -offset_dir;
    int along = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(view_dir[k]) > std::abs(view_dir[along])) along = k;
    double lateral = 0;
    for (int k = 0; k < 3; ++k)
        if (k != along) lateral = std::max(lateral, ext[k]);

    double tan_half = std::tan(deg_to_rad(fov_deg) / 2.0);
    double tan_half_v = tan_half * static_cast<double>(height) / static_cast<double>(width);
    double dist = (lateral / 2.0) / std::min(tan_half, tan_half_v) * 1.2;

    for (int iter = 0; iter < 16; ++iter) {
        CameraView cam = camera_from_lookat(target + dist * offset_dir, target, fov_deg, width,
                                            height);
        bool ok = true;
        for (int c = 0; c < 8 && ok; ++c) {
            Vec3 corner((c & 1) ? box.max.x() : box.min.x(), (c & 2) ? box.max.y() : box.min.y(),
                        (c & 4) ? box.max.z() : box.min.z());
            auto px = project(corner, cam);
            ok = px && px->u >= 0.02 * width && px->u <= 0.98 * width && px->v >= 0.02 * height &&
                 px->v <= 0.98 * height;
        }
        if (ok) return cam;
        dist *= 1.25;
    }
    throw GeometryError("object_view: could not frame the object");
}

Aabb3 cube_fill_box(const ObjectInstance& target, ObjectViewKind kind, const MaskParams& params) {
    const Aabb3& b = target.world_bbox;
    Vec3 c = b.center();
    Vec3 half = 0.5 * params.cube_shrink * b.sizes();
    Aabb3 cube;
    if (kind == ObjectViewKind::OnTop) {
        cube.min = {c.x() - half.x(), c.y() - half.y(), b.max.z()};
        cube.max = {c.x() + half.x(), c.y() + half.y(), b.max.z() + params.on_top_cube_height};
    } else {
        cube.min = c - half;
        cube.max = c + half;
    }
    return cube;
}

InpaintMask build_inpaint_mask(MaskKind kind, const Frame& frame, const CameraView& cam,
                               const ObjectInstance* target, int target_id,
                               ObjectViewKind cube_kind, const MaskParams& params) {
    if (frame.depth.width != cam.width || frame.depth.height != cam.height)
        throw GeometryError("build_inpaint_mask: frame does not match camera resolution");

    InpaintMask mask(cam.width, cam.height);
    std::set<int> excluded;

    if (kind == MaskKind::RoomCentered) {
        mask.provenance = InpaintMask::Provenance::RoomCentered;
        int mx = static_cast<int>(std::llround(cam.width * (1.0 - params.centered_width_frac) / 2));
        int my =
            static_cast<int>(std::llround(cam.height * (1.0 - params.centered_height_frac) / 2));
        for (int y = my; y < cam.height - my; ++y) {
            for (int x = mx; x < cam.width - mx; ++x) {
                int id = frame.ids.at(x, y);
                if (id >= 0) {
                    excluded.insert(id);
                    continue;
                }
                mask.set(x, y, 1.0);
            }
        }
    } else {
        if (!target) throw UsageError("cube-fill mask needs a target instance");
        mask.provenance = InpaintMask::Provenance::CubeFill;
        Aabb3 cube = cube_fill_box(*target, cube_kind, params);
        for (int y = 0; y < cam.height; ++y) {
            for (int x = 0; x < cam.width; ++x) {
                Vec3 dir = pixel_ray(x + 0.5, y + 0.5, cam);
                double t = ray_box_depth(cam.eye, dir, cube);
                if (!std::isfinite(t)) continue;
                int id = frame.ids.at(x, y);
                if (id >= 0 && id != target_id) {
                    excluded.insert(id);
                    continue;
                }
                double frame_t = frame.depth.is_valid(x, y)
                                     ? frame.depth.at(x, y)
                                     : std::numeric_limits<double>::infinity();
                if (t < frame_t - 1e-9) mask.set(x, y, 1.0);
            }
        }
    }

    mask.excluded_ids.assign(excluded.begin(), excluded.end());
    if (mask.empty_support()) throw EmptyMaskError("inpaint mask has no pixels");
    return mask;
}

namespace {

Eigen::ArrayXXd erode_disc(const Eigen::ArrayXXd& weights, double radius) {
    const int h = static_cast<int>(weights.rows());
    const int w = static_cast<int>(weights.cols());
    int r = static_cast<int>(std::floor(radius));
    std::vector<std::pair<int, int>> offsets;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            if (dx * dx + dy * dy <= radius * radius) offsets.emplace_back(dx, dy);

    Eigen::ArrayXXd out = Eigen::ArrayXXd::Zero(h, w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (weights(y, x) <= 0.5) continue;
            bool keep = true;
            for (const auto& [dx, dy] : offsets) {
                int xx = x + dx, yy = y + dy;
                if (xx < 0 || xx >= w || yy < 0 || yy >= h || weights(yy, xx) <= 0.5) {
                    keep = false;
                    break;
                }
            }
            if (keep) out(y, x) = 1.0;
        }
    }
    return out;
}

Eigen::ArrayXXd gaussian_blur(const Eigen::ArrayXXd& in, double sigma) {
    const int h = static_cast<int>(in.rows());
    const int w = static_cast<int>(in.cols());
    int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0;
    for (int k = -radius; k <= radius; ++k) {
        kernel[k + radius] = std::exp(-0.5 * (k * k) / (sigma * sigma));
        sum += kernel[k + radius];
    }
    for (double& v : kernel) v /= sum;

    Eigen::ArrayXXd tmp = Eigen::ArrayXXd::Zero(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0;
            for (int k = -radius; k <= radius; ++k) {
                int xx = x + k;
                if (xx >= 0 && xx < w) acc += kernel[k + radius] * in(y, xx);
            }
            tmp(y, x) = acc;
        }
    Eigen::ArrayXXd out = Eigen::ArrayXXd::Zero(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0;
            for (int k = -radius; k <= radius; ++k) {
                int yy = y + k;
                if (yy >= 0 && yy < h) acc += kernel[k + radius] * tmp(yy, x);
            }
            out(y, x) = std::clamp(acc, 0.0, 1.0);
        }
    return out;
}

}  // namespace

InpaintMask soften_mask(const InpaintMask& mask, double erosion_radius_px, double blur_sigma_px) {
    if (erosion_radius_px < 0 || blur_sigma_px < 0)
        throw GeometryError("soften_mask: negative radius or sigma");
    InpaintMask out = mask;
    if (erosion_radius_px > 0) out.weights = erode_disc(out.weights, erosion_radius_px);
    if (blur_sigma_px > 0) out.weights = gaussian_blur(out.weights, blur_sigma_px);
    return out;
}

InpaintMask soften_mask_default(const InpaintMask& mask) {
    double s = std::max(mask.width, mask.height) / 512.0;
    return soften_mask(mask, 4.0 * s, 8.0 * s);
}

}  // namespace architect
