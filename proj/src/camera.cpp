#include "architect/camera.hpp"

#include <Eigen/Geometry>

#include <cmath>

namespace architect {

CameraView camera_from_lookat(const Vec3& eye, const Vec3& target, double fov_deg, int width,
                              int height, const Vec3& up) {
    if ((eye - target).norm() < 1e-12) throw GeometryError("camera: eye equals target");
    if (!(fov_deg > 0 && fov_deg < 180)) throw GeometryError("camera: fov out of range");
    if (width < 1 || height < 1) throw GeometryError("camera: resolution must be >= 1");

    CameraView cam;
    cam.eye = eye;
    cam.target = target;
    cam.up = up.normalized();
    cam.fov_deg = fov_deg;
    cam.width = width;
    cam.height = height;

    cam.forward = (target - eye).normalized();
    Vec3 r = cam.forward.cross(cam.up);
    if (r.norm() < 1e-9) throw GeometryError("camera: forward parallel to up");
    cam.right = r.normalized();
    cam.up_cam = cam.right.cross(cam.forward);

    cam.tan_half_h = std::tan(deg_to_rad(fov_deg) / 2.0);
    cam.tan_half_v = cam.tan_half_h * static_cast<double>(height) / static_cast<double>(width);
    return cam;
}

std::optional<PixelDepth> project(const Vec3& point, const CameraView& cam) {
    Vec3 q = point - cam.eye;
    double z = q.dot(cam.forward);
    if (z <= 0) return std::nullopt;
    double x = q.dot(cam.right);
    double y = q.dot(cam.up_cam);
    PixelDepth out;
    out.u = (x / (z * cam.tan_half_h) + 1.0) * 0.5 * cam.width;
    out.v = (1.0 - y / (z * cam.tan_half_v)) * 0.5 * cam.height;
    out.depth = z;
    return out;
}

Vec3 pixel_ray(double u, double v, const CameraView& cam) {
    double ndc_x = 2.0 * u / cam.width - 1.0;
    double ndc_y = 1.0 - 2.0 * v / cam.height;
    return cam.forward + ndc_x * cam.tan_half_h * cam.right + ndc_y * cam.tan_half_v * cam.up_cam;
}

Vec3 backproject(double u, double v, double depth, const CameraView& cam) {
    if (!(depth > 0)) throw GeometryError("backproject: depth must be positive");
    return cam.eye + depth * pixel_ray(u, v, cam);
}

}  // namespace architect
