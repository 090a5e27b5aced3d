#pragma once

#include "architect/types.hpp"

#include <optional>

namespace architect {

// Pinhole camera. fov_deg is the horizontal field of view; the vertical FOV
// follows from the aspect ratio. Pixel (i, j) covers [i, i+1) x [j, j+1) with
// its center at (i+0.5, j+0.5); v grows downward. Depth is the distance along
// the forward axis (z-depth), not ray length.
struct CameraView {
    Vec3 eye{0, 0, 0};
    Vec3 target{0, 0, 0};
    Vec3 up{0, 0, 1};
    double fov_deg = 84.0;
    int width = 512;
    int height = 512;

    Vec3 forward;  // unit, eye -> target
    Vec3 right;    // unit
    Vec3 up_cam;   // unit
    double tan_half_h = 0;
    double tan_half_v = 0;
};

struct PixelDepth {
    double u = 0;
    double v = 0;
    double depth = 0;
};

// Builds the orthonormal camera frame. Throws GeometryError when eye == target,
// forward is parallel to up, fov is outside (0, 180), or the resolution is
// degenerate.
CameraView camera_from_lookat(const Vec3& eye, const Vec3& target, double fov_deg, int width,
                              int height, const Vec3& up = Vec3(0, 0, 1));

// Projects a world point; nullopt when the point is at or behind the eye plane.
// (u, v) are continuous image coordinates; the point is on-screen when
// 0 <= u < width and 0 <= v < height.
std::optional<PixelDepth> project(const Vec3& point, const CameraView& cam);

// Inverse of project for depth > 0. Throws GeometryError on nonpositive depth.
Vec3 backproject(double u, double v, double depth, const CameraView& cam);

// Unnormalized ray direction through continuous image coords (u, v), scaled so
// that eye + t * dir has z-depth exactly t.
Vec3 pixel_ray(double u, double v, const CameraView& cam);

}  // namespace architect
