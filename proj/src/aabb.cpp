#include "architect/aabb.hpp"

#include <algorithm>
#include <cmath>

namespace architect {

Aabb3 aabb_of(const std::vector<Vec3>& points) {
    if (points.empty()) throw GeometryError("aabb_of: empty point set");
    Aabb3 box{points.front(), points.front()};
    for (const Vec3& p : points) {
        box.min = box.min.cwiseMin(p);
        box.max = box.max.cwiseMax(p);
    }
    return box;
}

bool aabb_intersects(const Aabb3& a, const Aabb3& b, double margin) {
    for (int k = 0; k < 3; ++k) {
        if (a.min[k] - margin >= b.max[k] + margin) return false;
        if (b.min[k] - margin >= a.max[k] + margin) return false;
    }
    return true;
}

bool rect_intersects(const Rect2& a, const Rect2& b, double margin) {
    for (int k = 0; k < 2; ++k) {
        if (a.min[k] - margin >= b.max[k] + margin) return false;
        if (b.min[k] - margin >= a.max[k] + margin) return false;
    }
    return true;
}

double interval_overlap(double a0, double a1, double b0, double b1) {
    return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

double rect_gap(const Rect2& a, const Rect2& b) {
    double dx = std::max({a.min.x() - b.max.x(), b.min.x() - a.max.x(), 0.0});
    double dy = std::max({a.min.y() - b.max.y(), b.min.y() - a.max.y(), 0.0});
    return std::hypot(dx, dy);
}

}  // namespace architect
