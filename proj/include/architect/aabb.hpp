#pragma once

#include "architect/types.hpp"

#include <vector>

namespace architect {

// Axis-aligned box, min <= max componentwise.
struct Aabb3 {
    Vec3 min{0, 0, 0};
    Vec3 max{0, 0, 0};

    Vec3 center() const { return 0.5 * (min + max); }
    Vec3 sizes() const { return max - min; }
    bool valid() const { return (min.array() <= max.array()).all(); }
    bool contains(const Vec3& p) const {
        return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
    }

    bool operator==(const Aabb3& o) const { return min == o.min && max == o.max; }
};

// Floor-plane rectangle (footprint of a box).
struct Rect2 {
    Vec2 min{0, 0};
    Vec2 max{0, 0};

    Vec2 center() const { return 0.5 * (min + max); }
    Vec2 sizes() const { return max - min; }
    double area() const { return (max.x() - min.x()) * (max.y() - min.y()); }
    bool contains(const Vec2& p) const {
        return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
    }
};

inline Rect2 footprint_of(const Aabb3& b) {
    return {b.min.head<2>(), b.max.head<2>()};
}

// Smallest box containing a nonempty point set. Throws GeometryError on empty.
Aabb3 aabb_of(const std::vector<Vec3>& points);

// Open-interior overlap test after inflating both boxes by `margin`:
// shared faces do not collide at margin 0.
bool aabb_intersects(const Aabb3& a, const Aabb3& b, double margin = 0.0);
bool rect_intersects(const Rect2& a, const Rect2& b, double margin = 0.0);

// Separation between footprints: 0 when they overlap or touch.
double rect_gap(const Rect2& a, const Rect2& b);

// Overlap length of [a0,a1] and [b0,b1] (>= 0).
double interval_overlap(double a0, double a1, double b0, double b1);

}  // namespace architect
