#pragma once

#include "architect/aabb.hpp"
#include "architect/types.hpp"

#include <vector>

namespace architect {

// Wall-anchored rectangle (door or window). `wall` indexes the room walls:
//   0: y = origin.y      1: x = origin.x + extent.x
//   2: y = origin.y + extent.y      3: x = origin.x
// `offset` is measured along the wall from its lower-coordinate corner;
// `bottom` is the sill height (0 for doors).
struct WallOpening {
    int wall = 0;
    double offset = 0;
    double width = 0;
    double height = 0;
    double bottom = 0;
};

struct Room {
    Vec2 origin{0, 0};
    Vec2 extent{0, 0};  // positive side lengths
    double wall_height = 2.8;
    std::vector<WallOpening> doors;
    std::vector<WallOpening> windows;

    double x0() const { return origin.x(); }
    double y0() const { return origin.y(); }
    double x1() const { return origin.x() + extent.x(); }
    double y1() const { return origin.y() + extent.y(); }
    double floor_area() const { return extent.x() * extent.y(); }

    bool contains(const Vec2& p) const {
        return p.x() >= x0() && p.x() <= x1() && p.y() >= y0() && p.y() <= y1();
    }
    bool contains(const Rect2& r) const {
        return r.min.x() >= x0() && r.max.x() <= x1() && r.min.y() >= y0() && r.max.y() <= y1();
    }
    bool contains(const Aabb3& b) const {
        return contains(footprint_of(b)) && b.min.z() >= -1e-9 && b.max.z() <= wall_height + 1e-9;
    }

    double wall_span(int wall) const { return (wall % 2 == 0) ? extent.x() : extent.y(); }

    Vec2 wall_inward_normal(int wall) const {
        switch (wall) {
            case 0: return {0, 1};
            case 1: return {-1, 0};
            case 2: return {0, -1};
            default: return {1, 0};
        }
    }

    // Point on wall `wall` at arc offset t from the lower-coordinate corner.
    Vec2 wall_point(int wall, double t) const {
        switch (wall) {
            case 0: return {x0() + t, y0()};
            case 1: return {x1(), y0() + t};
            case 2: return {x0() + t, y1()};
            default: return {x0(), y0() + t};
        }
    }

    // Arc coordinate of the projection of p onto wall `wall`.
    double wall_coord(int wall, const Vec2& p) const {
        return (wall % 2 == 0) ? p.x() - x0() : p.y() - y0();
    }

    // Perpendicular distance from point to the wall plane.
    double wall_distance(int wall, const Vec2& p) const {
        switch (wall) {
            case 0: return p.y() - y0();
            case 1: return x1() - p.x();
            case 2: return y1() - p.y();
            default: return p.x() - x0();
        }
    }

    // Distance from the rect side facing the wall to the wall plane.
    double wall_distance(int wall, const Rect2& r) const {
        switch (wall) {
            case 0: return r.min.y() - y0();
            case 1: return x1() - r.max.x();
            case 2: return y1() - r.max.y();
            default: return r.min.x() - x0();
        }
    }

    int nearest_wall(const Vec2& p) const {
        int best = 0;
        double bd = wall_distance(0, p);
        for (int w = 1; w < 4; ++w) {
            double d = wall_distance(w, p);
            if (d < bd) {
                bd = d;
                best = w;
            }
        }
        return best;
    }

    void check() const {
        if (!(extent.x() > 0 && extent.y() > 0))
            throw ValidationError("room extent must be positive");
        if (!(wall_height > 0)) throw ValidationError("wall height must be positive");
        auto check_opening = [&](const WallOpening& o) {
            if (o.wall < 0 || o.wall > 3) throw ValidationError("opening wall index out of range");
            if (o.offset < -1e-9 || o.offset + o.width > wall_span(o.wall) + 1e-9)
                throw ValidationError("opening outside its wall span");
            if (o.bottom < -1e-9 || o.bottom + o.height > wall_height + 1e-9)
                throw ValidationError("opening taller than the wall");
        };
        for (const auto& d : doors) check_opening(d);
        for (const auto& w : windows) check_opening(w);
    }
};

}  // namespace architect
