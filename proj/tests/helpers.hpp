#pragma once

#include "architect/aabb.hpp"
#include "architect/constraints.hpp"
#include "architect/placer.hpp"
#include "architect/types.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <random>
#include <vector>

// Test-only oracles, kept independent of the implementation paths they check.
namespace oracle {

using architect::Aabb3;
using architect::Vec2;
using architect::Vec3;

// O(n^2) density clustering with the same policy as the engine: index-order
// seeds, FIFO expansion, sorted neighbor lists, borders claimed by the first
// cluster that reaches them. Closed balls, the point itself counts.
inline std::vector<int> brute_dbscan(const std::vector<Vec3>& pts, double eps, int min_pts) {
    const std::size_t n = pts.size();
    std::vector<std::vector<std::size_t>> nbrs(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((pts[i] - pts[j]).norm() <= eps) nbrs[i].push_back(j);
    std::vector<int> labels(n, -1);
    std::vector<char> seen(n, 0);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        if (nbrs[i].size() < static_cast<std::size_t>(min_pts)) continue;
        seen[i] = 1;
        int cluster = next++;
        labels[i] = cluster;
        std::deque<std::size_t> frontier(nbrs[i].begin(), nbrs[i].end());
        while (!frontier.empty()) {
            std::size_t j = frontier.front();
            frontier.pop_front();
            if (labels[j] == -1) labels[j] = cluster;
            if (seen[j]) continue;
            seen[j] = 1;
            if (nbrs[j].size() >= static_cast<std::size_t>(min_pts)) {
                labels[j] = cluster;
                frontier.insert(frontier.end(), nbrs[j].begin(), nbrs[j].end());
            }
        }
    }
    return labels;
}

inline std::vector<std::size_t> brute_largest_cluster(const std::vector<Vec3>& pts, double eps,
                                                      int min_pts) {
    auto labels = brute_dbscan(pts, eps, min_pts);
    int best = -1;
    long best_size = 0;
    for (int l = 0;; ++l) {
        long size = static_cast<long>(std::count(labels.begin(), labels.end(), l));
        if (size == 0) break;
        if (size > best_size) {
            best = l;
            best_size = size;
        }
    }
    std::vector<std::size_t> out;
    if (best < 0) return out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == best) out.push_back(i);
    return out;
}

// Analytic ray/box intersection written from the plane equations rather than
// the slab loop the rasterizer uses. Returns the visible-surface parameter.
inline std::optional<double> ray_box_analytic(const Vec3& origin, const Vec3& dir,
                                              const Aabb3& box) {
    std::vector<double> hits;
    for (int axis = 0; axis < 3; ++axis) {
        for (double plane : {box.min[axis], box.max[axis]}) {
            if (std::abs(dir[axis]) < 1e-15) continue;
            double t = (plane - origin[axis]) / dir[axis];
            if (t <= 1e-9) continue;
            Vec3 p = origin + t * dir;
            bool inside = true;
            for (int k = 0; k < 3; ++k) {
                if (k == axis) continue;
                if (p[k] < box.min[k] - 1e-9 || p[k] > box.max[k] + 1e-9) inside = false;
            }
            if (inside) hits.push_back(t);
        }
    }
    if (hits.empty()) return std::nullopt;
    return *std::min_element(hits.begin(), hits.end());
}

// Exhaustive assignment search sharing dfs_place's scoring semantics: every
// combination of statically feasible candidates (with skips where nothing
// fits a prefix) is enumerated and the best total returned.
struct ExhaustiveResult {
    double best_score = -1e300;
    bool found = false;
    std::vector<std::optional<architect::Candidate>> assignment;
};

inline void exhaustive_rec(const std::vector<std::vector<architect::Candidate>>& statics,
                           const architect::ScoringWeights& weights,
                           const std::vector<std::string>& ids,
                           std::vector<std::optional<architect::Candidate>>& current,
                           double score_sum, std::size_t depth, ExhaustiveResult& out) {
    if (depth == statics.size()) {
        if (!out.found || score_sum > out.best_score) {
            out.found = true;
            out.best_score = score_sum;
            out.assignment = current;
        }
        return;
    }
    bool any = false;
    for (const auto& base : statics[depth]) {
        bool hit = false;
        for (std::size_t i = 0; i < depth && !hit; ++i)
            if (current[i] && architect::aabb_intersects(base.box, current[i]->box, 0.0)) hit = true;
        if (hit) continue;
        any = true;
        architect::Candidate c = base;
        for (std::size_t i = 0; i < depth; ++i)
            if (current[i])
                c.sum_delta_w += (c.position - current[i]->position).norm() *
                                 weights.object_weight(ids[i]);
        c.score = architect::score_placement(c, weights);
        current[depth] = c;
        exhaustive_rec(statics, weights, ids, current, score_sum + c.score, depth + 1, out);
        current[depth].reset();
    }
    if (!any) {
        current[depth].reset();
        exhaustive_rec(statics, weights, ids, current, score_sum, depth + 1, out);
    }
}

inline ExhaustiveResult exhaustive_place(const std::vector<std::vector<architect::Candidate>>& statics,
                                         const architect::ScoringWeights& weights,
                                         const std::vector<std::string>& ids) {
    ExhaustiveResult out;
    std::vector<std::optional<architect::Candidate>> current(statics.size());
    exhaustive_rec(statics, weights, ids, current, 0.0, 0, out);
    return out;
}

}  // namespace oracle

namespace fixtures {

using namespace architect;

inline Room square_room(double side, double wall_height = 2.8) {
    Room room;
    room.origin = {0, 0};
    room.extent = {side, side};
    room.wall_height = wall_height;
    return room;
}

inline ObjectInstance box_instance(const std::string& id, const std::string& name, double cx,
                                   double cy, double dx, double dy, double dz,
                                   ObjectCategory cat = ObjectCategory::FloorObject,
                                   double base_z = 0.0, double yaw = 0.0) {
    ObjectSpec spec;
    spec.name = name;
    spec.description = name;
    spec.category = cat;
    return make_instance(id, spec, "asset:" + name, {dx, dy, dz}, {cx, cy, base_z}, yaw,
                         {1, 1, 1});
}

inline Detection3d detection(const std::string& id, const std::string& name, const Aabb3& bbox,
                             ObjectCategory cat = ObjectCategory::FloorObject) {
    Detection3d d;
    d.id = id;
    d.spec.name = name;
    d.spec.description = name;
    d.spec.category = cat;
    d.bbox = bbox;
    return d;
}

inline Aabb3 box_at(double cx, double cy, double dx, double dy, double dz, double base_z = 0.0) {
    return {{cx - dx / 2, cy - dy / 2, base_z}, {cx + dx / 2, cy + dy / 2, base_z + dz}};
}

}  // namespace fixtures
