#include "architect/depth_lift.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <unordered_map>

namespace architect {

ReferenceSet select_reference_pixels(ReferenceMode mode, const InstanceIdMap& id_map,
                                     const InpaintMask& inpaint_mask, int furniture_id) {
    if (id_map.width != inpaint_mask.width || id_map.height != inpaint_mask.height)
        throw GeometryError("reference selection: id map and mask dimensions differ");
    ReferenceSet refs;
    refs.mode = mode;
    for (int y = 0; y < id_map.height; ++y) {
        for (int x = 0; x < id_map.width; ++x) {
            if (inpaint_mask.at(x, y) > 0.0) continue;
            if (mode == ReferenceMode::FurnitureContext && id_map.at(x, y) != furniture_id)
                continue;
            refs.pixels.push_back({x, y});
        }
    }
    if (refs.pixels.size() < 2)
        throw InsufficientReferenceError("fewer than 2 eligible reference pixels");
    return refs;
}

namespace {

struct RefStats {
    double max_r, min_r, max_e, min_e, mean_r, mean_e;
    std::size_t n;
};

RefStats gather(const DepthMap& estimated, const DepthMap& reference, const ReferenceSet& refs) {
    RefStats s{-1e300, 1e300, -1e300, 1e300, 0, 0, 0};
    for (const auto& px : refs.pixels) {
        int x = px.x(), y = px.y();
        if (!estimated.in_bounds(x, y) || !reference.in_bounds(x, y)) continue;
        if (!estimated.is_valid(x, y) || !reference.is_valid(x, y)) continue;
        double dr = reference.at(x, y);
        double de = estimated.at(x, y);
        s.max_r = std::max(s.max_r, dr);
        s.min_r = std::min(s.min_r, dr);
        s.max_e = std::max(s.max_e, de);
        s.min_e = std::min(s.min_e, de);
        s.mean_r += dr;
        s.mean_e += de;
        ++s.n;
    }
    if (s.n < 2) throw InsufficientReferenceError("fewer than 2 valid reference pixels");
    s.mean_r /= static_cast<double>(s.n);
    s.mean_e /= static_cast<double>(s.n);
    return s;
}

RescaledDepth apply_affine(const DepthMap& estimated, double scale, double shift,
                           const RefStats& s) {
    RescaledDepth out;
    out.map = DepthMap(estimated.width, estimated.height);
    for (int y = 0; y < estimated.height; ++y) {
        for (int x = 0; x < estimated.width; ++x) {
            if (!estimated.is_valid(x, y)) continue;
            double v = estimated.at(x, y) * scale + shift;
            if (v > 0 && std::isfinite(v)) out.map.set(x, y, v);
        }
    }
    out.stats = {s.max_r, s.min_r, s.max_e, s.min_e, scale, shift, s.n};
    return out;
}

}  // namespace

RescaledDepth rescale_depth(const DepthMap& estimated, const DepthMap& reference,
                            const ReferenceSet& refs) {
    RefStats s = gather(estimated, reference, refs);
    double range_e = s.max_e - s.min_e;
    if (!(range_e > 0))
        throw DegenerateScaleError("constant estimated depth over reference pixels");
    double scale = (s.max_r - s.min_r) / range_e;
    double shift = -s.mean_e * scale + s.mean_r;
    return apply_affine(estimated, scale, shift, s);
}

RescaledDepth rescale_depth_shift_only(const DepthMap& estimated, const DepthMap& reference,
                                       const ReferenceSet& refs) {
    RefStats s = gather(estimated, reference, refs);
    return apply_affine(estimated, 1.0, s.mean_r - s.mean_e, s);
}

RescaledDepth rescale_or_shift(const DepthMap& estimated, const DepthMap& reference,
                               const ReferenceSet& refs) {
    try {
        return rescale_depth(estimated, reference, refs);
    } catch (const DegenerateScaleError&) {
        return rescale_depth_shift_only(estimated, reference, refs);
    }
}

namespace {

struct CellKey {
    std::int64_t x, y, z;
    bool operator==(const CellKey& o) const { return x == o.x && y == o.y && z == o.z; }
};

struct CellHash {
    std::size_t operator()(const CellKey& k) const {
        std::uint64_t h = static_cast<std::uint64_t>(k.x) * 73856093ull ^
                          static_cast<std::uint64_t>(k.y) * 19349663ull ^
                          static_cast<std::uint64_t>(k.z) * 83492791ull;
        return static_cast<std::size_t>(h);
    }
};

// Uniform grid with cell size eps; a closed-ball query only needs the 27
// surrounding cells.
class NeighborGrid {
  public:
    NeighborGrid(const std::vector<Vec3>& pts, double eps) : pts_(pts), eps_(eps) {
        cells_.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) cells_[key(pts[i])].push_back(i);
    }

    std::vector<std::size_t> query(std::size_t i) const {
        std::vector<std::size_t> out;
        const Vec3& p = pts_[i];
        CellKey c = key(p);
        double eps2 = eps_ * eps_;
        for (std::int64_t dz = -1; dz <= 1; ++dz)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dx = -1; dx <= 1; ++dx) {
                    auto it = cells_.find({c.x + dx, c.y + dy, c.z + dz});
                    if (it == cells_.end()) continue;
                    for (std::size_t j : it->second)
                        if ((pts_[j] - p).squaredNorm() <= eps2) out.push_back(j);
                }
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    CellKey key(const Vec3& p) const {
        return {static_cast<std::int64_t>(std::floor(p.x() / eps_)),
                static_cast<std::int64_t>(std::floor(p.y() / eps_)),
                static_cast<std::int64_t>(std::floor(p.z() / eps_))};
    }

    const std::vector<Vec3>& pts_;
    double eps_;
    std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells_;
};

}  // namespace

std::vector<int> dbscan_labels(const std::vector<Vec3>& points, double eps, int min_pts) {
    if (!(eps > 0) || min_pts < 1) throw GeometryError("dbscan: bad parameters");
    const std::size_t n = points.size();
    std::vector<int> labels(n, -1);
    std::vector<char> seen(n, 0);
    NeighborGrid grid(points, eps);

    int next_cluster = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        auto nbrs = grid.query(i);
        if (nbrs.size() < static_cast<std::size_t>(min_pts)) continue;  // not core; maybe border later
        seen[i] = 1;
        int cluster = next_cluster++;
        labels[i] = cluster;
        std::deque<std::size_t> frontier(nbrs.begin(), nbrs.end());
        while (!frontier.empty()) {
            std::size_t j = frontier.front();
            frontier.pop_front();
            if (labels[j] == -1) labels[j] = cluster;  // border point
            if (seen[j]) continue;
            seen[j] = 1;
            auto jn = grid.query(j);
            if (jn.size() >= static_cast<std::size_t>(min_pts)) {
                labels[j] = cluster;
                frontier.insert(frontier.end(), jn.begin(), jn.end());
            }
        }
    }
    return labels;
}

ClusterParams default_cluster_params(const std::vector<Vec3>& points) {
    ClusterParams p;
    if (points.empty()) return {0.01, 4};
    Aabb3 box = aabb_of(points);
    double diag = box.sizes().norm();
    p.eps = std::max(diag * 0.05, 1e-6);
    p.min_pts = std::max<int>(4, static_cast<int>(points.size() / 100));
    return p;
}

std::vector<std::size_t> largest_cluster(const std::vector<Vec3>& points,
                                         const ClusterParams& params) {
    ClusterParams p = params;
    if (p.eps <= 0 || p.min_pts <= 0) {
        ClusterParams d = default_cluster_params(points);
        if (p.eps <= 0) p.eps = d.eps;
        if (p.min_pts <= 0) p.min_pts = d.min_pts;
    }
    auto labels = dbscan_labels(points, p.eps, p.min_pts);
    std::unordered_map<int, std::size_t> sizes;
    for (int l : labels)
        if (l >= 0) ++sizes[l];
    if (sizes.empty()) throw NoClusterError("no cluster of the required density");
    int best = -1;
    std::size_t best_size = 0;
    for (const auto& [l, sz] : sizes) {
        if (sz > best_size || (sz == best_size && (best < 0 || l < best))) {
            best = l;
            best_size = sz;
        }
    }
    std::vector<std::size_t> keep;
    keep.reserve(best_size);
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == best) keep.push_back(i);
    return keep;
}

LiftedInstance lift_instance(const DepthMap& rescaled, const CameraView& cam,
                             const BinaryMask& instance_mask, const ClusterParams& params) {
    if (instance_mask.width != rescaled.width || instance_mask.height != rescaled.height)
        throw GeometryError("lift: mask and depth dimensions differ");
    std::vector<Vec3> pts;
    for (int y = 0; y < rescaled.height; ++y)
        for (int x = 0; x < rescaled.width; ++x)
            if (instance_mask.at(x, y) && rescaled.is_valid(x, y))
                pts.push_back(backproject(x + 0.5, y + 0.5, rescaled.at(x, y), cam));
    if (pts.empty()) throw NoClusterError("lift: empty instance mask");

    auto keep = largest_cluster(pts, params);
    LiftedInstance out;
    out.cloud.points.reserve(keep.size());
    for (std::size_t i : keep) out.cloud.points.push_back(pts[i]);
    out.bbox = aabb_of(out.cloud.points);
    return out;
}

}  // namespace architect
