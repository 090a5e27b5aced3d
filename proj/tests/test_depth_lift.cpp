#include "architect/depth_lift.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <random>

using namespace architect;

namespace {

DepthMap constant_map(int w, int h, double v) {
    DepthMap d(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) d.set(x, y, v);
    return d;
}

DepthMap random_map(int w, int h, std::mt19937_64& rng, double lo = 0.5, double hi = 9.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    DepthMap d(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) d.set(x, y, dist(rng));
    return d;
}

ReferenceSet all_pixels(int w, int h) {
    ReferenceSet refs;
    refs.mode = ReferenceMode::RoomContext;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) refs.pixels.push_back({x, y});
    return refs;
}

}  // namespace

TEST_CASE("select_reference_pixels") {
    InstanceIdMap ids(20, 10);
    InpaintMask mask(20, 10);

    SUBCASE("empty mask, room context: every pixel") {
        auto refs = select_reference_pixels(ReferenceMode::RoomContext, ids, mask);
        CHECK(refs.pixels.size() == 200);
    }
    SUBCASE("furniture context counts unmasked furniture pixels") {
        // 100 furniture pixels, 40 of them masked.
        int placed = 0;
        for (int y = 0; y < 10 && placed < 100; ++y)
            for (int x = 0; x < 10 && placed < 100; ++x) {
                ids.at(x, y) = 7;
                if (placed < 40) mask.set(x, y, 1.0);
                ++placed;
            }
        auto refs = select_reference_pixels(ReferenceMode::FurnitureContext, ids, mask, 7);
        long expected = 0;  // brute-force pixel scan
        for (int y = 0; y < 10; ++y)
            for (int x = 0; x < 20; ++x)
                if (ids.at(x, y) == 7 && mask.at(x, y) == 0.0) ++expected;
        CHECK(expected == 60);
        CHECK(static_cast<long>(refs.pixels.size()) == expected);
    }
    SUBCASE("mask covering everything is an error") {
        for (int y = 0; y < 10; ++y)
            for (int x = 0; x < 20; ++x) mask.set(x, y, 1.0);
        CHECK_THROWS_AS(select_reference_pixels(ReferenceMode::RoomContext, ids, mask),
                        InsufficientReferenceError);
    }
}

TEST_CASE("rescale_depth follows the published formula") {
    // Two reference pixels: D_r 2 and 4, D_e 1 and 2 -> scale 2, shift 0.
    DepthMap dr(4, 1), de(4, 1);
    dr.set(0, 0, 2.0);
    dr.set(1, 0, 4.0);
    dr.set(2, 0, 1.0);
    dr.set(3, 0, 1.0);
    de.set(0, 0, 1.0);
    de.set(1, 0, 2.0);
    de.set(2, 0, 1.5);
    de.set(3, 0, 0.25);
    ReferenceSet refs;
    refs.pixels = {{0, 0}, {1, 0}};

    auto out = rescale_depth(de, dr, refs);
    CHECK(out.stats.scale == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(out.stats.shift == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(out.map.at(2, 0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(out.map.at(3, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("identical maps rescale to themselves") {
    std::mt19937_64 rng(31);
    DepthMap d = random_map(16, 12, rng);
    auto refs = all_pixels(16, 12);
    auto out = rescale_depth(d, d, refs);
    for (int y = 0; y < 12; ++y)
        for (int x = 0; x < 16; ++x)
            CHECK(out.map.at(x, y) == doctest::Approx(d.at(x, y)).epsilon(1e-12));
}

TEST_CASE("affine corruption is recovered exactly") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> a_dist(0.1, 5.0);
    std::uniform_real_distribution<double> b_dist(-2.0, 5.0);
    for (int iter = 0; iter < 50; ++iter) {
        DepthMap dr = random_map(24, 18, rng);
        double a = a_dist(rng), b = b_dist(rng);
        DepthMap de(24, 18);
        for (int y = 0; y < 18; ++y)
            for (int x = 0; x < 24; ++x) de.set(x, y, a * dr.at(x, y) + b);
        auto refs = all_pixels(24, 18);
        auto out = rescale_depth(de, dr, refs);
        for (int y = 0; y < 18; ++y)
            for (int x = 0; x < 24; ++x) {
                double rel = std::abs(out.map.at(x, y) - dr.at(x, y)) / dr.at(x, y);
                CHECK(rel <= 1e-9);
            }
    }
}

TEST_CASE("reference anchoring: min/max/mean over the refs match D_r") {
    std::mt19937_64 rng(41);
    DepthMap dr = random_map(20, 20, rng);
    DepthMap de = random_map(20, 20, rng);
    ReferenceSet refs;
    for (int i = 0; i < 40; ++i)
        refs.pixels.push_back({static_cast<int>(rng() % 20), static_cast<int>(rng() % 20)});
    std::sort(refs.pixels.begin(), refs.pixels.end(), [](const Vec2i& a, const Vec2i& b) {
        return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
    });
    refs.pixels.erase(std::unique(refs.pixels.begin(), refs.pixels.end()), refs.pixels.end());

    auto out = rescale_depth(de, dr, refs);
    double min_r = 1e300, max_r = -1e300, mean_r = 0;
    double min_s = 1e300, max_s = -1e300, mean_s = 0;
    for (const auto& p : refs.pixels) {
        min_r = std::min(min_r, dr.at(p.x(), p.y()));
        max_r = std::max(max_r, dr.at(p.x(), p.y()));
        mean_r += dr.at(p.x(), p.y());
        double s = de.at(p.x(), p.y()) * out.stats.scale + out.stats.shift;
        min_s = std::min(min_s, s);
        max_s = std::max(max_s, s);
        mean_s += s;
    }
    mean_r /= static_cast<double>(refs.pixels.size());
    mean_s /= static_cast<double>(refs.pixels.size());
    CHECK(min_s == doctest::Approx(min_r).epsilon(1e-9));
    CHECK(max_s == doctest::Approx(max_r).epsilon(1e-9));
    CHECK(mean_s == doctest::Approx(mean_r).epsilon(1e-9));
}

TEST_CASE("monotonicity: positive scale preserves depth ordering") {
    std::mt19937_64 rng(43);
    DepthMap dr = random_map(12, 12, rng);
    DepthMap de = random_map(12, 12, rng);
    auto out = rescale_depth(de, dr, all_pixels(12, 12));
    REQUIRE(out.stats.scale > 0);
    for (int i = 0; i < 200; ++i) {
        int x1 = static_cast<int>(rng() % 12), y1 = static_cast<int>(rng() % 12);
        int x2 = static_cast<int>(rng() % 12), y2 = static_cast<int>(rng() % 12);
        if (de.at(x1, y1) < de.at(x2, y2)) CHECK(out.map.at(x1, y1) < out.map.at(x2, y2));
    }
}

TEST_CASE("degenerate constant estimate errors; shift-only fallback anchors the mean") {
    DepthMap dr(4, 1), de = constant_map(4, 1, 2.0);
    for (int x = 0; x < 4; ++x) dr.set(x, 0, 1.0 + x);
    ReferenceSet refs = all_pixels(4, 1);
    CHECK_THROWS_AS(rescale_depth(de, dr, refs), DegenerateScaleError);

    auto out = rescale_or_shift(de, dr, refs);
    CHECK(out.stats.scale == 1.0);
    CHECK(out.map.at(0, 0) == doctest::Approx(2.5));  // mean_r = 2.5, mean_e = 2.0 -> +0.5
}

TEST_CASE("dbscan matches the brute-force oracle exactly") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> coord(0, 4);
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<Vec3> pts;
        int n = 20 + static_cast<int>(rng() % 180);
        for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng), coord(rng)});
        double eps = 0.3 + 0.4 * (iter % 4);
        int min_pts = 3 + iter % 5;
        CHECK(dbscan_labels(pts, eps, min_pts) == oracle::brute_dbscan(pts, eps, min_pts));
        auto mine = largest_cluster(pts, {eps, min_pts});
        auto brute = oracle::brute_largest_cluster(pts, eps, min_pts);
        if (brute.empty()) continue;  // all noise handled by the error path
        CHECK(mine == brute);
    }
}

TEST_CASE("largest_cluster behavior") {
    SUBCASE("far outlier removed, box equals the inlier box") {
        std::vector<Vec3> pts;
        for (int i = 0; i < 50; ++i) pts.push_back({0.01 * i, 0.02 * i, 0.0});
        pts.push_back({100, 100, 100});
        auto keep = largest_cluster(pts, {0.2, 3});
        CHECK(keep.size() == 50);
        for (std::size_t i : keep) CHECK(i < 50);
    }
    SUBCASE("tight cloud is unchanged") {
        std::vector<Vec3> pts;
        for (int i = 0; i < 30; ++i) pts.push_back({0.001 * i, 0, 0});
        CHECK(largest_cluster(pts, {0.5, 4}).size() == 30);
    }
    SUBCASE("too sparse for min_pts is an error") {
        std::vector<Vec3> pts = {{0, 0, 0}, {10, 0, 0}, {20, 0, 0}};
        CHECK_THROWS_AS(largest_cluster(pts, {0.5, 5}), NoClusterError);
    }
    SUBCASE("size tie goes to the lower cluster id") {
        std::vector<Vec3> pts;
        for (int i = 0; i < 10; ++i) pts.push_back({0.01 * i, 0, 0});
        for (int i = 0; i < 10; ++i) pts.push_back({5 + 0.01 * i, 0, 0});
        auto keep = largest_cluster(pts, {0.3, 3});
        REQUIRE(keep.size() == 10);
        CHECK(keep.front() == 0);
    }
}

TEST_CASE("lift_instance back-projects the masked pixels and clusters them") {
    auto cam = camera_from_lookat({2, 2, 2.0}, {2, 2, 0.0}, 60, 64, 64, Vec3(0, 1, 0));
    DepthMap depth(64, 64);
    BinaryMask mask(64, 64);
    for (int y = 20; y < 44; ++y)
        for (int x = 20; x < 44; ++x) {
            depth.set(x, y, 1.5);
            mask.set(x, y);
        }
    // One offensive pixel far behind the plane.
    depth.set(21, 21, 100.0);

    auto lifted = lift_instance(depth, cam, mask, {0.5, 4});
    CHECK(lifted.cloud.points.size() == 24 * 24 - 1);
    CHECK(lifted.bbox.min.z() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(lifted.bbox.max.z() == doctest::Approx(0.5).epsilon(1e-9));

    SUBCASE("empty mask is an error") {
        BinaryMask none(64, 64);
        CHECK_THROWS_AS(lift_instance(depth, cam, none, {0.5, 4}), NoClusterError);
    }
}
