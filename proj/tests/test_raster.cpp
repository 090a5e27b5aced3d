#include "architect/raster.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <random>

using namespace architect;

TEST_CASE("empty room from inside: every pixel hits the shell with finite depth") {
    SceneState scene;
    scene.room = fixtures::square_room(4.0);
    auto cam = camera_from_lookat({4, 4, 1.8}, {0, 0, 0.5}, 84, 96, 96);
    Frame frame = rasterize(scene, cam);
    for (int y = 0; y < 96; ++y)
        for (int x = 0; x < 96; ++x) {
            REQUIRE(frame.depth.is_valid(x, y));
            CHECK(frame.depth.at(x, y) > 0);
            CHECK(frame.ids.at(x, y) < 0);
            CHECK(frame.ids.at(x, y) != InstanceIdMap::kNone);
        }
}

TEST_CASE("axis-centered box: center pixel id and near-face depth") {
    SceneState scene;
    scene.room = fixtures::square_room(6.0);
    scene.instances.push_back(fixtures::box_instance("b", "box", 3.0, 3.0, 1.0, 1.0, 1.0));
    auto cam = camera_from_lookat({3.0, 0.5, 0.5}, {3.0, 3.0, 0.5}, 60, 33, 33, Vec3(0, 0, 1));
    Frame frame = rasterize(scene, cam);
    int cx = 16, cy = 16;
    CHECK(frame.ids.at(cx, cy) == 0);
    // Near face at y = 2.5, camera at y = 0.5 -> z-depth 2.0.
    CHECK(frame.depth.at(cx, cy) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("full occlusion leaves zero pixels") {
    SceneState scene;
    scene.room = fixtures::square_room(8.0);
    scene.instances.push_back(fixtures::box_instance("front", "front", 4.0, 3.0, 3.0, 0.5, 2.0));
    scene.instances.push_back(fixtures::box_instance("back", "back", 4.0, 4.0, 0.5, 0.5, 0.5));
    auto cam = camera_from_lookat({4.0, 0.5, 1.0}, {4.0, 4.0, 1.0}, 50, 64, 64);
    Frame frame = rasterize(scene, cam);
    int back_pixels = 0;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x)
            if (frame.ids.at(x, y) == 1) ++back_pixels;
    CHECK(back_pixels == 0);
}

TEST_CASE("rasterized depth agrees with the analytic ray-box oracle") {
    SceneState scene;
    scene.room = fixtures::square_room(6.0);
    scene.instances.push_back(fixtures::box_instance("a", "a", 2.0, 3.0, 1.2, 0.8, 1.1));
    scene.instances.push_back(fixtures::box_instance("b", "b", 4.2, 2.2, 0.6, 1.4, 0.7));
    auto cam = camera_from_lookat({5.5, 5.5, 1.8}, {1, 1, 0.5}, 84, 128, 128);
    Frame frame = rasterize(scene, cam);

    for (int y = 0; y < 128; ++y)
        for (int x = 0; x < 128; ++x) {
            int id = frame.ids.at(x, y);
            if (id < 0) continue;
            Vec3 dir = pixel_ray(x + 0.5, y + 0.5, cam);
            auto t = oracle::ray_box_analytic(cam.eye, dir, scene.instances[id].world_bbox);
            REQUIRE(t);
            CHECK(std::abs(frame.depth.at(x, y) - *t) < 1e-4);
        }
}

TEST_CASE("instance pixels back-project into the instance bbox") {
    SceneState scene;
    scene.room = fixtures::square_room(5.0);
    scene.instances.push_back(fixtures::box_instance("a", "a", 2.0, 2.0, 1.0, 0.7, 0.9));
    auto cam = camera_from_lookat({4.5, 4.5, 1.8}, {0.5, 0.5, 0.5}, 84, 160, 160);
    Frame frame = rasterize(scene, cam);
    Aabb3 inflated = scene.instances[0].world_bbox;
    inflated.min -= Vec3(1e-3, 1e-3, 1e-3);
    inflated.max += Vec3(1e-3, 1e-3, 1e-3);
    int seen = 0;
    for (int y = 0; y < 160; ++y)
        for (int x = 0; x < 160; ++x) {
            if (frame.ids.at(x, y) != 0) continue;
            ++seen;
            Vec3 p = backproject(x + 0.5, y + 0.5, frame.depth.at(x, y), cam);
            CHECK(inflated.contains(p));
        }
    CHECK(seen > 100);
}

TEST_CASE("floor visibility") {
    Room room = fixtures::square_room(4.0);
    SUBCASE("overhead wide camera sees the whole floor") {
        auto cam = camera_from_lookat({2, 2, 12.0}, {2, 2, 0.0}, 120, 64, 64, Vec3(0, 1, 0));
        CHECK(floor_visibility(room, cam) == doctest::Approx(1.0));
    }
    SUBCASE("corner-to-corner view sees most of the room") {
        auto cam = camera_from_lookat({4, 4, 1.8}, {0, 0, 0.5}, 84, 512, 512);
        double vis = floor_visibility(room, cam);
        CHECK(vis >= 0.90);
        CHECK(vis <= 1.0);
    }
    SUBCASE("facing a wall from 1 cm is nearly blind") {
        auto cam = camera_from_lookat({0.01, 2, 1.5}, {-1, 2, 1.5}, 84, 64, 64);
        CHECK(floor_visibility(room, cam) < 0.01);
    }
}

TEST_CASE("occupancy") {
    SceneState scene;
    scene.room = fixtures::square_room(4.0);
    SUBCASE("empty room is zero") { CHECK(occupancy(scene) == 0.0); }
    SUBCASE("half-floor footprint is one half") {
        scene.instances.push_back(fixtures::box_instance("a", "a", 1.0, 2.0, 2.0, 4.0, 0.5));
        CHECK(occupancy(scene) == doctest::Approx(0.5).epsilon(1.0 / 512));
    }
    SUBCASE("overlapping footprints count once") {
        scene.instances.push_back(fixtures::box_instance("a", "a", 2.0, 2.0, 1.0, 1.0, 0.5));
        scene.instances.push_back(fixtures::box_instance("b", "b", 2.0, 2.0, 1.0, 1.0, 0.6,
                                                         ObjectCategory::FloorObject, 0.5));
        CHECK(occupancy(scene) == doctest::Approx(1.0 / 16.0).epsilon(1e-2));
    }
    SUBCASE("monotone under adding a floor object") {
        scene.instances.push_back(fixtures::box_instance("a", "a", 1.0, 1.0, 1.0, 1.0, 0.5));
        double before = occupancy(scene);
        scene.instances.push_back(fixtures::box_instance("b", "b", 3.0, 3.0, 0.8, 0.8, 0.5));
        CHECK(occupancy(scene) >= before);
    }
    SUBCASE("wall objects do not count") {
        scene.instances.push_back(fixtures::box_instance("tv", "tv", 2.0, 0.05, 1.0, 0.1, 0.6,
                                                         ObjectCategory::WallObject, 1.2,
                                                         kPi / 2));
        CHECK(occupancy(scene) == 0.0);
    }
}
