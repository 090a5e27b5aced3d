#include "architect/scene.hpp"
#include "architect/scene_io.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <random>

using namespace architect;

TEST_CASE("canonical float formatting is idempotent") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1e4, 1e4);
    for (int i = 0; i < 2000; ++i) {
        double x = dist(rng);
        double c = canon(x);
        CHECK(canon(c) == c);
        CHECK(format_double(c) == format_double(canon(c)));
    }
    CHECK(format_double(-0.0) == "0");
    CHECK(canon(0.1) == canon(canon(0.1)));
}

TEST_CASE("empty scene serializes to a room block and empty instance list") {
    SceneState scene;
    scene.room = fixtures::square_room(4.0);
    std::string text = serialize_scene(scene);
    CHECK(text.find("\"room\"") != std::string::npos);
    CHECK(text.find("\"instances\": []") != std::string::npos);
    CHECK(text.find("\"seed\": 0") != std::string::npos);
    SceneState back = deserialize_scene(text);
    CHECK(scenes_equal(scene, back));
}

TEST_CASE("scene with one instance round-trips to an equal state") {
    SceneState scene;
    scene.room = fixtures::square_room(5.0);
    scene.rng_seed = 42;
    scene.instances.push_back(fixtures::box_instance("sofa_0", "sofa", 2.0, 1.0, 1.8, 0.9, 0.8));
    scene.log("object-placed", "sofa_0");
    SceneState back = deserialize_scene(serialize_scene(scene));
    CHECK(scenes_equal(scene, back));
    REQUIRE(back.instances.size() == 1);
    CHECK(back.instances[0].id == "sofa_0");
    CHECK(back.instances[0].spec.category == ObjectCategory::FloorObject);
    CHECK(back.pass_log.size() == 1);
}

TEST_CASE("two serializations of the same state are byte-identical") {
    SceneState scene;
    scene.room = fixtures::square_room(4.0);
    scene.room.doors.push_back({0, 0.5, 0.9, 2.0, 0.0});
    scene.room.windows.push_back({2, 1.0, 1.2, 1.0, 0.9});
    scene.instances.push_back(fixtures::box_instance("table_0", "table", 2.0, 2.0, 1.2, 0.8, 0.75));
    scene.instances.push_back(
        fixtures::box_instance("tv_0", "tv", 2.0, 0.05, 0.9, 0.1, 0.5, ObjectCategory::WallObject,
                               1.0, kPi / 2));
    CHECK(serialize_scene(scene) == serialize_scene(scene));
    SceneState back = deserialize_scene(serialize_scene(scene));
    CHECK(serialize_scene(back) == serialize_scene(scene));
}

TEST_CASE("serialization round-trips random scenes exactly") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(0.6, 5.4);
    std::uniform_real_distribution<double> dim(0.2, 1.0);
    for (int iter = 0; iter < 20; ++iter) {
        SceneState scene;
        scene.room = fixtures::square_room(6.0);
        scene.rng_seed = rng();
        int n = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) {
            double yaw = (rng() % 4) * kPi / 2;
            scene.instances.push_back(fixtures::box_instance(
                "obj_" + std::to_string(i), "obj", pos(rng), pos(rng), dim(rng), dim(rng),
                dim(rng), ObjectCategory::FloorObject, 0.0, yaw));
        }
        std::string text = serialize_scene(scene);
        CHECK(serialize_scene(deserialize_scene(text)) == text);
    }
}

TEST_CASE("inventory summary") {
    SceneState scene;
    scene.room = fixtures::square_room(8.0);
    CHECK(inventory_summary(scene).empty());

    scene.instances.push_back(fixtures::box_instance("a", "sofa", 1.0, 1.0, 1.0, 1.0, 0.5));
    scene.instances.push_back(fixtures::box_instance("b", "sofa", 3.0, 1.0, 1.0, 1.0, 0.5));
    scene.instances.push_back(fixtures::box_instance("c", "table", 5.0, 1.0, 1.0, 1.0, 0.5));
    auto inv = inventory_summary(scene);
    REQUIRE(inv.size() == 2);
    CHECK(inv[0] == std::pair<std::string, int>{"sofa", 2});
    CHECK(inv[1] == std::pair<std::string, int>{"table", 1});

    SUBCASE("counts sum to the instance count") {
        SceneState big;
        big.room = fixtures::square_room(20.0);
        const char* names[4] = {"w", "x", "y", "z"};
        std::mt19937_64 rng(3);
        for (int i = 0; i < 10; ++i)
            big.instances.push_back(fixtures::box_instance("i" + std::to_string(i),
                                                           names[rng() % 4], 1.0 + i * 1.5, 1.0,
                                                           0.5, 0.5, 0.5));
        int total = 0;
        for (const auto& [name, count] : inventory_summary(big)) total += count;
        CHECK(total == 10);
    }
}

TEST_CASE("validate_scene catches invariant violations") {
    SceneState scene;
    scene.room = fixtures::square_room(4.0);
    scene.instances.push_back(fixtures::box_instance("a", "sofa", 1.0, 1.0, 1.0, 1.0, 0.5));
    CHECK(validate_scene(scene).empty());

    SUBCASE("duplicate ids") {
        scene.instances.push_back(fixtures::box_instance("a", "sofa", 3.0, 3.0, 1.0, 1.0, 0.5));
        CHECK(!validate_scene(scene).empty());
    }
    SUBCASE("out of room") {
        scene.instances.push_back(fixtures::box_instance("b", "sofa", 3.9, 3.9, 1.0, 1.0, 0.5));
        CHECK(!validate_scene(scene).empty());
    }
    SUBCASE("floor overlap") {
        scene.instances.push_back(fixtures::box_instance("b", "table", 1.2, 1.2, 1.0, 1.0, 0.5));
        CHECK(!validate_scene(scene).empty());
    }
    SUBCASE("tampered bbox") {
        scene.instances[0].world_bbox.max.x() += 0.2;
        CHECK(!validate_scene(scene).empty());
    }
    SUBCASE("touching faces do not overlap") {
        scene.instances.push_back(fixtures::box_instance("b", "table", 2.0, 1.0, 1.0, 1.0, 0.5));
        CHECK(validate_scene(scene).empty());
    }
    SUBCASE("wall object must face away from its wall") {
        scene.instances.push_back(fixtures::box_instance(
            "tv", "tv", 2.0, 0.05, 0.8, 0.1, 0.5, ObjectCategory::WallObject, 1.2, kPi / 2));
        CHECK(validate_scene(scene).empty());
        scene.instances.back() = fixtures::box_instance(
            "tv", "tv", 2.0, 0.05, 0.8, 0.1, 0.5, ObjectCategory::WallObject, 1.2, kPi);
        CHECK(!validate_scene(scene).empty());
    }
}

TEST_CASE("stored bbox matches the pose recomputation within 1e-9") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(1.0, 7.0);
    std::uniform_real_distribution<double> dim(0.1, 2.0);
    std::uniform_real_distribution<double> yaw(0.0, 2 * kPi);
    for (int i = 0; i < 200; ++i) {
        auto inst = fixtures::box_instance("x", "x", pos(rng), pos(rng), dim(rng), dim(rng),
                                           dim(rng), ObjectCategory::FloorObject, 0.0, yaw(rng));
        Aabb3 redo = world_bbox_from(inst.asset_dims, inst.position, inst.yaw, inst.scale);
        redo = {canon(redo.min), canon(redo.max)};
        CHECK((redo.min - inst.world_bbox.min).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK((redo.max - inst.world_bbox.max).cwiseAbs().maxCoeff() <= 1e-9);
    }
}
