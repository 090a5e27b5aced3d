#include "architect/view_mask.hpp"

#include <doctest.h>

#include "helpers.hpp"

using namespace architect;

TEST_CASE("room_views reproduces the three heuristic cameras") {
    SUBCASE("4x4 room") {
        auto plan = room_views(fixtures::square_room(4.0));
        REQUIRE(plan.cameras.size() == 3);
        CHECK((plan.cameras[0].eye - Vec3(4, 4, 1.8)).norm() < 1e-12);
        CHECK((plan.cameras[0].target - Vec3(0, 0, 0.5)).norm() < 1e-12);
        CHECK((plan.cameras[2].eye - Vec3(0, 4, 1.8)).norm() < 1e-12);
        CHECK((plan.cameras[2].target - Vec3(4, 0, 0.5)).norm() < 1e-12);
    }
    SUBCASE("6x3 room, middle view") {
        Room room;
        room.origin = {0, 0};
        room.extent = {6, 3};
        auto plan = room_views(room);
        CHECK((plan.cameras[1].eye - Vec3(3, 0, 1.8)).norm() < 1e-12);
        CHECK((plan.cameras[1].target - Vec3(3, 3, 0.5)).norm() < 1e-12);
    }
    SUBCASE("three distinct eyes, deterministic") {
        auto plan = room_views(fixtures::square_room(5.0));
        CHECK((plan.cameras[0].eye - plan.cameras[1].eye).norm() > 0.1);
        CHECK((plan.cameras[1].eye - plan.cameras[2].eye).norm() > 0.1);
        auto again = room_views(fixtures::square_room(5.0));
        for (int i = 0; i < 3; ++i)
            CHECK((plan.cameras[i].eye - again.cameras[i].eye).norm() == 0.0);
    }
}

TEST_CASE("should_continue implements the 0.7 / 3-view stop rule") {
    SceneState scene;
    scene.room = fixtures::square_room(4.0);
    SUBCASE("empty scene continues") { CHECK(should_continue(scene, 0)); }
    SUBCASE("three views used stops") { CHECK(!should_continue(scene, 3)); }
    SUBCASE("occupancy above 0.7 stops") {
        // 3.44 x 3.44 of 16 m^2 -> 0.7396 occupancy.
        scene.instances.push_back(fixtures::box_instance("a", "a", 2.0, 2.0, 3.44, 3.44, 0.5));
        REQUIRE(occupancy(scene) > 0.7);
        CHECK(!should_continue(scene, 1));
    }
    SUBCASE("occupancy exactly at the threshold continues") {
        scene.instances.push_back(fixtures::box_instance("a", "a", 2.0, 2.0, 3.2, 3.5, 0.5));
        REQUIRE(occupancy(scene) == doctest::Approx(0.7).epsilon(1e-2));
        CHECK(should_continue(scene, 1) == (occupancy(scene) <= 0.7));
    }
}

TEST_CASE("object_view frames the whole object") {
    SUBCASE("unit-cube table, on-top: all corners project inside") {
        auto table = fixtures::box_instance("t", "table", 2.0, 2.0, 1.0, 1.0, 1.0);
        auto cam = object_view(table, ObjectViewKind::OnTop, 84, 256, 256);
        const Aabb3& b = table.world_bbox;
        for (int c = 0; c < 8; ++c) {
            Vec3 corner((c & 1) ? b.max.x() : b.min.x(), (c & 2) ? b.max.y() : b.min.y(),
                        (c & 4) ? b.max.z() : b.min.z());
            auto px = project(corner, cam);
            REQUIRE(px);
            CHECK(px->u >= 0);
            CHECK(px->u < 256);
            CHECK(px->v >= 0);
            CHECK(px->v < 256);
        }
        // Front-top: looking down with a tilt, and from the +x side (yaw 0).
        CHECK(cam.forward.z() < -0.5);
        CHECK(cam.eye.x() > b.max.x());
    }
    SUBCASE("shelf with front along +y: camera on the +y side, forward -y") {
        auto shelf = fixtures::box_instance("s", "shelf", 2.0, 2.0, 1.0, 0.4, 1.8,
                                            ObjectCategory::FloorObject, 0.0, kPi / 2);
        auto cam = object_view(shelf, ObjectViewKind::Inside, 84, 256, 256);
        CHECK(cam.eye.y() > shelf.world_bbox.max.y());
        CHECK(cam.forward.dot(Vec3(0, -1, 0)) > 0.99);
        CHECK(std::abs(cam.forward.z()) < 1e-9);
    }
    SUBCASE("zero-extent bbox is an error") {
        ObjectInstance degenerate;
        degenerate.world_bbox = {{1, 1, 0}, {1, 1, 0}};
        CHECK_THROWS_AS(object_view(degenerate, ObjectViewKind::OnTop), GeometryError);
    }
}

namespace {

Frame room_frame(const SceneState& scene, const CameraView& cam) { return rasterize(scene, cam); }

}  // namespace

TEST_CASE("build_inpaint_mask, room-centered") {
    SceneState scene;
    scene.room = fixtures::square_room(4.0);
    auto cam = camera_from_lookat({4, 4, 1.8}, {0, 0, 0.5}, 84, 100, 100);

    SUBCASE("empty room: centered rectangle, nothing excluded") {
        Frame frame = room_frame(scene, cam);
        auto mask = build_inpaint_mask(MaskKind::RoomCentered, frame, cam);
        CHECK(mask.excluded_ids.empty());
        // Defaults: 70% x 60% centered rectangle.
        CHECK(mask.at(50, 50) == 1.0);
        CHECK(mask.at(10, 50) == 0.0);
        CHECK(mask.at(50, 15) == 0.0);
        long support = 0;
        for (int y = 0; y < 100; ++y)
            for (int x = 0; x < 100; ++x)
                if (mask.at(x, y) > 0) ++support;
        CHECK(support == 70 * 60);
    }
    SUBCASE("existing object pixels are excluded exactly") {
        scene.instances.push_back(fixtures::box_instance("chair", "chair", 2.0, 2.0, 0.8, 0.8, 1.0));
        Frame frame = room_frame(scene, cam);
        auto mask = build_inpaint_mask(MaskKind::RoomCentered, frame, cam);
        REQUIRE(mask.excluded_ids == std::vector<int>{0});
        for (int y = 0; y < 100; ++y)
            for (int x = 0; x < 100; ++x)
                if (frame.ids.at(x, y) == 0) CHECK(mask.at(x, y) == 0.0);
    }
}

TEST_CASE("build_inpaint_mask, cube-fill") {
    SceneState scene;
    scene.room = fixtures::square_room(4.0);
    auto table = fixtures::box_instance("t", "table", 2.0, 2.0, 1.2, 0.8, 0.75);
    scene.instances.push_back(table);

    SUBCASE("on-top cube projects above the table and keeps other objects") {
        auto small = fixtures::box_instance("cup", "cup", 2.0, 2.0, 0.1, 0.1, 0.12,
                                            ObjectCategory::SmallObject, 0.75);
        scene.instances.push_back(small);
        auto cam = object_view(table, ObjectViewKind::OnTop, 84, 128, 128);
        Frame frame = rasterize(scene, cam);
        auto mask = build_inpaint_mask(MaskKind::CubeFill, frame, cam, &table, 0,
                                       ObjectViewKind::OnTop);
        CHECK(!mask.empty_support());
        // Pixels of the existing small object stay untouched.
        for (int y = 0; y < 128; ++y)
            for (int x = 0; x < 128; ++x)
                if (frame.ids.at(x, y) == 1) CHECK(mask.at(x, y) == 0.0);
        CHECK(std::find(mask.excluded_ids.begin(), mask.excluded_ids.end(), 1) !=
              mask.excluded_ids.end());
        // The cube sits on the table top: masked pixels back-project above it.
        Aabb3 cube = cube_fill_box(table, ObjectViewKind::OnTop);
        CHECK(cube.min.z() == doctest::Approx(0.75));
        CHECK(cube.max.z() == doctest::Approx(0.75 + 0.35));
    }
    SUBCASE("fully occluded target yields an empty-mask error") {
        // A slab hanging between the camera and the cube hides every pixel.
        auto blocker = fixtures::box_instance("slab", "slab", 2.0, 2.0, 3.9, 3.9, 0.2,
                                              ObjectCategory::FloorObject, 1.3);
        SceneState blocked;
        blocked.room = fixtures::square_room(4.0);
        blocked.instances.push_back(blocker);
        auto cam = object_view(table, ObjectViewKind::OnTop, 84, 96, 96);
        REQUIRE(cam.eye.z() > 1.5);
        Frame frame = rasterize(blocked, cam);
        CHECK_THROWS_AS(build_inpaint_mask(MaskKind::CubeFill, frame, cam, &table, 5,
                                           ObjectViewKind::OnTop),
                        EmptyMaskError);
    }
}

TEST_CASE("soften_mask") {
    SUBCASE("radius 0, sigma 0 is the identity") {
        InpaintMask mask(32, 32);
        for (int y = 10; y < 20; ++y)
            for (int x = 8; x < 24; ++x) mask.set(x, y, 1.0);
        auto out = soften_mask(mask, 0, 0);
        CHECK((out.weights == mask.weights).all());
    }
    SUBCASE("erosion of a 20x20 square by radius 2 leaves 16x16") {
        InpaintMask mask(40, 40);
        for (int y = 10; y < 30; ++y)
            for (int x = 10; x < 30; ++x) mask.set(x, y, 1.0);
        auto out = soften_mask(mask, 2.0, 0.0);
        long support = 0;
        for (int y = 0; y < 40; ++y)
            for (int x = 0; x < 40; ++x)
                if (out.at(x, y) > 0.5) ++support;
        CHECK(support == 16 * 16);
        CHECK(out.at(12, 12) == 1.0);
        CHECK(out.at(11, 12) == 0.0);
    }
    SUBCASE("outputs stay within [0, 1]") {
        InpaintMask mask(24, 24);
        for (int y = 4; y < 20; ++y)
            for (int x = 4; x < 20; ++x) mask.set(x, y, 1.0);
        auto out = soften_mask(mask, 1.0, 2.0);
        for (int y = 0; y < 24; ++y)
            for (int x = 0; x < 24; ++x) {
                CHECK(out.at(x, y) >= 0.0);
                CHECK(out.at(x, y) <= 1.0);
            }
    }
    SUBCASE("0.5-level support never exceeds the pre-erosion mask dilated by 3 sigma") {
        InpaintMask mask(48, 48);
        for (int y = 20; y < 28; ++y)
            for (int x = 20; x < 28; ++x) mask.set(x, y, 1.0);
        double sigma = 2.0;
        auto out = soften_mask(mask, 1.0, sigma);
        int reach = static_cast<int>(std::ceil(3 * sigma));
        for (int y = 0; y < 48; ++y)
            for (int x = 0; x < 48; ++x) {
                if (out.at(x, y) <= 0.5) continue;
                bool near = false;
                for (int dy = -reach; dy <= reach && !near; ++dy)
                    for (int dx = -reach; dx <= reach && !near; ++dx) {
                        int xx = x + dx, yy = y + dy;
                        if (xx >= 0 && xx < 48 && yy >= 0 && yy < 48 && mask.at(xx, yy) > 0.5)
                            near = true;
                    }
                CHECK(near);
            }
    }
}
