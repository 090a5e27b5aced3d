#include "architect/constraints.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <set>

using namespace architect;
using fixtures::box_at;
using fixtures::detection;

namespace {

bool has_kind(const ConstraintSet& set, const std::string& id, ConstraintKind kind,
              const std::string& target = "") {
    for (const auto& c : set.of(id))
        if (c.kind == kind && (target.empty() || c.target == target)) return true;
    return false;
}

}  // namespace

TEST_CASE("single box near a wall gets Edge + orientation + Location") {
    Room room = fixtures::square_room(4.0);
    // Gap 0.05 m to the y=0 wall.
    auto set = derive_floor_constraints({detection("sofa#0", "sofa", box_at(2.0, 0.5, 1.8, 0.9, 0.8))},
                                        room);
    REQUIRE(set.order == std::vector<std::string>{"sofa#0"});
    CHECK(has_kind(set, "sofa#0", ConstraintKind::Edge));
    CHECK(has_kind(set, "sofa#0", ConstraintKind::Horizontal));
    CHECK(!has_kind(set, "sofa#0", ConstraintKind::Vertical));
    CHECK(!has_kind(set, "sofa#0", ConstraintKind::Middle));
    CHECK(!has_kind(set, "sofa#0", ConstraintKind::Corner));
    int locations = 0;
    for (const auto& c : set.of("sofa#0"))
        if (c.kind == ConstraintKind::Location) {
            ++locations;
            CHECK(c.point.x() == doctest::Approx(2.0));
            CHECK(c.point.y() == doctest::Approx(0.5));
            CHECK(c.hardness == Hardness::Soft);
        }
    CHECK(locations == 1);
}

TEST_CASE("corner supersedes edge; middle requires clearance from all walls") {
    Room room = fixtures::square_room(4.0);
    SUBCASE("corner") {
        auto set = derive_floor_constraints(
            {detection("a", "cabinet", box_at(0.4, 0.4, 0.6, 0.6, 1.2))}, room);
        CHECK(has_kind(set, "a", ConstraintKind::Corner));
        CHECK(!has_kind(set, "a", ConstraintKind::Edge));
    }
    SUBCASE("middle") {
        auto set = derive_floor_constraints(
            {detection("a", "table", box_at(2.0, 2.0, 1.0, 1.0, 0.7))}, room);
        CHECK(has_kind(set, "a", ConstraintKind::Middle));
        CHECK(!has_kind(set, "a", ConstraintKind::Edge));
    }
    SUBCASE("neither in the in-between band") {
        auto set = derive_floor_constraints(
            {detection("a", "chair", box_at(2.0, 1.0, 0.5, 0.5, 0.9))}, room);
        // 0.75 m from the near wall: not Edge (>0.3), not Middle (<=0.75).
        CHECK(!has_kind(set, "a", ConstraintKind::Edge));
        CHECK(!has_kind(set, "a", ConstraintKind::Middle));
    }
}

TEST_CASE("pairwise constraints target earlier (larger) objects") {
    Room room = fixtures::square_room(6.0);
    auto big = detection("table#0", "table", box_at(3.0, 3.0, 1.6, 1.0, 0.7));
    auto small = detection("chair#0", "chair", box_at(3.02, 1.9, 0.5, 0.5, 0.9));
    auto set = derive_floor_constraints({small, big}, room);
    REQUIRE(set.order == std::vector<std::string>{"table#0", "chair#0"});

    SUBCASE("near constraint from the footprint gap") {
        // Gap: 1.0/2 + 0.5/2 = 0.75 apart in y -> gap 0.35 < 0.5.
        CHECK(has_kind(set, "chair#0", ConstraintKind::Near, "table#0"));
        CHECK(!has_kind(set, "chair#0", ConstraintKind::Far, "table#0"));
    }
    SUBCASE("center alignment within 0.1 m") {
        CHECK(has_kind(set, "chair#0", ConstraintKind::CenterAligned, "table#0"));
    }
    SUBCASE("relation from the dominant displacement axis") {
        CHECK(has_kind(set, "chair#0", ConstraintKind::Behind, "table#0"));
        CHECK(!has_kind(set, "table#0", ConstraintKind::Behind));
    }
    SUBCASE("acyclicity: every target precedes its subject") {
        for (const auto& id : set.order)
            for (const auto& c : set.of(id)) {
                if (c.target.empty()) continue;
                auto subj = std::find(set.order.begin(), set.order.end(), c.subject);
                auto targ = std::find(set.order.begin(), set.order.end(), c.target);
                CHECK(targ < subj);
            }
    }
}

TEST_CASE("far constraint and relation overlap gating") {
    Room room = fixtures::square_room(8.0);
    auto a = detection("a", "sofa", box_at(1.0, 1.0, 1.5, 1.0, 0.8));
    SUBCASE("far when the gap exceeds 2 m") {
        auto b = detection("b", "desk", box_at(6.0, 6.0, 1.2, 0.7, 0.75));
        auto set = derive_floor_constraints({a, b}, room);
        CHECK(has_kind(set, "b", ConstraintKind::Far, "a"));
        CHECK(!has_kind(set, "b", ConstraintKind::Near, "a"));
    }
    SUBCASE("no relation without 50% perpendicular overlap") {
        auto b = detection("b", "desk", box_at(6.0, 2.2, 1.2, 0.7, 0.75));
        auto set = derive_floor_constraints({a, b}, room);
        // Displacement mostly +x but y-extents overlap under half.
        CHECK(!has_kind(set, "b", ConstraintKind::RightOf, "a"));
        CHECK(!has_kind(set, "b", ConstraintKind::LeftOf, "a"));
    }
    SUBCASE("relation present with full perpendicular overlap") {
        auto b = detection("b", "desk", box_at(6.0, 1.0, 1.2, 1.0, 0.75));
        auto set = derive_floor_constraints({a, b}, room);
        CHECK(has_kind(set, "b", ConstraintKind::RightOf, "a"));
    }
}

TEST_CASE("empty detections produce an empty set") {
    auto set = derive_floor_constraints({}, fixtures::square_room(4.0));
    CHECK(set.order.empty());
    CHECK(set.by_subject.empty());
    CHECK(dump_constraints(set).empty());
}

TEST_CASE("derivation is deterministic") {
    Room room = fixtures::square_room(5.0);
    std::vector<Detection3d> dets = {
        detection("a", "sofa", box_at(1.0, 1.0, 1.5, 1.0, 0.8)),
        detection("b", "table", box_at(3.0, 3.0, 1.2, 1.2, 0.7)),
        detection("c", "chair", box_at(3.0, 1.9, 0.5, 0.5, 0.9)),
    };
    CHECK(dump_constraints(derive_floor_constraints(dets, room)) ==
          dump_constraints(derive_floor_constraints(dets, room)));
}

TEST_CASE("wall constraints") {
    Room room = fixtures::square_room(4.0);
    std::vector<Detection3d> floors = {
        detection("cabinet#0", "cabinet", box_at(2.0, 0.3, 1.4, 0.5, 0.9))};

    SUBCASE("TV above a cabinet") {
        auto tv = detection("tv#0", "tv", box_at(2.0, 0.06, 0.9, 0.12, 0.5, 1.2),
                            ObjectCategory::WallObject);
        auto set = derive_wall_constraints({tv}, floors, room);
        CHECK(has_kind(set, "tv#0", ConstraintKind::Above, "cabinet#0"));
        bool saw_height = false;
        for (const auto& c : set.of("tv#0"))
            if (c.kind == ConstraintKind::Height) {
                saw_height = true;
                CHECK(c.value == doctest::Approx(1.45));  // center of [1.2, 1.7]
                CHECK(c.hardness == Hardness::Hard);
            }
        CHECK(saw_height);
    }
    SUBCASE("painting with nothing beneath gets Location + Height only") {
        auto art = detection("art#0", "painting", box_at(1.0, 3.95, 0.8, 0.06, 0.6, 1.4),
                             ObjectCategory::WallObject);
        auto set = derive_wall_constraints({art}, floors, room);
        CHECK(!has_kind(set, "art#0", ConstraintKind::Above));
        CHECK(has_kind(set, "art#0", ConstraintKind::Location));
        CHECK(has_kind(set, "art#0", ConstraintKind::Height));
        for (const auto& c : set.of("art#0"))
            if (c.kind == ConstraintKind::Location) CHECK(c.point.y() == doctest::Approx(4.0));
    }
    SUBCASE("an object a meter from every wall is misclassified") {
        auto stray = detection("x#0", "mirror", box_at(2.0, 2.0, 0.6, 0.06, 0.9, 1.0),
                               ObjectCategory::WallObject);
        CHECK_THROWS_AS(derive_wall_constraints({stray}, floors, room), MisclassifiedError);
        std::vector<Detection3d> demoted;
        auto set = derive_wall_constraints({stray}, floors, room, {}, &demoted);
        CHECK(set.order.empty());
        REQUIRE(demoted.size() == 1);
        CHECK(demoted[0].id == "x#0");
    }
}

TEST_CASE("rotation constraints") {
    SceneState scene;
    scene.room = fixtures::square_room(6.0);
    std::vector<Detection3d> objects = {
        detection("table#0", "table", box_at(3.0, 3.0, 1.4, 1.0, 0.7)),
        detection("chair#0", "chair", box_at(3.0, 1.8, 0.5, 0.5, 0.9)),
        detection("desk#0", "desk", box_at(1.0, 3.0, 1.2, 0.7, 0.75)),
    };
    std::vector<std::string> order = {"table#0", "desk#0", "chair#0"};

    SUBCASE("scripted annotator hint is honored") {
        struct ScriptedAnnotator : AnnotatorService {
            std::vector<std::pair<std::string, std::string>> rotation_hints(
                const std::vector<Detection3d>&, const std::string&) override {
                return {{"chair#0", "table#0"}};
            }
        } annotator;
        auto out = rotation_constraints(objects, order, scene, "living room", &annotator);
        REQUIRE(out.size() == 1);
        CHECK(out[0].kind == ConstraintKind::FaceTo);
        CHECK(out[0].subject == "chair#0");
        CHECK(out[0].target == "table#0");
        CHECK(out[0].hardness == Hardness::Soft);
    }
    SUBCASE("fallback: seating faces the nearest table-category object") {
        auto out = rotation_constraints(objects, order, scene, "", nullptr, true);
        const Constraint* chair = nullptr;
        for (const auto& c : out)
            if (c.subject == "chair#0") chair = &c;
        REQUIRE(chair);
        // Nearest-neighbor oracle over table-category objects.
        double d_table = (Vec2(3.0, 3.0) - Vec2(3.0, 1.8)).norm();
        double d_desk = (Vec2(1.0, 3.0) - Vec2(3.0, 1.8)).norm();
        REQUIRE(d_table < d_desk);
        CHECK(chair->target == "table#0");
    }
    SUBCASE("fallback: non-seating faces away from its nearest wall") {
        auto out = rotation_constraints(objects, order, scene, "", nullptr, true);
        const Constraint* desk = nullptr;
        for (const auto& c : out)
            if (c.subject == "desk#0") desk = &c;
        REQUIRE(desk);
        CHECK(desk->target.empty());
        REQUIRE(desk->face_heading.has_value());
        CHECK(*desk->face_heading == doctest::Approx(0.0));  // nearest wall x=0, inward +x
    }
    SUBCASE("no candidates yield an empty list") {
        CHECK(rotation_constraints({}, {}, scene, "", nullptr, true).empty());
    }
    SUBCASE("annotator missing with fallback disabled is a service error") {
        CHECK_THROWS_AS(rotation_constraints(objects, order, scene, "", nullptr, false),
                        ServiceError);
    }
    SUBCASE("hints targeting later objects are dropped") {
        struct BadAnnotator : AnnotatorService {
            std::vector<std::pair<std::string, std::string>> rotation_hints(
                const std::vector<Detection3d>&, const std::string&) override {
                return {{"table#0", "chair#0"}};  // target placed later
            }
        } annotator;
        CHECK(rotation_constraints(objects, order, scene, "", &annotator).empty());
    }
}

TEST_CASE("edge and middle are mutually exclusive across random boxes") {
    Room room = fixtures::square_room(5.0);
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> pos(0.3, 4.7);
    std::uniform_real_distribution<double> dim(0.2, 1.2);
    for (int i = 0; i < 200; ++i) {
        auto det = detection("r", "thing", box_at(pos(rng), pos(rng), dim(rng), dim(rng), 0.5));
        auto set = derive_floor_constraints({det}, room);
        bool edge = has_kind(set, "r", ConstraintKind::Edge) ||
                    has_kind(set, "r", ConstraintKind::Corner);
        bool middle = has_kind(set, "r", ConstraintKind::Middle);
        CHECK(!(edge && middle));
    }
}
