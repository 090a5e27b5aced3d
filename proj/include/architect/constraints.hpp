#pragma once

#include "architect/room.hpp"
#include "architect/scene.hpp"
#include "architect/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace architect {

// A detected object: what the perception stack believes sits inside `bbox`.
struct Detection3d {
    std::string id;
    ObjectSpec spec;
    Aabb3 bbox;
};

enum class ConstraintKind {
    Edge,
    Middle,
    Corner,
    Horizontal,
    Vertical,
    Near,
    Far,
    FrontOf,
    Behind,
    LeftOf,
    RightOf,
    CenterAligned,
    Location,
    FaceTo,
    Above,
    Height
};

enum class Hardness { Hard, Soft };

std::string to_string(ConstraintKind k);

struct Constraint {
    ConstraintKind kind = ConstraintKind::Location;
    Hardness hardness = Hardness::Soft;
    std::string subject;
    std::string target;                    // empty when the kind has none
    Vec2 point{0, 0};                      // Location reference
    double value = 0;                      // Height
    std::optional<double> face_heading;    // FaceTo without target: desired yaw
};

struct ConstraintSet {
    std::vector<std::string> order;  // placement order (size-sorted subjects)
    std::map<std::string, std::vector<Constraint>> by_subject;

    void add(Constraint c) { by_subject[c.subject].push_back(std::move(c)); }
    const std::vector<Constraint>& of(const std::string& id) const {
        static const std::vector<Constraint> empty;
        auto it = by_subject.find(id);
        return it == by_subject.end() ? empty : it->second;
    }
    // Appends another set's order and constraints (wall objects after floor).
    void merge(const ConstraintSet& other);
};

struct ConstraintThresholds {
    double edge_eps = 0.30;
    double middle_eps = 0.75;
    double near_eps = 0.50;
    double far_eps = 2.0;
    double align_eps = 0.10;
    double overlap_frac = 0.50;
    double wall_adjacency = 0.20;
};

// Sorts detections by footprint area (desc; ties by height desc, then name,
// then id) and derives the Appendix-style constraint lists: Edge/Corner/
// Middle and Horizontal/Vertical as hard global constraints, Near/Far,
// relations, CenterAligned as soft pairwise constraints targeting earlier
// objects, and exactly one soft Location at the detected footprint center.
ConstraintSet derive_floor_constraints(const std::vector<Detection3d>& detections,
                                       const Room& room,
                                       const ConstraintThresholds& thresholds = {});

// Wall objects: hard Above(nearest floor object under the footprint), soft
// Location projected onto the nearest wall, hard Height at the bbox vertical
// center. Objects farther than wall_adjacency from every wall are
// misclassified: appended to *demoted when given, otherwise a
// MisclassifiedError is thrown.
ConstraintSet derive_wall_constraints(const std::vector<Detection3d>& detections,
                                      const std::vector<Detection3d>& floor_objects,
                                      const Room& room,
                                      const ConstraintThresholds& thresholds = {},
                                      std::vector<Detection3d>* demoted = nullptr);

// Common-sense rotation hints: (subject id, target id) pairs.
struct AnnotatorService {
    virtual ~AnnotatorService() = default;
    virtual std::vector<std::pair<std::string, std::string>> rotation_hints(
        const std::vector<Detection3d>& objects, const std::string& scene_summary) = 0;
};

// Soft FaceTo constraints from the annotator; hints whose target is neither
// earlier in `order` nor an existing instance are dropped. When the annotator
// is null or fails and `fallback` is set, seating objects face the nearest
// table-category object and everything else faces away from its nearest wall
// (a heading-valued FaceTo).
std::vector<Constraint> rotation_constraints(const std::vector<Detection3d>& objects,
                                             const std::vector<std::string>& order,
                                             const SceneState& scene,
                                             const std::string& scene_summary,
                                             AnnotatorService* annotator, bool fallback = true);

// One constraint per line: `subject kind target? hardness params`.
std::string dump_constraints(const ConstraintSet& set);

}  // namespace architect
