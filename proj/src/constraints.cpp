#include "architect/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace architect {

std::string to_string(ConstraintKind k) {
    switch (k) {
        case ConstraintKind::Edge: return "edge";
        case ConstraintKind::Middle: return "middle";
        case ConstraintKind::Corner: return "corner";
        case ConstraintKind::Horizontal: return "horizontal";
        case ConstraintKind::Vertical: return "vertical";
        case ConstraintKind::Near: return "near";
        case ConstraintKind::Far: return "far";
        case ConstraintKind::FrontOf: return "front_of";
        case ConstraintKind::Behind: return "behind";
        case ConstraintKind::LeftOf: return "left_of";
        case ConstraintKind::RightOf: return "right_of";
        case ConstraintKind::CenterAligned: return "center_aligned";
        case ConstraintKind::Location: return "location";
        case ConstraintKind::FaceTo: return "face_to";
        case ConstraintKind::Above: return "above";
        default: return "height";
    }
}

void ConstraintSet::merge(const ConstraintSet& other) {
    order.insert(order.end(), other.order.begin(), other.order.end());
    for (const auto& [id, list] : other.by_subject) {
        auto& dst = by_subject[id];
        dst.insert(dst.end(), list.begin(), list.end());
    }
}

namespace {

// Placement order: big things first.
bool size_order(const Detection3d& a, const Detection3d& b) {
    double fa = footprint_of(a.bbox).area();
    double fb = footprint_of(b.bbox).area();
    if (fa != fb) return fa > fb;
    double ha = a.bbox.sizes().z();
    double hb = b.bbox.sizes().z();
    if (ha != hb) return ha > hb;
    if (a.spec.name != b.spec.name) return a.spec.name < b.spec.name;
    return a.id < b.id;
}

Vec2 clamp_to_room(const Room& room, const Vec2& p) {
    return {std::clamp(p.x(), room.x0(), room.x1()), std::clamp(p.y(), room.y0(), room.y1())};
}

}  // namespace

ConstraintSet derive_floor_constraints(const std::vector<Detection3d>& detections,
                                       const Room& room, const ConstraintThresholds& th) {
    std::vector<Detection3d> sorted = detections;
    std::sort(sorted.begin(), sorted.end(), size_order);

    ConstraintSet set;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const Detection3d& cur = sorted[k];
        set.order.push_back(cur.id);
        Rect2 fp = footprint_of(cur.bbox);

        std::vector<int> edge_walls;
        bool all_middle = true;
        for (int w = 0; w < 4; ++w) {
            double d = room.wall_distance(w, fp);
            if (d < th.edge_eps) edge_walls.push_back(w);
            if (d <= th.middle_eps) all_middle = false;
        }
        bool corner = false;
        for (std::size_t i = 0; i + 1 < edge_walls.size() && !corner; ++i)
            for (std::size_t j = i + 1; j < edge_walls.size() && !corner; ++j)
                if ((edge_walls[i] + edge_walls[j]) % 2 == 1) corner = true;
        if (corner)
            set.add({ConstraintKind::Corner, Hardness::Hard, cur.id});
        else if (!edge_walls.empty())
            set.add({ConstraintKind::Edge, Hardness::Hard, cur.id});
        else if (all_middle)
            set.add({ConstraintKind::Middle, Hardness::Hard, cur.id});

        Vec2 ext = fp.sizes();
        set.add({ext.x() >= ext.y() ? ConstraintKind::Horizontal : ConstraintKind::Vertical,
                 Hardness::Hard, cur.id});

        for (std::size_t i = 0; i < k; ++i) {
            const Detection3d& other = sorted[i];
            Rect2 ofp = footprint_of(other.bbox);
            double gap = rect_gap(fp, ofp);
            if (gap < th.near_eps)
                set.add({ConstraintKind::Near, Hardness::Soft, cur.id, other.id});
            else if (gap > th.far_eps)
                set.add({ConstraintKind::Far, Hardness::Soft, cur.id, other.id});

            Vec2 disp = fp.center() - ofp.center();
            int axis = std::abs(disp.x()) >= std::abs(disp.y()) ? 0 : 1;
            int perp = 1 - axis;
            double overlap = interval_overlap(fp.min[perp], fp.max[perp], ofp.min[perp],
                                              ofp.max[perp]);
            double smaller = std::min(fp.sizes()[perp], ofp.sizes()[perp]);
            if (smaller > 0 && overlap > th.overlap_frac * smaller) {
                ConstraintKind kind;
                if (axis == 0)
                    kind = disp.x() > 0 ? ConstraintKind::RightOf : ConstraintKind::LeftOf;
                else
                    kind = disp.y() > 0 ? ConstraintKind::FrontOf : ConstraintKind::Behind;
                set.add({kind, Hardness::Soft, cur.id, other.id});
            }

            if (std::abs(disp.x()) < th.align_eps || std::abs(disp.y()) < th.align_eps)
                set.add({ConstraintKind::CenterAligned, Hardness::Soft, cur.id, other.id});
        }

        Constraint loc{ConstraintKind::Location, Hardness::Soft, cur.id};
        loc.point = clamp_to_room(room, fp.center());
        set.add(std::move(loc));
    }
    return set;
}

ConstraintSet derive_wall_constraints(const std::vector<Detection3d>& detections,
                                      const std::vector<Detection3d>& floor_objects,
                                      const Room& room, const ConstraintThresholds& th,
                                      std::vector<Detection3d>* demoted) {
    std::vector<Detection3d> sorted = detections;
    std::sort(sorted.begin(), sorted.end(), size_order);

    ConstraintSet set;
    for (const Detection3d& cur : sorted) {
        Rect2 fp = footprint_of(cur.bbox);
        int wall = -1;
        double best = th.wall_adjacency;
        for (int w = 0; w < 4; ++w) {
            double d = std::abs(room.wall_distance(w, fp));
            if (d <= best) {
                best = d;
                wall = w;
            }
        }
        if (wall < 0) {
            if (demoted) {
                demoted->push_back(cur);
                continue;
            }
            throw MisclassifiedError(cur.id + ": wall object not near any wall");
        }
        set.order.push_back(cur.id);

        // Nearest floor object under the footprint, by vertical gap.
        const Detection3d* below = nullptr;
        double best_gap = 0;
        for (const auto& fo : floor_objects) {
            if (!rect_intersects(fp, footprint_of(fo.bbox), 0.0)) continue;
            double gap = cur.bbox.min.z() - fo.bbox.max.z();
            if (gap < -1e-6) continue;
            if (!below || gap < best_gap || (gap == best_gap && fo.id < below->id)) {
                below = &fo;
                best_gap = gap;
            }
        }
        if (below) set.add({ConstraintKind::Above, Hardness::Hard, cur.id, below->id});

        Vec2 center = cur.bbox.center().head<2>();
        double t = std::clamp(room.wall_coord(wall, center), 0.0, room.wall_span(wall));
        Constraint loc{ConstraintKind::Location, Hardness::Soft, cur.id};
        loc.point = room.wall_point(wall, t);
        set.add(std::move(loc));

        Constraint h{ConstraintKind::Height, Hardness::Hard, cur.id};
        h.value = cur.bbox.center().z();
        set.add(std::move(h));
    }
    return set;
}

namespace {

bool name_contains_any(const std::string& name, const std::vector<std::string>& words) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto& w : words)
        if (lower.find(w) != std::string::npos) return true;
    return false;
}

const std::vector<std::string> kSeatingWords = {"chair", "sofa", "stool", "bench", "couch",
                                                "seat"};
const std::vector<std::string> kTableWords = {"table", "desk"};

}  // namespace

std::vector<Constraint> rotation_constraints(const std::vector<Detection3d>& objects,
                                             const std::vector<std::string>& order,
                                             const SceneState& scene,
                                             const std::string& scene_summary,
                                             AnnotatorService* annotator, bool fallback) {
    auto order_index = [&](const std::string& id) -> int {
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] == id) return static_cast<int>(i);
        return -1;
    };
    auto target_allowed = [&](const std::string& subject, const std::string& target) {
        if (scene.find(target)) return true;
        int si = order_index(subject);
        int ti = order_index(target);
        return ti >= 0 && si >= 0 && ti < si;
    };

    std::vector<std::pair<std::string, std::string>> hints;
    bool have_hints = false;
    if (annotator) {
        try {
            hints = annotator->rotation_hints(objects, scene_summary);
            have_hints = true;
        } catch (const ServiceError&) {
            if (!fallback) throw;
        }
    } else if (!fallback) {
        throw ServiceError("rotation annotator unavailable and fallback disabled");
    }

    std::vector<Constraint> out;
    if (have_hints) {
        for (const auto& [subject, target] : hints) {
            if (!target_allowed(subject, target)) continue;
            Constraint c{ConstraintKind::FaceTo, Hardness::Soft, subject, target};
            out.push_back(std::move(c));
        }
        return out;
    }

    // Heuristic fallback: seating faces the nearest table, the rest face away
    // from their nearest wall.
    for (const auto& obj : objects) {
        Vec2 center = footprint_of(obj.bbox).center();
        if (name_contains_any(obj.spec.name, kSeatingWords)) {
            const Detection3d* best = nullptr;
            double best_d = 0;
            for (const auto& cand : objects) {
                if (cand.id == obj.id || !name_contains_any(cand.spec.name, kTableWords)) continue;
                if (!target_allowed(obj.id, cand.id)) continue;
                double d = (footprint_of(cand.bbox).center() - center).norm();
                if (!best || d < best_d || (d == best_d && cand.id < best->id)) {
                    best = &cand;
                    best_d = d;
                }
            }
            if (best) {
                out.push_back({ConstraintKind::FaceTo, Hardness::Soft, obj.id, best->id});
                continue;
            }
        }
        int wall = scene.room.nearest_wall(center);
        Vec2 inward = scene.room.wall_inward_normal(wall);
        Constraint c{ConstraintKind::FaceTo, Hardness::Soft, obj.id};
        c.face_heading = wrap_yaw(std::atan2(inward.y(), inward.x()));
        out.push_back(std::move(c));
    }
    return out;
}

std::string dump_constraints(const ConstraintSet& set) {
    std::ostringstream out;
    for (const auto& id : set.order) {
        for (const auto& c : set.of(id)) {
            out << c.subject << ' ' << to_string(c.kind);
            if (!c.target.empty()) out << ' ' << c.target;
            out << ' ' << (c.hardness == Hardness::Hard ? "hard" : "soft");
            if (c.kind == ConstraintKind::Location)
                out << ' ' << format_double(c.point.x()) << ' ' << format_double(c.point.y());
            if (c.kind == ConstraintKind::Height) out << ' ' << format_double(c.value);
            if (c.face_heading) out << " heading " << format_double(*c.face_heading);
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace architect
