#include "architect/placer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace architect {

double score_placement(const Candidate& c, const ScoringWeights& w) {
    double loc = c.sum_delta_w + w.w_cur / std::max(c.delta_cur, w.delta_floor) + w.constant;
    return w.w_loc * loc + w.w_rotation * c.rotation_satisfied;
}

Aabb3 candidate_box(const Vec3& dims, const Vec2& position, double yaw, double base_z) {
    double c = std::abs(std::cos(yaw)), s = std::abs(std::sin(yaw));
    double ex = dims.x() * c + dims.y() * s;
    double ey = dims.x() * s + dims.y() * c;
    return {{position.x() - ex / 2, position.y() - ey / 2, base_z},
            {position.x() + ex / 2, position.y() + ey / 2, base_z + dims.z()}};
}

namespace {

constexpr double kTieEps = 1e-9;

struct SubjectView {
    bool edge = false, corner = false, middle = false, horizontal = false, vertical = false;
    const Constraint* location = nullptr;
    const Constraint* height = nullptr;
    const Constraint* above = nullptr;
    std::vector<const Constraint*> face_to;
};

SubjectView collect(const ConstraintSet& set, const std::string& id) {
    SubjectView v;
    for (const auto& c : set.of(id)) {
        switch (c.kind) {
            case ConstraintKind::Edge: v.edge = true; break;
            case ConstraintKind::Corner: v.corner = true; break;
            case ConstraintKind::Middle: v.middle = true; break;
            case ConstraintKind::Horizontal: v.horizontal = true; break;
            case ConstraintKind::Vertical: v.vertical = true; break;
            case ConstraintKind::Location: v.location = &c; break;
            case ConstraintKind::Height: v.height = &c; break;
            case ConstraintKind::Above: v.above = &c; break;
            case ConstraintKind::FaceTo: v.face_to.push_back(&c); break;
            default: break;
        }
    }
    return v;
}

bool global_position_ok(const SubjectView& v, const Room& room, const Rect2& fp,
                        const ConstraintThresholds& th) {
    if (v.edge || v.corner) {
        std::vector<int> close;
        for (int w = 0; w < 4; ++w)
            if (room.wall_distance(w, fp) < th.edge_eps) close.push_back(w);
        if (v.corner) {
            bool perp = false;
            for (std::size_t i = 0; i + 1 < close.size() && !perp; ++i)
                for (std::size_t j = i + 1; j < close.size() && !perp; ++j)
                    if ((close[i] + close[j]) % 2 == 1) perp = true;
            if (!perp) return false;
        } else if (close.empty()) {
            return false;
        }
    }
    if (v.middle) {
        for (int w = 0; w < 4; ++w)
            if (room.wall_distance(w, fp) <= th.middle_eps) return false;
    }
    return true;
}

bool orientation_ok(const SubjectView& v, double ex, double ey) {
    if (v.horizontal && ex + kTieEps < ey) return false;
    if (v.vertical && ey + kTieEps < ex) return false;
    return true;
}

double heading_of(const Vec2& d) { return wrap_yaw(std::atan2(d.y(), d.x())); }

bool heading_satisfied(double yaw, double desired) {
    double cosang = std::cos(yaw - desired);
    return cosang >= std::cos(kPi / 4) - 1e-12;
}

// Unrolled perimeter coordinate; wall-plane distances between wall objects
// use (perimeter, z) so candidates on different walls compare sanely.
double perimeter_coord(const Room& room, const Vec2& p) {
    int w = room.nearest_wall(p);
    double t = std::clamp(room.wall_coord(w, p), 0.0, room.wall_span(w));
    double s = 0;
    for (int i = 0; i < w; ++i) s += room.wall_span(i);
    return s + t;
}

double perimeter_distance(const Room& room, double s1, double s2) {
    double perim = 2 * (room.extent.x() + room.extent.y());
    double d = std::abs(s1 - s2);
    return std::min(d, perim - d);
}

struct TargetCenter {
    Vec2 xy{0, 0};
    bool found = false;
};

TargetCenter find_target_center(const std::string& target, const SceneState& scene,
                                const ConstraintSet& set,
                                const std::vector<std::optional<Placement>>& placed) {
    for (auto it = placed.rbegin(); it != placed.rend(); ++it)
        if (*it && (*it)->id == target) return {(*it)->candidate.position, true};
    if (const ObjectInstance* inst = scene.find(target))
        return {footprint_of(inst->world_bbox).center(), true};
    for (const auto& c : set.of(target))
        if (c.kind == ConstraintKind::Location) return {c.point, true};
    return {};
}

int count_rotation(const SubjectView& v, const Vec2& position, double yaw,
                   const SceneState& scene, const ConstraintSet& set,
                   const std::vector<std::optional<Placement>>& placed) {
    int n = 0;
    for (const Constraint* c : v.face_to) {
        double desired;
        if (c->face_heading) {
            desired = *c->face_heading;
        } else {
            TargetCenter tc = find_target_center(c->target, scene, set, placed);
            if (!tc.found || (tc.xy - position).norm() < 1e-9) continue;
            desired = heading_of(tc.xy - position);
        }
        if (heading_satisfied(yaw, desired)) ++n;
    }
    return n;
}

std::vector<double> base_yaws() { return {0.0, kPi / 2, kPi, 3 * kPi / 2}; }

const std::vector<std::optional<Placement>> kNoPlacements;

}  // namespace

std::vector<Candidate> enumerate_candidates(const PlaceableObject& object,
                                            const ConstraintSet& constraints,
                                            const SceneState& scene, const PlacerParams& params) {
    SubjectView view = collect(constraints, object.id);
    if (!view.location) throw UsageError(object.id + ": floor object without Location constraint");
    const Room& room = scene.room;

    // Score context: floor objects already in the scene.
    std::vector<std::pair<Vec2, double>> repulsors;
    for (const auto& inst : scene.instances)
        if (inst.spec.category == ObjectCategory::FloorObject)
            repulsors.emplace_back(footprint_of(inst.world_bbox).center(),
                                   params.weights.object_weight(inst.id));

    std::vector<Candidate> out;
    int nx = static_cast<int>(std::floor(room.extent.x() / params.grid_step + 1e-9));
    int ny = static_cast<int>(std::floor(room.extent.y() / params.grid_step + 1e-9));
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            Vec2 pos{room.x0() + i * params.grid_step, room.y0() + j * params.grid_step};

            std::vector<double> yaws = base_yaws();
            for (const Constraint* c : view.face_to) {
                if (c->face_heading) {
                    yaws.push_back(*c->face_heading);
                } else {
                    TargetCenter tc = find_target_center(c->target, scene, constraints,
                                                         kNoPlacements);
                    if (tc.found && (tc.xy - pos).norm() > 1e-9)
                        yaws.push_back(heading_of(tc.xy - pos));
                }
            }

            for (double yaw : yaws) {
                Aabb3 box = candidate_box(object.dims, pos, yaw, 0.0);
                if (!room.contains(box)) continue;
                Rect2 fp = footprint_of(box);
                if (!orientation_ok(view, fp.sizes().x(), fp.sizes().y())) continue;
                if (!global_position_ok(view, room, fp, params.thresholds)) continue;
                bool hit = false;
                for (const auto& inst : scene.instances)
                    if (aabb_intersects(box, inst.world_bbox, 0.0)) {
                        hit = true;
                        break;
                    }
                if (hit) continue;

                Candidate c;
                c.position = pos;
                c.yaw = wrap_yaw(yaw);
                c.box = box;
                c.delta_cur = (pos - view.location->point).norm();
                for (const auto& [rp, w] : repulsors) c.sum_delta_w += (pos - rp).norm() * w;
                c.rotation_satisfied =
                    count_rotation(view, pos, c.yaw, scene, constraints, kNoPlacements);
                c.score = score_placement(c, params.weights);
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

std::vector<Candidate> enumerate_wall_candidates(const PlaceableObject& object,
                                                 const ConstraintSet& constraints,
                                                 const SceneState& scene,
                                                 const PlacerParams& params) {
    SubjectView view = collect(constraints, object.id);
    if (!view.location) throw UsageError(object.id + ": wall object without Location constraint");
    if (!view.height) throw UsageError(object.id + ": wall object without Height constraint");
    const Room& room = scene.room;

    double z_center = view.height->value;
    double z_base = z_center - object.dims.z() / 2;
    if (z_base < -1e-9 || z_center + object.dims.z() / 2 > room.wall_height + 1e-9) return {};

    // Keep-out boxes for doors and windows, 5 cm thick on both wall sides.
    std::vector<Aabb3> keep_out;
    auto add_opening = [&](const WallOpening& o) {
        Vec2 a = room.wall_point(o.wall, o.offset);
        Vec2 b = room.wall_point(o.wall, o.offset + o.width);
        Vec2 lo = a.cwiseMin(b), hi = a.cwiseMax(b);
        Aabb3 box{{lo.x() - 0.05, lo.y() - 0.05, o.bottom},
                  {hi.x() + 0.05, hi.y() + 0.05, o.bottom + o.height}};
        keep_out.push_back(box);
    };
    for (const auto& o : scene.room.doors) add_opening(o);
    for (const auto& o : scene.room.windows) add_opening(o);

    // Wall-plane score context: wall objects already in the scene.
    std::vector<std::pair<Vec2, double>> repulsors;  // ((perimeter, z), weight)
    for (const auto& inst : scene.instances)
        if (inst.spec.category == ObjectCategory::WallObject) {
            Vec3 c = inst.world_bbox.center();
            repulsors.emplace_back(Vec2(perimeter_coord(room, c.head<2>()), c.z()),
                                   params.weights.object_weight(inst.id));
        }

    double s_ref = perimeter_coord(room, view.location->point);
    double z_ref = z_center;

    Rect2 above_fp;
    bool have_above_fp = false;
    if (view.above) {
        if (const ObjectInstance* inst = scene.find(view.above->target)) {
            above_fp = footprint_of(inst->world_bbox);
            have_above_fp = true;
        }
    }

    std::vector<Candidate> out;
    for (int wall = 0; wall < 4; ++wall) {
        Vec2 inward = room.wall_inward_normal(wall);
        double yaw = heading_of(inward);
        double c = std::abs(std::cos(yaw)), s = std::abs(std::sin(yaw));
        double ex = object.dims.x() * c + object.dims.y() * s;
        double ey = object.dims.x() * s + object.dims.y() * c;
        double normal_extent = (wall % 2 == 0) ? ey : ex;

        int nt = static_cast<int>(std::floor(room.wall_span(wall) / params.grid_step + 1e-9));
        for (int i = 0; i <= nt; ++i) {
            double t = i * params.grid_step;
            Vec2 pos = room.wall_point(wall, t) + inward * (normal_extent / 2);
            Aabb3 box = candidate_box(object.dims, pos, yaw, z_base);
            if (!room.contains(box)) continue;
            Rect2 fp = footprint_of(box);
            if (view.above && have_above_fp && !rect_intersects(fp, above_fp, 0.0)) continue;

            bool hit = false;
            for (const auto& ko : keep_out)
                if (aabb_intersects(box, ko, 0.0)) {
                    hit = true;
                    break;
                }
            for (const auto& inst : scene.instances) {
                if (hit) break;
                if (aabb_intersects(box, inst.world_bbox, 0.0)) hit = true;
            }
            if (hit) continue;

            Candidate cand;
            cand.position = pos;
            cand.yaw = yaw;
            cand.box = box;
            double s_cand = perimeter_coord(room, pos);
            cand.delta_cur = std::hypot(perimeter_distance(room, s_cand, s_ref), z_center - z_ref);
            for (std::size_t r = 0; r < repulsors.size(); ++r) {
                double ds = perimeter_distance(room, s_cand, repulsors[r].first.x());
                cand.sum_delta_w +=
                    std::hypot(ds, z_center - repulsors[r].first.y()) * repulsors[r].second;
            }
            cand.rotation_satisfied = 0;  // wall objects carry no rotation term
            cand.score = score_placement(cand, params.weights);
            out.push_back(std::move(cand));
        }
    }
    return out;
}

namespace {

struct SearchState {
    const std::vector<const PlaceableObject*>* objects;
    const ConstraintSet* constraints;
    const SceneState* scene;
    const PlacerParams* params;
    const std::vector<std::vector<Candidate>>* statics;
    std::vector<SubjectView> views;
    bool wall_mode = false;

    std::vector<std::optional<Placement>> current;
    double current_score = 0;
    long nodes = 0;
    long pruned = 0;
    bool exhausted = false;

    double best_score = -std::numeric_limits<double>::infinity();
    bool have_best = false;
    std::vector<std::optional<Placement>> best;
};

void search_rec(SearchState& st, std::size_t depth) {
    const auto& objects = *st.objects;
    if (depth == objects.size()) {
        if (!st.have_best || st.current_score > st.best_score) {
            st.have_best = true;
            st.best_score = st.current_score;
            st.best = st.current;
        }
        return;
    }
    if (st.nodes >= st.params->max_nodes) {
        st.exhausted = true;
        return;
    }
    ++st.nodes;

    const PlaceableObject& obj = *objects[depth];
    const Room& room = st.scene->room;
    std::vector<Candidate> cands;
    cands.reserve((*st.statics)[depth].size());
    for (const Candidate& base : (*st.statics)[depth]) {
        bool hit = false;
        for (std::size_t i = 0; i < depth && !hit; ++i)
            if (st.current[i] && aabb_intersects(base.box, st.current[i]->candidate.box, 0.0))
                hit = true;
        if (hit) continue;

        Candidate c = base;
        if (st.wall_mode) {
            double s_cand = perimeter_coord(room, c.position);
            double z_cand = c.box.center().z();
            for (std::size_t i = 0; i < depth; ++i) {
                if (!st.current[i]) continue;
                Vec3 pc = st.current[i]->candidate.box.center();
                double ds = perimeter_distance(room, s_cand, perimeter_coord(room, pc.head<2>()));
                c.sum_delta_w += std::hypot(ds, z_cand - pc.z()) *
                                 st.params->weights.object_weight(st.current[i]->id);
            }
        } else {
            for (std::size_t i = 0; i < depth; ++i) {
                if (!st.current[i]) continue;
                c.sum_delta_w += (c.position - st.current[i]->candidate.position).norm() *
                                 st.params->weights.object_weight(st.current[i]->id);
            }
            c.rotation_satisfied = count_rotation(st.views[depth], c.position, c.yaw, *st.scene,
                                                  *st.constraints, st.current);
        }
        c.score = score_placement(c, st.params->weights);
        cands.push_back(std::move(c));
    }

    if (cands.empty()) {
        st.current[depth].reset();
        search_rec(st, depth + 1);
        return;
    }

    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.position.x() != b.position.x()) return a.position.x() < b.position.x();
        if (a.position.y() != b.position.y()) return a.position.y() < b.position.y();
        return a.yaw < b.yaw;
    });

    std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(st.params->branch),
                                             cands.size());
    st.pruned += static_cast<long>(cands.size() - take);
    for (std::size_t k = 0; k < take; ++k) {
        st.current[depth] = Placement{obj.id, cands[k]};
        st.current_score += cands[k].score;
        search_rec(st, depth + 1);
        st.current_score -= cands[k].score;
        st.current[depth].reset();
        if (st.exhausted) break;
    }
}

PlacementSolution run_search(const std::vector<PlaceableObject>& objects,
                             const ConstraintSet& constraints, const SceneState& scene,
                             const PlacerParams& params, bool wall_mode) {
    // Objects are visited in constraint order; anything absent from the order
    // is skipped outright.
    std::vector<const PlaceableObject*> ordered;
    PlacementSolution sol;
    for (const auto& id : constraints.order) {
        auto it = std::find_if(objects.begin(), objects.end(),
                               [&](const PlaceableObject& o) { return o.id == id; });
        if (it != objects.end()) ordered.push_back(&*it);
    }
    for (const auto& o : objects)
        if (std::find(constraints.order.begin(), constraints.order.end(), o.id) ==
            constraints.order.end())
            sol.skipped.push_back(o.id);

    std::vector<std::vector<Candidate>> statics(ordered.size());
    SearchState st;
    st.views.reserve(ordered.size());
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        statics[i] = wall_mode ? enumerate_wall_candidates(*ordered[i], constraints, scene, params)
                               : enumerate_candidates(*ordered[i], constraints, scene, params);
        st.views.push_back(collect(constraints, ordered[i]->id));
    }

    st.objects = &ordered;
    st.constraints = &constraints;
    st.scene = &scene;
    st.params = &params;
    st.statics = &statics;
    st.wall_mode = wall_mode;
    st.current.resize(ordered.size());
    search_rec(st, 0);

    if (st.have_best) {
        sol.total_score = st.best_score;
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            if (st.best[i])
                sol.placements.push_back(*st.best[i]);
            else
                sol.skipped.push_back(ordered[i]->id);
        }
    } else {
        for (const auto* o : ordered) sol.skipped.push_back(o->id);
    }
    sol.nodes_expanded = st.nodes;
    sol.nodes_pruned = st.pruned;
    return sol;
}

}  // namespace

PlacementSolution dfs_place(const std::vector<PlaceableObject>& objects,
                            const ConstraintSet& constraints, const SceneState& scene,
                            const PlacerParams& params) {
    return run_search(objects, constraints, scene, params, false);
}

PlacementSolution place_wall_objects(const std::vector<PlaceableObject>& objects,
                                     const ConstraintSet& constraints, const SceneState& scene,
                                     const PlacerParams& params) {
    return run_search(objects, constraints, scene, params, true);
}

ObjectInstance place_small_object(const Aabb3& target_bbox, const std::string& instance_id,
                                  const ObjectSpec& spec, const std::string& asset_id,
                                  const Vec3& asset_dims, const Vec3& view_dir,
                                  const ObjectInstance& support) {
    if (!(asset_dims.array() > 0).all())
        throw GeometryError("place_small_object: asset has no valid bbox");
    Vec3 view = view_dir.normalized();
    int along = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(view[k]) > std::abs(view[along])) along = k;

    // Yaw aligns the asset with the detected box's dominant horizontal axis.
    Vec2 fp_dims = footprint_of(target_bbox).sizes();
    double yaw = fp_dims.x() >= fp_dims.y() ? 0.0 : kPi / 2;
    Vec3 asset_world = yaw == 0.0 ? asset_dims
                                  : Vec3(asset_dims.y(), asset_dims.x(), asset_dims.z());

    Vec3 target_dims = target_bbox.sizes();
    double ratio_prod = 1.0;
    int n_ratio = 0;
    for (int k = 0; k < 3; ++k) {
        if (k == along) continue;
        ratio_prod *= target_dims[k] / asset_world[k];
        ++n_ratio;
    }
    double s = n_ratio > 0 ? std::pow(ratio_prod, 1.0 / n_ratio) : 1.0;
    if (!(s > 0) || !std::isfinite(s))
        throw GeometryError("place_small_object: degenerate scale");

    Rect2 support_fp = footprint_of(support.world_bbox);
    if (asset_world.x() * s > 1.2 * support_fp.sizes().x() ||
        asset_world.y() * s > 1.2 * support_fp.sizes().y())
        throw OversizeError(instance_id + ": scaled asset exceeds support surface by > 20%");

    // Base snapped onto the support surface underneath, not the lifted z.
    double base_z = target_bbox.center().z() >= support.world_bbox.max.z() - 1e-6
                        ? support.world_bbox.max.z()
                        : support.world_bbox.min.z();

    Vec2 center = footprint_of(target_bbox).center();
    return make_instance(instance_id, spec, asset_id, asset_dims,
                         {center.x(), center.y(), base_z}, yaw, {s, s, s});
}

}  // namespace architect
