#include <rover/contact.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rover {
namespace {

// Geometric candidate before the force law is applied.
struct Candidate {
    vec3_t point = vec3_t::Zero();
    vec3_t normal = vec3_t::UnitZ();
    scalar_t penetration = -std::numeric_limits<scalar_t>::infinity();
    scalar_t friction = 0.0;
};

struct Segment2 {
    vec2_t a;
    vec2_t b;
};

// Closest point on a segment to c in the x-z cross-section.
vec2_t closest_on_segment(const Segment2& seg, const vec2_t& c) {
    const vec2_t d = seg.b - seg.a;
    const scalar_t len2 = d.squaredNorm();
    if (len2 <= 0.0) return seg.a;
    const scalar_t t = std::clamp((c - seg.a).dot(d) / len2, 0.0, 1.0);
    return seg.a + t * d;
}

// Sphere against a piecewise-linear x-z profile (y-invariant within the
// feature footprint). Handles vertical faces and convex edges with the
// edge-to-center normal rule. `below` marks centers under the profile.
bool profile_contact(const Segment2* segments, int count, const vec2_t& center2,
                     scalar_t radius, bool below, vec2_t& point_out, vec2_t& normal_out,
                     scalar_t& penetration_out) {
    scalar_t best_d2 = std::numeric_limits<scalar_t>::infinity();
    vec2_t best_point = vec2_t::Zero();
    vec2_t best_seg_dir = vec2_t::UnitX();
    for (int i = 0; i < count; ++i) {
        const vec2_t p = closest_on_segment(segments[i], center2);
        const scalar_t d2 = (center2 - p).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best_point = p;
            best_seg_dir = segments[i].b - segments[i].a;
        }
    }
    const scalar_t dist = std::sqrt(best_d2);
    vec2_t normal;
    if (dist > 1e-12 && !below) {
        normal = (center2 - best_point) / dist;
    } else {
        // Degenerate or buried center: use the left normal of the owning
        // segment (profiles run in +x, so the left normal points up).
        vec2_t dir = best_seg_dir;
        const scalar_t n = dir.norm();
        dir = n > 0.0 ? vec2_t(dir / n) : vec2_t::UnitX();
        normal = vec2_t(-dir.y(), dir.x());
        if (normal.y() < 0.0) normal = -normal;
    }
    penetration_out = below ? radius + dist : radius - dist;
    if (penetration_out <= 0.0) return false;
    point_out = best_point;
    normal_out = normal;
    return true;
}

constexpr scalar_t kExtent = 50.0;  // flat extensions past feature edges

// Penetration depth over which contact damping reaches full strength.
constexpr scalar_t kDampingRampDepth = 1e-3;

void consider_step(const StepFeature& step, const vec3_t& c, scalar_t radius,
                   Candidate& best) {
    if (c.x() < step.face_x - radius - 1e-9) return;
    const Segment2 segments[2] = {
        {{step.face_x, 0.0}, {step.face_x, step.height}},
        {{step.face_x, step.height}, {step.face_x + kExtent, step.height}},
    };
    const vec2_t center2(c.x(), c.z());
    const bool below = c.x() >= step.face_x && c.z() < step.height;
    vec2_t point, normal;
    scalar_t penetration;
    if (profile_contact(segments, 2, center2, radius, below, point, normal, penetration) &&
        penetration > best.penetration) {
        best.point = vec3_t(point.x(), c.y(), point.y());
        best.normal = vec3_t(normal.x(), 0.0, normal.y());
        best.penetration = penetration;
        best.friction = step.friction;
    }
}

void consider_slope(const SlopeFeature& slope, const vec3_t& c, scalar_t radius,
                    Candidate& best) {
    if (c.x() < slope.start_x - radius) return;
    const scalar_t crest = slope.crest_x();
    const scalar_t rise = slope.rise();
    const Segment2 segments[2] = {
        {{slope.start_x, 0.0}, {crest, rise}},
        {{crest, rise}, {crest + kExtent, rise}},
    };
    const vec2_t center2(c.x(), c.z());
    const scalar_t surface = c.x() <= crest
                                 ? std::tan(slope.angle) * std::max(c.x() - slope.start_x, 0.0)
                                 : rise;
    const bool below = c.x() >= slope.start_x && c.z() < surface;
    vec2_t point, normal;
    scalar_t penetration;
    if (profile_contact(segments, 2, center2, radius, below, point, normal, penetration) &&
        penetration > best.penetration) {
        best.point = vec3_t(point.x(), c.y(), point.y());
        best.normal = vec3_t(normal.x(), 0.0, normal.y());
        best.penetration = penetration;
        best.friction = slope.friction;
    }
}

void consider_outcrop(const OutcropFeature& outcrop, const vec3_t& c, scalar_t radius,
                      Candidate& best) {
    if (outcrop.polyline.size() < 2) return;
    const scalar_t taper = outcrop.lateral_scale(c.y());
    if (taper <= 0.0) return;
    if (c.x() < outcrop.start_x - radius || c.x() > outcrop.start_x + outcrop.length + radius) {
        return;
    }
    const auto& pts = outcrop.polyline;
    const scalar_t spacing = (pts.back().x() - pts.front().x()) /
                             static_cast<scalar_t>(pts.size() - 1);
    const int n = static_cast<int>(pts.size()) - 1;
    // Only segments within one radius (plus slack) of the center matter;
    // heights are scaled by the lateral taper at the wheel's y.
    const int lo = std::clamp(
        static_cast<int>((c.x() - outcrop.start_x - 1.5 * radius) / spacing), 0, n - 1);
    const int hi = std::clamp(
        static_cast<int>((c.x() - outcrop.start_x + 1.5 * radius) / spacing) + 1, lo + 1, n);

    scalar_t best_d2 = std::numeric_limits<scalar_t>::infinity();
    vec2_t best_point = vec2_t::Zero();
    const vec2_t center2(c.x(), c.z());
    for (int i = lo; i < hi; ++i) {
        const vec2_t a(pts[i].x(), taper * pts[i].y());
        const vec2_t b(pts[i + 1].x(), taper * pts[i + 1].y());
        const vec2_t p = closest_on_segment({a, b}, center2);
        const scalar_t d2 = (center2 - p).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best_point = p;
        }
    }
    const scalar_t local = std::clamp(c.x() - outcrop.start_x, 0.0, outcrop.length);
    const int i = std::clamp(static_cast<int>(local / spacing), 0, n - 1);
    const scalar_t t = std::clamp((c.x() - pts[i].x()) / (pts[i + 1].x() - pts[i].x()), 0.0, 1.0);
    const scalar_t surface = taper * (pts[i].y() + t * (pts[i + 1].y() - pts[i].y()));
    const bool below = c.z() < surface;

    const scalar_t dist = std::sqrt(best_d2);
    const scalar_t penetration = below ? radius + dist : radius - dist;
    if (penetration <= 0.0 || penetration <= best.penetration) return;
    vec2_t normal;
    if (dist > 1e-12 && !below) {
        normal = (center2 - best_point) / dist;
    } else {
        normal = vec2_t(0.0, 1.0);
    }
    best.point = vec3_t(best_point.x(), c.y(), best_point.y());
    best.normal = vec3_t(normal.x(), 0.0, normal.y());
    best.penetration = penetration;
    best.friction = outcrop.friction;
}

void consider_hemisphere(const HemisphereFeature& rock, const vec3_t& c, scalar_t radius,
                         Candidate& best) {
    const vec3_t rock_center(rock.center.x(), rock.center.y(), 0.0);
    const vec3_t offset = c - rock_center;
    const scalar_t dist = offset.norm();
    const scalar_t penetration = radius + rock.radius - dist;
    if (penetration <= 0.0 || penetration <= best.penetration) return;
    const vec3_t normal = dist > 1e-12 ? vec3_t(offset / dist) : vec3_t::UnitZ();
    if (normal.z() < 0.0) return;  // underside is buried in the base plane
    best.point = rock_center + rock.radius * normal;
    best.normal = normal;
    best.penetration = penetration;
    best.friction = rock.friction;
}

} // namespace

std::optional<ContactPoint> resolve_contact(int wheel_id, const vec3_t& wheel_center,
                                            const vec3_t& center_velocity,
                                            const vec3_t& wheel_angular_velocity,
                                            const TerrainScene& scene,
                                            const RoverParameters& params) {
    const scalar_t radius = params.wheel_radius;
    Candidate best;

    // Base plane.
    const scalar_t base_penetration = radius - wheel_center.z();
    if (base_penetration > best.penetration) {
        best.point = vec3_t(wheel_center.x(), wheel_center.y(), 0.0);
        best.normal = vec3_t::UnitZ();
        best.penetration = base_penetration;
        best.friction = scene.soil_friction;
    }

    for (const StepFeature& f : scene.steps) consider_step(f, wheel_center, radius, best);
    for (const SlopeFeature& f : scene.slopes) consider_slope(f, wheel_center, radius, best);
    for (const OutcropFeature& f : scene.outcrops) consider_outcrop(f, wheel_center, radius, best);
    for (const HemisphereFeature& f : scene.hemispheres) {
        consider_hemisphere(f, wheel_center, radius, best);
    }

    if (best.penetration <= 0.0) return std::nullopt;

    ContactPoint contact;
    contact.wheel_id = wheel_id;
    contact.position = best.point;
    contact.normal = best.normal;
    contact.penetration = best.penetration;
    contact.penetration_rate = -center_velocity.dot(best.normal);
    contact.friction_coefficient = best.friction;
    // Damping ramps in with penetration (Hunt-Crossley style) so a fresh
    // contact at speed does not fire a full c*rate impulse in one step.
    const scalar_t damping_scale = std::min(contact.penetration / kDampingRampDepth, 1.0);
    contact.normal_force = std::max(
        0.0, params.contact_stiffness * contact.penetration +
                 params.contact_damping * damping_scale * contact.penetration_rate);

    // Slip velocity of the wheel surface at the contact point.
    const vec3_t surface_velocity =
        center_velocity + wheel_angular_velocity.cross(contact.position - wheel_center);
    const vec3_t tangential =
        surface_velocity - surface_velocity.dot(contact.normal) * contact.normal;
    const scalar_t slip = tangential.norm();
    if (slip > 1e-12 && contact.normal_force > 0.0) {
        // Coulomb magnitude, regularized near zero slip; additionally
        // capped at the force that would cancel the slip of the unsprung
        // mass within one step, so near-sticking contacts cannot chatter.
        const scalar_t coulomb = best.friction * contact.normal_force *
                                 std::tanh(slip / params.friction_regularization);
        const scalar_t stick_limit = params.unsprung_mass * slip / params.timestep;
        contact.friction_force = -std::min(coulomb, stick_limit) / slip * tangential;
    }
    return contact;
}

} // namespace rover
