// Analytic terrain scenes: a flat base plane plus step, rock, outcrop,
// and slope features with per-feature friction.
#pragma once

#include <rover/types.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace rover {

/// Vertical step face at face_x, rising from the base plane.
struct StepFeature {
    scalar_t face_x = 0.0;
    scalar_t height = 0.0;
    scalar_t friction = 1.0;
};

/// Hemispherical rock resting on the base plane.
struct HemisphereFeature {
    vec2_t center = vec2_t::Zero();  ///< ground-plane position of the apex
    scalar_t radius = 0.1;
    scalar_t friction = 1.0;
};

/// Bumpy bedrock band along x, confined to a strip in y. The profile is
/// a seeded sum of rectified sinusoids scaled so its maximum equals
/// max_height and both ends meet the base plane. The strip's lateral
/// edges taper smoothly to the base plane.
struct OutcropFeature {
    scalar_t start_x = 0.0;
    scalar_t length = 1.5;
    scalar_t max_height = 0.1;
    std::uint32_t seed = 0;
    scalar_t center_y = 0.0;  ///< strip center
    scalar_t width = 0.3;     ///< strip width
    scalar_t friction = 1.0;

    /// Height scale factor across the strip: 1 in the middle, smoothly
    /// down to 0 at the lateral edges.
    scalar_t lateral_scale(scalar_t y) const {
        const scalar_t margin = std::min(0.1, width / 3.0);
        const scalar_t inside = 0.5 * width - std::abs(y - center_y);
        const scalar_t t = std::clamp(inside / margin, 0.0, 1.0);
        return t * t * (3.0 - 2.0 * t);
    }

    /// Profile samples cached for contact queries; filled by finalize().
    std::vector<vec2_t> polyline;
    scalar_t amplitude_scale = 0.0;
};

/// Linear ramp of the given inclination over `length` metres of surface
/// (not horizontal run), followed by a plateau.
struct SlopeFeature {
    scalar_t start_x = 0.0;
    scalar_t length = 1.5;
    scalar_t angle = 0.0;  ///< rad
    scalar_t friction = 0.4;

    scalar_t horizontal_run() const { return length * std::cos(angle); }
    scalar_t rise() const { return length * std::sin(angle); }
    scalar_t crest_x() const { return start_x + horizontal_run(); }
};

/// Immutable after finalize(); safe for concurrent read-only use.
struct TerrainScene {
    scalar_t soil_friction = 0.4;
    std::vector<StepFeature> steps;
    std::vector<HemisphereFeature> hemispheres;
    std::vector<OutcropFeature> outcrops;
    std::vector<SlopeFeature> slopes;

    /// Precomputes outcrop profile caches. Must be called once after the
    /// feature lists are filled and before any height/contact query.
    void finalize();

    bool finalized() const { return finalized_; }

private:
    bool finalized_ = false;
};

struct TerrainSample {
    scalar_t height = 0.0;
    vec3_t normal = vec3_t::UnitZ();
};

/// Single-valued terrain height and surface normal at (x, y). Height is
/// the base plane plus the maximum over covering features; the normal
/// comes from the feature that owns the maximum.
TerrainSample terrain_height(const TerrainScene& scene, scalar_t x, scalar_t y);

/// Deterministic outcrop elevation at x_local in [0, length]. Six
/// sinusoids with seed-derived phases and wavelengths between 0.15 m and
/// 0.75 m, rectified, windowed to zero at both ends, and scaled so the
/// maximum over a 1 mm scan equals max_height.
scalar_t outcrop_profile(std::uint32_t seed, scalar_t x_local, scalar_t length = 1.5,
                         scalar_t max_height = 0.1);

} // namespace rover
