#include <rover/terrain.hpp>

#include <algorithm>
#include <array>
#include <random>

namespace rover {
namespace {

constexpr int kOutcropWaves = 6;
constexpr scalar_t kMinWavelength = 0.15;
constexpr scalar_t kMaxWavelength = 0.75;
constexpr scalar_t kScanResolution = 1e-3;
constexpr scalar_t kPi = 3.14159265358979323846;

struct OutcropWaves {
    std::array<scalar_t, kOutcropWaves> wavelength;
    std::array<scalar_t, kOutcropWaves> phase;
    std::array<scalar_t, kOutcropWaves> amplitude;
};

// Phases come from raw mt19937 draws; the engine's 32-bit output stream
// is fully specified by the standard, so profiles are identical across
// platforms for a given seed.
OutcropWaves make_waves(std::uint32_t seed) {
    OutcropWaves w;
    std::mt19937 rng(seed);
    const scalar_t ratio = kMaxWavelength / kMinWavelength;
    for (int k = 0; k < kOutcropWaves; ++k) {
        w.wavelength[k] = kMinWavelength *
                          std::pow(ratio, static_cast<scalar_t>(k) / (kOutcropWaves - 1));
        w.phase[k] = 2.0 * kPi * (static_cast<scalar_t>(rng()) / 4294967296.0);
        w.amplitude[k] = 1.0 / (k + 1.0);
    }
    return w;
}

// Rectified wave sum with a window that pins both endpoints to zero.
scalar_t unscaled_profile(const OutcropWaves& w, scalar_t x, scalar_t length) {
    if (x <= 0.0 || x >= length) return 0.0;
    scalar_t sum = 0.0;
    for (int k = 0; k < kOutcropWaves; ++k) {
        sum += w.amplitude[k] * std::sin(2.0 * kPi * x / w.wavelength[k] + w.phase[k]);
    }
    const scalar_t window = std::sin(kPi * x / length);
    return std::abs(sum) * window * window;
}

scalar_t profile_scale(const OutcropWaves& w, scalar_t length, scalar_t max_height) {
    scalar_t peak = 0.0;
    const int n = static_cast<int>(std::ceil(length / kScanResolution));
    for (int i = 0; i <= n; ++i) {
        const scalar_t x = std::min(i * kScanResolution, length);
        peak = std::max(peak, unscaled_profile(w, x, length));
    }
    return peak > 0.0 ? max_height / peak : 0.0;
}

} // namespace

scalar_t outcrop_profile(std::uint32_t seed, scalar_t x_local, scalar_t length,
                         scalar_t max_height) {
    const OutcropWaves waves = make_waves(seed);
    const scalar_t scale = profile_scale(waves, length, max_height);
    return unscaled_profile(waves, x_local, length) * scale;
}

void TerrainScene::finalize() {
    for (OutcropFeature& outcrop : outcrops) {
        const OutcropWaves waves = make_waves(outcrop.seed);
        outcrop.amplitude_scale = profile_scale(waves, outcrop.length, outcrop.max_height);
        // 2 mm sampling keeps segment normals smooth at wheel scale.
        const scalar_t step = 2e-3;
        const int n = static_cast<int>(std::ceil(outcrop.length / step));
        outcrop.polyline.clear();
        outcrop.polyline.reserve(n + 1);
        for (int i = 0; i <= n; ++i) {
            const scalar_t x = std::min(i * step, outcrop.length);
            outcrop.polyline.emplace_back(
                outcrop.start_x + x,
                unscaled_profile(waves, x, outcrop.length) * outcrop.amplitude_scale);
        }
    }
    finalized_ = true;
}

TerrainSample terrain_height(const TerrainScene& scene, scalar_t x, scalar_t y) {
    TerrainSample best;  // base plane

    auto consider = [&best](scalar_t h, const vec3_t& normal) {
        if (h > best.height) {
            best.height = h;
            best.normal = normal;
        }
    };

    for (const StepFeature& step : scene.steps) {
        if (x >= step.face_x) consider(step.height, vec3_t::UnitZ());
    }
    for (const HemisphereFeature& rock : scene.hemispheres) {
        const scalar_t dx = x - rock.center.x();
        const scalar_t dy = y - rock.center.y();
        const scalar_t r2 = dx * dx + dy * dy;
        if (r2 < rock.radius * rock.radius) {
            const scalar_t h = std::sqrt(rock.radius * rock.radius - r2);
            consider(h, vec3_t(dx, dy, h).normalized());
        }
    }
    for (const OutcropFeature& outcrop : scene.outcrops) {
        const scalar_t local = x - outcrop.start_x;
        if (local >= 0.0 && local <= outcrop.length &&
            std::abs(y - outcrop.center_y) <= 0.5 * outcrop.width) {
            scalar_t h;
            scalar_t slope;
            if (outcrop.polyline.size() >= 2) {
                // Interpolate the cached samples so height queries agree
                // with the contact geometry.
                const auto& pts = outcrop.polyline;
                const scalar_t spacing = (pts.back().x() - pts.front().x()) /
                                         static_cast<scalar_t>(pts.size() - 1);
                const int i = std::clamp(static_cast<int>(local / spacing), 0,
                                         static_cast<int>(pts.size()) - 2);
                const vec2_t& a = pts[i];
                const vec2_t& b = pts[i + 1];
                const scalar_t t = std::clamp((x - a.x()) / (b.x() - a.x()), 0.0, 1.0);
                h = a.y() + t * (b.y() - a.y());
                slope = (b.y() - a.y()) / (b.x() - a.x());
            } else {
                const scalar_t eps = 1e-5;
                h = outcrop_profile(outcrop.seed, local, outcrop.length, outcrop.max_height);
                slope = (outcrop_profile(outcrop.seed, std::min(local + eps, outcrop.length),
                                         outcrop.length, outcrop.max_height) -
                         outcrop_profile(outcrop.seed, std::max(local - eps, 0.0),
                                         outcrop.length, outcrop.max_height)) /
                        (2.0 * eps);
            }
            const scalar_t eps_y = 1e-5;
            const scalar_t lateral_gradient =
                h * (outcrop.lateral_scale(y + eps_y) - outcrop.lateral_scale(y - eps_y)) /
                (2.0 * eps_y);
            const scalar_t taper = outcrop.lateral_scale(y);
            consider(h * taper, vec3_t(-slope * taper, -lateral_gradient, 1.0).normalized());
        }
    }
    for (const SlopeFeature& slope : scene.slopes) {
        const scalar_t local = x - slope.start_x;
        if (local >= 0.0) {
            if (local <= slope.horizontal_run()) {
                consider(std::tan(slope.angle) * local,
                         vec3_t(-std::sin(slope.angle), 0.0, std::cos(slope.angle)));
            } else {
                consider(slope.rise(), vec3_t::UnitZ());
            }
        }
    }
    return best;
}

} // namespace rover
