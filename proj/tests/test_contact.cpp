#include <rover/contact.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rover;

namespace {

TerrainScene flat_scene() {
    TerrainScene scene;
    scene.finalize();
    return scene;
}

} // namespace

TEST_CASE("zero penetration means no contact") {
    const RoverParameters params;
    const TerrainScene scene = flat_scene();
    const vec3_t center(0.0, 0.0, params.wheel_radius);
    CHECK(!resolve_contact(0, center, vec3_t::Zero(), vec3_t::Zero(), scene, params));
    CHECK(!resolve_contact(0, center + vec3_t(0, 0, 0.01), vec3_t::Zero(), vec3_t::Zero(),
                           scene, params));
}

TEST_CASE("penalty law: 1 mm at 100 kN/m gives 100 N") {
    RoverParameters params;
    params.contact_stiffness = 100e3;
    const TerrainScene scene = flat_scene();
    const vec3_t center(0.0, 0.0, params.wheel_radius - 1e-3);
    const auto contact = resolve_contact(0, center, vec3_t::Zero(), vec3_t::Zero(), scene,
                                         params);
    REQUIRE(contact);
    CHECK(contact->penetration == doctest::Approx(1e-3));
    CHECK(contact->penetration_rate == doctest::Approx(0.0));
    CHECK(contact->normal_force == doctest::Approx(100.0));
    CHECK(contact->normal.z() == doctest::Approx(1.0));
    CHECK(contact->friction_force.norm() == doctest::Approx(0.0));
}

TEST_CASE("friction saturates at mu times the normal force") {
    RoverParameters params;
    const TerrainScene scene = flat_scene();
    // Pick a penetration producing exactly F_n = 10 N.
    const scalar_t penetration = 10.0 / params.contact_stiffness;
    const vec3_t center(0.0, 0.0, params.wheel_radius - penetration);
    // Fast tangential slide, way beyond the regularization scale.
    const vec3_t velocity(1.0, 0.0, 0.0);
    const auto contact = resolve_contact(0, center, velocity, vec3_t::Zero(), scene, params);
    REQUIRE(contact);
    CHECK(contact->normal_force == doctest::Approx(10.0));
    CHECK(contact->friction_force.norm() == doctest::Approx(0.4 * 10.0).epsilon(1e-6));
    // Friction opposes the slide.
    CHECK(contact->friction_force.x() < 0.0);
}

TEST_CASE("friction cone and orthogonality hold for random inputs") {
    RoverParameters params;
    TerrainScene scene;
    scene.steps.push_back({0.5, 0.08, 1.0});
    HemisphereFeature rock;
    rock.center = vec2_t(2.0, 0.1);
    scene.hemispheres.push_back(rock);
    SlopeFeature slope;
    slope.start_x = 4.0;
    slope.angle = 0.25;
    scene.slopes.push_back(slope);
    scene.finalize();

    std::mt19937 rng(123);
    auto uniform = [&rng](scalar_t lo, scalar_t hi) {
        return lo + (hi - lo) * (rng() / 4294967296.0);
    };
    int touched = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const vec3_t center(uniform(-1.0, 6.0), uniform(-0.4, 0.4), uniform(0.0, 0.25));
        const vec3_t velocity(uniform(-2, 2), uniform(-2, 2), uniform(-2, 2));
        const vec3_t omega(uniform(-5, 5), uniform(-20, 20), uniform(-5, 5));
        const auto contact = resolve_contact(0, center, velocity, omega, scene, params);
        if (!contact) continue;
        ++touched;
        CHECK(contact->normal_force >= 0.0);
        CHECK(contact->normal.norm() == doctest::Approx(1.0));
        CHECK(contact->friction_force.norm() <=
              contact->friction_coefficient * contact->normal_force + 1e-9);
        CHECK(std::abs(contact->friction_force.dot(contact->normal)) <= 1e-9);
        CHECK(std::isfinite(contact->penetration));
    }
    CHECK(touched > 500);
}

TEST_CASE("vertical step face pushes back horizontally") {
    RoverParameters params;
    TerrainScene scene;
    scene.steps.push_back({1.0, 0.30, 1.0});  // taller than the wheel
    scene.finalize();
    // Wheel resting on the ground, pressed 2 mm into the face.
    const vec3_t center(1.0 - params.wheel_radius + 2e-3, 0.0, params.wheel_radius);
    const auto contact = resolve_contact(0, center, vec3_t::Zero(), vec3_t::Zero(), scene,
                                         params);
    REQUIRE(contact);
    CHECK(contact->normal.x() == doctest::Approx(-1.0));
    CHECK(contact->penetration == doctest::Approx(2e-3));
    CHECK(contact->friction_coefficient == doctest::Approx(1.0));
}

TEST_CASE("step edge uses the edge-to-center normal") {
    RoverParameters params;
    TerrainScene scene;
    scene.steps.push_back({1.0, 0.08, 1.0});
    scene.finalize();
    // Center up-and-left of the edge at 45 degrees, within one radius.
    const scalar_t r = params.wheel_radius;
    const scalar_t d = 0.7 * r;
    const vec3_t center(1.0 - d / std::sqrt(2.0), 0.0, 0.08 + d / std::sqrt(2.0));
    const auto contact = resolve_contact(0, center, vec3_t::Zero(), vec3_t::Zero(), scene,
                                         params);
    REQUIRE(contact);
    CHECK(contact->penetration == doctest::Approx(r - d));
    CHECK(contact->normal.x() == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(contact->normal.z() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(contact->position.x() == doctest::Approx(1.0));
    CHECK(contact->position.z() == doctest::Approx(0.08));
}

TEST_CASE("deepest contact wins and brings its friction coefficient") {
    RoverParameters params;
    TerrainScene scene;
    HemisphereFeature rock;
    rock.center = vec2_t(0.0, 0.0);
    rock.radius = 0.10;
    rock.friction = 1.0;
    scene.hemispheres.push_back(rock);
    scene.finalize();

    // Directly above the apex: rock contact is deeper than base contact.
    const vec3_t center(0.0, 0.0, 0.10 + params.wheel_radius - 5e-3);
    const auto contact = resolve_contact(0, center, vec3_t::Zero(), vec3_t::Zero(), scene,
                                         params);
    REQUIRE(contact);
    CHECK(contact->friction_coefficient == doctest::Approx(1.0));
    CHECK(contact->penetration == doctest::Approx(5e-3));
    CHECK(contact->normal.z() == doctest::Approx(1.0));

    // Far from the rock only the soil plane remains.
    const vec3_t away(1.0, 0.0, params.wheel_radius - 1e-3);
    const auto soil = resolve_contact(0, away, vec3_t::Zero(), vec3_t::Zero(), scene, params);
    REQUIRE(soil);
    CHECK(soil->friction_coefficient == doctest::Approx(0.4));
}

TEST_CASE("commanded spin produces forward thrust at zero chassis speed") {
    RoverParameters params;
    const TerrainScene scene = flat_scene();
    const vec3_t center(0.0, 0.0, params.wheel_radius - 1e-3);
    // Rolling-forward spin about +y: bottom surface moves backward.
    const vec3_t omega(0.0, 5.0, 0.0);
    const auto contact = resolve_contact(0, center, vec3_t::Zero(), omega, scene, params);
    REQUIRE(contact);
    CHECK(contact->friction_force.x() > 0.0);
}
