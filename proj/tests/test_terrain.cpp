#include <rover/terrain.hpp>

#include <doctest.h>

#include <cmath>

using namespace rover;

TEST_CASE("flat scene is zero with an up normal") {
    TerrainScene scene;
    scene.finalize();
    for (scalar_t x : {-5.0, 0.0, 3.7}) {
        const TerrainSample s = terrain_height(scene, x, 0.4 * x);
        CHECK(s.height == 0.0);
        CHECK(s.normal.z() == doctest::Approx(1.0));
    }
}

TEST_CASE("step height jumps at the face") {
    TerrainScene scene;
    scene.steps.push_back({2.0, 0.05, 1.0});
    scene.finalize();
    CHECK(terrain_height(scene, 1.99, 0.0).height == 0.0);
    CHECK(terrain_height(scene, 2.5, 0.0).height == doctest::Approx(0.05));
    CHECK(terrain_height(scene, 2.0, 0.0).height == doctest::Approx(0.05));
}

TEST_CASE("hemisphere apex equals its radius") {
    TerrainScene scene;
    HemisphereFeature rock;
    rock.center = vec2_t(1.0, 0.5);
    rock.radius = 0.10;
    scene.hemispheres.push_back(rock);
    scene.finalize();
    CHECK(terrain_height(scene, 1.0, 0.5).height == doctest::Approx(0.10));
    CHECK(terrain_height(scene, 1.0, 0.5).normal.z() == doctest::Approx(1.0));
    // On the flank the normal tilts away from the centre.
    const TerrainSample flank = terrain_height(scene, 1.05, 0.5);
    CHECK(flank.height < 0.10);
    CHECK(flank.normal.x() > 0.0);
    CHECK(terrain_height(scene, 1.2, 0.5).height == 0.0);
}

TEST_CASE("slope ramps then plateaus at length*sin(angle)") {
    const scalar_t angle = 20.0 * M_PI / 180.0;
    TerrainScene scene;
    SlopeFeature slope;
    slope.start_x = 0.0;
    slope.length = 1.5;
    slope.angle = angle;
    scene.slopes.push_back(slope);
    scene.finalize();

    CHECK(terrain_height(scene, -0.1, 0.0).height == 0.0);
    const scalar_t mid = 0.5 * slope.horizontal_run();
    CHECK(terrain_height(scene, mid, 0.0).height ==
          doctest::Approx(std::tan(angle) * mid));
    const TerrainSample on_ramp = terrain_height(scene, mid, 0.0);
    CHECK(on_ramp.normal.x() == doctest::Approx(-std::sin(angle)));
    CHECK(on_ramp.normal.z() == doctest::Approx(std::cos(angle)));
    // 1.5 m of surface at 20 deg rises 1.5*sin(20 deg) = 0.513 m.
    CHECK(terrain_height(scene, 5.0, 0.0).height == doctest::Approx(0.5130302149885031));
}

TEST_CASE("outcrop profile endpoints, scaling, and determinism") {
    const std::uint32_t seed = 42;
    CHECK(outcrop_profile(seed, 0.0) == 0.0);
    CHECK(outcrop_profile(seed, 1.5) == 0.0);

    scalar_t peak = 0.0;
    for (int i = 0; i <= 1500; ++i) {
        const scalar_t x = i * 1e-3;
        const scalar_t h = outcrop_profile(seed, x);
        CHECK(h >= 0.0);
        peak = std::max(peak, h);
    }
    CHECK(peak == doctest::Approx(0.10).epsilon(1e-6));

    for (scalar_t x : {0.123, 0.77, 1.21}) {
        CHECK(outcrop_profile(seed, x) == outcrop_profile(seed, x));
        CHECK(outcrop_profile(seed, x) == outcrop_profile(42, x));
    }
    // A different seed gives a different profile.
    bool differs = false;
    for (scalar_t x : {0.3, 0.6, 0.9, 1.2}) {
        if (outcrop_profile(7, x) != outcrop_profile(seed, x)) differs = true;
    }
    CHECK(differs);
}

TEST_CASE("finalized outcrop feature matches the reference profile") {
    TerrainScene scene;
    OutcropFeature outcrop;
    outcrop.start_x = 2.0;
    outcrop.length = 1.5;
    outcrop.max_height = 0.1;
    outcrop.seed = 42;
    outcrop.center_y = 0.0;
    outcrop.width = 0.3;
    scene.outcrops.push_back(outcrop);
    scene.finalize();

    for (scalar_t local : {0.25, 0.8, 1.3}) {
        const scalar_t expected = outcrop_profile(42, local);
        CHECK(terrain_height(scene, 2.0 + local, 0.0).height ==
              doctest::Approx(expected).epsilon(1e-3));
    }
    // Outside the strip the base plane wins.
    CHECK(terrain_height(scene, 2.5, 0.5).height == 0.0);
}

TEST_CASE("height function stays finite at feature boundaries") {
    TerrainScene scene;
    scene.steps.push_back({1.0, 0.08, 1.0});
    SlopeFeature slope;
    slope.start_x = 3.0;
    slope.angle = 0.3;
    scene.slopes.push_back(slope);
    HemisphereFeature rock;
    rock.center = vec2_t(6.0, 0.0);
    scene.hemispheres.push_back(rock);
    OutcropFeature outcrop;
    outcrop.start_x = 8.0;
    outcrop.seed = 3;
    scene.outcrops.push_back(outcrop);
    scene.finalize();

    for (scalar_t x = -1.0; x <= 11.0; x += 0.003) {
        const TerrainSample s = terrain_height(scene, x, 0.0);
        CHECK(std::isfinite(s.height));
        CHECK(s.normal.norm() == doctest::Approx(1.0));
    }
}
