// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cryochan/constants.hpp"
#include "cryochan/errors.hpp"
#include "cryochan/scene.hpp"

using namespace cryochan;

namespace {

CryostatParams plain_cylinder_params() {
    CryostatParams p;
    p.top_plate_z_m.reset();
    p.plate_separations_m.clear();
    p.tube_radius_m = 0.0;
    p.include_pcb = false;
    p.antenna_plane_z_m = 0.35;
    return p;
}

// Test-local marching oracle for scenes made of z-normal discs: step the ray
// and return the distance of the first disc crossing.
double march_first_disc_crossing(const std::vector<Surface>& discs, const Vec3& origin,
                                 const Vec3& dir, double max_distance) {
    const double step = 1e-4; // 0.1 mm
    Vec3 prev = origin;
    for (double s = step; s <= max_distance; s += step) {
        const Vec3 cur = origin + s * dir;
        for (const Surface& surf : discs) {
            const auto& d = std::get<Disc>(surf.shape);
            const double a = prev.z - d.center.z;
            const double b = cur.z - d.center.z;
            if (a == 0.0 || a * b >= 0.0) continue;
            const double frac = a / (a - b);
            const Vec3 hit = prev + frac * (cur - prev);
            const double rho = std::hypot(hit.x - d.center.x, hit.y - d.center.y);
            if (rho >= d.aperture_radius && rho <= d.outer_radius)
                return (s - step) + frac * step;
        }
        prev = cur;
    }
    return -1.0;
}

} // namespace

TEST_CASE("axial ray in a plain closed cylinder hits the top cap") {
    const Scene scene = build_cryostat_scene(plain_cylinder_params());
    const auto hit = scene.intersect({0, 0, 0.35}, {0, 0, 1});
    REQUIRE(hit.has_value());
    CHECK(hit->distance == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(scene.surfaces[static_cast<std::size_t>(hit->surface_index)].label == "top_cap");
    CHECK(hit->normal.z == doctest::Approx(-1.0)); // faces the incoming ray
}

TEST_CASE("radial ray at antenna-plane height hits the shell at the 0.15 m radius") {
    const Scene scene = build_cryostat_scene(plain_cylinder_params());
    const auto hit = scene.intersect({0, 0, 0.35}, {1, 0, 0});
    REQUIRE(hit.has_value());
    CHECK(hit->distance == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(scene.surfaces[static_cast<std::size_t>(hit->surface_index)].label == "shell");
}

TEST_CASE("ray through a plate aperture reaches the next obstacle (marching oracle)") {
    Scene scene;
    scene.surfaces.push_back(
        {Disc{{0, 0, 0.10}, {0, 0, 1}, 0.15, 0.03}, Material::pec(), "apertured"});
    scene.surfaces.push_back({Disc{{0, 0, 0.20}, {0, 0, 1}, 0.15, 0.0}, Material::pec(), "solid"});

    SUBCASE("through the aperture") {
        const Vec3 origin{0.0, 0.0, 0.0};
        const Vec3 dir = normalized(Vec3{0.05, 0.0, 1.0});
        const auto hit = scene.intersect(origin, dir);
        REQUIRE(hit.has_value());
        CHECK(scene.surfaces[static_cast<std::size_t>(hit->surface_index)].label == "solid");
        const double expected = march_first_disc_crossing(scene.surfaces, origin, dir, 0.5);
        REQUIRE(expected > 0.0);
        CHECK(hit->distance == doctest::Approx(expected).epsilon(1e-3));
    }

    SUBCASE("aimed at the annulus") {
        const Vec3 origin{0.0, 0.0, 0.0};
        const Vec3 dir = normalized(Vec3{0.8, 0.0, 1.0});
        const auto hit = scene.intersect(origin, dir);
        REQUIRE(hit.has_value());
        CHECK(scene.surfaces[static_cast<std::size_t>(hit->surface_index)].label == "apertured");
        const double expected = march_first_disc_crossing(scene.surfaces, origin, dir, 0.5);
        CHECK(hit->distance == doctest::Approx(expected).epsilon(1e-3));
    }
}

TEST_CASE("intersect rejects unnormalized directions") {
    const Scene scene = build_cryostat_scene(plain_cylinder_params());
    CHECK_THROWS_AS((void)scene.intersect({0, 0, 0.1}, {0, 0, 2}), std::invalid_argument);
}

TEST_CASE("default cryostat assembles shell, caps, plates, tube and PCB") {
    const CryostatParams p;
    const Scene scene = build_cryostat_scene(p);
    REQUIRE(scene.surfaces.size() == 8);
    CHECK(scene.surfaces[0].label == "shell");
    CHECK(scene.surfaces[1].label == "top_cap");
    CHECK(scene.surfaces[2].label == "bottom_cap");
    CHECK(scene.surfaces[3].label == "plate_1");
    CHECK(scene.surfaces[4].label == "plate_2");
    CHECK(scene.surfaces[5].label == "plate_3");
    CHECK(scene.surfaces[6].label == "tube");
    CHECK(scene.surfaces[7].label == "pcb");

    const auto zs = p.plate_zs();
    REQUIRE(zs.size() == 3);
    CHECK(zs[0] == doctest::Approx(0.50));
    CHECK(zs[1] == doctest::Approx(0.35)); // 0.15 m below the top plate
    CHECK(zs[2] == doctest::Approx(0.25)); // 0.10 m below the middle plate
    CHECK(p.antenna_plane_z() == doctest::Approx(0.41)); // 6 cm above the second plate

    CHECK(scene.describe().find("shell") != std::string::npos);
    CHECK(scene.describe().find("copper_4K") != std::string::npos);
}

TEST_CASE("zero plates requested gives a plain closed cylinder") {
    const Scene scene = build_cryostat_scene(plain_cylinder_params());
    CHECK(scene.surfaces.size() == 3); // shell + two caps
}

TEST_CASE("construction errors list the offending surfaces") {
    CryostatParams p;
    p.plate_outer_radius_m = 0.2; // wider than the shell
    CHECK_THROWS_WITH_AS(build_cryostat_scene(p),
                         doctest::Contains("outer radius exceeds the shell"),
                         SceneConstructionError);

    CryostatParams q;
    q.plate_separations_m = {0.15, -0.02};
    CHECK_THROWS_WITH_AS(build_cryostat_scene(q), doctest::Contains("overlaps"),
                         SceneConstructionError);

    CryostatParams r;
    r.plate_aperture_radius_m = 0.2;
    r.tube_radius_m = 0.0;
    CHECK_THROWS_AS(build_cryostat_scene(r), SceneConstructionError);
}

TEST_CASE("box scene has six planar faces") {
    const Scene box = build_box_scene({0.3, 0.3, 0.15}, Material::pec());
    CHECK(box.surfaces.size() == 6);
    CHECK(box.all_planar());
    CHECK(box.diameter() == doctest::Approx(std::sqrt(0.09 + 0.09 + 0.0225)));
    const Scene cryostat = build_cryostat_scene(CryostatParams{});
    CHECK_FALSE(cryostat.all_planar());
}

TEST_CASE("watertightness: no random interior ray escapes a closed scene") {
    // Aperture-closed variants: plain cylinder, and the full cryostat whose
    // plate apertures are sealed by the tube.
    const Scene plain = build_cryostat_scene(plain_cylinder_params());
    const CryostatParams full_params;
    const Scene full = build_cryostat_scene(full_params);

    std::mt19937 rng(991231);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> uz(0.0, 0.70);

    long escaped = 0;
    const long n = 1000000;
    for (long i = 0; i < n; ++i) {
        Vec3 p{0.15 * u(rng), 0.15 * u(rng), uz(rng)};
        const bool in_plain = std::hypot(p.x, p.y) < 0.149 && p.z > 0.001 && p.z < 0.699;
        Vec3 d = normalized(Vec3{u(rng), u(rng), u(rng) + 1e-6});
        const Scene& scene = (i % 2 == 0) ? plain : full;
        if (i % 2 == 0) {
            if (!in_plain) continue;
        } else {
            if (!inside_cryostat(full_params, p, 1e-3)) continue;
        }
        if (!scene.intersect(p, d)) ++escaped;
    }
    CHECK(escaped == 0);
}

TEST_CASE("intersection result does not depend on surface order") {
    const Scene scene = build_cryostat_scene(CryostatParams{});
    Scene shuffled = scene;
    std::mt19937 rng(4242);
    std::shuffle(shuffled.surfaces.begin(), shuffled.surfaces.end(), rng);

    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> uz(0.01, 0.69);
    for (int i = 0; i < 5000; ++i) {
        Vec3 p{0.14 * u(rng), 0.14 * u(rng), uz(rng)};
        if (!inside_cryostat(CryostatParams{}, p, 1e-3)) continue;
        Vec3 d = normalized(Vec3{u(rng), u(rng), u(rng) + 1e-9});
        const auto a = scene.intersect(p, d);
        const auto b = shuffled.intersect(p, d);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(a->distance == doctest::Approx(b->distance).epsilon(1e-12));
    }
}

TEST_CASE("equal-distance tie goes to the earlier surface") {
    Scene scene;
    scene.surfaces.push_back({Disc{{0, 0, 0.1}, {0, 0, 1}, 0.2, 0.0}, Material::pec(), "first"});
    scene.surfaces.push_back({Disc{{0, 0, 0.1}, {0, 0, 1}, 0.2, 0.0}, Material::pec(), "second"});
    const auto hit = scene.intersect({0, 0, 0}, {0, 0, 1});
    REQUIRE(hit.has_value());
    CHECK(scene.surfaces[static_cast<std::size_t>(hit->surface_index)].label == "first");
}

TEST_CASE("default antenna layout spans the 0.75-2.6 lambda separation band") {
    const CryostatParams p;
    const auto layout = default_cryostat_layout(p, 28e9);
    const double lambda = wavelength_m(28e9);
    REQUIRE(layout.rx_positions.size() == 6);
    CHECK(is_unit(layout.orientation));
    CHECK(layout.tx_position.z == doctest::Approx(p.antenna_plane_z()));

    double min_sep = 1e9, max_sep = 0.0;
    for (const auto& r : layout.rx_positions) {
        CHECK(inside_cryostat(p, r.position, 1e-6));
        CHECK(r.position.z == doctest::Approx(p.antenna_plane_z()));
        const double sep = distance(r.position, layout.tx_position);
        min_sep = std::min(min_sep, sep);
        max_sep = std::max(max_sep, sep);
    }
    CHECK(min_sep == doctest::Approx(0.75 * lambda).epsilon(1e-12));
    CHECK(max_sep == doctest::Approx(2.6 * lambda).epsilon(1e-12));
}
