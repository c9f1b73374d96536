// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "cryochan/errors.hpp"
#include "cryochan/propagation.hpp"
#include "support/oracles.hpp"

using namespace cryochan;

namespace {

TraceContext isotropic_ctx(double f = 28e9) {
    TraceContext ctx;
    ctx.frequency_hz = f;
    ctx.tx_antenna = AntennaModel::isotropic();
    ctx.rx_antenna = AntennaModel::isotropic();
    return ctx;
}

Scene single_plane_scene(const Material& m) {
    Scene scene;
    scene.surfaces.push_back({Disc{{0, 0, 0}, {0, 0, 1}, 10.0, 0.0}, m, "ground"});
    return scene;
}

Scene parallel_plates_scene(double h, const Material& m) {
    Scene scene;
    scene.surfaces.push_back({Disc{{0, 0, 0}, {0, 0, 1}, 10.0, 0.0}, m, "lower"});
    scene.surfaces.push_back({Disc{{0, 0, h}, {0, 0, 1}, 10.0, 0.0}, m, "upper"});
    return scene;
}

double db(double power_ratio) { return 10.0 * std::log10(power_ratio); }

} // namespace

TEST_CASE("unpolarized bounce coefficient limits") {
    CHECK(bounce_coefficient(Material::pec(), 28e9, 1.0) == std::complex<double>{-1.0, 0.0});
    CHECK(bounce_coefficient(Material::pec(), 28e9, 0.3) == std::complex<double>{-1.0, 0.0});

    // normal incidence on a lossless dielectric: |TE| = |TM|, TE phase
    const double r = (1.0 - std::sqrt(3.9)) / (1.0 + std::sqrt(3.9));
    const auto g = bounce_coefficient(Material::sio2_4k(), 28e9, 1.0);
    CHECK(g.real() == doctest::Approx(r).epsilon(1e-12));
    CHECK(std::abs(g.imag()) < 1e-15);

    std::mt19937 rng(220);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int i = 0; i < 200; ++i) {
        const auto c = bounce_coefficient(Material::silicon_4k(), 28e9, u(rng));
        CHECK(std::abs(c) <= 1.0 + 1e-12);
    }
}

TEST_CASE("image engine: free space is the single Friis path") {
    const Scene empty;
    const auto paths = trace_images(empty, isotropic_ctx(), {0, 0, 0}, {0.1, 0, 0}, 3);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].bounce_count == 0);
    CHECK(paths[0].delay_s == doctest::Approx(0.1 / kSpeedOfLight).epsilon(1e-15));
    CHECK(paths[0].delay_s == doctest::Approx(0.33356e-9).epsilon(1e-4));

    const double friis = oracles::friis_amplitude(28e9, 0.1);
    CHECK(std::abs(paths[0].amplitude) == doctest::Approx(friis).epsilon(1e-12));
    CHECK(db(friis * friis) == doctest::Approx(-41.391).epsilon(1e-4));
    CHECK(paths[0].departure.x == doctest::Approx(1.0));
    CHECK(paths[0].arrival.x == doctest::Approx(1.0));
}

TEST_CASE("image engine: PEC ground plane gives direct plus one image") {
    const Scene scene = single_plane_scene(Material::pec());
    const double h = 0.05, rho = 0.08;
    const auto paths = trace_images(scene, isotropic_ctx(), {0, 0, h}, {rho, 0, h}, 3);
    REQUIRE(paths.size() == 2);

    CHECK(paths[0].bounce_count == 0);
    CHECK(paths[0].delay_s == doctest::Approx(rho / kSpeedOfLight).epsilon(1e-14));

    // Pythagorean unfolding oracle for the reflected path
    const double unfolded = oracles::unfolded_ground_path(h, h, rho);
    CHECK(paths[1].bounce_count == 1);
    CHECK(paths[1].delay_s == doctest::Approx(unfolded / kSpeedOfLight).epsilon(1e-14));
    CHECK(std::abs(paths[1].amplitude) ==
          doctest::Approx(oracles::friis_amplitude(28e9, unfolded)).epsilon(1e-12));
    // reflected ray leaves downward and arrives rising
    CHECK(paths[1].departure.z < 0.0);
    CHECK(paths[1].arrival.z > 0.0);
}

TEST_CASE("image engine: parallel plates match the 1-D image lattice oracle") {
    const double h = 0.12;
    const Scene scene = parallel_plates_scene(h, Material::pec());
    const Vec3 tx{0, 0, 0.04}, rx{0.06, 0.01, 0.07};
    const double rho = std::hypot(rx.x - tx.x, rx.y - tx.y);

    for (int order = 0; order <= 4; ++order) {
        const auto paths = trace_images(scene, isotropic_ctx(), tx, rx, order);
        const auto expected = oracles::parallel_plate_delays(tx.z, rx.z, rho, h, order);
        REQUIRE(paths.size() == expected.size());
        for (std::size_t i = 0; i < paths.size(); ++i)
            CHECK(paths[i].delay_s == doctest::Approx(expected[i]).epsilon(1e-12));
    }
}

TEST_CASE("image engine: a middle plate occludes the far wall") {
    Scene scene;
    scene.surfaces.push_back({Disc{{0, 0, 0}, {0, 0, 1}, 10.0, 0.0}, Material::pec(), "floor"});
    scene.surfaces.push_back({Disc{{0, 0, 0.05}, {0, 0, 1}, 10.0, 0.0}, Material::pec(), "middle"});
    scene.surfaces.push_back({Disc{{0, 0, 0.12}, {0, 0, 1}, 10.0, 0.0}, Material::pec(), "far"});

    const auto paths = trace_images(scene, isotropic_ctx(), {0, 0, 0.02}, {0.05, 0, 0.03}, 4);
    CHECK(!paths.empty());
    for (const auto& p : paths)
        for (int s : p.bounce_surfaces) CHECK(s != 2); // the z=0.12 plane is unreachable
}

TEST_CASE("image engine rejects curved scenes and bad orders") {
    Scene curved;
    curved.surfaces.push_back(
        {CylinderShell{{0, 0, 0}, {0, 0, 1}, 0.15, 0.0, 0.7}, Material::pec(), "shell"});
    CHECK_THROWS_AS((void)trace_images(curved, isotropic_ctx(), {0.05, 0, 0.3}, {0.08, 0, 0.3}, 2),
                    UnsupportedSceneError);
    const Scene empty;
    CHECK_THROWS_AS((void)trace_images(empty, isotropic_ctx(), {0, 0, 0}, {0.1, 0, 0}, 7),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)trace_images(empty, isotropic_ctx(), {0, 0, 0}, {0, 0, 0}, 2),
                    std::invalid_argument);
}

TEST_CASE("image engine reciprocity: swapped endpoints give the same delay/|amp| multiset") {
    std::mt19937 rng(515);
    std::uniform_real_distribution<double> u(0.02, 0.28);
    for (const Material& m : {Material::pec(), Material::copper_4k(), Material::sio2_4k()}) {
        const Scene box = build_box_scene({0.3, 0.3, 0.15}, m);
        for (int trial = 0; trial < 3; ++trial) {
            const Vec3 a{u(rng), u(rng), 0.02 + 0.11 * (u(rng) / 0.3)};
            const Vec3 b{u(rng), u(rng), 0.02 + 0.11 * (u(rng) / 0.3)};
            if (distance(a, b) < 0.02) continue;
            const auto fwd = trace_images(box, isotropic_ctx(), a, b, 3);
            const auto rev = trace_images(box, isotropic_ctx(), b, a, 3);
            REQUIRE(fwd.size() == rev.size());
            for (std::size_t i = 0; i < fwd.size(); ++i) {
                CHECK(fwd[i].delay_s == doctest::Approx(rev[i].delay_s).epsilon(1e-12));
                CHECK(std::abs(fwd[i].amplitude) ==
                      doctest::Approx(std::abs(rev[i].amplitude)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("appending a lossy bounce always shrinks the amplitude") {
    const Scene scene = parallel_plates_scene(0.12, Material::sio2_4k());
    const auto paths = trace_images(scene, isotropic_ctx(), {0, 0, 0.04}, {0.06, 0, 0.07}, 4);

    std::map<std::vector<int>, double> by_signature;
    for (const auto& p : paths) by_signature[p.bounce_surfaces] = std::abs(p.amplitude);
    for (const auto& [sig, amp] : by_signature) {
        if (sig.empty()) continue;
        std::vector<int> prefix(sig.begin(), sig.end() - 1);
        const auto parent = by_signature.find(prefix);
        if (parent != by_signature.end()) CHECK(amp < parent->second);
    }
}

TEST_CASE("passive scenes never amplify: sum |a|^2 <= Gtx Grx") {
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> size(0.1, 0.5);
    std::uniform_real_distribution<double> frac(0.1, 0.9);
    const Material mats[] = {Material::pec(), Material::copper_4k(), Material::sio2_4k(),
                             Material::silicon_4k()};
    for (int trial = 0; trial < 20; ++trial) {
        const Vec3 dims{size(rng), size(rng), size(rng)};
        const Scene box = build_box_scene(dims, mats[static_cast<std::size_t>(trial) % 4]);
        const Vec3 a{dims.x * frac(rng), dims.y * frac(rng), dims.z * frac(rng)};
        const Vec3 b{dims.x * frac(rng), dims.y * frac(rng), dims.z * frac(rng)};
        if (distance(a, b) < 0.02) continue;
        const auto paths = trace_images(box, isotropic_ctx(), a, b, 4);
        double energy = 0.0;
        for (const auto& p : paths) energy += std::norm(p.amplitude);
        CHECK(energy <= 1.0);
    }
}

TEST_CASE("ray engine: free space reproduces Friis within 0.5 dB") {
    const Scene empty;
    RayLaunchParams params;
    params.ray_count = 100000;
    params.max_bounces = 0;
    const auto paths = trace_rays(empty, isotropic_ctx(), {0, 0, 0}, {0.1, 0, 0}, params);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].bounce_count == 0);
    CHECK(std::abs(paths[0].delay_s - 0.1 / kSpeedOfLight) < 1e-12);
    const double friis_db = db(std::pow(oracles::friis_amplitude(28e9, 0.1), 2));
    CHECK(std::abs(db(std::norm(paths[0].amplitude)) - friis_db) < 0.5);
}

TEST_CASE("ray engine matches the image oracle in a closed PEC box") {
    const Scene box = build_box_scene({0.3, 0.3, 0.15}, Material::pec());
    const Vec3 tx{0.081, 0.093, 0.052}, rx{0.211, 0.177, 0.094};

    const auto image_paths = trace_images(box, isotropic_ctx(), tx, rx, 3);

    RayLaunchParams params;
    params.ray_count = 200000;
    params.max_bounces = 3;
    const auto ray_paths = trace_rays(box, isotropic_ctx(), tx, rx, params);

    REQUIRE(ray_paths.size() >= 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(std::abs(ray_paths[i].delay_s - image_paths[i].delay_s) < 1e-12); // 1 ps
        const double e_ray = db(std::norm(ray_paths[i].amplitude));
        const double e_img = db(std::norm(image_paths[i].amplitude));
        CHECK(std::abs(e_ray - e_img) < 1.0);
        CHECK(ray_paths[i].bounce_surfaces == image_paths[i].bounce_surfaces);
    }
}

TEST_CASE("ray engine parameter validation") {
    const Scene box = build_box_scene({0.3, 0.3, 0.15}, Material::pec());
    RayLaunchParams params;
    params.ray_count = 5000;
    CHECK_THROWS_AS((void)trace_rays(box, isotropic_ctx(), {0.1, 0.1, 0.05}, {0.2, 0.2, 0.1}, params),
                    std::invalid_argument);
    params.ray_count = 10000;
    params.rx_radius_m = 0.2; // far beyond 10% of the scene diameter
    CHECK_THROWS_AS((void)trace_rays(box, isotropic_ctx(), {0.1, 0.1, 0.05}, {0.2, 0.2, 0.1}, params),
                    std::invalid_argument);
    params.rx_radius_m = 0.0;
    params.max_bounces = -1;
    CHECK_THROWS_AS((void)trace_rays(box, isotropic_ctx(), {0.1, 0.1, 0.05}, {0.2, 0.2, 0.1}, params),
                    std::invalid_argument);
}

TEST_CASE("raising the bounce budget only extends the path list") {
    const Scene box = build_box_scene({0.3, 0.3, 0.15}, Material::copper_4k());
    const Vec3 tx{0.081, 0.093, 0.052}, rx{0.211, 0.177, 0.094};
    RayLaunchParams params;
    params.ray_count = 50000;

    auto signature_set = [](const std::vector<PathComponent>& paths) {
        std::set<std::vector<int>> set;
        for (const auto& p : paths) set.insert(p.bounce_surfaces);
        return set;
    };

    params.max_bounces = 2;
    const auto low = trace_rays(box, isotropic_ctx(), tx, rx, params);
    params.max_bounces = 3;
    const auto high = trace_rays(box, isotropic_ctx(), tx, rx, params);

    const auto low_set = signature_set(low);
    const auto high_set = signature_set(high);
    CHECK(low.size() <= high.size());
    for (const auto& sig : low_set) CHECK(high_set.count(sig) == 1);
}

TEST_CASE("ray tracing is deterministic across repeated runs") {
    const Scene box = build_box_scene({0.3, 0.3, 0.15}, Material::copper_4k());
    RayLaunchParams params;
    params.ray_count = 50000;
    params.max_bounces = 4;
    const auto a = trace_rays(box, isotropic_ctx(), {0.081, 0.093, 0.052}, {0.211, 0.177, 0.094},
                              params);
    const auto b = trace_rays(box, isotropic_ctx(), {0.081, 0.093, 0.052}, {0.211, 0.177, 0.094},
                              params);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].delay_s == b[i].delay_s);
        CHECK(a[i].amplitude == b[i].amplitude);
        CHECK(a[i].bounce_surfaces == b[i].bounce_surfaces);
    }
}

TEST_CASE("a fully shadowed receiver yields no paths") {
    Scene scene;
    scene.surfaces.push_back({Disc{{0, 0, 0.1}, {0, 0, 1}, 1.0, 0.0}, Material::pec(), "screen"});
    RayLaunchParams params;
    params.ray_count = 10000;
    params.max_bounces = 0; // absorb at the screen
    params.rx_radius_m = 0.005;
    const auto paths = trace_rays(scene, isotropic_ctx(), {0, 0, 0}, {0, 0, 0.2}, params);
    CHECK(paths.empty());
}

TEST_CASE("doubling the ray count moves cryostat link energy by < 0.5 dB") {
    const CryostatParams params;
    const Scene scene = build_cryostat_scene(params);
    const auto layout = default_cryostat_layout(params, 28e9);
    TraceContext ctx;
    ctx.frequency_hz = 28e9;
    ctx.tx_antenna = AntennaModel::half_wave_dipole(design_dipole(28e9, 3.9), layout.orientation);
    ctx.rx_antenna = ctx.tx_antenna;

    const Vec3 rx[] = {layout.rx_positions.front().position, layout.rx_positions.back().position};
    RayLaunchParams low, high;
    low.ray_count = 100000;
    high.ray_count = 200000;
    const auto coarse = trace_rays_multi(scene, ctx, layout.tx_position, rx, low);
    const auto fine = trace_rays_multi(scene, ctx, layout.tx_position, rx, high);
    for (std::size_t i = 0; i < 2; ++i) {
        double e0 = 0.0, e1 = 0.0;
        for (const auto& p : coarse[i]) e0 += std::norm(p.amplitude);
        for (const auto& p : fine[i]) e1 += std::norm(p.amplitude);
        CHECK(std::abs(db(e1 / e0)) < 0.5);
    }
}

TEST_CASE("fibonacci launch grid is unit-length and well spread") {
    const long n = 10000;
    Vec3 sum{};
    for (long i = 0; i < n; ++i) {
        const Vec3 d = fibonacci_direction(i, n);
        CHECK(is_unit(d, 1e-9));
        sum += d;
    }
    CHECK(norm(sum) / double(n) < 1e-3); // near-zero mean direction
}
