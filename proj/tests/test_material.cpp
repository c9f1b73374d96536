// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "cryochan/constants.hpp"
#include "cryochan/material.hpp"
#include "support/oracles.hpp"

using namespace cryochan;

TEST_CASE("complex permittivity of a lossless dielectric") {
    const auto eps = complex_permittivity(Material::sio2_4k(), 28e9);
    CHECK(eps.real() == doctest::Approx(3.9).epsilon(1e-15));
    CHECK(eps.imag() == 0.0);
}

TEST_CASE("complex permittivity loss term matches direct arithmetic") {
    const double f = 28e9;
    const auto si = complex_permittivity(Material::silicon_4k(), f);
    const double expected = 4.26e-7 / (2.0 * kPi * f * kVacuumPermittivity);
    CHECK(si.real() == doctest::Approx(11.45).epsilon(1e-15));
    CHECK(-si.imag() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(-si.imag() == doctest::Approx(2.7347836e-7).epsilon(1e-6));

    const auto cu = complex_permittivity(Material::copper_4k(), f);
    CHECK(-cu.imag() == doctest::Approx(1.8617072e8).epsilon(1e-6));
    CHECK(Material::copper_4k().is_good_conductor(f));
    CHECK_FALSE(Material::sio2_4k().is_good_conductor(f));
    CHECK_FALSE(Material::silicon_4k().is_good_conductor(f));
}

TEST_CASE("complex permittivity rejects non-positive frequency") {
    CHECK_THROWS_AS((void)complex_permittivity(Material::vacuum(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)complex_permittivity(Material::vacuum(), -1e9), std::invalid_argument);
}

TEST_CASE("vacuum interface reflects nothing") {
    for (double angle : {0.0, 0.3, 0.9, 1.4}) {
        for (auto pol : {Polarization::TE, Polarization::TM}) {
            const auto g = reflection_coefficient(Material::vacuum(), 28e9, angle, pol);
            CHECK(std::abs(g) < 1e-12);
        }
    }
}

TEST_CASE("normal incidence on lossless eps_r = 3.9 matches closed form") {
    const double expected = (1.0 - std::sqrt(3.9)) / (1.0 + std::sqrt(3.9)); // -0.327695...
    const auto te = reflection_coefficient(Material::sio2_4k(), 28e9, 0.0, Polarization::TE);
    CHECK(te.real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(te.imag()) < 1e-15);
    // TM uses the convention with opposite sign at normal incidence.
    const auto tm = reflection_coefficient(Material::sio2_4k(), 28e9, 0.0, Polarization::TM);
    CHECK(tm.real() == doctest::Approx(-expected).epsilon(1e-12));
}

TEST_CASE("copper at 28 GHz is a near-perfect mirror") {
    // Independent route: surface-impedance formula for a thick conductor.
    const double expected = oracles::conductor_reflection_magnitude(28e9, 2.9e8);
    const auto te = reflection_coefficient(Material::copper_4k(), 28e9, 0.0, Polarization::TE);
    CHECK(std::abs(te) == doctest::Approx(expected).epsilon(1e-6));
    CHECK(std::abs(te) == doctest::Approx(0.99989636).epsilon(1e-7));
    CHECK(std::abs(te) > 0.9998);
    CHECK(te.real() < 0.0);
}

TEST_CASE("perfect conductor limit is exact") {
    for (double angle : {0.0, 0.5, 1.2, 1.5}) {
        const auto te = reflection_coefficient(Material::pec(), 28e9, angle, Polarization::TE);
        const auto tm = reflection_coefficient(Material::pec(), 28e9, angle, Polarization::TM);
        CHECK(te == std::complex<double>{-1.0, 0.0});
        CHECK(std::abs(tm) == 1.0);
    }
}

TEST_CASE("grazing incidence is rejected") {
    CHECK_THROWS_AS((void)reflection_coefficient(Material::sio2_4k(), 28e9, kPi / 2.0,
                                                 Polarization::TE),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)reflection_coefficient(Material::sio2_4k(), 28e9, -0.1,
                                                 Polarization::TM),
                    std::invalid_argument);
}

TEST_CASE("|reflection| <= 1 for random physical materials") {
    std::mt19937 rng(7151);
    std::uniform_real_distribution<double> eps(1.0, 80.0);
    std::uniform_real_distribution<double> logsig(-8.0, 9.0);
    std::uniform_real_distribution<double> angle(0.0, kPi / 2.0 - 1e-6);
    std::uniform_real_distribution<double> logf(6.0, 11.5);
    for (int i = 0; i < 2000; ++i) {
        Material m{"random", eps(rng), std::pow(10.0, logsig(rng)), 4.0, false};
        const double f = std::pow(10.0, logf(rng));
        const double a = angle(rng);
        for (auto pol : {Polarization::TE, Polarization::TM}) {
            const auto g = reflection_coefficient(m, f, a, pol);
            CHECK(std::abs(g) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("|reflection| grows with permittivity for lossless dielectrics") {
    double prev = 0.0;
    for (double eps = 1.1; eps < 20.0; eps += 0.5) {
        Material m{"diel", eps, 0.0, 4.0, false};
        const double mag = std::abs(reflection_coefficient(m, 28e9, 0.0, Polarization::TE));
        CHECK(mag > prev);
        prev = mag;
    }
}

TEST_CASE("conductor limit: TE reflection walks to -1 over six decades of sigma") {
    double prev = 0.0;
    for (double sigma = 1e2; sigma <= 1.1e8; sigma *= 10.0) {
        Material m{"metal", 1.0, sigma, 4.0, false};
        const auto g = reflection_coefficient(m, 28e9, 0.0, Polarization::TE);
        CHECK(std::abs(g) > prev);
        prev = std::abs(g);
    }
    CHECK(prev > 0.999);
}

TEST_CASE("material presets carry the cryogenic constants") {
    CHECK(Material::copper_4k().conductivity_s_per_m == 2.9e8);
    CHECK(Material::silicon_4k().relative_permittivity == 11.45);
    CHECK(Material::silicon_4k().conductivity_s_per_m == 4.26e-7);
    CHECK(Material::sio2_4k().relative_permittivity == 3.9);
    CHECK(Material::copper_4k().temperature_k == 4.0);
    CHECK(Material::pec().perfect_conductor);
    CHECK(Material::preset("copper_4K").has_value());
    CHECK(Material::preset("sio2_4K")->relative_permittivity == 3.9);
    CHECK_FALSE(Material::preset("unobtainium").has_value());
}

TEST_CASE("material validation rejects out-of-range fields") {
    CHECK_THROWS_AS((Material{"bad", 0.5, 0.0, 4.0, false}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Material{"bad", 1.0, -1.0, 4.0, false}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Material{"bad", 1.0, 0.0, 0.0, false}.validate()), std::invalid_argument);
    CHECK_NOTHROW(Material::copper_4k().validate());
}
