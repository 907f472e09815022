#include "doctest.h"

#include <cmath>

#include "landau/qspeed.hpp"

using namespace landau;

namespace {
const PhysicalConstants& pc = default_constants();
}

TEST_CASE("mandelstam-tamm minimum time") {
    SUBCASE("rest-energy gap") {
        // pi hbar / (me c^2) evaluated directly from the constants
        CHECK(mt_min_time(0.0, pc.me_c2, pc) == doctest::Approx(4.0466e-21).epsilon(1e-4));
    }
    SUBCASE("doubling the gap halves the time") {
        const double t1 = mt_min_time(0.0, 1e-7, pc);
        const double t2 = mt_min_time(0.0, 2e-7, pc);
        CHECK(t1 / t2 == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("degenerate pair rejected") {
        CHECK_THROWS_AS(mt_min_time(1e-7, 1e-7, pc), std::invalid_argument);
    }
}

TEST_CASE("uniform-field transition energies compose with energy_from_alpha") {
    PowerLawField field(1e16, 0.0);
    const double b = dimensionless_field(1e16, pc);
    const auto point = quantum_speed_point(field, {}, pc);
    CHECK(point.alpha0_plus == doctest::Approx(2 * b).epsilon(1e-5));
    CHECK(point.alpha1_plus == doctest::Approx(4 * b).epsilon(1e-5));
    const double gap = pc.me_c2 * (energy_from_alpha(point.alpha1_plus, 0.0) -
                                   energy_from_alpha(point.alpha0_plus, 0.0));
    CHECK(point.T_min_s == doctest::Approx(M_PI * pc.hbar / gap).epsilon(1e-10));
}

TEST_CASE("uniform-field quantum speed limit") {
    PowerLawField field(1e16, 0.0);
    const double v = quantum_speed(field, {}, pc);
    CHECK(v == doctest::Approx(0.2407).epsilon(0.005 / 0.2407));

    SUBCASE("saturated in B0") {
        PowerLawField twice(2e16, 0.0);
        const double v2 = quantum_speed(twice, {}, pc);
        CHECK(std::abs(v - v2) / v < 0.01);
    }
}

TEST_CASE("scaling: displacement halves under B0 -> 4 B0 at n = 0") {
    const auto p1 = quantum_speed_point(PowerLawField(1e16, 0.0), {}, pc);
    const auto p4 = quantum_speed_point(PowerLawField(4e16, 0.0), {}, pc);
    CHECK(p4.rho_disp_pm == doctest::Approx(0.5 * p1.rho_disp_pm).epsilon(0.01));
    CHECK(p4.v_over_c == doctest::Approx(p1.v_over_c).epsilon(0.01));
}

TEST_CASE("growing fields raise the quantum speed") {
    const double v0 = quantum_speed(PowerLawField(1e16, 0.0), {}, pc);
    const double v1 = quantum_speed(PowerLawField(1e16, 1.0), {}, pc);
    CHECK(v1 > v0);
    SUBCASE("always subluminal") {
        for (double n : {-0.5, 0.0, 1.0, 2.0}) {
            const double v = quantum_speed(PowerLawField(1e16, n), {}, pc);
            CHECK(v < 1.0);
            CHECK(v > 0.0);
        }
    }
}

TEST_CASE("displacement rejects invalid input") {
    PowerLawField field(1e16, 0.0);
    QuantumState s0{0, +1, 0, 0.0, true};
    const EigenResult r0 = solve_eigenvalue(field, s0, {}, pc);
    SUBCASE("same state") {
        CHECK_THROWS_AS(radial_displacement(r0, r0, pc), std::invalid_argument);
    }
    SUBCASE("unnormalized input") {
        EigenResult bad = r0;
        for (auto& v : bad.R) v *= 2.0;
        QuantumState s1{0, +1, 1, 0.0, true};
        const EigenResult r1 = solve_eigenvalue(field, s1, {}, pc);
        CHECK_THROWS_AS(radial_displacement(bad, r1, pc), std::invalid_argument);
    }
}

TEST_CASE("displacement is phase invariant") {
    PowerLawField field(1e16, 0.3);
    QuantumState s0{0, +1, 0, 0.0, true};
    QuantumState s1{0, +1, 1, 0.0, true};
    const EigenResult r0 = solve_eigenvalue(field, s0, {}, pc);
    EigenResult r1 = solve_eigenvalue(field, s1, {}, pc);
    const double d = radial_displacement(r0, r1, pc);
    for (auto& v : r1.R) v = -v;
    for (auto& v : r1.dR) v = -v;
    CHECK(radial_displacement(r0, r1, pc) == doctest::Approx(d).epsilon(1e-12));
}
