#include "doctest.h"

#include <cmath>
#include <vector>

#include "landau/field.hpp"
#include "landau/util.hpp"

using namespace landau;

TEST_CASE("power-law field evaluation") {
    SUBCASE("constant field") {
        PowerLawField f(1e15, 0.0, 0.0);
        for (double rho : {0.0, 0.5, 3.0, 100.0}) CHECK(f.field_at(rho) == doctest::Approx(1e15));
    }
    SUBCASE("unit radius is the normalization point") {
        PowerLawField f(2e14, -0.3, 0.0);
        CHECK(f.field_at(1.0) == doctest::Approx(2e14));
    }
    SUBCASE("inverse square root") {
        PowerLawField f(1e15, -0.5, 0.0);
        CHECK(f.field_at(4.0) == doctest::Approx(0.5e15));
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(PowerLawField(-1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(PowerLawField(1e15, 0.0, -1.0), std::invalid_argument);
    }
    SUBCASE("monotone in rho") {
        PowerLawField dec(1e15, -0.4);
        PowerLawField inc(1e15, 0.7);
        double prev_d = dec.field_at(0.01), prev_i = inc.field_at(0.01);
        for (double rho = 0.1; rho < 20.0; rho += 0.37) {
            CHECK(dec.field_at(rho) < prev_d);
            CHECK(inc.field_at(rho) > prev_i);
            prev_d = dec.field_at(rho);
            prev_i = inc.field_at(rho);
        }
    }
}

TEST_CASE("effective potential") {
    SUBCASE("field-free limit is the centrifugal term") {
        // vanishing-field limit of the full expression
        PowerLawField f(1e-30, 0.0, 0.0);
        const double rho = 0.7;
        const double lam = default_constants().lambda_e_pm;
        const double expected = -0.25 / std::pow(rho / lam, 2);
        CHECK(effective_potential(f, 0, 1, rho) == doctest::Approx(expected).epsilon(1e-6));
    }
    SUBCASE("rho = 0 rejected") {
        PowerLawField f(1e15, 0.0);
        CHECK_THROWS_AS(effective_potential(f, 0, 1, 0.0), std::invalid_argument);
    }
    SUBCASE("ordering at rho = 1 pm: potential rises as n decreases") {
        const std::vector<double> ns = {1.0, 0.0, -0.3, -0.5, -0.7, -1.0, -1.1};
        for (int spin : {+1, -1}) {
            double prev = -1e300;
            for (double n : ns) {
                PowerLawField f(1e15, n);
                const double v = effective_potential(f, 0, spin, 1.0);
                CHECK(v > prev);
                prev = v;
            }
        }
    }
    SUBCASE("exactly one sign change on (0, inf) for n > -1") {
        for (double n : {0.0, -0.3, -0.5, -0.7}) {
            for (int spin : {+1, -1}) {
                PowerLawField f(1e15, n);
                int changes = 0;
                double prev = effective_potential(f, 0, spin, 1e-4);
                for (double rho : logspace(1e-4, 50.0, 4000)) {
                    const double v = effective_potential(f, 0, spin, rho);
                    if (prev < 0.0 && v >= 0.0) ++changes;
                    if (prev > 0.0 && v <= 0.0) ++changes;
                    prev = v;
                }
                CHECK(changes == 1);
            }
        }
    }
    SUBCASE("zero-crossing moves inward as n decreases") {
        double prev_cross = 1e300;
        for (double n : {0.0, -0.3, -0.5, -0.7}) {
            PowerLawField f(1e15, n);
            double cross = 0.0, last = -1.0;
            for (double rho : logspace(1e-4, 50.0, 8000)) {
                const double v = effective_potential(f, 0, -1, rho);
                if (last < 0.0 && v >= 0.0) cross = rho;
                last = v;
            }
            CHECK(cross > 0.0);
            CHECK(cross < prev_cross);
            prev_cross = cross;
        }
    }
    SUBCASE("repulsive everywhere for n <= -1 (sampled validation range)") {
        for (double n : {-1.0, -1.1}) {
            PowerLawField f(1e15, n);
            CHECK_FALSE(f.spectrum_supported());
            for (int spin : {+1, -1})
                for (double rho : logspace(0.01, 10.0, 1000))
                    CHECK(effective_potential(f, 0, spin, rho) > 0.0);
        }
    }
}

TEST_CASE("piecewise stellar field") {
    SUBCASE("sample profile, verbatim evaluation") {
        auto f = PiecewiseField::stellar_sample(2e15);
        CHECK(f.field_at(100.0) == doctest::Approx(2e15));
        CHECK(f.field_at(849.999) == doctest::Approx(2e15));
        // second segment value just past the first break
        CHECK(f.field_at(860.0) == doctest::Approx(2e15 * std::pow(860.0, -0.37)));
        // outer segment reaches ~1e12 G around 2000 km
        CHECK(f.field_at(2000.0) ==
              doctest::Approx(2e15 * std::pow(2000.0, -0.99)).epsilon(1e-12));
        CHECK(f.field_at(2000.0) / 1e12 == doctest::Approx(1.08).epsilon(0.02));
    }
    SUBCASE("single constant segment") {
        auto f = PiecewiseField::uniform(5e14);
        for (double r : {0.0, 10.0, 5000.0}) CHECK(f.field_at(r) == doctest::Approx(5e14));
        CHECK(f.dBdr(100.0) == 0.0);
    }
    SUBCASE("continuity-rescaled variant is continuous at the breaks") {
        auto f = PiecewiseField::stellar_sample(2e15, true);
        for (double rb : f.break_radii()) {
            const double lo = f.field_at(rb * (1 - 1e-9));
            const double hi = f.field_at(rb * (1 + 1e-9));
            CHECK(lo == doctest::Approx(hi).epsilon(1e-6));
        }
    }
    SUBCASE("dBdr matches a finite difference inside segments") {
        auto f = PiecewiseField::stellar_sample(2e15);
        for (double r : {870.0, 1500.0}) {
            const double h = 1e-4;
            const double fd = (f.field_at(r + h) - f.field_at(r - h)) / (2 * h);
            CHECK(f.dBdr(r) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(PiecewiseField({{100.0, 0.0, 1e15}}), std::invalid_argument);
        const double inf = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(PiecewiseField({{200.0, 0.0, 1e15}, {100.0, 0.0, 1e15}, {inf, 0.0, 1e15}}),
                        std::invalid_argument);
    }
}
