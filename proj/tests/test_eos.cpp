#include "doctest.h"

#include <cmath>

#include "landau/eos.hpp"

using namespace landau;

namespace {
const PhysicalConstants& pc = default_constants();
}

TEST_CASE("f1 and f2") {
    CHECK(f1(0.0) == 0.0);
    CHECK(f2(0.0) == 0.0);
    // closed-form evaluation at z = 1
    CHECK(f1(1.0) == doctest::Approx(1.147793574696319).epsilon(1e-14));
    SUBCASE("algebraic identity f1 + f2 = z sqrt(1+z^2)") {
        for (double z : {0.5, 1.0, 2.0}) {
            CHECK(f1(z) + f2(z) == doctest::Approx(z * std::sqrt(1 + z * z)).epsilon(1e-13));
        }
    }
    SUBCASE("series branch joins the closed form smoothly") {
        for (double z : {0.009, 0.0101, 0.011}) {
            const double exact = 0.5 * (z * std::sqrt(1 + z * z) - std::asinh(z));
            CHECK(f2(z) == doctest::Approx(exact).epsilon(1e-10));
        }
    }
}

TEST_CASE("max_level") {
    SUBCASE("ground only at epsilon_F = 1") {
        auto s = LevelSpectrum::uniform(10.0, 4);
        const auto [dn, up] = max_level(s, 1.0);
        CHECK(dn == 0);
        CHECK(up == -1); // spin-up ground sits at 2b > 0
    }
    SUBCASE("uniform closed form") {
        const double b = 199.4;
        auto s = LevelSpectrum::uniform(b, 8);
        const auto [dn, up] = max_level(s, 20.0);
        CHECK(dn == (int)std::floor(399.0 / (2 * b)));
        CHECK(dn == 1); // one populated level above the ground at the threshold field
        CHECK(up == 0);
    }
    SUBCASE("short spectrum rejected") {
        auto s = LevelSpectrum::uniform(1.0, 3);
        CHECK_THROWS_AS(max_level(s, 10.0), std::length_error);
    }
}

TEST_CASE("uniform-field density equals the degeneracy-factor closed form") {
    // independent oracle: n_e = (2b / (2pi)^2 lambda^3) * sum g_nu x_F(nu),
    // g_0 = 1, g_nu = 2
    const double b = 30.0;
    auto s = LevelSpectrum::uniform(b, 40);
    const double lam = pc.lambda_e_cm();
    for (double eF : {1.5, 5.0, 12.0, 17.0}) {
        const double limit = eF * eF - 1.0;
        double acc = 0.0;
        for (int nu = 0; 2.0 * b * nu <= limit; ++nu) {
            const double g = (nu == 0) ? 1.0 : 2.0;
            acc += g * std::sqrt(limit - 2.0 * b * nu);
        }
        const double oracle = 2.0 * b * acc / (4.0 * M_PI * M_PI * lam * lam * lam);
        CHECK(number_density(s, eF, pc) == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("uniform-field energy and pressure match the degeneracy-factor sums") {
    const double b = 44.42;
    auto s = LevelSpectrum::uniform(b, 40);
    const double lam = pc.lambda_e_cm();
    const double pref = pc.me_c2 / (4.0 * M_PI * M_PI * lam * lam * lam);
    for (double eF : {2.0, 9.0, 18.0}) {
        const double limit = eF * eF - 1.0;
        double e_acc = 0.0, p_acc = 0.0;
        for (int nu = 0; 2.0 * b * nu <= limit; ++nu) {
            const double g = (nu == 0) ? 1.0 : 2.0;
            const double alpha = 2.0 * b * nu;
            const double xf = std::sqrt(limit - alpha);
            const double z = xf / std::sqrt(1 + alpha);
            e_acc += g * 2.0 * b * (1 + alpha) * f1(z);
            p_acc += g * 2.0 * b * (1 + alpha) * f2(z);
        }
        const auto [e, p] = energy_and_pressure(s, eF, pc);
        CHECK(e == doctest::Approx(pref * e_acc).epsilon(1e-10));
        CHECK(p == doctest::Approx(pref * p_acc).epsilon(1e-10));
    }
}

TEST_CASE("thermodynamic identities") {
    auto s = LevelSpectrum::uniform(44.42, 60);

    SUBCASE("P + eps = n_e E_F pointwise") {
        for (double eF : {1.2, 3.3, 9.9, 17.0}) {
            const double ne = number_density(s, eF, pc);
            const auto [eps, P] = energy_and_pressure(s, eF, pc);
            CHECK(P + eps == doctest::Approx(ne * eF * pc.me_c2).epsilon(1e-12));
        }
    }
    SUBCASE("P = n^2 d(eps/n)/dn by finite differences") {
        // away from level thresholds so the stencil stays on one branch
        for (double eF : {2.0, 7.3, 13.1}) {
            const double h = 1e-5;
            const double n0 = number_density(s, eF - h, pc);
            const double n1 = number_density(s, eF + h, pc);
            const auto [e0, p0] = energy_and_pressure(s, eF - h, pc);
            const auto [e1, p1] = energy_and_pressure(s, eF + h, pc);
            (void)p0;
            (void)p1;
            const double nc = number_density(s, eF, pc);
            const double P_fd = nc * nc * (e1 / n1 - e0 / n0) / (n1 - n0);
            const auto [ec, Pc] = energy_and_pressure(s, eF, pc);
            (void)ec;
            CHECK(P_fd == doctest::Approx(Pc).epsilon(1e-3));
        }
    }
    SUBCASE("n_e strictly increasing in epsilon_F") {
        double prev = 0.0;
        for (double eF = 1.05; eF < 17.0; eF += 0.25) {
            const double ne = number_density(s, eF, pc);
            CHECK(ne > prev);
            prev = ne;
        }
    }
    SUBCASE("epsilon_F -> 1 limit vanishes") {
        CHECK(number_density(s, 1.0, pc) == 0.0);
        const auto [e, p] = energy_and_pressure(s, 1.0, pc);
        CHECK(e == 0.0);
        CHECK(p == 0.0);
    }
}

TEST_CASE("virtual-level convention recovers g0 = 1") {
    // The spin-down ground level must carry half the weight of the merged
    // excited levels; beta(-,0) = alpha(1) - alpha(0) = 2b achieves that.
    auto s = LevelSpectrum::uniform(10.0, 6);
    CHECK(s.beta(-1, 0) == doctest::Approx(20.0));
    CHECK(s.beta(-1, 1) == doctest::Approx(20.0));
    CHECK(s.beta(+1, 0) == doctest::Approx(20.0));
}

TEST_CASE("chandrasekhar limits") {
    SUBCASE("vacuum") {
        const auto [rho, P] = chandrasekhar_eos(0.0, pc);
        CHECK(rho == 0.0);
        CHECK(P == 0.0);
    }
    SUBCASE("log-log slope approaches 4/3 ultrarelativistically") {
        const double x = 50.0;
        const auto [r0, p0] = chandrasekhar_eos(x * 0.999, pc);
        const auto [r1, p1] = chandrasekhar_eos(x * 1.001, pc);
        const double slope = std::log(p1 / p0) / std::log(r1 / r0);
        CHECK(slope == doctest::Approx(4.0 / 3.0).epsilon(0.01));
    }
    SUBCASE("slope approaches 5/3 nonrelativistically") {
        const double x = 0.01;
        const auto [r0, p0] = chandrasekhar_eos(x * 0.999, pc);
        const auto [r1, p1] = chandrasekhar_eos(x * 1.001, pc);
        const double slope = std::log(p1 / p0) / std::log(r1 / r0);
        CHECK(slope == doctest::Approx(5.0 / 3.0).epsilon(0.01));
    }
    SUBCASE("pressure inversion round trip") {
        for (double x : {0.01, 0.5, 3.0, 40.0}) {
            const auto [rho, P] = chandrasekhar_eos(x, pc);
            (void)rho;
            CHECK(chandrasekhar_x_from_pressure(P, pc) == doctest::Approx(x).epsilon(1e-10));
        }
    }
}

TEST_CASE("continuum limit recovers the zero-field gas") {
    // b -> 0 with ~1e3 occupied levels
    const double eF = 3.0;
    const double b = (eF * eF - 1.0) / 2000.0;
    auto s = LevelSpectrum::uniform(b, 2100);
    const double ne = number_density(s, eF, pc);
    const auto [eps, P] = energy_and_pressure(s, eF, pc);
    (void)eps;
    const double xf = std::sqrt(eF * eF - 1.0);
    const auto [rho_ch, P_ch] = chandrasekhar_eos(xf, pc);
    const double lam = pc.lambda_e_cm();
    const double ne_ch = xf * xf * xf / (3 * M_PI * M_PI * lam * lam * lam);
    (void)rho_ch;
    CHECK(ne == doctest::Approx(ne_ch).epsilon(0.02));
    CHECK(P == doctest::Approx(P_ch).epsilon(0.02));
}

TEST_CASE("eos tables") {
    PowerLawField field(1e15, 0.0);
    const EosTable t = build_eos_table(field, 17.0, 200);

    SUBCASE("monotone in epsilon_F") {
        for (std::size_t i = 1; i < t.points.size(); ++i) {
            CHECK(t.points[i].pressure >= t.points[i - 1].pressure);
            CHECK(t.points[i].rho_mass >= t.points[i - 1].rho_mass);
        }
    }
    SUBCASE("pointwise identity") {
        // P + eps = n_e E_F to rounding, measured on the natural scale
        for (const auto& p : t.points) {
            const double nEF = p.n_e * p.epsilon_F * pc.me_c2;
            CHECK(std::abs(p.pressure + p.energy_density - nEF) <= 1e-12 * nEF);
            CHECK(p.rho_mass == doctest::Approx(p.n_e * pc.m_p * 2.0).epsilon(1e-14));
        }
    }
    SUBCASE("interpolation round trip within table resolution") {
        const double rho = 0.5 * (t.points.front().rho_mass + t.points.back().rho_mass);
        const double P = t.pressure_at_density(rho);
        CHECK(t.density_at_pressure(P) == doctest::Approx(rho).epsilon(1e-3));
    }
    SUBCASE("stiffer than the zero-field gas at the top, softer at the bottom") {
        const double rho_hi = t.points.back().rho_mass * 0.98;
        const double rho_lo = t.points.back().rho_mass * 1e-4;
        auto chandra_P = [&](double rho) {
            const double ne = rho / (pc.m_p * 2.0);
            const double lam = pc.lambda_e_cm();
            const double x = std::cbrt(3 * M_PI * M_PI * lam * lam * lam * ne);
            return chandrasekhar_eos(x, pc).second;
        };
        CHECK(t.pressure_at_density(rho_hi) > chandra_P(rho_hi));
        CHECK(t.pressure_at_density(rho_lo) < chandra_P(rho_lo));
    }
}

TEST_CASE("solver-backed table is consistent with the analytic path at n = 0") {
    // grid-stability check: the solver spectrum feeding a table reproduces
    // the analytic table within the eigenvalue tolerance
    PowerLawField field(1e15, 0.0);
    SolverConfig cfg;
    const auto s_solver = LevelSpectrum::from_solver(field, 6.0, cfg, pc);
    const double b = dimensionless_field(1e15, pc);
    const auto s_exact = LevelSpectrum::uniform(b, s_solver.alpha_minus.size());
    for (double eF : {2.0, 4.0, 5.5}) {
        CHECK(number_density(s_solver, eF, pc) ==
              doctest::Approx(number_density(s_exact, eF, pc)).epsilon(1e-3));
    }
}
