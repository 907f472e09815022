#include "landau/stellar.hpp"

#include <algorithm>
#include <cmath>

#include "landau/util.hpp"

namespace landau {

namespace {

constexpr double kKm = 1e5; // cm

struct RegionEos {
    const StellarConfig* cfg;
    const PhysicalConstants* pc;

    bool in_lq(double r_cm) const {
        return cfg->include_LQ && r_cm < cfg->lq_boundary_km * kKm;
    }

    double rho_from_pressure(double P, double r_cm) const {
        if (in_lq(r_cm)) {
            if (P < cfg->lq_table->min_pressure())
                return 0.0; // below table support: vacuum edge
            if (P > cfg->lq_table->max_pressure())
                throw std::domain_error("stellar: pressure above the LQ table range at r = " +
                                        std::to_string(r_cm / kKm) + " km");
            return cfg->lq_table->density_at_pressure(P);
        }
        const double x = chandrasekhar_x_from_pressure(P, *pc);
        return chandrasekhar_eos(x, *pc, cfg->mu_e).first;
    }

    double pressure_from_rho(double rho, double r_cm) const {
        if (in_lq(r_cm)) return cfg->lq_table->pressure_at_density(rho);
        const double lam = pc->lambda_e_cm();
        const double n_e = rho / (pc->m_p * cfg->mu_e);
        const double x = std::cbrt(3.0 * M_PI * M_PI * lam * lam * lam * n_e);
        return chandrasekhar_eos(x, *pc, cfg->mu_e).second;
    }
};

double rho_B_of(double B, const StellarConfig& cfg, const PhysicalConstants& pc) {
    if (!cfg.include_rho_B || B == 0.0) return 0.0;
    return B * B / (8.0 * M_PI * pc.c_light * pc.c_light);
}

} // namespace

void StellarConfig::validate() const {
    if (!(mu_e > 0.0)) throw std::invalid_argument("StellarConfig: mu_e must be positive");
    if (!(step_km > 0.0)) throw std::invalid_argument("StellarConfig: step_km must be positive");
    if (!(surface_pressure_floor > 0.0 && surface_pressure_floor < 1.0))
        throw std::invalid_argument("StellarConfig: surface_pressure_floor must be in (0,1)");
    if (include_LQ && lq_table == nullptr)
        throw std::invalid_argument("StellarConfig: include_LQ requires an lq_table");
}

std::pair<double, double> hydrostatic_rhs(double r_cm, double P_e, double M_g,
                                          const StellarConfig& config,
                                          const PhysicalConstants& pc) {
    if (!(r_cm > 0.0)) throw std::invalid_argument("hydrostatic_rhs: r must be positive");
    if (!(P_e > 0.0)) throw std::invalid_argument("hydrostatic_rhs: P must be positive");
    RegionEos eos{&config, &pc};
    const double r_km = r_cm / kKm;
    const double B = config.field.field_at(r_km);
    const double rho = eos.rho_from_pressure(P_e, r_cm) + rho_B_of(B, config, pc);
    double dP = -pc.G_newton * M_g * rho / (r_cm * r_cm);
    if (config.include_lorentz && B > 0.0) {
        const double dBdr_cgs = config.field.dBdr(r_km) / kKm; // G/cm
        dP -= B * dBdr_cgs / (4.0 * M_PI);
    }
    const double dM = 4.0 * M_PI * r_cm * r_cm * rho;
    return {dP, dM};
}

StarModel integrate_star(double rho_c, const StellarConfig& config,
                         const PhysicalConstants& pc) {
    config.validate();
    StarModel star;
    star.rho_c = rho_c;
    RegionEos eos{&config, &pc};

    try {
        // ordered stop radii: field breaks plus the EoS hand-off
        std::vector<double> stops_km = config.field.break_radii();
        if (config.include_LQ) stops_km.push_back(config.lq_boundary_km);
        std::sort(stops_km.begin(), stops_km.end());
        stops_km.erase(std::unique(stops_km.begin(), stops_km.end()), stops_km.end());

        double r = config.seed_radius_km * kKm;
        const double B_c = config.field.field_at(0.0);
        const double rho_tot_c = rho_c + rho_B_of(B_c, config, pc);
        const double P_c = eos.pressure_from_rho(rho_c, 0.0);
        double P = P_c - (2.0 / 3.0) * M_PI * pc.G_newton * rho_tot_c * rho_tot_c * r * r;
        double M = (4.0 / 3.0) * M_PI * rho_tot_c * r * r * r;
        const double P_floor = config.surface_pressure_floor * P_c;

        auto record = [&](double r_cm, double M_g, double P_e) {
            star.r_km.push_back(r_cm / kKm);
            star.M_g.push_back(M_g);
            star.P_cgs.push_back(P_e);
            star.rho_cgs.push_back(eos.rho_from_pressure(P_e, r_cm));
            star.B_G.push_back(config.field.field_at(r_cm / kKm));
        };
        record(r, M, P);

        std::size_t next_stop = 0;
        while (next_stop < stops_km.size() && stops_km[next_stop] * kKm <= r) ++next_stop;

        const double h_base = config.step_km * kKm;
        const double r_cap = config.max_radius_km * kKm;
        int guard = 0;
        while (P > P_floor) {
            if (++guard > 4000000) throw std::runtime_error("integrate_star: step budget exceeded");
            if (r > r_cap)
                throw std::runtime_error("integrate_star: radius exceeded max_radius_km (unbound envelope)");

            // trial substeps may probe past the surface; clamp them to vacuum
            auto rhs = [&](double rr, double PP, double MM) {
                return hydrostatic_rhs(rr, std::max(PP, 1e-6 * P_floor), MM, config, pc);
            };
            const auto [dP0, dM0] = rhs(r, P, M);
            double h = h_base;
            if (dP0 < 0.0) h = std::min(h, 0.05 * P / (-dP0)); // pressure scale height
            h = std::max(h, 1.0);                              // 1 cm floor
            bool at_stop = false;
            if (next_stop < stops_km.size()) {
                const double dist = stops_km[next_stop] * kKm - r;
                if (dist <= h) {
                    h = dist;
                    at_stop = true;
                }
            }

            // classic RK4 with step halving on a negative-pressure overshoot
            double P_new, M_new;
            for (;;) {
                const auto [k1P, k1M] = rhs(r, P, M);
                const auto [k2P, k2M] = rhs(r + 0.5 * h, P + 0.5 * h * k1P, M + 0.5 * h * k1M);
                const auto [k3P, k3M] = rhs(r + 0.5 * h, P + 0.5 * h * k2P, M + 0.5 * h * k2M);
                const auto [k4P, k4M] = rhs(r + h, P + h * k3P, M + h * k3M);
                P_new = P + h / 6.0 * (k1P + 2 * k2P + 2 * k3P + k4P);
                M_new = M + h / 6.0 * (k1M + 2 * k2M + 2 * k3M + k4M);
                if (P_new > 0.0) break;
                h *= 0.5;
                at_stop = false;
                if (h < 1e-3) { // cm; the surface has been pinned down
                    P_new = 0.5 * P_floor;
                    M_new = M;
                    break;
                }
            }

            r += h;
            P = P_new;
            M = M_new;

            if (at_stop) {
                // cross the break: keep P_e continuous, or transfer the
                // magnetic-pressure jump per the configured rule
                const double r_km_break = stops_km[next_stop];
                if (config.break_rule == StellarConfig::BreakRule::total_pressure) {
                    const double B_in = config.field.field_at(r_km_break * (1.0 - 1e-12));
                    const double B_out = config.field.field_at(r_km_break * (1.0 + 1e-12));
                    P += (B_in * B_in - B_out * B_out) / (8.0 * M_PI);
                    if (P <= 0.0) { // the field jump alone terminates the star
                        record(r, M, P_floor);
                        break;
                    }
                }
                r *= (1.0 + 1e-12); // land strictly inside the next segment
                ++next_stop;
            }
            record(r, M, P);
        }

        star.radius_km = r / kKm;
        star.mass_g = M;
        star.ok = true;
    } catch (const std::exception& e) {
        star.ok = false;
        star.error = e.what();
    }
    return star;
}

std::vector<CurvePoint> mass_radius_curve(const std::vector<double>& rho_c_grid,
                                          const StellarConfig& config,
                                          const PhysicalConstants& pc) {
    std::vector<CurvePoint> out(rho_c_grid.size());
    parallel_for(rho_c_grid.size(), [&](std::size_t i) {
        CurvePoint p;
        p.rho_c = rho_c_grid[i];
        const StarModel star = integrate_star(rho_c_grid[i], config, pc);
        p.ok = star.ok;
        p.error = star.error;
        if (star.ok) {
            p.mass_solar = star.mass_g / pc.M_sun;
            p.radius_km = star.radius_km;
        }
        out[i] = p;
    });
    return out;
}

} // namespace landau
