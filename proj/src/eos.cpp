#include "landau/eos.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace landau {

double f1(double z) {
    if (z < 0.0) throw std::invalid_argument("f1: z must be >= 0");
    const double s = std::sqrt(1.0 + z * z);
    return 0.5 * (z * s + std::asinh(z));
}

double f2(double z) {
    if (z < 0.0) throw std::invalid_argument("f2: z must be >= 0");
    if (z < 1e-2) { // z^3/3 - z^5/10 + 3 z^7/56: avoids cancellation
        const double z2 = z * z;
        return z * z2 * (1.0 / 3.0 + z2 * (-0.1 + z2 * (3.0 / 56.0)));
    }
    const double s = std::sqrt(1.0 + z * z);
    return 0.5 * (z * s - std::asinh(z));
}

LevelSpectrum LevelSpectrum::uniform(double b, int count) {
    if (b < 0.0) throw std::invalid_argument("LevelSpectrum::uniform: b must be >= 0");
    LevelSpectrum s;
    s.source = Source::analytic;
    s.alpha_minus.resize(count);
    s.alpha_plus.resize(count);
    for (int nu = 0; nu < count; ++nu) {
        s.alpha_minus[nu] = 2.0 * b * nu;
        s.alpha_plus[nu] = 2.0 * b * (nu + 1);
    }
    return s;
}

LevelSpectrum LevelSpectrum::from_solver(const PowerLawField& field, double epsilon_Fmax,
                                         const SolverConfig& config,
                                         const PhysicalConstants& pc) {
    const double target = epsilon_Fmax * epsilon_Fmax - 1.0;
    LevelSpectrum s;
    s.source = Source::solver;
    std::string errs[2];
    std::vector<double>* out[2] = {&s.alpha_minus, &s.alpha_plus};
    parallel_for(2, [&](std::size_t k) {
        try {
            QuantumState st;
            st.spin = k ? +1 : -1;
            int count = 4;
            for (;;) {
                *out[k] = solve_level_sequence(field, st, count, config, pc);
                if (out[k]->back() > target) break;
                count += std::max(2, count / 2);
                if (count > config.max_level)
                    throw std::length_error("LevelSpectrum::from_solver: level budget exceeded");
            }
        } catch (const std::exception& e) {
            errs[k] = e.what();
        }
    });
    for (const auto& e : errs)
        if (!e.empty()) throw std::runtime_error(e);
    return s;
}

void LevelSpectrum::validate() const {
    for (const auto* t : {&alpha_minus, &alpha_plus}) {
        if (t->size() < 2)
            throw std::invalid_argument("LevelSpectrum: need at least two levels per spin");
        for (std::size_t i = 1; i < t->size(); ++i)
            if (!((*t)[i] > (*t)[i - 1]))
                throw std::invalid_argument("LevelSpectrum: towers must be strictly increasing");
    }
}

double LevelSpectrum::beta(int spin, int nu) const {
    const auto& t = tower(spin);
    if (nu < 0 || nu + 1 >= (int)t.size())
        throw std::length_error("LevelSpectrum::beta: spectrum too short; request more levels");
    if (nu == 0) return t[1] - t[0]; // virtual level alpha(-1) = 2 alpha(0) - alpha(1)
    return 0.5 * (t[nu + 1] - t[nu - 1]);
}

std::pair<int, int> max_level(const LevelSpectrum& s, double epsilon_F) {
    if (!(epsilon_F >= 1.0)) throw std::invalid_argument("max_level: epsilon_F must be >= 1");
    const double limit = epsilon_F * epsilon_F - 1.0;
    int out[2];
    for (int k = 0; k < 2; ++k) {
        const auto& t = s.tower(k ? +1 : -1);
        if (t.empty() || (t.back() <= limit))
            throw std::length_error("max_level: spectrum too short; request more levels");
        int nu = -1;
        while (nu + 1 < (int)t.size() && t[nu + 1] <= limit) ++nu;
        out[k] = nu;
    }
    return {out[0], out[1]};
}

namespace {

// Common per-level loop: calls fn(beta, alpha, x_F) for every occupied level.
template <typename F>
void sum_levels(const LevelSpectrum& s, double epsilon_F, const F& fn) {
    const auto [num_minus, num_plus] = max_level(s, epsilon_F);
    const double e2 = epsilon_F * epsilon_F;
    for (int k = 0; k < 2; ++k) {
        const int spin = k ? +1 : -1;
        const int top = k ? num_plus : num_minus;
        const auto& t = s.tower(spin);
        for (int nu = 0; nu <= top; ++nu) {
            const double alpha = t[nu];
            const double xf2 = e2 - 1.0 - alpha;
            const double xf = xf2 > 0.0 ? std::sqrt(xf2) : 0.0;
            fn(s.beta(spin, nu), alpha, xf);
        }
    }
}

} // namespace

double number_density(const LevelSpectrum& s, double epsilon_F, const PhysicalConstants& pc) {
    double acc = 0.0;
    sum_levels(s, epsilon_F, [&](double beta, double, double xf) { acc += beta * xf; });
    const double lam = pc.lambda_e_cm();
    const double pref = 1.0 / (4.0 * M_PI * M_PI * lam * lam * lam);
    return pref * acc;
}

std::pair<double, double> energy_and_pressure(const LevelSpectrum& s, double epsilon_F,
                                              const PhysicalConstants& pc) {
    double e_acc = 0.0, p_acc = 0.0;
    sum_levels(s, epsilon_F, [&](double beta, double alpha, double xf) {
        const double om = 1.0 + alpha;
        const double z = xf / std::sqrt(om);
        e_acc += beta * om * f1(z);
        p_acc += beta * om * f2(z);
    });
    const double lam = pc.lambda_e_cm();
    const double pref = pc.me_c2 / (4.0 * M_PI * M_PI * lam * lam * lam);
    return {pref * e_acc, pref * p_acc};
}

std::pair<double, double> chandrasekhar_eos(double x_F, const PhysicalConstants& pc,
                                            double mu_e) {
    if (x_F < 0.0) throw std::invalid_argument("chandrasekhar_eos: x_F must be >= 0");
    const double lam = pc.lambda_e_cm();
    const double n_e = x_F * x_F * x_F / (3.0 * M_PI * M_PI * lam * lam * lam);
    const double rho = n_e * pc.m_p * mu_e;
    const double pref = pc.me_c2 / (M_PI * M_PI * lam * lam * lam);
    double integral; // \int_0^x t^4/sqrt(1+t^2) dt
    if (x_F < 5e-2) {
        const double x2 = x_F * x_F;
        integral = std::pow(x_F, 5) * (0.2 + x2 * (-1.0 / 14.0 + x2 / 24.0));
    } else {
        const double s = std::sqrt(1.0 + x_F * x_F);
        integral = (x_F * (2.0 * x_F * x_F - 3.0) * s + 3.0 * std::asinh(x_F)) / 8.0;
    }
    return {rho, pref * integral / 3.0};
}

double chandrasekhar_energy_density(double x_F, const PhysicalConstants& pc) {
    const double lam = pc.lambda_e_cm();
    const double pref = pc.me_c2 / (M_PI * M_PI * lam * lam * lam);
    double integral; // \int_0^x t^2 sqrt(1+t^2) dt
    if (x_F < 5e-2) {
        const double x2 = x_F * x_F;
        integral = std::pow(x_F, 3) * (1.0 / 3.0 + x2 * (0.1 - x2 / 56.0));
    } else {
        const double s = std::sqrt(1.0 + x_F * x_F);
        integral = (x_F * (2.0 * x_F * x_F + 1.0) * s - std::asinh(x_F)) / 8.0;
    }
    return pref * integral;
}

double chandrasekhar_x_from_pressure(double pressure, const PhysicalConstants& pc) {
    if (pressure < 0.0)
        throw std::invalid_argument("chandrasekhar_x_from_pressure: pressure must be >= 0");
    if (pressure == 0.0) return 0.0;
    // bracket by doubling, then Newton with bisection safeguard
    auto P = [&](double x) { return chandrasekhar_eos(x, pc).second; };
    double lo = 0.0, hi = 1.0;
    while (P(hi) < pressure) {
        hi *= 2.0;
        if (hi > 1e12) throw std::domain_error("chandrasekhar_x_from_pressure: out of range");
    }
    double x = 0.5 * hi;
    for (int it = 0; it < 200; ++it) {
        const double f = P(x) - pressure;
        if (f > 0.0)
            hi = x;
        else
            lo = x;
        const double lam = pc.lambda_e_cm();
        const double dPdx = pc.me_c2 / (M_PI * M_PI * lam * lam * lam) *
                            (x * x * x * x / std::sqrt(1.0 + x * x)) / 3.0;
        double nx = (dPdx > 0.0) ? x - f / dPdx : 0.5 * (lo + hi);
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::abs(nx - x) < 1e-14 * std::max(1.0, x)) return nx;
        x = nx;
    }
    return x;
}

void EosTable::finalize() {
    if (points.size() < 4) throw std::invalid_argument("EosTable: too few points");
    std::vector<double> lr, lp;
    lr.reserve(points.size());
    lp.reserve(points.size());
    for (const auto& p : points) {
        if (!(p.rho_mass > 0.0 && p.pressure > 0.0)) continue;
        const double x = std::log(p.rho_mass), y = std::log(p.pressure);
        if (!lr.empty() && (x <= lr.back() || y <= lp.back())) continue; // enforce monotone
        lr.push_back(x);
        lp.push_back(y);
    }
    if (lr.size() < 4) throw std::runtime_error("EosTable: degenerate table");
    logP_of_logRho_ = PchipInterpolant(lr, lp);
    logRho_of_logP_ = PchipInterpolant(lp, lr);
}

double EosTable::pressure_at_density(double rho_mass) const {
    return std::exp(logP_of_logRho_(std::log(rho_mass)));
}

double EosTable::density_at_pressure(double pressure) const {
    return std::exp(logRho_of_logP_(std::log(pressure)));
}

double EosTable::min_pressure() const { return std::exp(logRho_of_logP_.x_min()); }
double EosTable::max_pressure() const { return std::exp(logRho_of_logP_.x_max()); }

EosTable build_eos_table(const LevelSpectrum& s, double n, double B0, double epsilon_Fmax,
                         int grid_size, double mu_e, bool refine_low_end,
                         const PhysicalConstants& pc) {
    if (!(epsilon_Fmax > 1.0))
        throw std::invalid_argument("build_eos_table: epsilon_Fmax must exceed 1");
    if (grid_size < 16) throw std::invalid_argument("build_eos_table: grid too small");
    s.validate();

    std::vector<double> grid = linspace(1.0 + 1e-9, epsilon_Fmax, grid_size);
    // insert the level-population thresholds (slope kinks) for both spins
    for (const auto* t : {&s.alpha_minus, &s.alpha_plus}) {
        for (double alpha : *t) {
            const double eth = std::sqrt(1.0 + alpha);
            if (eth > 1.0 && eth < epsilon_Fmax) {
                grid.push_back(std::nextafter(eth, 0.0));
                grid.push_back(std::nextafter(eth, epsilon_Fmax));
            }
        }
    }
    if (refine_low_end) {
        for (double d : logspace(1e-8, 0.1 * (epsilon_Fmax - 1.0), 60)) grid.push_back(1.0 + d);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    EosTable table;
    table.n = n;
    table.B0 = B0;
    table.epsilon_Fmax = epsilon_Fmax;
    table.mu_e = mu_e;
    table.points.reserve(grid.size());
    for (double eF : grid) {
        EosPoint p;
        p.epsilon_F = eF;
        p.n_e = number_density(s, eF, pc);
        p.rho_mass = p.n_e * pc.m_p * mu_e;
        std::tie(p.energy_density, p.pressure) = energy_and_pressure(s, eF, pc);
        table.points.push_back(p);
    }
    table.finalize();
    return table;
}

EosTable build_eos_table(const PowerLawField& field, double epsilon_Fmax, int grid_size,
                         const SolverConfig& config, double mu_e, bool refine_low_end,
                         const PhysicalConstants& pc) {
    LevelSpectrum s;
    if (field.n == 0.0) {
        const double b = dimensionless_field(field.B0, pc);
        const double target = epsilon_Fmax * epsilon_Fmax - 1.0;
        const int count = std::max(4, (int)std::ceil(target / (2.0 * b)) + 3);
        s = LevelSpectrum::uniform(b, count);
    } else {
        s = LevelSpectrum::from_solver(field, epsilon_Fmax, config, pc);
    }
    return build_eos_table(s, field.n, field.B0, epsilon_Fmax, grid_size, mu_e,
                           refine_low_end, pc);
}

} // namespace landau
