#include "landau/qspeed.hpp"

#include <cmath>
#include <stdexcept>

#include "landau/util.hpp"

namespace landau {

double mt_min_time(double E0_erg, double E1_erg, const PhysicalConstants& pc) {
    const double gap = E1_erg - E0_erg;
    if (!(gap > 0.0))
        throw std::invalid_argument("mt_min_time: levels must be distinct with E1 > E0");
    return M_PI * pc.hbar / gap;
}

namespace {

// Gauge potential a(rho) [dimensionless] reconstructed from the solve's
// field parameters; mirrors the solver's softened, flux-consistent form.
double gauge_a(const EigenResult& e, double rho_pm, const PhysicalConstants& pc) {
    const double x = rho_pm / pc.lambda_e_pm;
    const double x0 = e.rho0 / pc.lambda_e_pm;
    const double n = e.n;
    const double b0 = e.b0;
    if (x <= 0.0) return 0.0;
    if (x0 == 0.0) return b0 * std::pow(x, n + 1.0) / (n + 2.0);
    if (x < 0.05 * x0) return b0 * std::pow(x0, n) * (0.5 * x + n * x * x / (3.0 * x0));
    const double u = x + x0;
    const double integral = (std::pow(u, n + 2.0) - std::pow(x0, n + 2.0)) / (n + 2.0) -
                            x0 * (std::pow(u, n + 1.0) - std::pow(x0, n + 1.0)) / (n + 1.0);
    return b0 * integral / x;
}

void check_normalized(const EigenResult& e) {
    double norm = 0.0;
    for (std::size_t i = 1; i < e.grid.size(); ++i) {
        const double f0 = e.R[i - 1] * e.R[i - 1] * e.grid[i - 1];
        const double f1 = e.R[i] * e.R[i] * e.grid[i];
        norm += 0.5 * (f0 + f1) * (e.grid[i] - e.grid[i - 1]);
    }
    if (std::abs(norm - 1.0) > 1e-3)
        throw std::invalid_argument("radial_displacement: input state is not normalized");
}

} // namespace

double radial_displacement(const EigenResult& psi0, const EigenResult& psi1,
                           const PhysicalConstants& pc) {
    if (psi0.grid.size() < 2 || psi1.grid.size() < 2)
        throw std::invalid_argument("radial_displacement: empty state");
    if (psi0.state.nu == psi1.state.nu && psi0.state.spin == psi1.state.spin &&
        psi0.state.m == psi1.state.m)
        throw std::invalid_argument("radial_displacement: states must be distinct levels");
    check_normalized(psi0);
    check_normalized(psi1);

    const double lam = pc.lambda_e_pm;
    const double eps0 = energy_from_alpha(psi0.alpha, psi0.state.x_z);
    const double eps1 = energy_from_alpha(psi1.alpha, psi1.state.x_z);

    const double lo = std::max(psi0.grid.front(), psi1.grid.front());
    const double hi = std::min(psi0.grid.back(), psi1.grid.back());
    if (!(hi > lo)) throw std::invalid_argument("radial_displacement: disjoint domains");

    auto sample = [&](const EigenResult& e, double rho, double& R, double& dR) {
        const auto& g = e.grid;
        std::size_t a = 0, b = g.size() - 1;
        while (b - a > 1) {
            const std::size_t mid = (a + b) / 2;
            (g[mid] <= rho ? a : b) = mid;
        }
        const double h = g[a + 1] - g[a];
        const double t = (rho - g[a]) / h;
        const double t2 = t * t, t3 = t2 * t;
        R = (2 * t3 - 3 * t2 + 1) * e.R[a] + (t3 - 2 * t2 + t) * h * e.dR[a] +
            (-2 * t3 + 3 * t2) * e.R[a + 1] + (t3 - t2) * h * e.dR[a + 1];
        dR = (6 * t2 - 6 * t) / h * e.R[a] + (3 * t2 - 4 * t + 1) * e.dR[a] +
             (-6 * t2 + 6 * t) / h * e.R[a + 1] + (3 * t2 - 2 * t) * e.dR[a + 1];
    };

    const std::size_t N = std::max(psi0.grid.size(), psi1.grid.size());
    double cross = 0.0, norm0 = 0.0, norm1 = 0.0;
    double pc_cross = 0.0, pc_n0 = 0.0, pc_n1 = 0.0, prev_rho = lo;
    for (std::size_t i = 0; i < N; ++i) {
        const double rho = lo + (hi - lo) * double(i) / double(N - 1);
        double R0, dR0, R1, dR1;
        sample(psi0, rho, R0, dR0);
        sample(psi1, rho, R1, dR1);
        const double a0 = gauge_a(psi0, rho, pc);
        const double a1 = gauge_a(psi1, rho, pc);
        const double g0 = (-lam * dR0 + a0 * R0) / (eps0 + 1.0);
        const double g1 = (-lam * dR1 + a1 * R1) / (eps1 + 1.0);
        const double fc = (R0 * R1 + g0 * g1) * rho * rho;
        const double f0 = (R0 * R0 + g0 * g0) * rho;
        const double f1 = (R1 * R1 + g1 * g1) * rho;
        if (i) {
            const double w = 0.5 * (rho - prev_rho);
            cross += w * (fc + pc_cross);
            norm0 += w * (f0 + pc_n0);
            norm1 += w * (f1 + pc_n1);
        }
        pc_cross = fc;
        pc_n0 = f0;
        pc_n1 = f1;
        prev_rho = rho;
    }
    return 2.0 * std::abs(cross) / std::sqrt(norm0 * norm1);
}

QspeedPoint quantum_speed_point(const PowerLawField& field, const SolverConfig& config,
                                const PhysicalConstants& pc) {
    QuantumState s0{0, +1, 0, 0.0, true};
    QuantumState s1{0, +1, 1, 0.0, true};

    EigenResult psi0, psi1;
    std::string errs[2];
    parallel_for(2, [&](std::size_t i) {
        try {
            if (i == 0)
                psi0 = solve_eigenvalue(field, s0, config, pc);
            else
                psi1 = solve_eigenvalue(field, s1, config, pc);
        } catch (const std::exception& e) {
            errs[i] = e.what();
        }
    });
    for (const auto& e : errs)
        if (!e.empty()) throw std::runtime_error("quantum_speed: " + e);

    const double E0 = pc.me_c2 * energy_from_alpha(psi0.alpha, 0.0);
    const double E1 = pc.me_c2 * energy_from_alpha(psi1.alpha, 0.0);

    QspeedPoint out;
    out.n = field.n;
    out.B0 = field.B0;
    out.alpha0_plus = psi0.alpha;
    out.alpha1_plus = psi1.alpha;
    out.T_min_s = mt_min_time(E0, E1, pc);
    out.rho_disp_pm = radial_displacement(psi0, psi1, pc);
    out.v_over_c = out.rho_disp_pm * 1e-10 / (pc.c_light * out.T_min_s);
    return out;
}

double quantum_speed(const PowerLawField& field, const SolverConfig& config,
                     const PhysicalConstants& pc) {
    return quantum_speed_point(field, config, pc).v_over_c;
}

} // namespace landau
