#include "landau/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "landau/util.hpp"

namespace landau {

void QuantumState::validate() const {
    if (spin != 1 && spin != -1)
        throw std::invalid_argument("QuantumState: spin must be +1 or -1");
    if (nu < 0) throw std::invalid_argument("QuantumState: nu must be >= 0");
    if (!include_zeeman && m != 0)
        throw std::invalid_argument("QuantumState: the spin-free spectrum is defined for m = 0");
}

void SolverConfig::validate() const {
    if (!(rho_start > 0.0)) throw std::invalid_argument("SolverConfig: rho_start must be > 0");
    if (!(alpha_tol > 0.0) || !(rk_tolerance > 0.0))
        throw std::invalid_argument("SolverConfig: tolerances must be > 0");
    if (!(outer_radius_rule > 1.0))
        throw std::invalid_argument("SolverConfig: outer_radius_rule must exceed 1");
    if (samples < 64) throw std::invalid_argument("SolverConfig: samples too small");
}

double alpha_uniform_analytic(const QuantumState& state, double b) {
    state.validate();
    if (b < 0.0) throw std::invalid_argument("alpha_uniform_analytic: b must be >= 0");
    if (!state.include_zeeman) return 2.0 * b * (state.nu + 0.5);
    const double m = state.m;
    return 2.0 * b * (state.nu + 0.5 * std::abs(m) - 0.5 * m + 0.5 + 0.5 * state.spin);
}

namespace {

// ---------------------------------------------------------------------------
// Dimensionless radial problem
//
//   alpha R = -[R'' + R'/x - m^2 R / x^2]
//             + [a(x)^2 - 2 m a(x)/x + spin * b(x)] R
//
// with b(x) = b0 (x + x0)^n and a(x) the dimensionless vector potential of
// the softened field, a(x) = (b0/x) * \int_0^x (s + x0)^n s ds. Using the
// gauge-consistent a keeps the spin-down zero mode exact for any softening.
// ---------------------------------------------------------------------------
struct RadialProblem {
    double b0, n, x0;
    int m, spin;
    bool zeeman;

    double bfield(double x) const { return b0 * std::pow(x + x0, n); }

    double gauge_a(double x) const {
        if (x <= 0.0) return 0.0;
        if (x0 == 0.0) return b0 * std::pow(x, n + 1.0) / (n + 2.0);
        if (x < 0.05 * x0) {
            // series of (1/x) int_0^x (s+x0)^n s ds for x << x0
            return b0 * std::pow(x0, n) * (0.5 * x + n * x * x / (3.0 * x0));
        }
        const double u = x + x0;
        const double integral = (std::pow(u, n + 2.0) - std::pow(x0, n + 2.0)) / (n + 2.0) -
                                x0 * (std::pow(u, n + 1.0) - std::pow(x0, n + 1.0)) / (n + 1.0);
        return b0 * integral / x;
    }

    // Potential entering the R equation (centrifugal m^2/x^2 included).
    double potential(double x) const {
        const double a = gauge_a(x);
        double v = a * a;
        if (m != 0) v += double(m) * m / (x * x) - 2.0 * m * a / x;
        if (zeeman) v += spin * bfield(x);
        return v;
    }

    // Scale of the spin-down ground state: where the decay-envelope exponent
    // b0 x^(n+2)/(n+2)^2 reaches unity. Used as a domain floor.
    double ground_scale() const {
        return std::pow((n + 2.0) * (n + 2.0) / b0, 1.0 / (n + 2.0));
    }
};

// Largest root of potential(x) - alpha on a log grid, refined by bisection;
// falls back to the ground-state scale when no crossing exists.
double outer_turning_point(const RadialProblem& p, double alpha) {
    const double xg = p.ground_scale();
    // upper end: invert the confining term a = b0 x^{n+1}/(n+2) at sqrt(alpha)
    const double amag = std::sqrt(std::abs(alpha) + 10.0);
    const double base = (p.n + 2.0) * amag / p.b0;
    double xhi = std::exp(std::min(std::log(1e8), std::log(base) / (p.n + 1.0)));
    xhi = std::max({10.0 * xg, 4.0 * xhi, 1e-3});
    for (int attempt = 0; attempt < 6; ++attempt) {
        const int N = 400;
        const double tlo = std::log(1e-6), thi = std::log(xhi);
        double lo = -1.0, hi = -1.0;
        double prev_x = std::exp(tlo);
        double prev_f = p.potential(prev_x) - alpha;
        for (int i = 1; i < N; ++i) {
            const double x = std::exp(tlo + (thi - tlo) * i / (N - 1));
            const double f = p.potential(x) - alpha;
            if (prev_f <= 0.0 && f > 0.0) {
                lo = prev_x;
                hi = x;
            }
            prev_x = x;
            prev_f = f;
        }
        if (lo < 0.0) {
            if (prev_f <= 0.0) { // scan ended inside the allowed region: extend
                xhi *= 100.0;
                continue;
            }
            return xg; // no classical region at this alpha
        }
        for (int it = 0; it < 80 && (hi - lo) > 1e-12 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            ((p.potential(mid) - alpha) <= 0.0 ? lo : hi) = mid;
        }
        return std::max(0.5 * (lo + hi), xg);
    }
    throw std::runtime_error("outer_turning_point: classical region not bracketed");
}

// ---------------------------------------------------------------------------
// Embedded Cash–Karp RK45 on y = (R, S = dR/dx), with renormalization of the
// exponentially growing solution (scale changes do not affect node counts or
// direction information).
// ---------------------------------------------------------------------------
struct StepperState {
    double x, R, S;
    int nodes = 0;
    int rescales = 0;
};

template <typename Rhs>
void rk45_integrate(const Rhs& rhs, StepperState& st, double x_end, double rtol,
                    double max_step, const std::function<void(const StepperState&)>* observer = nullptr) {
    static constexpr double a2 = 0.2, a3 = 0.3, a4 = 0.6, a5 = 1.0, a6 = 0.875;
    static constexpr double b21 = 0.2;
    static constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    static constexpr double b41 = 0.3, b42 = -0.9, b43 = 1.2;
    static constexpr double b51 = -11.0 / 54.0, b52 = 2.5, b53 = -70.0 / 27.0, b54 = 35.0 / 27.0;
    static constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0, b63 = 575.0 / 13824.0,
                            b64 = 44275.0 / 110592.0, b65 = 253.0 / 4096.0;
    static constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                            c6 = 512.0 / 1771.0;
    static constexpr double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                            d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0, d6 = c6 - 0.25;

    const double dir = (x_end > st.x) ? 1.0 : -1.0;
    double h = dir * std::min(max_step, std::max(1e-4 * std::abs(x_end - st.x), 1e-12));
    const double atol = 1e-30;
    int guard = 0;

    while (dir * (x_end - st.x) > 0.0) {
        if (++guard > 20000000)
            throw std::runtime_error("rk45_integrate: step count exceeded");
        if (dir * (st.x + h - x_end) > 0.0) h = x_end - st.x;

        const double x = st.x, R = st.R, S = st.S;
        double k1R, k1S, k2R, k2S, k3R, k3S, k4R, k4S, k5R, k5S, k6R, k6S;
        rhs(x, R, S, k1R, k1S);
        rhs(x + a2 * h, R + h * b21 * k1R, S + h * b21 * k1S, k2R, k2S);
        rhs(x + a3 * h, R + h * (b31 * k1R + b32 * k2R), S + h * (b31 * k1S + b32 * k2S), k3R, k3S);
        rhs(x + a4 * h, R + h * (b41 * k1R + b42 * k2R + b43 * k3R),
            S + h * (b41 * k1S + b42 * k2S + b43 * k3S), k4R, k4S);
        rhs(x + a5 * h, R + h * (b51 * k1R + b52 * k2R + b53 * k3R + b54 * k4R),
            S + h * (b51 * k1S + b52 * k2S + b53 * k3S + b54 * k4S), k5R, k5S);
        rhs(x + a6 * h, R + h * (b61 * k1R + b62 * k2R + b63 * k3R + b64 * k4R + b65 * k5R),
            S + h * (b61 * k1S + b62 * k2S + b63 * k3S + b64 * k4S + b65 * k5S), k6R, k6S);

        const double R5 = R + h * (c1 * k1R + c3 * k3R + c4 * k4R + c6 * k6R);
        const double S5 = S + h * (c1 * k1S + c3 * k3S + c4 * k4S + c6 * k6S);
        const double errR = h * (d1 * k1R + d3 * k3R + d4 * k4R + d5 * k5R + d6 * k6R);
        const double errS = h * (d1 * k1S + d3 * k3S + d4 * k4S + d5 * k5S + d6 * k6S);

        const double scaleR = atol + rtol * (std::abs(R) + std::abs(h * k1R));
        const double scaleS = atol + rtol * (std::abs(S) + std::abs(h * k1S));
        const double err = std::max(std::abs(errR) / scaleR, std::abs(errS) / scaleS);

        if (err <= 1.0) {
            if (R5 * R < 0.0) ++st.nodes; // accepted step crossed zero
            st.x = x + h;
            st.R = R5;
            st.S = S5;
            if (std::abs(st.R) > 1e120 || std::abs(st.S) > 1e120) {
                st.R *= 1e-120;
                st.S *= 1e-120;
                ++st.rescales;
            }
            if (observer) (*observer)(st);
            const double grow = (err > 1e-12) ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::min(5.0, std::max(0.2, grow));
            if (std::abs(h) > max_step) h = dir * max_step;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.25));
            if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(st.x)))
                throw std::runtime_error("rk45_integrate: step size underflow");
        }
    }
}

struct ShootResult {
    int nodes = 0;       // full-domain node count of the outward solution
    double defect = 0.0; // normalized matching defect at x_m
    double R_m_out = 0.0, S_m_out = 0.0;
};

struct Shooter {
    RadialProblem prob;
    double x_start;
    double rtol;

    std::pair<double, double> initial_conditions() const {
        if (prob.m == 0) return {1.0, 0.0};
        // regular solution ~ x^{|m|}, scaled to R(x_start) = 1
        return {1.0, std::abs(prob.m) / x_start};
    }

    ShootResult shoot(double alpha, double x_match, double x_max) const {
        auto rhs = [&](double x, double R, double S, double& dR, double& dS) {
            dR = S;
            dS = -S / x + (prob.potential(x) - alpha) * R;
        };
        const double max_step = (x_max - x_start) / 16.0;

        StepperState out{x_start, 0.0, 0.0};
        std::tie(out.R, out.S) = initial_conditions();
        rk45_integrate(rhs, out, x_match, rtol, max_step);
        const double Ro = out.R, So = out.S;
        // continue outward for the full-domain node count
        rk45_integrate(rhs, out, x_max, rtol, max_step);

        StepperState in{x_max, 1.0, -prob.gauge_a(x_max)};
        rk45_integrate(rhs, in, x_match, rtol, max_step);

        const double norm_o = std::hypot(Ro, So);
        const double norm_i = std::hypot(in.R, in.S);
        ShootResult res;
        res.nodes = out.nodes;
        res.defect = (So * in.R - Ro * in.S) / (norm_o * norm_i);
        res.R_m_out = Ro;
        res.S_m_out = So;
        return res;
    }
};

struct EigenEstimate {
    double alpha;
    double defect;
    double bracket_lo, bracket_hi;
    bool converged;
    int iterations;
};

// Node-count bisection plus safeguarded false position on the matching
// defect. alpha_seed_lo, if finite, must lie strictly between the previous
// and the requested eigenvalue.
EigenEstimate locate_eigenvalue(const Shooter& sh, int nu, const SolverConfig& cfg,
                                double seed_lo, double seed_hi) {
    const auto eval = [&](double alpha) {
        const double xt = outer_turning_point(sh.prob, alpha);
        const double xm = xt;
        const double xmax = cfg.outer_radius_rule * xt;
        return sh.shoot(alpha, xm, xmax);
    };

    int budget = cfg.max_bisections;
    auto spend = [&](int k = 1) {
        budget -= k;
        return budget >= 0;
    };

    double lo = std::isfinite(seed_lo) ? seed_lo : -0.5;
    ShootResult rlo = eval(lo);
    while (rlo.nodes > nu) {
        // seed overshot (rare); retreat
        lo = (lo < 0.0) ? 2.0 * lo - 1.0 : lo * 0.5 - 1.0;
        if (!spend()) throw ConvergenceError("eigenvalue bracketing failed (low side)", lo, lo);
        rlo = eval(lo);
    }

    double hi = std::isfinite(seed_hi) ? seed_hi : std::max(10.0, 4.0 * sh.prob.b0 * (nu + 2.0));
    if (hi <= lo) hi = lo + std::max(1.0, std::abs(lo));
    ShootResult rhi = eval(hi);
    while (rhi.nodes <= nu) {
        const double width = hi - lo;
        hi += std::max(width, 1.0);
        if (!spend()) throw ConvergenceError("eigenvalue bracketing failed (high side)", lo, hi);
        rhi = eval(hi);
    }

    // Tighten until the bracket contains exactly one eigenvalue.
    while ((rlo.nodes != nu || rhi.nodes != nu + 1) &&
           (hi - lo) > 1e-14 * std::max(1.0, std::abs(hi))) {
        if (!spend())
            throw ConvergenceError("node-count bisection exhausted its budget", lo, hi);
        const double mid = 0.5 * (lo + hi);
        const ShootResult rm = eval(mid);
        if (rm.nodes <= nu) {
            lo = mid;
            rlo = rm;
        } else {
            hi = mid;
            rhi = rm;
        }
    }

    const auto tol = [&](double a) { return cfg.alpha_tol * std::max(1.0, std::abs(a)); };

    // Refine on the defect (Illinois false position) within the certified
    // bracket; fall back to plain bisection if the defect does not bracket.
    double a = lo, b = hi, fa = rlo.defect, fb = rhi.defect;
    if (fa * fb < 0.0) {
        int side = 0;
        double c = a, fc = fa;
        while (spend()) {
            c = (a * fb - b * fa) / (fb - fa);
            if (!(c > a && c < b)) c = 0.5 * (a + b);
            const ShootResult rc = eval(c);
            fc = rc.defect;
            if (std::abs(fc) < 1e-13 || (b - a) < tol(c)) {
                return {c, fc, a, b, true, cfg.max_bisections - budget};
            }
            if (fc * fa < 0.0) {
                b = c;
                fb = fc;
                if (side == -1) fa *= 0.5;
                side = -1;
            } else {
                a = c;
                fa = fc;
                if (side == 1) fb *= 0.5;
                side = 1;
            }
        }
        throw ConvergenceError("defect refinement exhausted its budget", a, b);
    }

    // Defect did not change sign across the bracket (can happen when the
    // eigenvalue sits against one endpoint): bisect nodes down to tolerance.
    while ((b - a) > tol(0.5 * (a + b))) {
        if (!spend()) throw ConvergenceError("fallback bisection exhausted its budget", a, b);
        const double mid = 0.5 * (a + b);
        const ShootResult rm = eval(mid);
        if (rm.nodes <= nu)
            a = mid;
        else
            b = mid;
    }
    const double c = 0.5 * (a + b);
    return {c, eval(c).defect, a, b, true, cfg.max_bisections - budget};
}

// Samples the converged eigenfunction on a uniform grid by re-integrating
// both branches and gluing at the matching point with Hermite interpolation.
void sample_wavefunction(const Shooter& sh, double alpha, const SolverConfig& cfg,
                         double x_match, double x_max, EigenResult& out,
                         const PhysicalConstants& pc) {
    auto rhs = [&](double x, double R, double S, double& dR, double& dS) {
        dR = S;
        dS = -S / x + (sh.prob.potential(x) - alpha) * R;
    };
    const double max_step = (x_max - sh.x_start) / 64.0;

    struct Node {
        double x, R, S;
    };
    std::vector<Node> trace;
    trace.reserve(4096);

    StepperState st{sh.x_start, 0.0, 0.0};
    std::tie(st.R, st.S) = sh.initial_conditions();
    trace.push_back({st.x, st.R, st.S});
    std::function<void(const StepperState&)> record = [&](const StepperState& s) {
        if (s.rescales > 0) return; // outward branch must not need rescaling here
        trace.push_back({s.x, s.R, s.S});
    };
    rk45_integrate(rhs, st, x_match, cfg.rk_tolerance, max_step, &record);
    const double Ro = st.R, So = st.S;
    const std::size_t n_out = trace.size();

    StepperState in{x_max, 1.0, -sh.prob.gauge_a(x_max)};
    std::vector<Node> itrace;
    itrace.push_back({in.x, in.R, in.S});
    std::function<void(const StepperState&)> irecord = [&](const StepperState& s) {
        itrace.push_back({s.x, s.R, s.S});
    };
    // the inward branch grows toward x_match; rescaling events invalidate the
    // recorded prefix, so restart bookkeeping when they occur
    int last_rescales = 0;
    std::function<void(const StepperState&)> irecord2 = [&](const StepperState& s) {
        if (s.rescales != last_rescales) {
            for (auto& nd : itrace) {
                nd.R *= 1e-120;
                nd.S *= 1e-120;
            }
            last_rescales = s.rescales;
        }
        itrace.push_back({s.x, s.R, s.S});
    };
    (void)irecord;
    rk45_integrate(rhs, in, x_match, cfg.rk_tolerance, max_step, &irecord2);

    // glue: scale the inward branch so R is continuous at x_match
    const double Ri = in.R;
    double scale = (std::abs(Ri) > 0.0) ? Ro / Ri : 1.0;
    for (auto& nd : itrace) {
        nd.R *= scale;
        nd.S *= scale;
    }
    std::reverse(itrace.begin(), itrace.end());
    // drop the duplicated matching node
    if (!itrace.empty() && n_out > 0) itrace.erase(itrace.begin());
    trace.insert(trace.end(), itrace.begin(), itrace.end());
    (void)So;

    // cubic Hermite resampling onto a uniform grid
    const int N = cfg.samples;
    out.grid.resize(N);
    out.R.resize(N);
    out.dR.resize(N);
    const double lam = pc.lambda_e_pm;
    const double x_lo = trace.front().x, x_hi = trace.back().x;
    std::size_t seg = 0;
    for (int i = 0; i < N; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / (N - 1);
        while (seg + 2 < trace.size() && trace[seg + 1].x <= x) ++seg;
        const Node& A = trace[seg];
        const Node& B = trace[seg + 1];
        const double h = B.x - A.x;
        double R, S;
        if (h <= 0.0) {
            R = A.R;
            S = A.S;
        } else {
            const double t = (x - A.x) / h;
            const double t2 = t * t, t3 = t2 * t;
            R = (2 * t3 - 3 * t2 + 1) * A.R + (t3 - 2 * t2 + t) * h * A.S +
                (-2 * t3 + 3 * t2) * B.R + (t3 - t2) * h * B.S;
            S = (6 * t2 - 6 * t) / h * A.R + (3 * t2 - 4 * t + 1) * A.S +
                (-6 * t2 + 6 * t) / h * B.R + (3 * t2 - 2 * t) * B.S;
        }
        out.grid[i] = x * lam;   // pm
        out.R[i] = R;
        out.dR[i] = S / lam;     // d/drho
    }

    // normalize: trapezoid of R^2 rho drho = 1
    double norm = 0.0;
    for (int i = 1; i < N; ++i) {
        const double f0 = out.R[i - 1] * out.R[i - 1] * out.grid[i - 1];
        const double f1 = out.R[i] * out.R[i] * out.grid[i];
        norm += 0.5 * (f0 + f1) * (out.grid[i] - out.grid[i - 1]);
    }
    const double s = 1.0 / std::sqrt(norm);
    for (int i = 0; i < N; ++i) {
        out.R[i] *= s;
        out.dR[i] *= s;
    }
}

int count_grid_nodes(const std::vector<double>& R) {
    double peak = 0.0;
    for (double v : R) peak = std::max(peak, std::abs(v));
    const double floor = 1e-9 * peak;
    int nodes = 0;
    double prev = 0.0;
    for (double v : R) {
        if (std::abs(v) < floor) continue;
        if (prev != 0.0 && v * prev < 0.0) ++nodes;
        prev = v;
    }
    return nodes;
}

RadialProblem make_problem(const PowerLawField& field, const QuantumState& state,
                           const PhysicalConstants& pc) {
    RadialProblem p;
    p.b0 = dimensionless_field_scale(field.B0, field.n, pc);
    p.n = field.n;
    p.x0 = field.rho0 / pc.lambda_e_pm;
    p.m = state.m;
    p.spin = state.spin;
    p.zeeman = state.include_zeeman;
    return p;
}

} // namespace

EigenResult solve_eigenvalue(const PowerLawField& field, const QuantumState& state,
                             const SolverConfig& config, const PhysicalConstants& pc) {
    state.validate();
    config.validate();
    if (!field.spectrum_supported())
        throw std::invalid_argument("solve_eigenvalue: n <= -1 is outside the supported range");
    if (state.nu > config.max_level)
        throw std::invalid_argument("solve_eigenvalue: nu exceeds SolverConfig::max_level");

    Shooter sh{make_problem(field, state, pc), config.rho_start / pc.lambda_e_pm,
               config.rk_tolerance};

    const double nan = std::numeric_limits<double>::quiet_NaN();
    EigenEstimate est = locate_eigenvalue(sh, state.nu, config, nan, nan);

    EigenResult out;
    out.state = state;
    out.B0 = field.B0;
    out.n = field.n;
    out.rho0 = field.rho0;
    out.b0 = sh.prob.b0;
    out.alpha = est.alpha;
    out.residual = std::abs(est.defect);
    out.converged = est.converged;

    // Sample the wavefunction, enlarging the domain until the boundary
    // amplitude test passes.
    double rule = config.outer_radius_rule;
    for (int attempt = 0;; ++attempt) {
        const double xt = outer_turning_point(sh.prob, out.alpha);
        sample_wavefunction(sh, out.alpha, config, xt, rule * xt, out, pc);
        double peak = 0.0;
        for (double v : out.R) peak = std::max(peak, std::abs(v));
        if (std::abs(out.R.back()) < config.boundary_amplitude * peak) break;
        if (attempt >= config.max_domain_retries)
            throw ConvergenceError("wavefunction failed the boundary amplitude test",
                                   est.bracket_lo, est.bracket_hi);
        rule *= 1.5;
    }
    out.nodes = count_grid_nodes(out.R);
    if (out.nodes != state.nu) {
        // One retry with a tighter defect acceptance: re-run the refinement
        // seeded by the certified bracket.
        EigenEstimate retry = locate_eigenvalue(sh, state.nu, config, est.bracket_lo,
                                                est.bracket_hi);
        out.alpha = retry.alpha;
        out.residual = std::abs(retry.defect);
        const double xt = outer_turning_point(sh.prob, out.alpha);
        sample_wavefunction(sh, out.alpha, config, xt, rule * xt, out, pc);
        out.nodes = count_grid_nodes(out.R);
        if (out.nodes != state.nu)
            throw ConvergenceError("converged state has the wrong node count",
                                   retry.bracket_lo, retry.bracket_hi);
    }
    return out;
}

std::vector<double> solve_level_sequence(const PowerLawField& field, QuantumState state,
                                         int count, const SolverConfig& config,
                                         const PhysicalConstants& pc) {
    state.validate();
    config.validate();
    if (!field.spectrum_supported())
        throw std::invalid_argument("solve_level_sequence: n <= -1 is outside the supported range");

    Shooter sh{make_problem(field, state, pc), config.rho_start / pc.lambda_e_pm,
               config.rk_tolerance};

    std::vector<double> alphas;
    alphas.reserve(count);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int nu = 0; nu < count; ++nu) {
        double seed_lo = nan, seed_hi = nan;
        if (nu >= 1) {
            const double prev = alphas[nu - 1];
            const double gap = (nu >= 2) ? std::max(prev - alphas[nu - 2], 1.0)
                                         : std::max(prev, 1.0);
            seed_lo = prev + 1e-3 * gap + 1e-9;
            seed_hi = prev + 1.6 * gap;
        }
        EigenEstimate est = locate_eigenvalue(sh, nu, config, seed_lo, seed_hi);
        alphas.push_back(est.alpha);
    }
    return alphas;
}

double wavefunction_overlap(const EigenResult& a, const EigenResult& b, int weight_power) {
    if (a.grid.size() < 2 || b.grid.size() < 2)
        throw std::invalid_argument("wavefunction_overlap: empty result");
    const double lo = std::max(a.grid.front(), b.grid.front());
    const double hi = std::min(a.grid.back(), b.grid.back());
    if (!(hi > lo))
        throw std::invalid_argument("wavefunction_overlap: disjoint domains");

    // fast path: identical grids
    if (a.grid.size() == b.grid.size() && a.grid.front() == b.grid.front() &&
        a.grid.back() == b.grid.back()) {
        double acc = 0.0;
        const auto& g = a.grid;
        auto f = [&](std::size_t i) {
            return a.R[i] * b.R[i] * std::pow(g[i], weight_power);
        };
        for (std::size_t i = 1; i < g.size(); ++i)
            acc += 0.5 * (f(i) + f(i - 1)) * (g[i] - g[i - 1]);
        return acc;
    }

    // resample both onto the finer spacing over the common domain
    const std::size_t N = std::max(a.grid.size(), b.grid.size());
    auto sample = [](const EigenResult& e, double rho) {
        const auto& g = e.grid;
        std::size_t loi = 0, hii = g.size() - 1;
        while (hii - loi > 1) {
            const std::size_t mid = (loi + hii) / 2;
            (g[mid] <= rho ? loi : hii) = mid;
        }
        const double h = g[loi + 1] - g[loi];
        const double t = (rho - g[loi]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * e.R[loi] + (t3 - 2 * t2 + t) * h * e.dR[loi] +
               (-2 * t3 + 3 * t2) * e.R[loi + 1] + (t3 - t2) * h * e.dR[loi + 1];
    };
    double acc = 0.0, prev = 0.0, prev_rho = lo;
    for (std::size_t i = 0; i < N; ++i) {
        const double rho = lo + (hi - lo) * double(i) / double(N - 1);
        const double f = sample(a, rho) * sample(b, rho) * std::pow(rho, weight_power);
        if (i) acc += 0.5 * (f + prev) * (rho - prev_rho);
        prev = f;
        prev_rho = rho;
    }
    return acc;
}

std::vector<double> merged_level_sequence(const PowerLawField& field, int count,
                                          const SolverConfig& config,
                                          const PhysicalConstants& pc) {
    QuantumState down{0, -1, 0, 0.0, true};
    QuantumState up{0, +1, 0, 0.0, true};
    int n_down = count + 1, n_up = count;
    for (;;) {
        std::vector<double> d, u;
        std::exception_ptr err;
        parallel_for(2, [&](std::size_t i) {
            try {
                if (i == 0)
                    d = solve_level_sequence(field, down, n_down, config, pc);
                else
                    u = solve_level_sequence(field, up, n_up, config, pc);
            } catch (...) {
                err = std::current_exception();
            }
        });
        if (err) std::rethrow_exception(err);

        std::vector<double> merged = d;
        merged.insert(merged.end(), u.begin(), u.end());
        std::sort(merged.begin(), merged.end());
        // collapse exact degeneracies (uniform field): relative gap < 1e-5
        std::vector<double> distinct;
        for (double v : merged) {
            if (distinct.empty() ||
                (v - distinct.back()) > 1e-5 * std::max(1.0, std::abs(v)))
                distinct.push_back(v);
        }
        // The first `count` distinct entries are complete only if both towers
        // have been solved beyond the cut.
        if ((int)distinct.size() >= count + 1 &&
            d.back() >= distinct[count] && u.back() >= distinct[count])
            return distinct;
        n_down += 2;
        n_up += 2;
        if (n_down > config.max_level)
            throw ConvergenceError("merged_level_sequence: level budget exceeded", 0, 0);
    }
}

double find_field_for_levels(double n, double epsilon_F, int k, const SolverConfig& config,
                             const PhysicalConstants& pc) {
    if (k < 1) throw std::invalid_argument("find_field_for_levels: k must be >= 1");
    if (!(epsilon_F > 1.0))
        throw std::invalid_argument("find_field_for_levels: epsilon_F must exceed 1");
    const double target = epsilon_F * epsilon_F - 1.0;

    if (n == 0.0) {
        // distinct uniform levels are 2 b j, so the (k+1)-th sits at 2 b k
        return pc.B_crit * target / (2.0 * k);
    }

    double B0 = 1e15;
    const double expo = (n + 2.0) / 2.0; // inverse of the exact alpha ~ B0^(2/(n+2)) scaling
    double alpha_k = 0.0;
    for (int it = 0; it < 12; ++it) {
        const PowerLawField field(B0, n);
        const auto levels = merged_level_sequence(field, k + 1, config, pc);
        alpha_k = levels[k];
        const double ratio = target / alpha_k;
        if (std::abs(ratio - 1.0) < 1e-6) return B0;
        B0 *= std::pow(ratio, expo);
        if (!(B0 > 1e5 && B0 < 1e25))
            throw ConvergenceError("find_field_for_levels: field iteration left the valid range",
                                   B0, B0);
    }
    if (std::abs(target / alpha_k - 1.0) > 1e-3)
        throw ConvergenceError("find_field_for_levels: no convergence", B0, B0);
    return B0;
}

} // namespace landau
