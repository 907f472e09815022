#include "landau/field.hpp"

#include <cmath>
#include <stdexcept>

namespace landau {

PowerLawField::PowerLawField(double B0_, double n_, double rho0_)
    : B0(B0_), n(n_), rho0(rho0_) {
    if (!(B0 > 0.0)) throw std::invalid_argument("PowerLawField: B0 must be positive");
    if (rho0 < 0.0) throw std::invalid_argument("PowerLawField: rho0 must be non-negative");
    if (!std::isfinite(n)) throw std::invalid_argument("PowerLawField: n must be finite");
}

double PowerLawField::field_at(double rho_pm) const {
    if (rho_pm < 0.0) throw std::invalid_argument("PowerLawField::field_at: rho must be >= 0");
    return B0 * std::pow(rho_pm + rho0, n);
}

double effective_potential(const PowerLawField& f, int m, int spin, double rho_pm,
                           const PhysicalConstants& pc) {
    if (!(rho_pm > 0.0))
        throw std::invalid_argument("effective_potential: rho must be positive (singular at 0)");
    if (spin != 1 && spin != -1)
        throw std::invalid_argument("effective_potential: spin must be +1 or -1");
    const double x = rho_pm / pc.lambda_e_pm;
    const double x0 = f.rho0 / pc.lambda_e_pm;
    const double b0 = dimensionless_field_scale(f.B0, f.n, pc);
    const double b = b0 * std::pow(x + x0, f.n);
    const double a = b * x / (f.n + 2.0);
    const double centrifugal = -(0.25 - double(m) * m) / (x * x);
    return centrifugal + a * a + b * (-2.0 * m / (f.n + 2.0) + spin);
}

PiecewiseField::PiecewiseField(std::vector<Segment> segs, bool rescale)
    : segments(std::move(segs)), continuity_rescaled(rescale) {
    if (segments.empty())
        throw std::invalid_argument("PiecewiseField: need at least one segment");
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        if (!(segments[i].r_upper_km < segments[i + 1].r_upper_km))
            throw std::invalid_argument("PiecewiseField: segments must have increasing r_upper");
    }
    if (std::isfinite(segments.back().r_upper_km))
        throw std::invalid_argument("PiecewiseField: last segment must be unbounded");
    for (const auto& s : segments)
        if (s.B0 < 0.0) throw std::invalid_argument("PiecewiseField: B0 must be >= 0");
}

std::size_t PiecewiseField::segment_index(double r_km) const {
    std::size_t i = 0;
    while (i + 1 < segments.size() && r_km >= segments[i].r_upper_km) ++i;
    return i;
}

double PiecewiseField::segment_scale(std::size_t i) const {
    if (!continuity_rescaled) return 1.0;
    if (scale_cache_.size() != segments.size()) {
        scale_cache_.assign(segments.size(), 1.0);
        for (std::size_t k = 1; k < segments.size(); ++k) {
            const double rb = segments[k - 1].r_upper_km;
            const double inner = scale_cache_[k - 1] * segments[k - 1].B0 *
                                 std::pow(rb, segments[k - 1].n);
            const double outer = segments[k].B0 * std::pow(rb, segments[k].n);
            scale_cache_[k] = outer > 0.0 ? inner / outer : 1.0;
        }
    }
    return scale_cache_[i];
}

double PiecewiseField::field_at(double r_km) const {
    if (r_km < 0.0) throw std::invalid_argument("PiecewiseField::field_at: r must be >= 0");
    const std::size_t i = segment_index(r_km);
    const auto& s = segments[i];
    if (s.n == 0.0) return segment_scale(i) * s.B0;
    return segment_scale(i) * s.B0 * std::pow(r_km, s.n);
}

double PiecewiseField::dBdr(double r_km) const {
    const std::size_t i = segment_index(r_km);
    const auto& s = segments[i];
    if (s.n == 0.0 || r_km <= 0.0) return 0.0;
    return s.n * field_at(r_km) / r_km;
}

std::vector<double> PiecewiseField::break_radii() const {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < segments.size(); ++i)
        out.push_back(segments[i].r_upper_km);
    return out;
}

PiecewiseField PiecewiseField::stellar_sample(double B0, bool rescale) {
    const double inf = std::numeric_limits<double>::infinity();
    return PiecewiseField({{850.0, 0.0, B0}, {900.0, -0.37, B0}, {inf, -0.99, B0}}, rescale);
}

PiecewiseField PiecewiseField::uniform(double B0) {
    const double inf = std::numeric_limits<double>::infinity();
    if (B0 == 0.0) {
        PiecewiseField f;
        f.segments = {{inf, 0.0, 0.0}};
        return f;
    }
    return PiecewiseField({{inf, 0.0, B0}});
}

} // namespace landau
