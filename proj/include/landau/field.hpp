#ifndef LANDAU_FIELD_HPP
#define LANDAU_FIELD_HPP

#include <limits>
#include <vector>

#include "landau/constants.hpp"

namespace landau {

/// Quantum-scale power-law field B = B0 * (rho + rho0)^n ẑ, with rho in pm
/// and B0 in G pm^-n (so |B| = B0 at rho = 1 pm when rho0 = 0). The softening
/// length rho0 caps the on-axis divergence for n < 0.
///
/// Profiles with n <= -1 may be constructed for effective-potential studies;
/// the eigensolver rejects them (no normalizable bound states there).
struct PowerLawField {
    double B0;
    double n;
    double rho0 = 1e-5; // pm

    PowerLawField(double B0_, double n_, double rho0_ = 1e-5);

    /// Field magnitude [G] at radius rho [pm].
    double field_at(double rho_pm) const;

    bool spectrum_supported() const { return n > -1.0; }
};

/// Effective one-dimensional potential seen by the substituted radial
/// function u = R*sqrt(rho), in units of the eigenvalue alpha:
///   V = -[1/(4x^2) - m^2/x^2] + (b(x)*x/(n+2))^2 + b(x)*(-2m/(n+2) + spin)
/// with x = rho/lambda_e and b(x) the dimensionless softened field.
double effective_potential(const PowerLawField& f, int m, int spin, double rho_pm,
                           const PhysicalConstants& pc = default_constants());

/// Stellar-scale piecewise power-law field: segment i applies on
/// [r_upper(i-1), r_upper(i)) with B(r) = B0 * (r / 1 km)^n, purely
/// theta-directed so magnetic tension vanishes. Written exactly as given
/// (discontinuous at breaks) unless continuity_rescaled is set, which
/// renormalizes each outer segment to match the inner value at its break.
struct PiecewiseField {
    struct Segment {
        double r_upper_km; // exclusive upper bound; infinity for the last
        double n;
        double B0; // G km^-n
    };
    std::vector<Segment> segments;
    bool continuity_rescaled = false;

    PiecewiseField() = default;
    explicit PiecewiseField(std::vector<Segment> segs, bool rescale = false);

    /// Field magnitude [G] at radius r [km].
    double field_at(double r_km) const;

    /// Analytic dB/dr [G/km] inside the segment containing r (zero for
    /// constant segments; the break-point deltas are not represented here).
    double dBdr(double r_km) const;

    /// Radii of the interior segment breaks [km].
    std::vector<double> break_radii() const;

    /// The white-dwarf sample profile: constant B0 inside 850 km, then
    /// (r/1km)^-0.37 out to 900 km, then (r/1km)^-0.99.
    static PiecewiseField stellar_sample(double B0, bool rescale = false);

    /// Single unbounded constant segment.
    static PiecewiseField uniform(double B0);

  private:
    double segment_scale(std::size_t i) const;
    std::size_t segment_index(double r_km) const;
    mutable std::vector<double> scale_cache_;
};

} // namespace landau

#endif
