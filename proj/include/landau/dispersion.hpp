#ifndef LANDAU_DISPERSION_HPP
#define LANDAU_DISPERSION_HPP

#include <vector>

#include "landau/constants.hpp"
#include "landau/spectrum.hpp"

namespace landau {

/// Power-law dispersion constants for one exponent n:
///   alpha'(nu, B0)  = C3 * B0^C4 * (nu + C5)^C6          (spin-free)
///   alpha(nu, B0)   = alpha' ± D1 * B0^D2 * (nu + D3)^D4 (spin shift)
/// with B0 expressed in units of 1e15 G pm^-n. The D-constants obey
/// D1 = C3*C5, D2 = C4, D3 = C5, D4 = C6 - 1 for n >= -0.5.
struct DispersionFit {
    double n = 0.0;
    double C3 = 0, C4 = 0, C5 = 0, C6 = 0;
    double D1 = 0, D2 = 0, D3 = 0, D4 = 0;
    bool has_zeeman_shift = false;
    double rms_residual = 0.0;       // relative rms of the spin-free fit
    double rms_residual_shift = 0.0; // relative rms of the shift fit
    bool valid = false;              // D-relations certified (requires n >= -0.5)
};

struct AlphaSample {
    int nu;
    double B0;    // G pm^-n
    double alpha; // spin-free eigenvalue
};

struct ShiftSample {
    int nu;
    int spin;
    double B0;
    double alpha; // spin-resolved eigenvalue
};

/// Least-squares fit of the spin-free ansatz. Requires samples spanning at
/// least two distinct B0 and six levels; throws on rank-deficient input or a
/// non-convergent iteration. Initial values come from a log-linearization,
/// refined by damped Gauss–Newton over all four constants.
DispersionFit fit_no_zeeman(double n, const std::vector<AlphaSample>& samples);

/// Adds the D-constants by fitting |alpha - alpha'| over spin-resolved
/// samples, then checks the D(C) relations; `valid` is set only for
/// n >= -0.5 with the relations holding.
void fit_zeeman_shift(DispersionFit& fit, const std::vector<ShiftSample>& samples);

/// Closed-form prediction  alpha = C3 B0^{2/(n+2)} (nu+C5)^{(2+2n)/(n+2)}
///                                  * [1 ± C5/(nu+C5)].
double predict_alpha(const DispersionFit& fit, int nu, double B0, int spin);

/// Generates solver samples and runs both fits with the default sampling
/// (nu in [1, nu_max], B0 in {0.5, 1, 2} x 1e15 G pm^-n).
DispersionFit fit_from_solver(double n, int nu_max = 20, bool with_zeeman_shift = false,
                              const SolverConfig& config = {},
                              const PhysicalConstants& pc = default_constants());

} // namespace landau

#endif
