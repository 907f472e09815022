#ifndef LANDAU_SPECTRUM_HPP
#define LANDAU_SPECTRUM_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "landau/constants.hpp"
#include "landau/field.hpp"

namespace landau {

/// Identifies one radial eigenstate.
struct QuantumState {
    int m = 0;              // azimuthal quantum number
    int spin = -1;          // sign of the sigma.B coupling, +1 or -1
    int nu = 0;             // level index (node count of the radial function)
    double x_z = 0.0;       // dimensionless axial momentum
    bool include_zeeman = true; // false reproduces the spin-free alpha' spectra (m = 0)

    void validate() const;
};

struct SolverConfig {
    double rho_start = 1e-10;     // inner start [pm]
    double alpha_tol = 1e-6;      // relative eigenvalue tolerance
    int max_bisections = 240;     // iteration cap for bracketing + refinement
    double rk_tolerance = 1e-9;   // local relative error of the ODE steps
    double outer_radius_rule = 3.0; // domain = rule x outermost classical turning point
    int max_level = 200;
    int samples = 4001;           // stored wavefunction samples (uniform grid)
    double boundary_amplitude = 1e-6; // required |R(outer)| / max|R|
    int max_domain_retries = 8;

    void validate() const;
};

/// Converged eigensolution. The wavefunction is sampled on a uniform radial
/// grid [pm] and normalized so that the trapezoidal quadrature of R^2 rho drho
/// equals 1; dR carries dR/drho on the same grid.
struct EigenResult {
    double alpha = 0.0;
    int nodes = 0;
    std::vector<double> grid; // rho [pm]
    std::vector<double> R;
    std::vector<double> dR;
    double residual = 0.0; // matching defect at the accepted alpha
    bool converged = false;

    // Provenance of the solve (used by overlap/displacement consumers).
    QuantumState state;
    double B0 = 0.0, n = 0.0, rho0 = 0.0; // field parameters [G pm^-n, -, pm]
    double b0 = 0.0;                      // dimensionless field scale at x = 1
};

/// Thrown when the eigenvalue iteration fails; carries the final bracket.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
    double bracket_lo, bracket_hi;
};

/// Uniform-field eigenvalues in closed form:
///   with Zeeman: alpha = 2 b (nu + |m|/2 - m/2 + 1/2 + spin/2)
///   without   : alpha' = 2 b (nu + 1/2)           (m = 0 only)
double alpha_uniform_analytic(const QuantumState& state, double b);

/// Shooting-and-matching eigensolve of the radial problem for a power-law
/// field. Integrates outward from rho_start (R = 1, R' = 0 for m = 0) and
/// inward from the truncated outer boundary along the decay envelope,
/// matching logarithmic derivatives at the outermost classical turning
/// point. The eigenvalue is located by full-domain node-count bisection and
/// refined by safeguarded false position on the matching defect.
EigenResult solve_eigenvalue(const PowerLawField& field, const QuantumState& state,
                             const SolverConfig& config = {},
                             const PhysicalConstants& pc = default_constants());

/// Weighted radial inner product  ∫ R_a R_b rho^w drho  [pm^(w-1)].
/// Results on different grids are resampled onto the common domain.
double wavefunction_overlap(const EigenResult& a, const EigenResult& b, int weight_power);

/// Solves consecutive levels nu = 0..count-1 of one (m, spin) tower, reusing
/// each converged eigenvalue to bracket the next.
std::vector<double> solve_level_sequence(const PowerLawField& field, QuantumState state,
                                         int count, const SolverConfig& config = {},
                                         const PhysicalConstants& pc = default_constants());

/// Merged (both-spin, m = 0) spectrum sorted ascending, with degenerate pairs
/// collapsed. Entries are produced until at least `count` distinct levels are
/// known to be complete.
std::vector<double> merged_level_sequence(const PowerLawField& field, int count,
                                          const SolverConfig& config = {},
                                          const PhysicalConstants& pc = default_constants());

/// Finds B0 [G pm^-n] such that exactly k merged levels lie below
/// epsilon_F^2 - 1 with the (k+1)-th at the threshold. Uses the exact
/// B0^(2/(n+2)) eigenvalue scaling as the outer iteration, with a bisection
/// fallback; throws ConvergenceError if no bracket exists in range.
double find_field_for_levels(double n, double epsilon_F, int k,
                             const SolverConfig& config = {},
                             const PhysicalConstants& pc = default_constants());

} // namespace landau

#endif
