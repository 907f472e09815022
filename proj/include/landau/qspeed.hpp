#ifndef LANDAU_QSPEED_HPP
#define LANDAU_QSPEED_HPP

#include "landau/constants.hpp"
#include "landau/field.hpp"
#include "landau/spectrum.hpp"

namespace landau {

/// Minimum orthogonal-evolution time pi*hbar/(E1 - E0) [s] for an equal
/// superposition of two levels (Mandelstam–Tamm bound with
/// Delta H = (E1-E0)/2). Energies in erg; rejects a degenerate pair.
double mt_min_time(double E0_erg, double E1_erg,
                   const PhysicalConstants& pc = default_constants());

/// Radial displacement 2|<psi_0| rho |psi_1>| [pm] between two normalized
/// eigenstates of the same (m, spin) tower. The matrix element uses the full
/// four-component structure: upper component R, lower component
/// (-R' + a R)/(epsilon + 1) from the gauge potential a(x); both states must
/// carry the normalization produced by the solver.
double radial_displacement(const EigenResult& psi0, const EigenResult& psi1,
                           const PhysicalConstants& pc = default_constants());

struct QspeedPoint {
    double n = 0.0;
    double B0 = 0.0;
    double alpha0_plus = 0.0;
    double alpha1_plus = 0.0;
    double T_min_s = 0.0;
    double rho_disp_pm = 0.0;
    double v_over_c = 0.0;
};

/// Quantum speed of the spin-up ground -> first-excited transition
/// (m = 0, x_z = 0) for the given field profile.
QspeedPoint quantum_speed_point(const PowerLawField& field, const SolverConfig& config = {},
                                const PhysicalConstants& pc = default_constants());

/// Convenience wrapper returning only v/c.
double quantum_speed(const PowerLawField& field, const SolverConfig& config = {},
                     const PhysicalConstants& pc = default_constants());

} // namespace landau

#endif
