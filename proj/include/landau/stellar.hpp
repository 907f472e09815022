#ifndef LANDAU_STELLAR_HPP
#define LANDAU_STELLAR_HPP

#include <string>
#include <vector>

#include "landau/constants.hpp"
#include "landau/eos.hpp"
#include "landau/field.hpp"

namespace landau {

/// Newtonian magnetostatic equilibrium with a piecewise field profile:
///   d(P_e + B^2/8pi)/dr = -G M (rho_e + rho_B) / r^2
///   dM/dr               = 4 pi r^2 (rho_e + rho_B)
/// with rho_B = B^2/(8 pi c^2). The Landau-quantized EoS applies inside
/// lq_boundary_km when enabled; the zero-field degenerate gas otherwise.
struct StellarConfig {
    double mu_e = 2.0;
    PiecewiseField field = PiecewiseField::uniform(0.0);
    bool include_lorentz = true;
    bool include_rho_B = true;
    bool include_LQ = false;
    double lq_boundary_km = 850.0;
    const EosTable* lq_table = nullptr; // required when include_LQ is set

    /// Continuity rule where the field profile jumps. The field's own
    /// break-point force (a surface-current delta) is not integrated:
    /// electron pressure is carried continuously across breaks by default.
    /// The total-pressure variant transfers the full B^2/8pi jump into P_e.
    enum class BreakRule { electron_pressure, total_pressure } break_rule =
        BreakRule::electron_pressure;

    double step_km = 0.5;
    double surface_pressure_floor = 1e-10; // fraction of the central pressure
    double seed_radius_km = 1e-4;
    double max_radius_km = 5e4; // abort unbound (magnetically inflated) envelopes

    void validate() const;
};

struct StarModel {
    double rho_c = 0.0; // central electron mass density [g cm^-3]
    std::vector<double> r_km, M_g, P_cgs, rho_cgs, B_G;
    double radius_km = 0.0;
    double mass_g = 0.0;
    bool ok = false;
    std::string error;
};

/// Right-hand side (dP_e/dr, dM/dr) in cgs (r in cm); exposed for testing.
std::pair<double, double> hydrostatic_rhs(double r_cm, double P_e, double M_g,
                                          const StellarConfig& config,
                                          const PhysicalConstants& pc = default_constants());

StarModel integrate_star(double rho_c, const StellarConfig& config,
                         const PhysicalConstants& pc = default_constants());

struct CurvePoint {
    double rho_c = 0.0;
    double mass_solar = 0.0;
    double radius_km = 0.0;
    bool ok = false;
    std::string error;
};

/// One integration per central density; failures are recorded per point and
/// the curve continues.
std::vector<CurvePoint> mass_radius_curve(const std::vector<double>& rho_c_grid,
                                          const StellarConfig& config,
                                          const PhysicalConstants& pc = default_constants());

} // namespace landau

#endif
