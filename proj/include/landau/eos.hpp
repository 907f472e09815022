#ifndef LANDAU_EOS_HPP
#define LANDAU_EOS_HPP

#include <utility>
#include <vector>

#include "landau/constants.hpp"
#include "landau/field.hpp"
#include "landau/spectrum.hpp"
#include "landau/util.hpp"

namespace landau {

/// f1(z) = (z sqrt(1+z^2) + asinh z)/2,  f2(z) = (z sqrt(1+z^2) - asinh z)/2.
/// f2 switches to its series for small z to avoid cancellation.
double f1(double z);
double f2(double z);

/// Spin-resolved level spectrum alpha_-(nu), alpha_+(nu) feeding the EoS
/// sums. Arrays must extend one level past the highest occupied one so the
/// central-difference level width is defined everywhere.
struct LevelSpectrum {
    std::vector<double> alpha_minus;
    std::vector<double> alpha_plus;
    enum class Source { analytic, solver, dispersion_fit } source = Source::analytic;

    /// Uniform-field closed form: alpha_- = 2 b nu, alpha_+ = 2 b (nu+1).
    static LevelSpectrum uniform(double b, int count);

    /// Solver-backed spectrum for a power-law field, deep enough for
    /// epsilon_Fmax (one spare level included).
    static LevelSpectrum from_solver(const PowerLawField& field, double epsilon_Fmax,
                                     const SolverConfig& config = {},
                                     const PhysicalConstants& pc = default_constants());

    /// Level width beta(nu) = (alpha(nu+1) - alpha(nu-1))/2, with the virtual
    /// level alpha(-1) := 2 alpha(0) - alpha(1) closing the ladder at nu = 0.
    double beta(int spin, int nu) const;

    const std::vector<double>& tower(int spin) const {
        return spin > 0 ? alpha_plus : alpha_minus;
    }

    void validate() const;
};

/// Largest occupied level per spin: max { nu : alpha(nu) <= eps_F^2 - 1 }.
/// Returns -1 for a spin whose ground level is already above the threshold.
/// Throws std::length_error if the spectrum is too short to decide.
std::pair<int, int> max_level(const LevelSpectrum& s, double epsilon_F);

/// Electron number density [cm^-3] at Fermi energy epsilon_F.
double number_density(const LevelSpectrum& s, double epsilon_F,
                      const PhysicalConstants& pc = default_constants());

/// (energy density, pressure) [erg cm^-3]; energy includes rest mass.
std::pair<double, double> energy_and_pressure(const LevelSpectrum& s, double epsilon_F,
                                              const PhysicalConstants& pc = default_constants());

struct EosPoint {
    double epsilon_F;
    double n_e;            // cm^-3
    double rho_mass;       // g cm^-3 (= n_e m_p mu_e)
    double energy_density; // erg cm^-3
    double pressure;       // erg cm^-3
};

class EosTable {
  public:
    double n = 0.0;
    double B0 = 0.0;
    double epsilon_Fmax = 0.0;
    double mu_e = 2.0;
    std::vector<EosPoint> points;

    /// Builds the monotone log-log interpolants; call after filling points.
    void finalize();

    double pressure_at_density(double rho_mass) const;
    double density_at_pressure(double pressure) const;
    double min_pressure() const;
    double max_pressure() const;

  private:
    PchipInterpolant logP_of_logRho_, logRho_of_logP_;
};

/// Zero-field (Chandrasekhar) fully degenerate electron gas at dimensionless
/// Fermi momentum x_F: returns (rho_mass, pressure) with mu_e mass loading.
std::pair<double, double> chandrasekhar_eos(double x_F,
                                            const PhysicalConstants& pc = default_constants(),
                                            double mu_e = 2.0);
double chandrasekhar_energy_density(double x_F,
                                    const PhysicalConstants& pc = default_constants());
/// Inverts pressure -> x_F (monotone Newton + bisection safeguard).
double chandrasekhar_x_from_pressure(double pressure,
                                     const PhysicalConstants& pc = default_constants());

/// Table over epsilon_F in (1, epsilon_Fmax]: uniform grid plus points
/// inserted at every level-population threshold sqrt(1 + alpha). When
/// refine_low_end is set, additional log-spaced points resolve the
/// epsilon_F -> 1 corner (needed by stellar envelopes).
EosTable build_eos_table(const LevelSpectrum& s, double n, double B0, double epsilon_Fmax,
                         int grid_size, double mu_e = 2.0, bool refine_low_end = false,
                         const PhysicalConstants& pc = default_constants());

/// Convenience: spectrum from the analytic form (n = 0) or the solver.
EosTable build_eos_table(const PowerLawField& field, double epsilon_Fmax, int grid_size,
                         const SolverConfig& config = {}, double mu_e = 2.0,
                         bool refine_low_end = false,
                         const PhysicalConstants& pc = default_constants());

} // namespace landau

#endif
