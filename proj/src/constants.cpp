#include "landau/constants.hpp"

#include <cmath>

namespace landau {

void PhysicalConstants::validate() const {
    const double vals[] = {lambda_e_pm, B_crit,  me_c2, m_p,
                           G_newton,    M_sun,   hbar,  c_light,
                           pressure_unit, density_unit};
    for (double v : vals) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("PhysicalConstants: all fields must be positive and finite");
    }
}

const PhysicalConstants& default_constants() {
    static const PhysicalConstants pc{};
    return pc;
}

double dimensionless_field(double B_gauss, const PhysicalConstants& pc) {
    if (B_gauss < 0.0)
        throw std::invalid_argument("dimensionless_field: B must be non-negative");
    return B_gauss / pc.B_crit;
}

double dimensionless_field_scale(double B0, double n, const PhysicalConstants& pc) {
    if (B0 < 0.0)
        throw std::invalid_argument("dimensionless_field_scale: B0 must be non-negative");
    return B0 * std::pow(pc.lambda_e_pm, n) / pc.B_crit;
}

double energy_from_alpha(double alpha, double x_z) {
    const double radicand = 1.0 + x_z * x_z + alpha;
    if (radicand < 0.0)
        throw std::domain_error("energy_from_alpha: 1 + x_z^2 + alpha < 0 is nonphysical");
    return std::sqrt(radicand);
}

} // namespace landau
