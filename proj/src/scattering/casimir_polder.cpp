#include <cmath>
#include <stdexcept>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/numerics/quadrature.hpp"
#include "casimir/scattering.hpp"

namespace casimir::scattering {

void validate(const DipolePair& pair)
{
    if (!(pair.alpha_1 >= 0.0) || !(pair.alpha_2 >= 0.0) || !std::isfinite(pair.alpha_1) ||
        !std::isfinite(pair.alpha_2))
        throw std::invalid_argument("polarizabilities must be finite and non-negative");
    if (!(pair.d > 0.0) || !std::isfinite(pair.d))
        throw std::invalid_argument("dipole separation must be positive");
}

std::vector<std::string> dipole_warnings(const DipolePair& pair)
{
    std::vector<std::string> w;
    const double d3 = pair.d * pair.d * pair.d;
    if (pair.alpha_1 > 0.01 * d3 || pair.alpha_2 > 0.01 * d3)
        w.emplace_back("polarizability above 0.01 d^3: the dipole approximation is doubtful");
    return w;
}

double casimir_polder_energy(const DipolePair& pair)
{
    validate(pair);
    const double d = pair.d;
    return -(23.0 / (4.0 * pi)) * pair.alpha_1 * pair.alpha_2 / std::pow(d, 7);
}

double casimir_polder_integrand(double u)
{
    return (3.0 + u * (6.0 + u * (5.0 + u * (2.0 + u)))) * std::exp(-2.0 * u);
}

CasimirPolderQuadrature casimir_polder_quadrature(const DipolePair& pair, double rel_tol)
{
    validate(pair);
    numerics::QuadratureOptions q;
    q.rel_tol = rel_tol;
    q.scale = 1.0;
    const auto r = numerics::integrate_semiinfinite(casimir_polder_integrand, q);
    const double d = pair.d;
    const double pre = -(1.0 / (pi * d)) * (pair.alpha_1 / (d * d * d)) * (pair.alpha_2 / (d * d * d));
    CasimirPolderQuadrature out;
    out.integral = r.value;
    out.energy = pre * r.value;
    out.error_estimate = std::abs(pre) * r.error_estimate;
    out.converged = r.converged;
    return out;
}

}  // namespace casimir::scattering
