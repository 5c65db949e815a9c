#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "casimir/numerics/bessel.hpp"
#include "casimir/scattering.hpp"

namespace casimir::scattering {

std::string to_string(Boundary bc)
{
    return bc == Boundary::Dirichlet ? "dirichlet" : "neumann";
}

Boundary boundary_from_string(const std::string& name)
{
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "dirichlet" || s == "d")
        return Boundary::Dirichlet;
    if (s == "neumann" || s == "n")
        return Boundary::Neumann;
    throw std::invalid_argument("unknown boundary condition '" + name + "' (expected dirichlet or neumann)");
}

ScalarSphereT scalar_sphere_t_table(int l_max, double kappa, double radius, Boundary bc)
{
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("sphere T-matrix needs kappa > 0");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("sphere T-matrix needs R > 0");
    if (l_max < 0)
        throw std::invalid_argument("sphere T-matrix needs l_max >= 0");
    const auto tab = numerics::spherical_bessel_table(l_max, kappa * radius);
    ScalarSphereT t;
    t.radius = radius;
    t.bc = bc;
    t.kappa = kappa;
    t.log_abs.resize(static_cast<std::size_t>(l_max) + 1);
    for (int l = 0; l <= l_max; ++l) {
        double v = tab.log_i[l] - tab.log_k[l];
        if (bc == Boundary::Neumann)
            v += std::log(tab.dlog_i[l]) - std::log(-tab.dlog_k[l]);
        t.log_abs[l] = v;
    }
    t.sign = bc == Boundary::Dirichlet ? 1.0 : -1.0;
    return t;
}

double ScalarSphereT::value(int l) const
{
    const double v = log_abs.at(static_cast<std::size_t>(l));
    if (v > 709.0)
        throw std::overflow_error("sphere T-matrix entry exceeds double range");
    return sign * std::exp(v);
}

double scalar_sphere_t(int l, double kappa, double radius, Boundary bc)
{
    if (l < 0)
        throw std::invalid_argument("sphere T-matrix needs l >= 0");
    return scalar_sphere_t_table(l, kappa, radius, bc).value(l);
}

TranslationBlock translation_block(int l_max, int m, double kappa, double d)
{
    if (!(d > 0.0) || !std::isfinite(d))
        throw std::invalid_argument("translation block needs d > 0");
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("translation block needs kappa > 0");
    if (m < 0 || m > l_max)
        throw std::invalid_argument("translation block needs 0 <= m <= l_max");
    if (l_max > GauntTable::kMaxLMax)
        throw std::overflow_error("translation coefficient table supports l_max up to " +
                                  std::to_string(GauntTable::kMaxLMax));
    const GauntTable& table = gaunt_table(l_max);
    const auto tab = numerics::spherical_bessel_table(2 * l_max, kappa * d);
    const int n = l_max - m + 1;
    TranslationBlock b;
    b.m = m;
    b.kappa = kappa;
    b.d = d;
    b.matrix.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int lp = m + i, l = m + j;
            const double* c = table.coefficients(m, lp, l);
            const int lmin = std::abs(l - lp);
            double sum = 0.0;
            for (int q = 0; q < table.count(lp, l); ++q)
                sum += c[q] * std::exp(tab.log_k[lmin + 2 * q]);
            if (!std::isfinite(sum))
                throw std::overflow_error("translation block entry exceeds double range");
            b.matrix(i, j) = sum;
        }
    return b;
}

}  // namespace casimir::scattering
