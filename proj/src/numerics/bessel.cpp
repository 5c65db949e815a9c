#include "casimir/numerics/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "casimir/constants.hpp"

namespace casimir::numerics {

namespace {

constexpr int kMaxOrder = 4096;

void check_args(int l, double x, const char* who)
{
    if (l < 0 || l > kMaxOrder)
        throw std::domain_error(std::string(who) + ": order out of range");
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error(std::string(who) + ": argument must be positive and finite");
}

double log_i0(double x) { return x + std::log(-std::expm1(-2.0 * x) / (2.0 * x)); }

double log_k0(double x) { return std::log(pi / 2.0) - x - std::log(x); }

// ratios r[n] = i_n / i_{n-1} for n = 1..n_top, by backward recurrence
// 1 / r_n = (2n+1)/x + r_{n+1}, started well above both n_top and x.
std::vector<double> i_ratios(int n_top, double x)
{
    std::vector<double> r(static_cast<std::size_t>(n_top) + 1, 0.0);
    const int start = n_top + 30 + static_cast<int>(std::ceil(x));
    const double nu = start + 1.5;
    double next = x / (nu + std::sqrt(nu * nu + x * x));
    for (int n = start; n >= 1; --n) {
        const double cur = 1.0 / ((2.0 * n + 1.0) / x + next);
        if (n <= n_top)
            r[n] = cur;
        next = cur;
    }
    return r;
}

double to_value(double log_value, const char* who)
{
    if (log_value > std::log(std::numeric_limits<double>::max()))
        throw std::overflow_error(std::string(who) + ": result overflows double precision");
    return std::exp(log_value);
}

}  // namespace

SphericalBesselTable spherical_bessel_table(int l_max, double x)
{
    check_args(l_max, x, "spherical_bessel_table");
    SphericalBesselTable t;
    t.x = x;
    const auto n = static_cast<std::size_t>(l_max) + 1;
    t.log_i.resize(n);
    t.log_k.resize(n);
    t.dlog_i.resize(n);
    t.dlog_k.resize(n);

    const auto r = i_ratios(l_max + 1, x);
    t.log_i[0] = log_i0(x);
    for (int l = 1; l <= l_max; ++l)
        t.log_i[l] = t.log_i[l - 1] + std::log(r[l]);
    for (int l = 0; l <= l_max; ++l)
        t.dlog_i[l] = r[l + 1] + l / x;

    // rho_l = k_l / k_{l-1}; rho_1 = 1 + 1/x, rho_{l+1} = (2l+1)/x + 1/rho_l
    t.log_k[0] = log_k0(x);
    double rho = 1.0 + 1.0 / x;
    t.dlog_k[0] = -rho;
    for (int l = 1; l <= l_max; ++l) {
        t.log_k[l] = t.log_k[l - 1] + std::log(rho);
        t.dlog_k[l] = -(1.0 / rho + (l + 1.0) / x);
        rho = (2.0 * l + 1.0) / x + 1.0 / rho;
    }
    return t;
}

double log_modified_spherical_i(int l, double x)
{
    check_args(l, x, "log_modified_spherical_i");
    if (l == 0)
        return log_i0(x);
    const auto r = i_ratios(l, x);
    double s = log_i0(x);
    for (int n = 1; n <= l; ++n)
        s += std::log(r[n]);
    return s;
}

double log_modified_spherical_k(int l, double x)
{
    check_args(l, x, "log_modified_spherical_k");
    double s = log_k0(x);
    double rho = 1.0 + 1.0 / x;
    for (int n = 1; n <= l; ++n) {
        s += std::log(rho);
        rho = (2.0 * n + 1.0) / x + 1.0 / rho;
    }
    return s;
}

double modified_spherical_i(int l, double x)
{
    return to_value(log_modified_spherical_i(l, x), "modified_spherical_i");
}

double modified_spherical_k(int l, double x)
{
    return to_value(log_modified_spherical_k(l, x), "modified_spherical_k");
}

double modified_spherical_i_prime(int l, double x)
{
    const auto t = spherical_bessel_table(l, x);
    return to_value(t.log_i[l], "modified_spherical_i_prime") * t.dlog_i[l];
}

double modified_spherical_k_prime(int l, double x)
{
    const auto t = spherical_bessel_table(l, x);
    return to_value(t.log_k[l], "modified_spherical_k_prime") * t.dlog_k[l];
}

}  // namespace casimir::numerics
