#pragma once

// Modified spherical Bessel functions of real argument.
//
// Convention used throughout the library:
//   i_l(x) = sqrt(pi / 2x) I_{l+1/2}(x)      so that i_0(x) = sinh(x) / x
//   k_l(x) = sqrt(pi / 2x) K_{l+1/2}(x)      so that k_0(x) = (pi/2) e^{-x} / x
// With this choice i_l k_l' - i_l' k_l = -(pi/2) / x^2.
//
// i_l is evaluated from ratios i_l / i_{l-1} obtained by Miller's backward
// recurrence, k_l by upward recurrence; both are carried in log form so very
// large orders and arguments stay representable.

#include <vector>

namespace casimir::numerics {

double modified_spherical_i(int l, double x);
double modified_spherical_k(int l, double x);

/// Derivatives with respect to x.
double modified_spherical_i_prime(int l, double x);
double modified_spherical_k_prime(int l, double x);

/// log i_l(x) and log k_l(x); valid where the plain values over- or underflow.
double log_modified_spherical_i(int l, double x);
double log_modified_spherical_k(int l, double x);

/// Orders 0..l_max at one argument, in log form plus logarithmic derivatives.
struct SphericalBesselTable {
    double x = 0.0;
    std::vector<double> log_i;   ///< log i_l(x)
    std::vector<double> log_k;   ///< log k_l(x)
    std::vector<double> dlog_i;  ///< i_l'(x) / i_l(x)  (> 0)
    std::vector<double> dlog_k;  ///< k_l'(x) / k_l(x)  (< 0)

    int l_max() const { return static_cast<int>(log_i.size()) - 1; }
};

SphericalBesselTable spherical_bessel_table(int l_max, double x);

}  // namespace casimir::numerics
