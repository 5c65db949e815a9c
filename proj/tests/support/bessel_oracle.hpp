#pragma once

// Extended-precision reference values for the modified spherical Bessel
// functions. Test-only: the library itself never uses multiprecision.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/constants/constants.hpp>

namespace oracle {

using mp = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<60>>;

/// i_l(x) = x^l / (2l+1)!! * sum_k (x^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1)); every term positive.
inline mp spherical_i(int l, const mp& x)
{
    mp prefactor = 1;
    for (int j = 1; j <= l; ++j)
        prefactor *= x / (2 * j + 1);
    const mp half_x2 = x * x / 2;
    mp term = 1, sum = 1;
    for (int k = 1; k < 100000; ++k) {
        term *= half_x2 / (k * mp(2 * l + 2 * k + 1));
        sum += term;
        if (term < sum * mp("1e-62"))
            break;
    }
    return prefactor * sum;
}

/// k_l(x) = (pi/2) e^{-x}/x * sum_{j<=l} (l+j)! / (j! (l-j)!) (2x)^{-j}; finite, positive.
inline mp spherical_k(int l, const mp& x)
{
    using boost::multiprecision::exp;
    mp sum = 0, coef = 1;  // coef = (l+j)!/(j!(l-j)!) / (2x)^j
    for (int j = 0; j <= l; ++j) {
        if (j > 0)
            coef *= mp(l + j) * (l - j + 1) / (j * 2 * x);
        sum += coef;
    }
    return boost::math::constants::half_pi<mp>() * exp(-x) / x * sum;
}

}  // namespace oracle
