#pragma once

// Wigner 3j symbols of the form (l1 l2 L; m -m 0) for every L at once, and the
// read-only coefficient table used by the spherical-wave translation blocks.

#include <cstddef>
#include <vector>

namespace casimir::scattering {

/// Values of (l1 l2 L; m -m 0) for L = |l1 - l2| .. l1 + l2 (index L - |l1 - l2|).
/// Computed by the three-term recursion in L, run forward from the lower end
/// while the solution grows and backward from the upper end for the rest,
/// then normalized by sum_L (2L+1) f_L^2 = 1 with the sign of the L = l1 + l2
/// value equal to (-1)^(l1 - l2). Requires |m| <= min(l1, l2).
std::vector<double> wigner3j_m_minus_m(int l1, int l2, int m);

/// Coefficients of the scalar translation block for azimuthal index m:
///   U^m_{l' l} = sum_L c^m_{l' l L} k_L(kappa d)
///   c^m_{l' l L} = (-1)^(l' + m) (2L + 1) sqrt((2l + 1)(2l' + 1)) (l l' L; 0 0 0) (l l' L; m -m 0)
/// over L = |l - l'|, |l - l'| + 2, .., l + l'. Built once for all
/// 0 <= m <= l, l' <= l_max; read-only afterwards, so it may be shared
/// between threads.
class GauntTable {
  public:
    static constexpr int kMaxLMax = 100;

    explicit GauntTable(int l_max);

    int l_max() const { return l_max_; }

    /// Coefficients for L = |l - l'| + 2j, j = 0 .. min(l, l').
    const double* coefficients(int m, int lp, int l) const { return data_.data() + offset(m, lp, l); }
    int count(int lp, int l) const { return (lp < l ? lp : l) + 1; }

  private:
    std::size_t offset(int m, int lp, int l) const
    {
        return offsets_[(static_cast<std::size_t>(m) * (l_max_ + 1) + lp) * (l_max_ + 1) + l];
    }

    int l_max_;
    std::vector<std::size_t> offsets_;
    std::vector<double> data_;
};

/// Shared table covering at least l_max, built on first use.
const GauntTable& gaunt_table(int l_max);

}  // namespace casimir::scattering
