#include "casimir/scattering/wigner.hpp"

#include <cmath>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace casimir::scattering {

namespace {

// a(L) = sqrt((L^2 - (l1 - l2)^2) ((l1 + l2 + 1)^2 - L^2)), which vanishes at both ends
double rec_a(int l1, int l2, int big_l)
{
    const double d = l1 - l2, s = l1 + l2 + 1.0, x = big_l;
    return std::sqrt((x * x - d * d) * (s * s - x * x));
}

}  // namespace

std::vector<double> wigner3j_m_minus_m(int l1, int l2, int m)
{
    if (l1 < 0 || l2 < 0 || std::abs(m) > std::min(l1, l2))
        throw std::invalid_argument("wigner3j: need |m| <= min(l1, l2)");
    const int lmin = std::abs(l1 - l2), lmax = l1 + l2;
    const int n = lmax - lmin + 1;
    std::vector<double> f(static_cast<std::size_t>(n), 0.0);

    // a(L+1) f(L+1) - 2m (2L+1) f(L) + a(L) f(L-1) = 0
    auto b = [&](int big_l) { return 2.0 * m * (2.0 * big_l + 1.0); };

    if (n == 1) {
        f[0] = 1.0;
    } else if (m == 0) {
        // two-step recursion; odd l1 + l2 + L values vanish
        f[0] = 1.0;
        for (int k = 2; k < n; k += 2) {
            const int big_l = lmin + k;
            f[k] = -rec_a(l1, l2, big_l - 1) * f[k - 2] / rec_a(l1, l2, big_l);
        }
    } else {
        // forward from lmin while |f| grows
        f[0] = 1.0;
        f[1] = b(lmin) * f[0] / rec_a(l1, l2, lmin + 1);
        int k_mid = 1;
        while (k_mid + 1 < n && std::abs(f[k_mid]) >= std::abs(f[k_mid - 1])) {
            const int big_l = lmin + k_mid;
            f[k_mid + 1] = (b(big_l) * f[k_mid] - rec_a(l1, l2, big_l) * f[k_mid - 1]) / rec_a(l1, l2, big_l + 1);
            ++k_mid;
            if (std::abs(f[k_mid]) > 1e150)
                for (int j = 0; j <= k_mid; ++j)
                    f[j] *= 1e-150;
        }
        if (k_mid < n - 1) {
            // backward from lmax down to k_mid - 1, then match on the overlap
            std::vector<double> g(static_cast<std::size_t>(n), 0.0);
            g[n - 1] = 1.0;
            g[n - 2] = b(lmax) * g[n - 1] / rec_a(l1, l2, lmax);
            const int stop = std::max(k_mid - 1, 0);
            for (int k = n - 2; k > stop; --k) {
                const int big_l = lmin + k;
                g[k - 1] = (b(big_l) * g[k] - rec_a(l1, l2, big_l + 1) * g[k + 1]) / rec_a(l1, l2, big_l);
                if (std::abs(g[k - 1]) > 1e150)
                    for (int j = k - 1; j < n; ++j)
                        g[j] *= 1e-150;
            }
            double num = 0.0, den = 0.0;
            for (int k = stop; k <= k_mid; ++k) {
                num += f[k] * g[k];
                den += g[k] * g[k];
            }
            const double scale = num / den;
            for (int k = k_mid + 1; k < n; ++k)
                f[k] = scale * g[k];
            // keep the forward values up to k_mid; the overlap agrees up to rounding
        }
    }

    double norm = 0.0;
    for (int k = 0; k < n; ++k)
        norm += (2.0 * (lmin + k) + 1.0) * f[k] * f[k];
    double s = 1.0 / std::sqrt(norm);
    const bool negative_top = ((l1 - l2) % 2 + 2) % 2 == 1;
    if ((f[n - 1] < 0.0) != negative_top)
        s = -s;
    for (double& v : f)
        v *= s;
    return f;
}

GauntTable::GauntTable(int l_max) : l_max_(l_max)
{
    if (l_max < 0 || l_max > kMaxLMax)
        throw std::invalid_argument("translation coefficient table supports l_max up to " +
                                    std::to_string(kMaxLMax));
    const std::size_t n = static_cast<std::size_t>(l_max) + 1;
    offsets_.assign(n * n * n, 0);
    std::size_t total = 0;
    for (int m = 0; m <= l_max; ++m)
        for (int lp = m; lp <= l_max; ++lp)
            for (int l = m; l <= l_max; ++l) {
                offsets_[(static_cast<std::size_t>(m) * n + lp) * n + l] = total;
                total += static_cast<std::size_t>(count(lp, l));
            }
    data_.resize(total);

    // (l l' L; 0 0 0) reused for every m
    std::vector<std::vector<double>> zero(n * n);
    for (int lp = 0; lp <= l_max; ++lp)
        for (int l = 0; l <= l_max; ++l)
            zero[lp * n + l] = wigner3j_m_minus_m(l, lp, 0);

    for (int m = 0; m <= l_max; ++m)
        for (int lp = m; lp <= l_max; ++lp)
            for (int l = m; l <= l_max; ++l) {
                const auto wm = wigner3j_m_minus_m(l, lp, m);
                const auto& w0 = zero[lp * n + l];
                const double phase = ((lp + m) % 2 == 0) ? 1.0 : -1.0;
                const double root = std::sqrt((2.0 * l + 1.0) * (2.0 * lp + 1.0));
                double* out = data_.data() + offset(m, lp, l);
                const int lmin = std::abs(l - lp);
                for (int j = 0; j < count(lp, l); ++j) {
                    const int k = 2 * j;
                    const int big_l = lmin + k;
                    out[j] = phase * (2.0 * big_l + 1.0) * root * w0[k] * wm[k];
                }
            }
}

const GauntTable& gaunt_table(int l_max)
{
    // tables are kept for the life of the process so references stay valid
    static std::mutex mutex;
    static std::vector<std::unique_ptr<const GauntTable>> tables;
    std::lock_guard<std::mutex> lock(mutex);
    for (const auto& t : tables)
        if (t->l_max() >= l_max)
            return *t;
    tables.push_back(std::make_unique<const GauntTable>(l_max));
    return *tables.back();
}

}  // namespace casimir::scattering
