#include "casimir/numerics/matsubara.hpp"

#include <cmath>
#include <stdexcept>

#include "casimir/constants.hpp"
#include "casimir/numerics/summation.hpp"

namespace casimir::numerics {

MatsubaraGrid::MatsubaraGrid(double temperature)
    : temperature_(temperature), spacing_(2.0 * pi * temperature)
{
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw std::invalid_argument("Matsubara grid needs a positive finite temperature");
}

QuadratureResult matsubara_sum(const std::function<double(double)>& f, const MatsubaraGrid& grid,
                               const MatsubaraOptions& opts)
{
    const double t = grid.temperature();
    CompensatedSum sum;
    double prev = f(grid.frequency(0));
    if (!std::isfinite(prev))
        throw std::domain_error("Matsubara summand is not finite at n = 0");
    sum += MatsubaraGrid::weight(0) * prev;

    int non_decaying = 0;
    for (int n = 1; n < opts.max_terms; ++n) {
        const double cur = f(grid.frequency(n));
        if (!std::isfinite(cur))
            throw std::domain_error("Matsubara summand is not finite");
        sum += cur;

        double tail = 0.0;
        if (cur == 0.0) {
            tail = 0.0;
        } else if (prev != 0.0 && (cur > 0.0) == (prev > 0.0) && std::abs(cur) < std::abs(prev)) {
            // integral of the exponential through the last two terms, in units of the spacing
            const double rho = cur / prev;
            tail = std::abs(cur) / -std::log(rho);
            non_decaying = 0;
        } else {
            tail = std::abs(cur) * 1e300;  // no usable decay estimate yet
            if (n > 8 && std::abs(cur) >= std::abs(prev))
                ++non_decaying;
        }

        const double partial = sum.value();
        if (tail <= opts.tail_tol * std::abs(partial) || (partial == 0.0 && cur == 0.0 && prev == 0.0))
            return {t * partial, t * tail, n + 1, true};
        if (non_decaying > 64)
            return {t * partial, t * std::abs(cur) * opts.max_terms, n + 1, false};
        prev = cur;
    }
    return {t * sum.value(), t * std::abs(prev) * opts.max_terms, opts.max_terms, false};
}

}  // namespace casimir::numerics
