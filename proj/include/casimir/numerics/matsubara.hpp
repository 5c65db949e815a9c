#pragma once

#include <functional>

#include "casimir/numerics/quadrature.hpp"

namespace casimir::numerics {

/// Matsubara frequencies xi_n = 2 pi n T (natural units) with weight 1/2 for n = 0.
class MatsubaraGrid {
  public:
    explicit MatsubaraGrid(double temperature);

    double temperature() const { return temperature_; }
    double spacing() const { return spacing_; }
    double frequency(int n) const { return spacing_ * n; }
    static double weight(int n) { return n == 0 ? 0.5 : 1.0; }

  private:
    double temperature_;
    double spacing_;
};

struct MatsubaraOptions {
    double tail_tol = 1e-12;
    int max_terms = 2'000'000;
};

/// T [ f(0)/2 + sum_{n>=1} f(xi_n) ].
///
/// Stops once the tail, bounded by the integral of an exponential fitted to the
/// last two terms, drops below tail_tol |partial sum|. error_estimate is that
/// tail bound; evaluations counts the terms used. A summand that stops
/// decaying leaves converged == false.
QuadratureResult matsubara_sum(const std::function<double(double)>& f, const MatsubaraGrid& grid,
                               const MatsubaraOptions& opts = {});

}  // namespace casimir::numerics
