#pragma once

#include <functional>
#include <vector>

namespace casimir::numerics {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

struct VectorQuadratureResult {
    std::vector<double> value;
    std::vector<double> error_estimate;
    int evaluations = 0;
    bool converged = false;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    /// Characteristic scale s of the map x = lower + s u / (1 - u) used on
    /// semi-infinite ranges. Ignored on finite intervals.
    double scale = 1.0;
    int max_intervals = 4000;
    /// Number of equal pieces the mapped interval starts with.
    int initial_intervals = 4;
    /// Evaluate the Kronrod nodes of an interval through parallel_for.
    bool parallel_nodes = false;
};

using ScalarIntegrand = std::function<double(double)>;
/// Returns a fixed-length vector; all components are integrated together and
/// the adaptive refinement continues until every component meets tolerance.
using VectorIntegrand = std::function<std::vector<double>(double)>;

/// Adaptive 7/15-point Gauss-Kronrod on [a, b].
QuadratureResult integrate_interval(const ScalarIntegrand& f, double a, double b,
                                    const QuadratureOptions& opts = {});

/// Integral over [lower, infinity) through x = lower + s u/(1-u).
/// Converged when error <= max(rel_tol |value|, abs_tol).
QuadratureResult integrate_semiinfinite(const ScalarIntegrand& f, const QuadratureOptions& opts = {},
                                        double lower = 0.0);

VectorQuadratureResult integrate_interval(const VectorIntegrand& f, std::size_t dim, double a,
                                          double b, const QuadratureOptions& opts = {});

VectorQuadratureResult integrate_semiinfinite(const VectorIntegrand& f, std::size_t dim,
                                              const QuadratureOptions& opts = {},
                                              double lower = 0.0);

}  // namespace casimir::numerics
