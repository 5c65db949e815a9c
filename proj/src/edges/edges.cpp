#include "casimir/edges.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/numerics/linalg.hpp"
#include "casimir/numerics/quadrature.hpp"

namespace casimir::edges {

StripEnergy strip_energy_per_length(const StripConfig& c)
{
    if (!(c.half_width > 0.0) || !std::isfinite(c.half_width))
        throw std::invalid_argument("strip half-width must be positive");
    if (!(c.separation > 0.0) || !std::isfinite(c.separation))
        throw std::invalid_argument("strip separation must be positive");
    if (!std::isfinite(c.beta_edge) || !std::isfinite(c.gamma_edge))
        throw std::invalid_argument("edge coefficients must be finite");
    const double w = 2.0 * c.half_width, h = c.separation;
    StripEnergy e;
    e.plate_term = -(pi * pi / 720.0) * w / (h * h * h);
    e.edge_term = 2.0 * c.beta_edge / (h * h);
    e.interaction_term = c.gamma_edge / (w * h);
    e.energy_per_length = e.plate_term + e.edge_term + e.interaction_term;
    if (w < h)
        e.warnings.emplace_back("strip narrower than its separation (2d < H): the edge expansion is unreliable");
    return e;
}

namespace {

// int_0^inf e^{-2u t} t^{a-1} (1+t)^{-a-1} dt for a > 0, substituted so the
// integrand is bounded at the origin.
double confluent_integral(double a, double u)
{
    numerics::QuadratureOptions q;
    q.rel_tol = 1e-13;
    numerics::QuadratureResult r;
    if (a >= 0.5) {
        // t = w^2
        q.scale = 1.0 / std::sqrt(1.0 + 2.0 * u);
        r = numerics::integrate_semiinfinite(
            [a, u](double w) {
                if (w == 0.0)
                    return a == 0.5 ? 2.0 : 0.0;
                const double w2 = w * w;
                return 2.0 * std::exp((2.0 * a - 1.0) * std::log(w) - (a + 1.0) * std::log1p(w2) - 2.0 * u * w2);
            },
            q);
    } else {
        // t = w^{1/a}
        q.scale = std::pow(1.0 + 2.0 * u, -a);
        r = numerics::integrate_semiinfinite(
            [a, u](double w) {
                const double t = std::pow(w, 1.0 / a);
                return std::exp(-(a + 1.0) * std::log1p(t) - 2.0 * u * t) / a;
            },
            q);
    }
    if (!r.converged)
        throw ConvergenceError("bateman_k: confluent integral did not converge (a = " + std::to_string(a) +
                               ", u = " + std::to_string(u) + ")");
    return r.value;
}

// Tricomi U(a, 0, 2u) for a > 0
double tricomi_u0(double a, double u)
{
    return confluent_integral(a, u) / std::tgamma(a);
}

}  // namespace

double bateman_k(double nu, double u)
{
    if (!std::isfinite(nu) || !std::isfinite(u))
        throw std::invalid_argument("bateman_k: arguments must be finite");
    if (u < 0.0)
        throw std::invalid_argument("bateman_k: u must be non-negative");
    if (u == 0.0)
        return nu == 0.0 ? 1.0 : (2.0 / pi) * std::sin(nu * pi / 2.0) / nu;

    if (nu < 0.0) {
        const double a = -nu / 2.0;
        if (a == std::floor(a))
            return 0.0;  // 1/Gamma(1 - a) vanishes
        return std::exp(-u) * std::sin(pi * a) / pi * confluent_integral(a, u);
    }

    // k_nu(u) = e^{-u} U(-nu/2, 0, 2u) / Gamma(1 + nu/2); bring U down from
    // positive order with U(a-1) = (2a + z) U(a) - a (a+1) U(a+1), z = 2u.
    const double target = -nu / 2.0;
    const int steps = static_cast<int>(std::floor(-target)) + 1;
    double a = target + steps;
    double upper = tricomi_u0(a + 1.0, u);
    double current = tricomi_u0(a, u);
    const double z = 2.0 * u;
    for (int s = 0; s < steps; ++s) {
        const double lower = (2.0 * a + z) * current - a * (a + 1.0) * upper;
        upper = current;
        current = lower;
        a -= 1.0;
    }
    return std::exp(-u) * current / std::tgamma(1.0 + nu / 2.0);
}

double half_plane_log_det(int nu_max, double u)
{
    if (nu_max < 0)
        throw std::invalid_argument("nu_max must be non-negative");
    const int n = nu_max + 1;
    std::vector<double> k(static_cast<std::size_t>(2 * nu_max + 2), 0.0);
    for (int s = 1; s <= 2 * nu_max + 1; s += 2)
        k[s] = bateman_k(-double(s), u);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = (i % 2 == 0 ? 1.0 : -1.0) * k[i + j + 1];
    return numerics::log_det_one_minus(m);
}

HalfPlaneResult halfplane_perp_energy(const HalfPlaneConfig& c)
{
    if (!(c.separation > 0.0) || !std::isfinite(c.separation))
        throw std::invalid_argument("half-plane separation must be positive");
    if (c.nu_max < 4)
        throw std::invalid_argument("nu_max must be at least 4");
    if (!(c.q_min_factor > 0.0))
        throw std::invalid_argument("the small-q cutoff must be positive");
    if (!(c.tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");

    const double h = c.separation;
    const int n_big = c.nu_max, n_small = c.nu_max - 2;
    // entries depend on nu + nu' only, so the smaller truncation is a leading block
    auto integrand = [&](double q) {
        const double u = 2.0 * q * h;
        const int n = n_big + 1;
        std::vector<double> k(static_cast<std::size_t>(2 * n_big + 2), 0.0);
        for (int s = 1; s <= 2 * n_big + 1; s += 2)
            k[s] = bateman_k(-double(s), u);
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = (i % 2 == 0 ? 1.0 : -1.0) * k[i + j + 1];
        const double w = q / (4.0 * pi);
        return std::vector<double>{w * numerics::log_det_one_minus(m),
                                   w * numerics::log_det_one_minus(m.topLeftCorner(n_small + 1, n_small + 1))};
    };

    const double q_min = c.q_min_factor / h;
    numerics::QuadratureOptions q;
    q.rel_tol = c.tol;
    q.scale = 1.0 / (2.0 * h);
    q.parallel_nodes = true;
    const auto r = numerics::integrate_semiinfinite(integrand, 2, q, q_min);

    HalfPlaneResult res;
    res.evaluations = r.evaluations;
    res.converged = r.converged;
    if (!r.converged)
        res.warnings.emplace_back("q quadrature did not reach the requested tolerance");
    const double h2 = h * h;
    res.c_perp_at_nu_max = -r.value[0] * h2;
    res.c_perp_at_nu_max_minus_2 = -r.value[1] * h2;
    res.quadrature_error = r.error_estimate[0] * h2;
    // error model 1/n^2 in the matrix dimension n = nu_max + 1
    const double a2 = double(n_big + 1) * (n_big + 1), b2 = double(n_small + 1) * (n_small + 1);
    res.c_perp = (a2 * res.c_perp_at_nu_max - b2 * res.c_perp_at_nu_max_minus_2) / (a2 - b2);
    res.truncation_error = std::abs(res.c_perp - res.c_perp_at_nu_max);
    res.energy_per_length = -res.c_perp / h2;

    numerics::QuadratureOptions edge;
    edge.rel_tol = 1e-8;
    try {
        const auto s = numerics::integrate_interval(integrand, 2, 0.5 * q_min, q_min, edge);
        res.cutoff_sensitivity = std::abs(s.value[0]) * h2;
    } catch (const GeometryError&) {
        res.cutoff_sensitivity = std::abs(res.c_perp);
        res.warnings.emplace_back("det(1 - M) is not positive below the cutoff; cutoff sensitivity not resolved");
    }
    return res;
}

}  // namespace casimir::edges
