#include "casimir/lifshitz.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/numerics/matsubara.hpp"
#include "casimir/numerics/quadrature.hpp"
#include "casimir/numerics/summation.hpp"

namespace casimir::lifshitz {

using materials::ReflectionPair;

namespace {

void validate(const PlateConfig& c, const PlateOptions& o)
{
    if (!(c.a > 0.0) || !std::isfinite(c.a))
        throw std::invalid_argument("plate separation must be positive and finite");
    if (!(c.temperature >= 0.0) || !std::isfinite(c.temperature))
        throw std::invalid_argument("temperature must be non-negative and finite");
    if (!(o.tol > 0.0 && o.tol < 1.0))
        throw std::invalid_argument("tolerance must lie in (0, 1)");
}

ReflectionPair reflection(const materials::DielectricModel& m, double xi, double k)
{
    return xi == 0.0 ? materials::reflection_zero_mode(m, k) : materials::fresnel_imag(m, xi, k);
}

}  // namespace

double ideal_plate_energy_density(double alpha, double d)
{
    if (!(d > 0.0) || !std::isfinite(d))
        throw std::invalid_argument("separation must be positive and finite");
    return -alpha * pi * pi / (1440.0 * d * d * d);
}

Summand plate_summand(const PlateConfig& config, double xi, double rel_tol)
{
    if (!(xi >= 0.0) || !std::isfinite(xi))
        throw std::invalid_argument("plate summand needs a finite non-negative frequency");
    const double a = config.a;
    Summand s;
    if (config.model_1.is_vacuum() || config.model_2.is_vacuum()) {
        s.evaluations = 1;
        return s;
    }

    auto integrand = [&](double q) {
        std::vector<double> v(2, 0.0);
        const double k = std::sqrt(std::max(0.0, (q - xi) * (q + xi)));
        if (k == 0.0 && xi == 0.0)
            return v;  // q dq measure vanishes at the origin
        const ReflectionPair r1 = reflection(config.model_1, xi, k);
        const ReflectionPair r2 = reflection(config.model_2, xi, k);
        const double e = std::exp(-2.0 * q * a);
        v[0] = q * std::log1p(-r1.te * r2.te * e) / (2.0 * pi);
        v[1] = q * std::log1p(-r1.tm * r2.tm * e) / (2.0 * pi);
        return v;
    };

    numerics::QuadratureOptions qo;
    qo.rel_tol = rel_tol;
    qo.scale = 1.0 / (2.0 * a);
    const auto r = numerics::integrate_semiinfinite(integrand, 2, qo, xi);
    s.value = {r.value[0], r.value[1]};
    s.error = {r.error_estimate[0], r.error_estimate[1]};
    s.evaluations = r.evaluations;
    s.converged = r.converged;
    return s;
}

PlateEnergyBreakdown plate_energy_t0(const PlateConfig& config, const PlateOptions& opts)
{
    validate(config, opts);
    const double inner_tol = opts.tol / 10.0;
    int inner_evals = 0;
    bool inner_ok = true;
    double inner_err_rel = 0.0;

    auto integrand = [&](double xi) {
        const Summand s = plate_summand(config, xi, inner_tol);
        inner_evals += s.evaluations;
        inner_ok = inner_ok && s.converged;
        for (int p = 0; p < 2; ++p)
            if (s.value[p] != 0.0)
                inner_err_rel = std::max(inner_err_rel, s.error[p] / std::abs(s.value[p]));
        return std::vector<double>{s.value[0] / (2.0 * pi), s.value[1] / (2.0 * pi)};
    };

    numerics::QuadratureOptions qo;
    qo.rel_tol = opts.tol;
    qo.scale = 1.0 / (2.0 * config.a);
    const auto r = numerics::integrate_semiinfinite(integrand, 2, qo);

    PlateEnergyBreakdown b;
    b.te = r.value[0];
    b.tm = r.value[1];
    b.total = b.te + b.tm;
    b.error_estimate = r.error_estimate[0] + r.error_estimate[1] + inner_err_rel * (std::abs(b.te) + std::abs(b.tm));
    b.evaluations = inner_evals;
    b.converged = r.converged && inner_ok;
    return b;
}

PlateEnergyBreakdown plate_free_energy(const PlateConfig& config, const PlateOptions& opts)
{
    validate(config, opts);
    if (!(config.temperature > 0.0))
        throw std::invalid_argument("plate_free_energy needs a positive temperature");
    const numerics::MatsubaraGrid grid(config.temperature);
    const double inner_tol = opts.tol / 10.0;

    std::vector<double> te_terms;
    numerics::CompensatedSum inner_err;
    int inner_evals = 0;
    bool inner_ok = true;
    Summand zero;

    auto f = [&](double xi) {
        const Summand s = plate_summand(config, xi, inner_tol);
        if (te_terms.empty())
            zero = s;
        te_terms.push_back(s.value[0]);
        inner_err += (te_terms.size() == 1 ? 0.5 : 1.0) * (s.error[0] + s.error[1]);
        inner_evals += s.evaluations;
        inner_ok = inner_ok && s.converged;
        return s.value[0] + s.value[1];
    };

    numerics::MatsubaraOptions mo;
    mo.tail_tol = opts.tol;
    const auto r = numerics::matsubara_sum(f, grid, mo);

    const double t = config.temperature;
    numerics::CompensatedSum te;
    for (std::size_t n = 0; n < te_terms.size(); ++n)
        te += numerics::MatsubaraGrid::weight(static_cast<int>(n)) * te_terms[n];

    PlateEnergyBreakdown b;
    b.total = r.value;
    b.te = t * te.value();
    b.tm = b.total - b.te;
    b.zero_mode_contribution = t * 0.5 * (zero.value[0] + zero.value[1]);
    b.zero_mode_te = t * 0.5 * zero.value[0];
    b.error_estimate = r.error_estimate + t * inner_err.value();
    b.evaluations = inner_evals;
    b.matsubara_terms = r.evaluations;
    b.converged = r.converged && inner_ok;
    return b;
}

PlateEnergyBreakdown plate_energy(const PlateConfig& config, const PlateOptions& opts)
{
    return config.temperature > 0.0 ? plate_free_energy(config, opts) : plate_energy_t0(config, opts);
}

}  // namespace casimir::lifshitz
