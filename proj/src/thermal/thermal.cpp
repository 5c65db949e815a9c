#include "casimir/thermal.hpp"

#include <cmath>
#include <stdexcept>

#include "casimir/constants.hpp"
#include "casimir/numerics/parallel.hpp"
#include "casimir/numerics/quadrature.hpp"

namespace casimir::thermal {

namespace {

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

void require_increasing(const std::vector<double>& v, const char* what)
{
    for (std::size_t i = 0; i < v.size(); ++i) {
        require_positive(v[i], what);
        if (i > 0 && !(v[i] > v[i - 1]))
            throw std::invalid_argument(std::string(what) + " must be strictly increasing");
    }
}

std::optional<materials::DielectricModel> plasma_counterpart(const materials::DielectricModel& m)
{
    const auto* d = std::get_if<materials::Drude>(&m.variant());
    if (d == nullptr || d->gamma > 1e-6 * d->omega_p)
        return std::nullopt;
    return materials::DielectricModel::plasma(d->omega_p);
}

ThermalPoint evaluate(const ThermalSweepSpec& spec, double a, double t)
{
    ThermalPoint p;
    p.a = a;
    p.temperature = t;
    lifshitz::PlateOptions opts;
    opts.tol = spec.tol;
    auto free = [&](double temp) { return lifshitz::plate_free_energy({a, spec.model_1, spec.model_2, temp}, opts); };

    const auto centre = free(t);
    const double h = 1e-3 * t;
    const auto up = free(t + h);
    const auto down = free(t - h);
    p.free_energy = centre.total;
    p.entropy = -(up.total - down.total) / (2.0 * h);
    p.zero_mode_share = centre.total != 0.0 ? centre.zero_mode_contribution / centre.total : 0.0;
    p.error_estimate = centre.error_estimate;
    p.converged = centre.converged && up.converged && down.converged;

    const auto p1 = plasma_counterpart(spec.model_1);
    const auto p2 = plasma_counterpart(spec.model_2);
    if (p1 && p2) {
        const auto plasma = lifshitz::plate_free_energy({a, *p1, *p2, t}, opts);
        DrudePlasmaCheck c;
        c.difference = centre.total - plasma.total;
        c.expected = -plasma.zero_mode_te;
        c.ideal_deficit = zeta3 * t / (16.0 * pi * a * a);
        c.budget = centre.error_estimate + plasma.error_estimate + 1e-6 * std::abs(plasma.total);
        c.within_budget = std::abs(c.difference - c.expected) <= c.budget;
        p.drude_plasma = c;
    }
    return p;
}

}  // namespace

PlasmaLimitTerms plasma_limit_coefficients(double a, double temperature)
{
    require_positive(a, "separation");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw std::invalid_argument("temperature must be non-negative and finite");
    const double t = temperature;
    PlasmaLimitTerms r;
    r.c3_term = -pi * pi / (720.0 * a * a * a);
    r.t3_term = -zeta3 / (2.0 * pi) * t * t * t;
    r.t4_term = pi * pi * a / 45.0 * t * t * t * t;
    r.outside_validity = t * a > 0.3;
    return r;
}

ZeroModeDeficit drude_zero_mode_deficit(double a, double temperature, double rel_tol)
{
    require_positive(a, "separation");
    require_positive(temperature, "temperature");
    ZeroModeDeficit d;
    d.closed_form = -zeta3 * temperature / (16.0 * pi * a * a);
    numerics::QuadratureOptions o;
    o.rel_tol = rel_tol;
    o.scale = 1.0 / (2.0 * a);
    const auto q = numerics::integrate_semiinfinite(
        [&](double k) { return k == 0.0 ? 0.0 : k * std::log(-std::expm1(-2.0 * k * a)); }, o);
    if (!q.converged)
        throw std::runtime_error("zero-mode deficit quadrature did not converge");
    d.quadrature = temperature / (4.0 * pi) * q.value;
    d.quadrature_error = temperature / (4.0 * pi) * q.error_estimate;
    return d;
}

std::vector<ThermalPoint> thermal_sweep(const ThermalSweepSpec& spec)
{
    require_increasing(spec.separations, "separations");
    require_increasing(spec.temperatures, "temperatures");
    if (!(spec.tol > 0.0 && spec.tol < 1.0))
        throw std::invalid_argument("tolerance must lie in (0, 1)");

    const std::size_t nt = spec.temperatures.size();
    std::vector<ThermalPoint> out(spec.separations.size() * nt);
    numerics::parallel_for(out.size(), [&](std::size_t i) {
        const double a = spec.separations[i / nt];
        const double t = spec.temperatures[i % nt];
        try {
            out[i] = evaluate(spec, a, t);
        } catch (const std::exception& e) {
            out[i] = ThermalPoint{};
            out[i].a = a;
            out[i].temperature = t;
            out[i].converged = false;
            out[i].error = e.what();
        }
    });
    return out;
}

}  // namespace casimir::thermal
