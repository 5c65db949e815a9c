#include "casimir/materials.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace casimir::materials {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

// Metallic susceptibility chi = eps - 1 = omega_p^2 / (xi (xi + gamma)). Plasma
// goes through the same expression with gamma = 0 so the two agree bitwise.
double metal_chi(double omega_p, double gamma, double xi)
{
    return omega_p * omega_p / (xi * (xi + gamma));
}

// chi xi^2, finite at xi = 0.
double metal_chi_xi2(double omega_p, double gamma, double xi)
{
    if (xi == 0.0)
        return gamma == 0.0 ? omega_p * omega_p : 0.0;
    return omega_p * omega_p * (xi / (xi + gamma));
}

// Material described by chi xi^2 and 1/eps, both finite everywhere (1/eps = 0
// for a metal at xi = 0).
ReflectionPair reflect(double chi_xi2, double inv_eps, double xi, double k)
{
    const double k2 = k * k;
    const double q = std::sqrt(k2 + xi * xi);
    const double qt = std::sqrt(k2 + xi * xi + chi_xi2);
    ReflectionPair r;
    r.te = -chi_xi2 / ((q + qt) * (q + qt));
    // divide numerator and denominator of the TM form by eps^2
    const double chi_over_eps = 1.0 - inv_eps;  // (eps - 1)/eps
    const double den = q + qt * inv_eps;
    r.tm = chi_over_eps * ((1.0 + inv_eps) * k2 + xi * xi) / (den * den);
    return r;
}

}  // namespace

DielectricModel DielectricModel::plasma(double omega_p)
{
    require_finite_positive(omega_p, "plasma frequency");
    return DielectricModel(Plasma{omega_p});
}

DielectricModel DielectricModel::drude(double omega_p, double gamma)
{
    require_finite_positive(omega_p, "plasma frequency");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("Drude relaxation frequency must be non-negative and finite");
    return DielectricModel(Drude{omega_p, gamma});
}

DielectricModel DielectricModel::constant(double eps)
{
    if (!(eps >= 1.0) || !std::isfinite(eps))
        throw std::invalid_argument("constant permittivity must be finite and >= 1");
    return DielectricModel(Constant{eps});
}

std::string DielectricModel::type_name() const
{
    return std::visit(overloaded{[](const PerfectConductor&) { return "pec"; },
                                 [](const Vacuum&) { return "vacuum"; },
                                 [](const Plasma&) { return "plasma"; },
                                 [](const Drude&) { return "drude"; },
                                 [](const Constant&) { return "const"; }},
                      model_);
}

std::string DielectricModel::describe() const
{
    std::ostringstream os;
    os.precision(17);
    os << type_name();
    std::visit(overloaded{[](const PerfectConductor&) {}, [](const Vacuum&) {},
                          [&](const Plasma& p) { os << ':' << p.omega_p; },
                          [&](const Drude& d) { os << ':' << d.omega_p << ':' << d.gamma; },
                          [&](const Constant& c) { os << ':' << c.eps; }},
               model_);
    return os.str();
}

bool operator==(const DielectricModel& a, const DielectricModel& b)
{
    if (a.model_.index() != b.model_.index())
        return false;
    return std::visit(overloaded{[](const PerfectConductor&, const PerfectConductor&) { return true; },
                                 [](const Vacuum&, const Vacuum&) { return true; },
                                 [](const Plasma& x, const Plasma& y) { return x.omega_p == y.omega_p; },
                                 [](const Drude& x, const Drude& y) {
                                     return x.omega_p == y.omega_p && x.gamma == y.gamma;
                                 },
                                 [](const Constant& x, const Constant& y) { return x.eps == y.eps; },
                                 [](const auto&, const auto&) { return false; }},
                      a.model_, b.model_);
}

double epsilon_imag(const DielectricModel& model, double xi)
{
    if (!(xi > 0.0) || !std::isfinite(xi))
        throw std::invalid_argument("epsilon_imag needs a positive finite frequency");
    return std::visit(overloaded{[](const PerfectConductor&) { return std::numeric_limits<double>::infinity(); },
                                 [](const Vacuum&) { return 1.0; },
                                 [&](const Plasma& p) { return 1.0 + metal_chi(p.omega_p, 0.0, xi); },
                                 [&](const Drude& d) { return 1.0 + metal_chi(d.omega_p, d.gamma, xi); },
                                 [](const Constant& c) { return c.eps; }},
                      model.variant());
}

ReflectionPair fresnel_imag(const DielectricModel& model, double xi, double k_perp)
{
    if (!(xi >= 0.0) || !(k_perp >= 0.0) || !std::isfinite(xi) || !std::isfinite(k_perp))
        throw std::invalid_argument("fresnel_imag needs finite non-negative arguments");
    if (xi == 0.0 && k_perp == 0.0)
        throw std::invalid_argument("fresnel_imag is undefined at xi = k_perp = 0");
    if (xi == 0.0)
        return reflection_zero_mode(model, k_perp);

    return std::visit(
        overloaded{[](const PerfectConductor&) { return ReflectionPair{-1.0, 1.0}; },
                   [](const Vacuum&) { return ReflectionPair{0.0, 0.0}; },
                   [&](const Plasma& p) {
                       const double chi = metal_chi(p.omega_p, 0.0, xi);
                       return reflect(metal_chi_xi2(p.omega_p, 0.0, xi), 1.0 / (1.0 + chi), xi, k_perp);
                   },
                   [&](const Drude& d) {
                       const double chi = metal_chi(d.omega_p, d.gamma, xi);
                       return reflect(metal_chi_xi2(d.omega_p, d.gamma, xi), 1.0 / (1.0 + chi), xi, k_perp);
                   },
                   [&](const Constant& c) {
                       return reflect((c.eps - 1.0) * xi * xi, 1.0 / c.eps, xi, k_perp);
                   }},
        model.variant());
}

ReflectionPair reflection_zero_mode(const DielectricModel& model, double k_perp)
{
    if (!(k_perp > 0.0) || !std::isfinite(k_perp))
        throw std::invalid_argument("zero-mode reflection needs a positive finite k_perp");
    return std::visit(
        overloaded{[](const PerfectConductor&) { return ReflectionPair{-1.0, 1.0}; },
                   [](const Vacuum&) { return ReflectionPair{0.0, 0.0}; },
                   [&](const Plasma& p) { return reflect(metal_chi_xi2(p.omega_p, 0.0, 0.0), 0.0, 0.0, k_perp); },
                   [&](const Drude& d) {
                       return reflect(metal_chi_xi2(d.omega_p, d.gamma, 0.0), 0.0, 0.0, k_perp);
                   },
                   [](const Constant& c) { return ReflectionPair{0.0, (c.eps - 1.0) / (c.eps + 1.0)}; }},
        model.variant());
}

}  // namespace casimir::materials
