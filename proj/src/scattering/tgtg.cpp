#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/numerics/bessel.hpp"
#include "casimir/numerics/linalg.hpp"
#include "casimir/numerics/quadrature.hpp"
#include "casimir/numerics/summation.hpp"
#include "casimir/scattering.hpp"

namespace casimir::scattering {

namespace {

std::string sci(double v)
{
    std::ostringstream o;
    o.precision(3);
    o << v;
    return o.str();
}

constexpr int kRuns = 4;

// default truncation l_max = ceil(a R / gap), clamped
constexpr double kLMaxPerRatio = 6.0;
constexpr int kLMaxFloor = 12;
constexpr int kLMaxCeiling = 100;

bool is_plane(const SpherePairConfig& c)
{
    return std::isinf(c.r2);
}

double surface_gap(const SpherePairConfig& c)
{
    return is_plane(c) ? c.d_cc - c.r1 : c.d_cc - c.r1 - c.r2;
}

void validate_config(const SpherePairConfig& c)
{
    if (!(c.r1 > 0.0) || !std::isfinite(c.r1))
        throw std::invalid_argument("sphere radius must be positive and finite");
    if (!(c.r2 > 0.0))
        throw std::invalid_argument("second radius must be positive (infinity selects a plane)");
    if (!std::isfinite(c.d_cc))
        throw std::invalid_argument("centre distance must be finite");
    if (!(surface_gap(c) > 0.0))
        throw GeometryError("bodies touch or overlap: the scattering expansion needs a positive surface gap");
}

// Per-kappa tables shared by all m blocks.
struct KappaTables {
    std::vector<double> log_tau_1, log_tau_2;  // log sqrt|T_l|
    double sign_1 = 1.0, sign_2 = 1.0;
    std::vector<double> log_k;     // log k_L(kappa D), L = 0..2 l_max
    std::vector<double> down;      // exp(log_k[L-2] - log_k[L])
};

std::vector<double> half_log(const ScalarSphereT& t)
{
    std::vector<double> v(t.log_abs.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = 0.5 * t.log_abs[i];
    return v;
}

KappaTables kappa_tables(const SpherePairConfig& c, int l_max, double kappa)
{
    KappaTables k;
    const auto t1 = scalar_sphere_t_table(l_max, kappa, c.r1, c.bc_1);
    k.log_tau_1 = half_log(t1);
    k.sign_1 = t1.sign;
    if (is_plane(c)) {
        k.log_tau_2 = k.log_tau_1;
        // a Dirichlet plane flips the sign of the reflected wave
        k.sign_2 = c.bc_2 == Boundary::Dirichlet ? 1.0 : -1.0;
    } else {
        const auto t2 = scalar_sphere_t_table(l_max, kappa, c.r2, c.bc_2);
        k.log_tau_2 = half_log(t2);
        k.sign_2 = t2.sign;
    }
    const double distance = is_plane(c) ? 2.0 * c.d_cc : c.d_cc;
    const auto tab = numerics::spherical_bessel_table(2 * l_max, kappa * distance);
    k.log_k = tab.log_k;
    k.down.assign(k.log_k.size(), 0.0);
    for (std::size_t big_l = 2; big_l < k.log_k.size(); ++big_l)
        k.down[big_l] = std::exp(k.log_k[big_l - 2] - k.log_k[big_l]);
    return k;
}

// W_{ij} = tau_a(l') U^m_{l'l} tau_b(l), l' = m + i, l = m + j.
Eigen::MatrixXd scaled_block(const GauntTable& table, const KappaTables& k, int l_max, int m,
                             const std::vector<double>& log_tau_row, const std::vector<double>& log_tau_col)
{
    const int n = l_max - m + 1;
    Eigen::MatrixXd w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int lp = m + i, l = m + j;
            const double* c = table.coefficients(m, lp, l);
            const int count = table.count(lp, l);
            const int top = lp + l;
            // factor out the largest k_L, which sits at the top of the range
            double rho = 1.0;
            double sum = c[count - 1];
            for (int q = count - 2; q >= 0; --q) {
                rho *= k.down[top - 2 * (count - 2 - q)];
                sum += c[q] * rho;
            }
            const double log_scale = k.log_k[top] + log_tau_row[lp] + log_tau_col[l];
            if (log_scale > 700.0)
                throw GeometryError("round-trip entry overflow: bodies too close for the scattering expansion");
            w(i, j) = log_scale < -745.0 ? 0.0 : sum * std::exp(log_scale);
        }
    return w;
}

// log det(1 - N^m) for the truncations l_max - 6, .., l_max (leading blocks).
std::array<double, kRuns> block_log_dets(const SpherePairConfig& c, const GauntTable& table,
                                         const KappaTables& k, const std::array<int, kRuns>& runs, int m)
{
    const int l_max = runs[kRuns - 1];
    std::array<double, kRuns> out{};
    if (is_plane(c)) {
        // M = tau U P tau with P_l = (-1)^(l+m); U P is symmetric
        Eigen::MatrixXd w = scaled_block(table, k, l_max, m, k.log_tau_1, k.log_tau_1);
        for (Eigen::Index j = 0; j < w.cols(); ++j)
            if ((j % 2) == 1)
                w.col(j) *= -1.0;
        w *= k.sign_1 * k.sign_2;
        for (int r = 0; r < kRuns; ++r) {
            const int n = runs[r] - m + 1;
            out[r] = n > 0 ? numerics::log_det_one_minus(w.topLeftCorner(n, n)) : 0.0;
        }
    } else {
        // N ~ S1 W^T S2 W with W = tau_2 U tau_1
        const Eigen::MatrixXd w = scaled_block(table, k, l_max, m, k.log_tau_2, k.log_tau_1);
        const double s = k.sign_1 * k.sign_2;
        for (int r = 0; r < kRuns; ++r) {
            const int n = runs[r] - m + 1;
            if (n <= 0) {
                out[r] = 0.0;
                continue;
            }
            const auto sub = w.topLeftCorner(n, n);
            const Eigen::MatrixXd nm = s * (sub.transpose() * sub);
            out[r] = numerics::log_det_one_minus(nm);
        }
    }
    return out;
}

struct MSum {
    std::array<double, kRuns> value{};
    int max_m = 0;
};

MSum summed_log_det(const SpherePairConfig& c, const std::array<int, kRuns>& runs, double kappa, double tol)
{
    const int l_max = runs[kRuns - 1];
    const GauntTable& table = gaunt_table(l_max);
    const KappaTables k = kappa_tables(c, l_max, kappa);
    MSum s;
    std::array<numerics::CompensatedSum, kRuns> acc;
    for (int m = 0; m <= l_max; ++m) {
        const auto b = block_log_dets(c, table, k, runs, m);
        const double weight = m == 0 ? 1.0 : 2.0;
        for (int r = 0; r < kRuns; ++r)
            acc[r] += weight * b[r];
        s.max_m = m;
        const double last = std::abs(weight * b[kRuns - 1]);
        const double running = std::abs(acc[kRuns - 1].value());
        if (m > 0 && (last <= 0.1 * tol * running || running == 0.0))
            break;
    }
    for (int r = 0; r < kRuns; ++r)
        s.value[r] = acc[r].value();
    return s;
}

// Limit of a geometrically converging sequence; empty unless the steps shrink
// with a common sign.
std::optional<double> aitken(double e0, double e1, double e2)
{
    const double d1 = e1 - e0, d2 = e2 - e1;
    if (d1 == 0.0 || d1 * d2 <= 0.0 || std::abs(d2) >= std::abs(d1))
        return std::nullopt;
    const double ratio = d2 / d1;
    return e2 + d2 * ratio / (1.0 - ratio);
}

std::array<int, kRuns> truncations(int l_max)
{
    return {std::max(l_max - 6, 0), std::max(l_max - 4, 0), std::max(l_max - 2, 0), l_max};
}

EnergyResult energy(const SpherePairConfig& c, const ScatteringOptions& opts)
{
    validate_config(c);
    if (!(opts.tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    const double gap = surface_gap(c);
    const double r_big = is_plane(c) ? c.r1 : std::max(c.r1, c.r2);

    EnergyResult res;
    int l_max = opts.l_max;
    if (l_max == 0) {
        if (gap / r_big < kMinGapRatioDefault)
            throw std::invalid_argument(
                "gap/R = " + sci(gap / r_big) + " is below " + sci(kMinGapRatioDefault) +
                "; the default truncation is not reliable there. Pass an explicit l_max (roughly 6 R/gap)");
        l_max = default_l_max(r_big, gap);
    }
    if (l_max < 6)
        throw std::invalid_argument("l_max must be at least 6 (four truncations are compared)");
    if (l_max > GauntTable::kMaxLMax)
        throw std::invalid_argument("l_max above " + std::to_string(GauntTable::kMaxLMax) + " is not supported");
    res.l_max = l_max;
    const auto runs = truncations(l_max);
    res.l_max_runs.assign(runs.begin(), runs.end());

    gaunt_table(l_max);  // build before any parallel evaluation
    std::vector<int> max_m_by_node;
    numerics::QuadratureOptions q;
    q.rel_tol = opts.tol;
    q.scale = 1.0 / (2.0 * gap);
    q.parallel_nodes = true;
    int max_m = 0;
    std::mutex m_lock;
    auto integrand = [&](double kappa) {
        const MSum s = summed_log_det(c, runs, kappa, opts.tol);
        {
            std::lock_guard<std::mutex> lock(m_lock);
            max_m = std::max(max_m, s.max_m);
        }
        return std::vector<double>(s.value.begin(), s.value.end());
    };
    const auto r = numerics::integrate_semiinfinite(integrand, kRuns, q);
    res.evaluations = r.evaluations;
    res.max_m_used = max_m;
    const double pre = 1.0 / (2.0 * pi);
    res.energy_by_l_max.resize(kRuns);
    for (int i = 0; i < kRuns; ++i)
        res.energy_by_l_max[i] = pre * r.value[i];
    res.quadrature_error = pre * r.error_estimate[kRuns - 1];
    if (!r.converged) {
        res.converged = false;
        res.warnings.push_back("kappa quadrature did not reach the requested tolerance");
    }

    const auto& e = res.energy_by_l_max;
    res.energy = e[3];
    res.truncation_error = std::abs(e[3] - e[2]);
    const auto newer = aitken(e[1], e[2], e[3]);
    if (newer) {
        res.energy = *newer;
        res.extrapolated = true;
        const auto older = aitken(e[0], e[1], e[2]);
        // without a second estimate keep the last raw step as the error
        if (older)
            res.truncation_error = std::abs(*newer - *older);
    }
    if (res.truncation_error > 10.0 * opts.tol * std::abs(res.energy)) {
        res.converged = false;
        res.warnings.push_back("l_max truncation estimate " + sci(res.truncation_error) + " exceeds 10 tol |E| = " +
                               sci(10.0 * opts.tol * std::abs(res.energy)) + "; raise l_max");
    }
    return res;
}

}  // namespace

int default_l_max(double radius, double gap)
{
    if (!(radius > 0.0) || !(gap > 0.0))
        throw std::invalid_argument("default_l_max needs positive radius and gap");
    const double raw = std::ceil(kLMaxPerRatio * radius / gap);
    return static_cast<int>(std::clamp(raw, double(kLMaxFloor), double(kLMaxCeiling)));
}

EnergyResult tgtg_energy_scalar(const SpherePairConfig& config, const ScatteringOptions& opts)
{
    return energy(config, opts);
}

EnergyResult tgtg_energy_sphere_plate(double radius, double d_gap, Boundary bc_sphere, Boundary bc_plate,
                                      const ScatteringOptions& opts)
{
    if (!(d_gap > 0.0))
        throw GeometryError("sphere-plate gap must be positive");
    SpherePairConfig c;
    c.r1 = radius;
    c.r2 = std::numeric_limits<double>::infinity();
    c.d_cc = radius + d_gap;
    c.bc_1 = bc_sphere;
    c.bc_2 = bc_plate;
    return energy(c, opts);
}

double round_trip_log_det(const SpherePairConfig& config, int l_max, double kappa)
{
    validate_config(config);
    if (l_max < 0 || l_max > GauntTable::kMaxLMax)
        throw std::invalid_argument("l_max out of range");
    std::array<int, kRuns> runs;
    runs.fill(l_max);
    return summed_log_det(config, runs, kappa, 0.0).value[kRuns - 1];
}

Eigen::MatrixXd round_trip_matrix(const SpherePairConfig& config, int l_max, int m, double kappa)
{
    validate_config(config);
    const auto t1 = scalar_sphere_t_table(l_max, kappa, config.r1, config.bc_1);
    const int n = l_max - m + 1;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        a(i, i) = t1.value(m + i);
    if (is_plane(config)) {
        const auto u = translation_block(l_max, m, kappa, 2.0 * config.d_cc).matrix;
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
        const double s = config.bc_2 == Boundary::Dirichlet ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i)
            p(i, i) = s * (((m + i + m) % 2 == 0) ? 1.0 : -1.0);
        return a * u * p;
    }
    const auto t2 = scalar_sphere_t_table(l_max, kappa, config.r2, config.bc_2);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        b(i, i) = t2.value(m + i);
    const auto u = translation_block(l_max, m, kappa, config.d_cc).matrix;
    return a * u.transpose() * b * u;
}

double dirichlet_monopole_asymptote(double r1, double r2, double d_cc)
{
    return -r1 * r2 / (4.0 * pi * d_cc * d_cc * d_cc);
}

}  // namespace casimir::scattering
