#include "casimir/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "casimir/numerics/parallel.hpp"
#include "casimir/numerics/summation.hpp"

namespace casimir::numerics {

namespace {

// 15-point Kronrod abscissae (descending, last is the centre) and weights,
// with the embedded 7-point Gauss weights for xgk[1], xgk[3], xgk[5], xgk[7].
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kNodes = 15;

// Values are carried as std::vector<double> of fixed dimension.
using Vec = std::vector<double>;
using MappedIntegrand = std::function<Vec(double)>;

struct Segment {
    double a = 0.0;
    double b = 0.0;
    Vec result;
    Vec error;
};

double node(int k, double centre, double half)
{
    // k = 0..6 left of centre, 7 centre, 8..14 right
    if (k < 7)
        return centre - half * xgk[k];
    if (k == 7)
        return centre;
    return centre + half * xgk[14 - k];
}

Segment gauss_kronrod(const MappedIntegrand& f, std::size_t dim, double a, double b, bool parallel)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<Vec, kNodes> fv;
    auto eval = [&](std::size_t k) {
        fv[k] = f(node(static_cast<int>(k), centre, half));
        if (fv[k].size() != dim)
            throw std::invalid_argument("integrand returned a vector of the wrong length");
        for (double v : fv[k])
            if (!std::isfinite(v))
                throw std::domain_error("integrand returned a non-finite value");
    };
    if (parallel)
        parallel_for(kNodes, eval);
    else
        for (std::size_t k = 0; k < kNodes; ++k)
            eval(k);

    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();

    Segment s{a, b, Vec(dim), Vec(dim)};
    for (std::size_t i = 0; i < dim; ++i) {
        auto w_k = [&](int k) { return k < 7 ? wgk[k] : (k == 7 ? wgk[7] : wgk[14 - k]); };
        double resk = 0.0, resg = 0.0, resabs = 0.0;
        for (int k = 0; k < kNodes; ++k) {
            const double v = fv[k][i];
            resk += w_k(k) * v;
            resabs += w_k(k) * std::abs(v);
            const int j = k <= 7 ? k : 14 - k;  // distance index from the left
            if (j % 2 == 1)
                resg += wg[j / 2] * v;
            else if (j == 7)
                resg += wg[3] * v;
        }
        const double reskh = 0.5 * resk;
        double resasc = 0.0;
        for (int k = 0; k < kNodes; ++k)
            resasc += w_k(k) * std::abs(fv[k][i] - reskh);

        const double result = resk * half;
        resabs *= std::abs(half);
        resasc *= std::abs(half);
        double err = std::abs((resk - resg) * half);
        if (resasc != 0.0 && err != 0.0)
            err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
        if (resabs > uflow / (50.0 * eps))
            err = std::max(50.0 * eps * resabs, err);
        s.result[i] = result;
        s.error[i] = err;
    }
    return s;
}

VectorQuadratureResult adapt(const MappedIntegrand& f, std::size_t dim, double a, double b,
                             const QuadratureOptions& opts)
{
    if (!(opts.rel_tol > 0.0) && !(opts.abs_tol > 0.0))
        throw std::invalid_argument("quadrature tolerance must be positive");
    if (dim == 0)
        throw std::invalid_argument("integrand dimension must be positive");

    std::vector<Segment> segs;
    const int n0 = std::max(1, opts.initial_intervals);
    for (int k = 0; k < n0; ++k) {
        const double lo = a + (b - a) * k / n0;
        const double hi = k + 1 == n0 ? b : a + (b - a) * (k + 1) / n0;
        segs.push_back(gauss_kronrod(f, dim, lo, hi, opts.parallel_nodes));
    }
    int evaluations = n0 * kNodes;

    auto totals = [&](Vec& val, Vec& err) {
        val.assign(dim, 0.0);
        err.assign(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            CompensatedSum v, e;
            for (const auto& s : segs) {
                v += s.result[i];
                e += s.error[i];
            }
            val[i] = v.value();
            err[i] = e.value();
        }
    };
    auto tolerance = [&](double v) { return std::max(opts.rel_tol * std::abs(v), opts.abs_tol); };

    Vec val, err;
    totals(val, err);
    bool converged = false;
    while (true) {
        converged = true;
        for (std::size_t i = 0; i < dim; ++i)
            if (err[i] > tolerance(val[i]))
                converged = false;
        if (converged || static_cast<int>(segs.size()) >= opts.max_intervals)
            break;

        // bisect the segment with the largest error relative to its component's tolerance
        std::size_t worst = 0;
        double worst_score = -1.0;
        for (std::size_t k = 0; k < segs.size(); ++k) {
            double score = 0.0;
            for (std::size_t i = 0; i < dim; ++i)
                score = std::max(score, segs[k].error[i] / tolerance(val[i]));
            if (score > worst_score) {
                worst_score = score;
                worst = k;
            }
        }
        const Segment parent = segs[worst];
        const double mid = 0.5 * (parent.a + parent.b);
        if (!(mid > parent.a && mid < parent.b))
            break;  // interval cannot be split further in double precision
        segs[worst] = gauss_kronrod(f, dim, parent.a, mid, opts.parallel_nodes);
        segs.insert(segs.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                    gauss_kronrod(f, dim, mid, parent.b, opts.parallel_nodes));
        evaluations += 2 * kNodes;
        totals(val, err);
    }

    return {std::move(val), std::move(err), evaluations, converged};
}

MappedIntegrand semiinfinite_map(const VectorIntegrand& f, double lower, double scale)
{
    if (!(scale > 0.0))
        throw std::invalid_argument("semi-infinite quadrature scale must be positive");
    return [f, lower, scale](double u) {
        const double om = 1.0 - u;
        const double x = lower + scale * u / om;
        const double jac = scale / (om * om);
        if (!std::isfinite(x) || !std::isfinite(jac))
            return Vec(f(lower).size(), 0.0);  // node rounded onto the point at infinity
        Vec v = f(x);
        for (double& c : v)
            c *= jac;
        return v;
    };
}

VectorIntegrand lift(const ScalarIntegrand& f)
{
    return [f](double x) { return Vec{f(x)}; };
}

QuadratureResult first(const VectorQuadratureResult& r)
{
    return {r.value[0], r.error_estimate[0], r.evaluations, r.converged};
}

}  // namespace

VectorQuadratureResult integrate_interval(const VectorIntegrand& f, std::size_t dim, double a,
                                          double b, const QuadratureOptions& opts)
{
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("integrate_interval needs finite limits");
    return adapt(f, dim, a, b, opts);
}

VectorQuadratureResult integrate_semiinfinite(const VectorIntegrand& f, std::size_t dim,
                                              const QuadratureOptions& opts, double lower)
{
    return adapt(semiinfinite_map(f, lower, opts.scale), dim, 0.0, 1.0, opts);
}

QuadratureResult integrate_interval(const ScalarIntegrand& f, double a, double b,
                                    const QuadratureOptions& opts)
{
    return first(integrate_interval(lift(f), 1, a, b, opts));
}

QuadratureResult integrate_semiinfinite(const ScalarIntegrand& f, const QuadratureOptions& opts,
                                        double lower)
{
    return first(integrate_semiinfinite(lift(f), 1, opts, lower));
}

}  // namespace casimir::numerics
