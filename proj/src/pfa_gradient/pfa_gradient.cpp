#include "casimir/pfa_gradient.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/numerics/summation.hpp"

namespace casimir::pfa {

namespace {

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || std::isnan(v))
        throw std::invalid_argument(std::string(what) + " must be positive");
}

struct Gradient {
    std::vector<double> gx, gy;
};

Gradient gradient(const SurfaceProfile& p)
{
    Gradient g{std::vector<double>(p.heights.size()), std::vector<double>(p.heights.size())};
    for (int j = 0; j < p.ny; ++j)
        for (int i = 0; i < p.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * p.nx + i;
            if (p.nx > 1) {
                if (i == 0)
                    g.gx[k] = (p.at(1, j) - p.at(0, j)) / p.dx;
                else if (i == p.nx - 1)
                    g.gx[k] = (p.at(i, j) - p.at(i - 1, j)) / p.dx;
                else
                    g.gx[k] = (p.at(i + 1, j) - p.at(i - 1, j)) / (2.0 * p.dx);
            }
            if (p.ny > 1) {
                if (j == 0)
                    g.gy[k] = (p.at(i, 1) - p.at(i, 0)) / p.dy;
                else if (j == p.ny - 1)
                    g.gy[k] = (p.at(i, j) - p.at(i, j - 1)) / p.dy;
                else
                    g.gy[k] = (p.at(i, j + 1) - p.at(i, j - 1)) / (2.0 * p.dy);
            }
        }
    return g;
}

void validate(const SurfaceProfile& p, const char* which)
{
    if (p.nx < 1 || p.ny < 1)
        throw std::invalid_argument(std::string(which) + " profile is empty");
    require_positive(p.dx, "grid spacing dx");
    require_positive(p.dy, "grid spacing dy");
    if (p.heights.size() != static_cast<std::size_t>(p.nx) * p.ny)
        throw std::invalid_argument(std::string(which) + " profile has the wrong number of samples");
    for (double h : p.heights)
        if (!std::isfinite(h))
            throw std::invalid_argument(std::string(which) + " profile contains a non-finite height");
}

struct Integral {
    double energy = 0.0;
    double pfa = 0.0;
    double min_gap = 0.0;
    double max_slope = 0.0;
};

Integral integrate(const SurfaceProfile& lower, const SurfaceProfile& upper, const BoundaryPair& pair)
{
    const Gradient g1 = gradient(lower);
    const Gradient g2 = gradient(upper);
    numerics::CompensatedSum e, e0;
    Integral r;
    r.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lower.heights.size(); ++k) {
        const double h = upper.heights[k] - lower.heights[k];
        r.min_gap = std::min(r.min_gap, h);
        if (!(h > 0.0)) {
            std::ostringstream os;
            os << "surfaces touch or interpenetrate: gap " << h << " at sample " << k;
            throw GeometryError(os.str());
        }
        const double s1 = g1.gx[k] * g1.gx[k] + g1.gy[k] * g1.gy[k];
        const double s2 = g2.gx[k] * g2.gx[k] + g2.gy[k] * g2.gy[k];
        const double c = g1.gx[k] * g2.gx[k] + g1.gy[k] * g2.gy[k];
        const double sh = s1 + s2 - 2.0 * c;  // |grad H|^2
        r.max_slope = std::max({r.max_slope, std::sqrt(s1), std::sqrt(s2), std::sqrt(sh)});
        const double u = plate_energy_density(pair, h);
        e0 += u;
        e += u * (1.0 + pair.beta_1 * s1 + pair.beta_2 * s2 + pair.beta_cross * c);
    }
    const double cell = lower.dx * lower.dy;
    r.energy = e.value() * cell;
    r.pfa = e0.value() * cell;
    return r;
}

// Drops a trailing row/column so both dimensions are even.
SurfaceProfile crop_even(const SurfaceProfile& p)
{
    SurfaceProfile c = p;
    c.nx = p.nx - p.nx % 2;
    c.ny = p.ny - p.ny % 2;
    c.heights.resize(static_cast<std::size_t>(c.nx) * c.ny);
    for (int j = 0; j < c.ny; ++j)
        for (int i = 0; i < c.nx; ++i)
            c.at(i, j) = p.at(i, j);
    return c;
}

// Half-resolution copy: each coarse sample is the mean of a 2x2 block, which
// sits at the block centre to second order.
SurfaceProfile coarsen(const SurfaceProfile& p)
{
    SurfaceProfile c;
    c.nx = p.nx / 2;
    c.ny = p.ny / 2;
    c.dx = 2.0 * p.dx;
    c.dy = 2.0 * p.dy;
    c.heights.resize(static_cast<std::size_t>(c.nx) * c.ny);
    for (int j = 0; j < c.ny; ++j)
        for (int i = 0; i < c.nx; ++i)
            c.at(i, j) = 0.25 * (p.at(2 * i, 2 * j) + p.at(2 * i + 1, 2 * j) + p.at(2 * i, 2 * j + 1) +
                                 p.at(2 * i + 1, 2 * j + 1));
    return c;
}

}  // namespace

std::string to_string(BoundaryKind k)
{
    switch (k) {
    case BoundaryKind::DD: return "DD";
    case BoundaryKind::NN: return "NN";
    case BoundaryKind::DN: return "DN";
    case BoundaryKind::ND: return "ND";
    case BoundaryKind::EM: return "EM";
    }
    return "?";
}

BoundaryKind boundary_kind_from_string(const std::string& s)
{
    std::string u;
    for (char ch : s)
        u += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    for (BoundaryKind k : {BoundaryKind::DD, BoundaryKind::NN, BoundaryKind::DN, BoundaryKind::ND, BoundaryKind::EM})
        if (u == to_string(k))
            return k;
    throw std::invalid_argument("unknown boundary kind '" + s + "' (expected DD, NN, DN, ND or EM)");
}

BoundaryPair beta_table(BoundaryKind kind)
{
    BoundaryPair p;
    p.kind = kind;
    switch (kind) {
    case BoundaryKind::DD:
        p.alpha = 1.0;
        p.beta_1 = p.beta_2 = beta::D;
        break;
    case BoundaryKind::NN:
        p.alpha = 1.0;
        p.beta_1 = p.beta_2 = beta::N;
        break;
    case BoundaryKind::ND:  // N on the upper surface, D on the lower
        p.alpha = -7.0 / 8.0;
        p.beta_1 = beta::DN;
        p.beta_2 = beta::ND;
        break;
    case BoundaryKind::DN:
        p.alpha = -7.0 / 8.0;
        p.beta_1 = beta::ND;
        p.beta_2 = beta::DN;
        break;
    case BoundaryKind::EM:
        p.alpha = 2.0;
        p.beta_1 = p.beta_2 = beta::EM;
        break;
    }
    p.beta_cross = 2.0 - p.beta_1 - p.beta_2;
    p.beta_minus = 0.0;
    return p;
}

double plate_energy_density(const BoundaryPair& pair, double h)
{
    require_positive(h, "separation");
    return -pair.alpha * pi * pi / (1440.0 * h * h * h);
}

double beta_cross_general(double beta_1, double beta_2, const std::function<double(double)>& u, double h)
{
    require_positive(h, "separation");
    const double u0 = u(h);
    if (u0 == 0.0 || !std::isfinite(u0))
        throw std::invalid_argument("U(H) must be finite and non-zero");
    const double step = 1e-6 * h;
    const double du = (u(h + step) - u(h - step)) / (2.0 * step);
    return 0.5 * (1.0 - h * du / u0) - beta_1 - beta_2;
}

double pfa_two_spheres(const TwoSphereConfig& c)
{
    require_positive(c.r1, "R1");
    require_positive(c.r2, "R2");
    require_positive(c.d, "d");
    if (!std::isfinite(c.r1) || !std::isfinite(c.d))
        throw std::invalid_argument("R1 and d must be finite");
    // R1 R2 / (R1 + R2), written so that R2 = infinity gives R1
    const double reduced = std::isinf(c.r2) ? c.r1 : c.r1 / (1.0 + c.r1 / c.r2);
    return -c.pair.alpha * pi * pi * pi * reduced / (1440.0 * c.d * c.d);
}

double gradient_corrected_two_spheres(const TwoSphereConfig& c)
{
    if (c.pair.kind == BoundaryKind::DN || c.pair.kind == BoundaryKind::ND)
        throw std::invalid_argument("closed-form two-sphere correction needs identical boundary conditions; "
                                    "use the profile integrator for mixed pairs");
    const double e = pfa_two_spheres(c);
    const double beta = c.pair.beta_1;
    const double inv_sum = std::isinf(c.r2) ? 0.0 : 1.0 / (c.r1 + c.r2);
    const double inv_r2 = std::isinf(c.r2) ? 0.0 : 1.0 / c.r2;
    return e * (1.0 - c.d * inv_sum + (2.0 * beta - 1.0) * (c.d / c.r1 + c.d * inv_r2));
}

bool outside_small_gap_regime(const TwoSphereConfig& c)
{
    return c.d / c.r1 > 0.2 || c.d / c.r2 > 0.2;
}

SurfaceProfile make_profile(int nx, int ny, double dx, double dy, const std::function<double(double, double)>& h)
{
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("profile grid must have at least one sample");
    SurfaceProfile p;
    p.nx = nx;
    p.ny = ny;
    p.dx = dx;
    p.dy = dy;
    p.heights.resize(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            p.at(i, j) = h(p.x(i), p.y(j));
    return p;
}

GradientResult gradient_expansion_energy(const SurfaceProfile& lower, const SurfaceProfile& upper,
                                         const BoundaryPair& pair)
{
    validate(lower, "lower");
    validate(upper, "upper");
    if (lower.nx != upper.nx || lower.ny != upper.ny || lower.dx != upper.dx || lower.dy != upper.dy)
        throw std::invalid_argument("lower and upper profiles must share the same grid");

    const Integral fine = integrate(lower, upper, pair);
    if (fine.max_slope >= 1.0)
        throw std::invalid_argument("surface slope reaches 1; the gradient expansion does not apply");

    GradientResult r;
    r.energy = fine.energy;
    r.pfa_energy = fine.pfa;
    r.min_gap = fine.min_gap;
    r.max_slope = fine.max_slope;
    if (fine.max_slope > 0.3) {
        std::ostringstream os;
        os << "maximum slope " << fine.max_slope << " exceeds 0.3; gradient expansion accuracy degrades";
        r.warnings.push_back(os.str());
    }

    r.coarse_relative_change = std::numeric_limits<double>::quiet_NaN();
    if (lower.nx >= 8 && lower.ny >= 8) {
        const SurfaceProfile l = crop_even(lower), u = crop_even(upper);
        const double reference = (l.nx == lower.nx && l.ny == lower.ny) ? fine.energy : integrate(l, u, pair).energy;
        const Integral coarse = integrate(coarsen(l), coarsen(u), pair);
        if (reference != 0.0)
            r.coarse_relative_change = std::abs(coarse.energy - reference) / std::abs(reference);
        if (r.coarse_relative_change > 0.01) {
            std::ostringstream os;
            os << "grid may be too coarse: halving the resolution changes the energy by "
               << 100.0 * r.coarse_relative_change << "%";
            r.warnings.push_back(os.str());
        }
    } else if (lower.nx > 1 || lower.ny > 1) {
        r.warnings.push_back("grid too small for the resolution check");
    }
    return r;
}

}  // namespace casimir::pfa
