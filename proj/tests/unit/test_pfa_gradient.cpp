#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/pfa_gradient.hpp"

using namespace casimir;
using namespace casimir::pfa;

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double inf = std::numeric_limits<double>::infinity();

// Paraboloid z = d + r^2/(2R) over the flat plane z = 0, on a square patch
// reaching where U has dropped to 1e-6 of its apex value (H = 100 d).
struct Paraboloid {
    SurfaceProfile lower, upper;
};

Paraboloid paraboloid(double r, double d, int n)
{
    const double half = std::sqrt(2.0 * r * 99.0 * d);
    const double h = 2.0 * half / n;
    Paraboloid p;
    p.lower = make_profile(n, n, h, h, [](double, double) { return 0.0; });
    p.upper = make_profile(n, n, h, h, [&](double x, double y) { return d + (x * x + y * y) / (2.0 * r); });
    return p;
}

}  // namespace

TEST_SUITE("beta table")
{
    TEST_CASE("constants")
    {
        CHECK(beta::D == 2.0 / 3.0);
        CHECK(beta::N == 2.0 / 3.0 * (1.0 - 30.0 / (pi * pi)));
        CHECK(beta::DN == 2.0 / 3.0);
        CHECK(beta::ND == 2.0 / 3.0 - 80.0 / (7.0 * pi * pi));
        CHECK(beta::EM == 2.0 / 3.0 * (1.0 - 15.0 / (pi * pi)));
        CHECK(beta::EM == doctest::Approx(-0.34661).epsilon(1e-4));
        CHECK(beta::ND == doctest::Approx(-0.491289).epsilon(1e-5));
    }

    TEST_CASE("pairs")
    {
        const auto dd = beta_table(BoundaryKind::DD);
        CHECK(dd.alpha == 1.0);
        CHECK(dd.beta_1 == 2.0 / 3.0);
        CHECK(dd.beta_2 == 2.0 / 3.0);
        CHECK(std::abs(dd.beta_cross - 2.0 / 3.0) <= eps);

        const auto em = beta_table(BoundaryKind::EM);
        CHECK(em.alpha == 2.0);
        CHECK(em.beta_1 == beta::EM);

        const auto nd = beta_table(BoundaryKind::ND);
        CHECK(nd.alpha == -7.0 / 8.0);
        CHECK(nd.beta_1 == beta::DN);
        CHECK(nd.beta_2 == beta::ND);
        const auto dn = beta_table(BoundaryKind::DN);
        CHECK(dn.beta_1 == beta::ND);
        CHECK(dn.beta_2 == beta::DN);

        for (auto k : {BoundaryKind::DD, BoundaryKind::NN, BoundaryKind::DN, BoundaryKind::ND, BoundaryKind::EM}) {
            const auto p = beta_table(k);
            CHECK(p.beta_minus == 0.0);
            CHECK(std::abs(p.beta_cross - (2.0 - p.beta_1 - p.beta_2)) <= 4 * eps);
            CHECK(boundary_kind_from_string(to_string(k)) == k);
        }
        CHECK(boundary_kind_from_string("em") == BoundaryKind::EM);
        CHECK_THROWS_AS(boundary_kind_from_string("XY"), std::invalid_argument);
    }

    TEST_CASE("general cross coefficient from the tilt constraint")
    {
        auto u3 = [](double h) { return -1.0 / (h * h * h); };
        auto u2 = [](double h) { return -1.0 / (h * h); };
        CHECK(beta_cross_general(2.0 / 3.0, 2.0 / 3.0, u3, 1.3) == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
        CHECK(beta_cross_general(0.0, 0.0, u2, 0.7) == doctest::Approx(1.5).epsilon(1e-8));
        // beta_1 + beta_2 = (1 - H U'/U)/2 = 2 for H^-3
        CHECK(std::abs(beta_cross_general(1.2, 0.8, u3, 2.0)) < 1e-8);
        CHECK_THROWS_AS(beta_cross_general(0, 0, [](double) { return 0.0; }, 1.0), std::invalid_argument);
    }
}

TEST_SUITE("two spheres")
{
    TEST_CASE("PFA closed form")
    {
        TwoSphereConfig c;
        c.pair = beta_table(BoundaryKind::EM);
        c.r1 = c.r2 = 3.0;
        c.d = 0.2;
        CHECK(pfa_two_spheres(c) == doctest::Approx(-pi * pi * pi * 3.0 / (1440.0 * 0.04)).epsilon(1e-14));

        TwoSphereConfig p;
        p.r1 = 100.0;
        p.r2 = inf;
        p.d = 1.0;
        CHECK(pfa_two_spheres(p) == doctest::Approx(-2.1532136).epsilon(1e-7));
        const double e = pfa_two_spheres(p);
        p.d = 2.0;
        CHECK(pfa_two_spheres(p) == doctest::Approx(e / 4).epsilon(1e-15));
        p.d = -1.0;
        CHECK_THROWS_AS(pfa_two_spheres(p), std::invalid_argument);
    }

    TEST_CASE("gradient-corrected closed form")
    {
        TwoSphereConfig p;
        p.r1 = 1.0;
        p.d = 0.1;
        CHECK(gradient_corrected_two_spheres(p) / pfa_two_spheres(p) == doctest::Approx(1.0 + 0.1 / 3.0).epsilon(1e-14));

        TwoSphereConfig s;
        s.pair = beta_table(BoundaryKind::EM);
        s.r1 = s.r2 = 1.0;
        s.d = 0.05;
        const double expected = 1.0 - 0.025 + (2.0 * beta::EM - 1.0) * 0.1;
        CHECK(gradient_corrected_two_spheres(s) / pfa_two_spheres(s) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(expected == doctest::Approx(0.80568).epsilon(1e-5));

        s.d = 1e-9;
        CHECK(gradient_corrected_two_spheres(s) / pfa_two_spheres(s) == doctest::Approx(1.0).epsilon(1e-8));

        s.pair = beta_table(BoundaryKind::ND);
        CHECK_THROWS_AS(gradient_corrected_two_spheres(s), std::invalid_argument);
        s.d = 0.5;
        CHECK(outside_small_gap_regime(s));
    }
}

TEST_SUITE("profile integrator")
{
    TEST_CASE("flat profiles give area times U(d)")
    {
        const auto pair = beta_table(BoundaryKind::EM);
        const auto lo = make_profile(20, 12, 0.1, 0.2, [](double, double) { return -0.3; });
        const auto up = make_profile(20, 12, 0.1, 0.2, [](double, double) { return 0.2; });
        const auto r = gradient_expansion_energy(lo, up, pair);
        const double area = 20 * 0.1 * 12 * 0.2;
        CHECK(r.energy == doctest::Approx(area * plate_energy_density(pair, 0.5)).epsilon(1e-14));
        CHECK(r.energy == r.pfa_energy);
        CHECK(r.max_slope == 0.0);
        CHECK(r.warnings.empty());
    }

    TEST_CASE("errors and warnings")
    {
        const auto pair = beta_table(BoundaryKind::DD);
        const auto lo = make_profile(16, 16, 0.1, 0.1, [](double, double) { return 0.0; });
        const auto touching = make_profile(16, 16, 0.1, 0.1, [](double x, double) { return x; });
        CHECK_THROWS_AS(gradient_expansion_energy(lo, touching, pair), GeometryError);
        const auto steep = make_profile(16, 16, 0.1, 0.1, [](double x, double) { return 2.0 + 1.5 * x; });
        CHECK_THROWS_AS(gradient_expansion_energy(lo, steep, pair), std::invalid_argument);
        const auto tilted = make_profile(16, 16, 0.1, 0.1, [](double x, double) { return 2.0 + 0.5 * x; });
        const auto r = gradient_expansion_energy(lo, tilted, pair);
        CHECK(r.max_slope == doctest::Approx(0.5));
        CHECK_FALSE(r.warnings.empty());
        const auto other = make_profile(8, 16, 0.1, 0.1, [](double, double) { return 1.0; });
        CHECK_THROWS_AS(gradient_expansion_energy(lo, other, pair), std::invalid_argument);
    }

    TEST_CASE("coarse grid is flagged")
    {
        // bump of width ~ one cell: the half-resolution copy differs a lot
        const auto lo = make_profile(16, 16, 0.5, 0.5, [](double, double) { return 0.0; });
        const auto up = make_profile(16, 16, 0.5, 0.5, [](double x, double y) {
            return 0.3 - 0.2 * std::exp(-(x * x + y * y) / 0.5);
        });
        const auto r = gradient_expansion_energy(lo, up, beta_table(BoundaryKind::DD));
        CHECK(r.coarse_relative_change > 0.01);
        bool flagged = false;
        for (const auto& w : r.warnings)
            flagged = flagged || w.find("coarse") != std::string::npos;
        CHECK(flagged);
    }

    TEST_CASE("paraboloid reproduces the sphere-plate law at small d/R")
    {
        const double r = 1.0, d = 0.002;
        const auto p = paraboloid(r, d, 400);
        const auto pair = beta_table(BoundaryKind::DD);
        const auto g = gradient_expansion_energy(p.lower, p.upper, pair);
        TwoSphereConfig c;
        c.r1 = r;
        c.d = d;
        CHECK(std::abs(g.energy / gradient_corrected_two_spheres(c) - 1.0) < 0.005);
        CHECK(g.coarse_relative_change < 0.01);
    }

    TEST_CASE("paraboloid gradient term against its closed form")
    {
        // H = d + r^2/2R over a plane inside the disc H < Hm, flat H = Hm
        // outside. With U = c/H^3 the disc gives
        //   PFA part  2 pi R c (1/d^2 - 1/Hm^2) / 2
        //   beta part 4 pi beta c [1/d - 1/Hm - d (1/d^2 - 1/Hm^2) / 2]
        // so at Hm -> infinity E / E_PFA = 1 + 2 beta d / R (a sphere differs by
        // -d/R from its non-parabolic shape).
        const double r = 1.0, d = 0.1, hm = 3.0 * d;
        const double rho = std::sqrt(2.0 * r * (hm - d));
        const int n = 800;
        const double l = 2.4 * rho, h = l / n;
        const auto lo = make_profile(n, n, h, h, [](double, double) { return 0.0; });
        const auto up = make_profile(n, n, h, h, [&](double x, double y) {
            return std::min(hm, d + (x * x + y * y) / (2.0 * r));
        });
        const auto pair = beta_table(BoundaryKind::DD);
        const auto g = gradient_expansion_energy(lo, up, pair);
        const double c = -pair.alpha * pi * pi / 1440.0;
        const double outside = c / (hm * hm * hm) * (l * l - pi * rho * rho);
        const double pfa_disc = pi * r * c * (1.0 / (d * d) - 1.0 / (hm * hm));
        const double beta_disc =
            4.0 * pi * pair.beta_2 * c * (1.0 / d - 1.0 / hm - 0.5 * d * (1.0 / (d * d) - 1.0 / (hm * hm)));
        CHECK(g.pfa_energy == doctest::Approx(pfa_disc + outside).epsilon(1e-4));
        CHECK(g.energy - g.pfa_energy == doctest::Approx(beta_disc).epsilon(0.01));
        // beta terms change the result by O(d/R)
        const double share = beta_disc / pfa_disc;
        CHECK(share > 0.1 * d / r);
        CHECK(share < 2.0 * d / r);
    }

    TEST_CASE("zeroed beta coefficients leave only PFA")
    {
        const auto p = paraboloid(1.0, 0.002, 200);
        BoundaryPair zero = beta_table(BoundaryKind::DD);
        zero.beta_1 = zero.beta_2 = zero.beta_cross = 0.0;
        const auto g = gradient_expansion_energy(p.lower, p.upper, zero);
        CHECK(g.energy == g.pfa_energy);
    }

    TEST_CASE("second-order grid convergence")
    {
        auto run = [](int n) {
            const double l = 4.0, h = l / n;
            const auto lo = make_profile(n, n, h, h, [](double x, double y) {
                return 0.1 * std::exp(-((x - 0.3) * (x - 0.3) + y * y) / 0.5);
            });
            const auto up = make_profile(n, n, h, h, [](double x, double y) {
                return 1.0 - 0.2 * std::exp(-(x * x + (y + 0.2) * (y + 0.2)) / 0.4);
            });
            return gradient_expansion_energy(lo, up, beta_table(BoundaryKind::EM)).energy;
        };
        const double e1 = run(40), e2 = run(80), e3 = run(160);
        CHECK((e1 - e2) / (e2 - e3) == doctest::Approx(4.0).epsilon(0.1));
    }

    TEST_CASE("rigid in-plane translation")
    {
        // periodic bumps shifted by whole cells: identical samples, permuted
        const int n = 64;
        const double h = 2 * pi / n;
        auto lower = [&](double x, double y) { return 0.05 * std::sin(x) * std::cos(2 * y); };
        auto upper = [&](double x, double y) { return 1.0 + 0.08 * std::cos(x + y); };
        const auto pair = beta_table(BoundaryKind::NN);
        const auto e0 = gradient_expansion_energy(make_profile(n, n, h, h, lower), make_profile(n, n, h, h, upper), pair);
        const double sx = 5 * h, sy = -3 * h;
        const auto e1 = gradient_expansion_energy(
            make_profile(n, n, h, h, [&](double x, double y) { return lower(x - sx, y - sy); }),
            make_profile(n, n, h, h, [&](double x, double y) { return upper(x - sx, y - sy); }), pair);
        // periodic profiles sampled on a full period; only the edge stencils differ
        CHECK(e1.energy == doctest::Approx(e0.energy).epsilon(1e-4));
    }

    TEST_CASE("tilting the reference plane is second order in the tilt only with the constrained cross term")
    {
        // H_i -> H_i - eps (x + H_i dH_i/dx) with analytic derivatives
        const int n = 240;
        struct Bump {
            double base, amp, x0, y0, w2;
            double f(double x, double y) const
            {
                return base + amp * std::exp(-((x - x0) * (x - x0) + (y - y0) * (y - y0)) / w2);
            }
            double fx(double x, double y) const { return -2.0 * (x - x0) / w2 * (f(x, y) - base); }
        };
        double scale = 1.0;
        auto energy = [&](double tilt, const BoundaryPair& pair) {
            // scale stretches the bumps laterally at fixed amplitude
            const double l = 12.0 * scale, h = l / n;
            const Bump b1{0.0, 0.2, 0.4 * scale, -0.3 * scale, 1.0 * scale * scale};
            const Bump b2{1.0, -0.25, -0.5 * scale, 0.2 * scale, 1.5 * scale * scale};
            const auto lo = make_profile(n, n, h, h, [&](double x, double y) {
                return b1.f(x, y) - tilt * (x + b1.f(x, y) * b1.fx(x, y));
            });
            const auto up = make_profile(n, n, h, h, [&](double x, double y) {
                return b2.f(x, y) - tilt * (x + b2.f(x, y) * b2.fx(x, y));
            });
            return gradient_expansion_energy(lo, up, pair).energy;
        };
        // the odd part in the tilt isolates the first-order response; the even
        // part comes from the tilted flat margin and is O(eps^2) either way
        auto odd = [&](double t, const BoundaryPair& pair) { return 0.5 * (energy(t, pair) - energy(-t, pair)); };
        const double t = 1e-4;
        const auto good = beta_table(BoundaryKind::DD);
        auto bad = good;
        bad.beta_cross += 1.0;
        // with the constrained cross term the first-order response only comes
        // from third-derivative terms beyond the truncated expansion, so it
        // fades as the profiles get gentler
        const double ratio_sharp = std::abs(odd(t, good)) / std::abs(odd(t, bad));
        scale = 2.0;
        const double o_good = std::abs(odd(t, good));
        const double o_bad = std::abs(odd(t, bad));
        const double ratio_gentle = o_good / o_bad;
        CHECK(ratio_gentle < 0.05);
        CHECK(ratio_gentle < ratio_sharp / 2.5);
        CHECK(std::abs(odd(t / 2, bad)) / o_bad == doctest::Approx(0.5).epsilon(0.01));
        // the even part is second order in the tilt
        auto even = [&](double tt) { return 0.5 * (energy(tt, good) + energy(-tt, good)) - energy(0.0, good); };
        CHECK(even(t / 2) / even(t) == doctest::Approx(0.25).epsilon(0.01));
    }
}
