#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/numerics/bessel.hpp"
#include "casimir/numerics/linalg.hpp"
#include "casimir/numerics/matsubara.hpp"
#include "casimir/numerics/quadrature.hpp"
#include "casimir/numerics/summation.hpp"
#include "../support/bessel_oracle.hpp"

using namespace casimir;
using namespace casimir::numerics;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("bessel")
{
    TEST_CASE("closed forms at low order")
    {
        CHECK(rel(modified_spherical_i(0, 1.0), std::sinh(1.0)) < 1e-15);
        CHECK(rel(modified_spherical_k(0, 1.0), 0.5778636748954609) < 1e-14);
        CHECK(rel(modified_spherical_k(1, 1.0), 1.1557273497909217) < 1e-14);
        CHECK(rel(modified_spherical_k(0, 1.0), pi / 2 * std::exp(-1.0)) < 1e-15);
    }

    TEST_CASE("small argument series for i_1")
    {
        const double v = modified_spherical_i(1, 0.01);
        CHECK(rel(v, oracle::spherical_i(1, oracle::mp("0.01")).convert_to<double>()) < 1e-14);
        CHECK(std::abs(v - 0.01 / 3) < 1e-6);
    }

    TEST_CASE("i_5(2) and k_4(3) against 60-digit references")
    {
        CHECK(rel(modified_spherical_i(5, 2.0), oracle::spherical_i(5, 2).convert_to<double>()) < 1e-13);
        CHECK(rel(modified_spherical_k(4, 3.0), oracle::spherical_k(4, 3).convert_to<double>()) < 1e-13);
    }

    TEST_CASE("relative accuracy 1e-12 over l <= 60, x in [1e-3, 100]")
    {
        const std::vector<double> xs = {1e-3, 0.01, 0.1, 0.5, 1.0, 2.5, 7.0, 15.0, 33.0, 60.0, 100.0};
        double worst_i = 0.0, worst_k = 0.0;
        for (double x : xs) {
            const auto t = spherical_bessel_table(60, x);
            for (int l = 0; l <= 60; ++l) {
                const oracle::mp xm(x);
                const double li = log(oracle::spherical_i(l, xm)).convert_to<double>();
                const double lk = log(oracle::spherical_k(l, xm)).convert_to<double>();
                // relative error of the value = absolute error of its log
                worst_i = std::max(worst_i, std::abs(t.log_i[l] - li));
                worst_k = std::max(worst_k, std::abs(t.log_k[l] - lk));
                if (std::abs(li) < 600 && std::abs(lk) < 600) {
                    CHECK(rel(modified_spherical_i(l, x), std::exp(li)) < 1e-12);
                    CHECK(rel(modified_spherical_k(l, x), std::exp(lk)) < 1e-12);
                }
            }
        }
        CHECK(worst_i < 1e-12);
        CHECK(worst_k < 1e-12);
    }

    TEST_CASE("log variants stay finite at large argument and order")
    {
        const double x = 900.0;
        const oracle::mp xm(x);
        for (int l : {0, 10, 80}) {
            CHECK(std::abs(log_modified_spherical_i(l, x) - log(oracle::spherical_i(l, xm)).convert_to<double>()) < 1e-12 * x);
            CHECK(std::abs(log_modified_spherical_k(l, x) - log(oracle::spherical_k(l, xm)).convert_to<double>()) < 1e-12 * x);
        }
        CHECK(std::isfinite(log_modified_spherical_k(150, 1e-3)));
        CHECK(std::isfinite(log_modified_spherical_i(150, 1e-3)));
    }

    TEST_CASE("Wronskian i k' - i' k = -(pi/2)/x^2")
    {
        for (double x = 0.1; x <= 50.0; x *= 1.37) {
            const auto t = spherical_bessel_table(40, x);
            for (int l = 0; l <= 40; ++l) {
                // i k (dlog_k - dlog_i), evaluated in log form
                const double w = -std::exp(t.log_i[l] + t.log_k[l]) * (t.dlog_i[l] - t.dlog_k[l]);
                CHECK(rel(w, -(pi / 2) / (x * x)) < 1e-10);
            }
        }
    }

    TEST_CASE("derivatives match the recurrences")
    {
        const double x = 1.7;
        CHECK(rel(modified_spherical_i_prime(0, x), modified_spherical_i(1, x)) < 1e-14);
        CHECK(rel(modified_spherical_k_prime(0, x), -modified_spherical_k(1, x)) < 1e-14);
        const double h = 1e-5;
        for (int l : {1, 3, 7}) {
            const double fd_i = (modified_spherical_i(l, x + h) - modified_spherical_i(l, x - h)) / (2 * h);
            const double fd_k = (modified_spherical_k(l, x + h) - modified_spherical_k(l, x - h)) / (2 * h);
            CHECK(rel(modified_spherical_i_prime(l, x), fd_i) < 1e-8);
            CHECK(rel(modified_spherical_k_prime(l, x), fd_k) < 1e-8);
        }
    }

    TEST_CASE("domain and overflow errors")
    {
        CHECK_THROWS_AS(modified_spherical_i(0, 0.0), std::domain_error);
        CHECK_THROWS_AS(modified_spherical_k(2, -1.0), std::domain_error);
        CHECK_THROWS_AS(modified_spherical_i(-1, 1.0), std::domain_error);
        CHECK_THROWS_AS(modified_spherical_i(0, 800.0), std::overflow_error);
        CHECK_THROWS_AS(modified_spherical_k(200, 1e-3), std::overflow_error);
    }
}

TEST_SUITE("quadrature")
{
    TEST_CASE("semi-infinite examples")
    {
        QuadratureOptions o;
        o.rel_tol = 1e-10;
        auto r1 = integrate_semiinfinite([](double k) { return std::exp(-2 * k); }, o);
        CHECK(r1.converged);
        CHECK(std::abs(r1.value - 0.5) < 1e-10);

        auto r2 = integrate_semiinfinite(
            [](double u) { return (3 + 6 * u + 5 * u * u + 2 * u * u * u + u * u * u * u) * std::exp(-2 * u); }, o);
        CHECK(std::abs(r2.value - 5.75) < 1e-9);

        auto r3 = integrate_semiinfinite([](double k) { return k * k * std::exp(-k); }, o);
        CHECK(std::abs(r3.value - 2.0) < 1e-10);
        CHECK(r3.evaluations > 0);
        CHECK(r3.error_estimate >= 0.0);
    }

    TEST_CASE("finite interval and lower limit")
    {
        auto r = integrate_interval([](double x) { return std::cos(x); }, 0.0, pi / 2);
        CHECK(std::abs(r.value - 1.0) < 1e-12);
        auto s = integrate_semiinfinite([](double x) { return std::exp(-x); }, {}, 3.0);
        CHECK(rel(s.value, std::exp(-3.0)) < 1e-10);
    }

    TEST_CASE("tightening the tolerance moves the result by less than the loose error estimate")
    {
        const auto f = [](double k) { return k * k * k * std::exp(-1.3 * k) * std::log1p(k); };
        for (double tol : {1e-4, 1e-6, 1e-8}) {
            QuadratureOptions lo, hi;
            lo.rel_tol = tol;
            hi.rel_tol = tol / 10;
            const auto a = integrate_semiinfinite(f, lo);
            const auto b = integrate_semiinfinite(f, hi);
            CHECK(std::abs(a.value - b.value) <= a.error_estimate);
        }
    }

    TEST_CASE("vector integrand converges every component")
    {
        auto r = integrate_semiinfinite(
            [](double k) { return std::vector<double>{std::exp(-k), k * std::exp(-2 * k)}; }, 2);
        CHECK(r.converged);
        CHECK(std::abs(r.value[0] - 1.0) < 1e-10);
        CHECK(std::abs(r.value[1] - 0.25) < 1e-10);
    }

    TEST_CASE("divergent integral is reported, not hidden")
    {
        QuadratureOptions o;
        o.max_intervals = 200;
        auto r = integrate_semiinfinite([](double x) { return 1.0 / (1.0 + x); }, o);
        CHECK_FALSE(r.converged);
        CHECK(r.error_estimate > 0.0);
    }

    TEST_CASE("non-finite integrand throws")
    {
        CHECK_THROWS_AS(integrate_interval([](double) { return NAN; }, 0.0, 1.0), std::domain_error);
    }
}

namespace {

// Perfect-mirror plate summand for one scalar channel at imaginary frequency xi:
// int_xi^inf q log(1 - e^{-2qa}) dq, summed as a rapidly converging series.
double plate_summand(double xi, double a)
{
    double s = 0.0;
    for (int n = 1; n < 400; ++n) {
        const double z = 2.0 * n * a;
        s -= std::exp(-z * xi) * (z * xi + 1.0) / (n * z * z);
    }
    return s;
}

}  // namespace

TEST_SUITE("matsubara")
{
    TEST_CASE("grid invariants")
    {
        MatsubaraGrid g(0.3);
        CHECK(g.frequency(0) == 0.0);
        CHECK(MatsubaraGrid::weight(0) == 0.5);
        CHECK(MatsubaraGrid::weight(5) == 1.0);
        for (int n = 1; n < 10; ++n)
            CHECK(g.frequency(n) > g.frequency(n - 1));
        CHECK_THROWS_AS(MatsubaraGrid(0.0), std::invalid_argument);
    }

    TEST_CASE("zero summand")
    {
        auto r = matsubara_sum([](double) { return 0.0; }, MatsubaraGrid(1.0));
        CHECK(r.value == 0.0);
        CHECK(r.converged);
    }

    TEST_CASE("geometric series")
    {
        const double t = 0.7;
        MatsubaraGrid g(t);
        const double xi1 = g.frequency(1);
        auto r = matsubara_sum([&](double xi) { return std::exp(-xi / xi1); }, g);
        const double e = std::exp(-1.0);
        CHECK(rel(r.value, t * (0.5 + e / (1 - e))) < 1e-11);
    }

    TEST_CASE("low temperature reproduces the frequency integral")
    {
        const double a = 1.0;
        const auto f = [&](double xi) { return plate_summand(xi, a); };
        const auto integral = integrate_semiinfinite(f, {1e-12, 1e-300, 0.5});
        const double t0 = integral.value / (2 * pi);
        const auto r = matsubara_sum(f, MatsubaraGrid(0.02));
        CHECK(rel(r.value, t0) < 1e-3);
    }

    TEST_CASE("approach to the integral is second order in T")
    {
        // smooth summand with nonzero slope at xi = 0
        const auto f = [](double xi) { return std::exp(-xi) * (1.0 + 0.5 * xi); };
        const double limit = 1.5 / (2 * pi);  // (1/2pi) int_0^inf f
        std::vector<double> dev;
        for (double t : {0.02, 0.01, 0.005})
            dev.push_back(std::abs(matsubara_sum(f, MatsubaraGrid(t)).value - limit));
        CHECK(dev[0] / dev[1] == doctest::Approx(4.0).epsilon(0.02));
        CHECK(dev[1] / dev[2] == doctest::Approx(4.0).epsilon(0.02));
    }

    TEST_CASE("non-decaying summand flagged")
    {
        MatsubaraOptions o;
        o.max_terms = 5000;
        auto r = matsubara_sum([](double) { return 1.0; }, MatsubaraGrid(1.0), o);
        CHECK_FALSE(r.converged);
    }
}

TEST_SUITE("log_det_one_minus")
{
    TEST_CASE("trivial matrices")
    {
        CHECK(log_det_one_minus(Eigen::MatrixXd::Zero(4, 4)) == 0.0);
        Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
        d(0, 0) = 0.5;
        d(1, 1) = 0.25;
        CHECK(std::abs(log_det_one_minus(d) - (std::log(0.5) + std::log(0.75))) < 1e-15);
        CHECK(std::abs(log_det_one_minus(d) + 0.9808292530117262) < 1e-14);
    }

    TEST_CASE("random 8x8 with norm 0.3 against the power series")
    {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::MatrixXd a(8, 8);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    a(i, j) = g(rng);
            a *= 0.3 / a.operatorNorm();
            // oracle: -sum_{j<=40} tr(A^j)/j
            double series = 0.0;
            Eigen::MatrixXd p = Eigen::MatrixXd::Identity(8, 8);
            for (int j = 1; j <= 40; ++j) {
                p = p * a;
                series -= p.trace() / j;
            }
            CHECK(std::abs(log_det_one_minus(a) - series) < 1e-10);
        }
    }

    TEST_CASE("small-norm branch is continuous with the LU branch")
    {
        Eigen::MatrixXd a(3, 3);
        a << 0.3, 0.1, -0.2, 0.05, 0.2, 0.1, -0.1, 0.0, 0.4;
        a *= 2e-7 / a.norm();
        double oracle_value = 0.0;
        Eigen::MatrixXd p = Eigen::MatrixXd::Identity(3, 3);
        for (int j = 1; j <= 6; ++j) {
            p = p * a;
            oracle_value -= p.trace() / j;
        }
        CHECK(std::abs(log_det_one_minus(a) - oracle_value) < 1e-12 * std::abs(oracle_value));
        a *= 10.0;  // now above the series threshold, handled by LU
        CHECK(log_det_one_minus(a) == doctest::Approx(-a.trace() - (a * a).trace() / 2).epsilon(1e-6));
    }

    TEST_CASE("physical round trips give non-positive log det")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-1, 1);
        for (int trial = 0; trial < 50; ++trial) {
            Eigen::MatrixXd w(6, 6);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    w(i, j) = u(rng);
            w *= 0.95 / w.operatorNorm();
            const Eigen::MatrixXd n = w.transpose() * w;  // eigenvalues in [0, 1)
            CHECK(log_det_one_minus(n) <= 0.0);
        }
    }

    TEST_CASE("eigenvalue above one is a geometry error")
    {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
        a(0, 0) = 1.5;
        a(1, 1) = 0.2;
        CHECK_THROWS_AS(log_det_one_minus(a), GeometryError);
        CHECK_THROWS_AS(log_det_one_minus(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
    }
}

TEST_CASE("compensated sum is order independent to rounding")
{
    std::vector<double> xs = {1e16, 1.0, -1e16, 3.0, 1e-3};
    CHECK(compensated_sum(xs) == doctest::Approx(4.001).epsilon(1e-15));
}
