#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "negacopula/copula.hpp"
#include "negacopula/error.hpp"
#include "support/oracles.hpp"

using namespace negacopula;
using doctest::Approx;

namespace {

DependenceParam th(double t) { return DependenceParam(t); }

const std::vector<double> kThetas{0.01, 0.1, 0.5, 0.765, 1.0, 2.0, 5.0, 10.0, 50.0};

}  // namespace

TEST_SUITE("copula") {

TEST_CASE("dependence parameter guards its range") {
    CHECK_THROWS_AS(DependenceParam(0.0), DomainError);
    CHECK_THROWS_AS(DependenceParam(-1.0), DomainError);
    CHECK_THROWS_AS(DependenceParam(1e9), DomainError);
    CHECK_THROWS_AS(DependenceParam(std::nan("")), DomainError);
    CHECK_THROWS_AS(DependenceParam{INFINITY}, DomainError);
    CHECK_NOTHROW(DependenceParam(1e-8));
    CHECK_NOTHROW(DependenceParam(1e8));
    CHECK(th(1.0).threshold() == 0.5);
    CHECK(th(3.0).threshold() == Approx(0.75));
}

TEST_CASE("region classification") {
    CHECK(classify_region({0.4, 0.25}, th(1)) == RegionTag::Void);
    CHECK(classify_region({0.6, 0.25}, th(1)) == RegionTag::Lower);
    CHECK(classify_region({0.5, 0.75}, th(1)) == RegionTag::Upper);
    CHECK(classify_region({0.5, 0.5}, th(1)) == RegionTag::BoundaryLowerUpper);
    CHECK(classify_region({0.5, 0.25}, th(1)) == RegionTag::BoundarySupport);
    CHECK(support_floor(0.4, th(1)) == Approx(0.3));
    CHECK(to_string(RegionTag::Lower) == "lower");
}

TEST_CASE("cdf values") {
    for (double t : kThetas) CHECK(cdf({0.5, 1.0}, th(t)) == 0.5);
    CHECK(cdf({0.5, 0.75}, th(1)) == Approx(0.3125).epsilon(1e-15));
    CHECK(cdf({0.6, 0.25}, th(1)) == Approx(0.01).epsilon(1e-12));
    CHECK(cdf({0.4, 0.25}, th(1)) == 0.0);
}

TEST_CASE("cdf matches the direct piecewise formula") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double t : kThetas) {
        for (int i = 0; i < 2000; ++i) {
            const double u = unit(gen);
            const double v = unit(gen);
            // The Lower branch is a difference of O(1) terms, so compare absolutely.
            CHECK(std::abs(cdf({u, v}, th(t)) - oracle::copula(u, v, t)) <= 1e-14);
            CHECK(pdf({u, v}, th(t)) == Approx(oracle::density(u, v, t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("cdf is continuous across region boundaries") {
    for (double t : kThetas) {
        const double a = t / (1.0 + t);
        for (double u : {0.1, 0.3, 0.7, 0.95}) {
            const double floor_v = a * (1.0 - u);
            CHECK(std::abs(cdf({u, floor_v * (1 + 1e-12)}, th(t))) <= 1e-9);
            CHECK(cdf({u, a * (1 - 1e-13)}, th(t)) ==
                  Approx(cdf({u, a * (1 + 1e-13)}, th(t))).epsilon(1e-9));
        }
    }
}

TEST_CASE("survival copula values") {
    CHECK(survival_copula({1.0, 0.3}, th(2)) == Approx(0.3));
    CHECK(survival_copula({0.5, 0.25}, th(1)) == Approx(0.0625).epsilon(1e-14));
    CHECK(survival_copula({0.5, 0.75}, th(1)) == Approx(0.25).epsilon(1e-14));
    // branch formula v u^{1+theta} on the transformed upper region
    const double t = 0.7;
    for (double u : {0.2, 0.5, 0.9}) {
        const double v = 0.1;
        CHECK(survival_copula({u, v}, th(t)) == Approx(v * std::pow(u, 1 + t)).epsilon(1e-13));
    }
}

TEST_CASE("density values and normalisation") {
    CHECK(pdf({0.5, 0.75}, th(1)) == Approx(1.0));
    CHECK(pdf({0.6, 0.25}, th(1)) == Approx(3.2).epsilon(1e-14));
    CHECK(pdf({0.4, 0.25}, th(1)) == 0.0);
    for (double t : {0.3, 1.0, 4.0}) {
        CHECK(oracle::density_mass(1.0, 1.0, t, 1e-9) == Approx(1.0).epsilon(1e-7));
    }
}

TEST_CASE("conditional U given V") {
    CHECK(cond_cdf_u_given_v(0.6, 0.25, th(1)) == Approx(0.36).epsilon(1e-14));
    CHECK(cond_cdf_u_given_v(0.5, 0.75, th(1)) == Approx(0.75).epsilon(1e-14));
    CHECK(cond_cdf_u_given_v(0.5, 0.25, th(1)) == 0.0);
    CHECK(cond_quantile_u_given_v(0.36, 0.25, th(1)) == Approx(0.6).epsilon(1e-14));
    CHECK(cond_quantile_u_given_v(0.75, 0.75, th(1)) == Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(cond_quantile_u_given_v(1e-300, 0.75, th(1))) <= 1e-12);
    CHECK_THROWS_AS(cond_quantile_u_given_v(0.0, 0.5, th(1)), DomainError);
    CHECK_THROWS_AS(cond_quantile_u_given_v(1.0, 0.5, th(1)), DomainError);
}

TEST_CASE("conditional V given U") {
    CHECK(cond_cdf_v_given_u(0.5, 0.5, th(1)) == Approx(0.5).epsilon(1e-14));
    CHECK(cond_cdf_v_given_u(0.75, 0.5, th(1)) == Approx(0.75).epsilon(1e-14));
    CHECK(cond_cdf_v_given_u(0.25, 0.5, th(1)) == 0.0);
    CHECK(cond_quantile_v_given_u(0.2, 0.5, th(1)) == Approx(0.3125).epsilon(1e-14));
    CHECK(cond_cdf_v_given_u(0.3125, 0.5, th(1)) == Approx(0.2).epsilon(1e-14));
    CHECK(cond_quantile_v_given_u(0.75, 0.5, th(1)) == Approx(0.75).epsilon(1e-14));
    CHECK(cond_quantile_v_given_u(0.5, 0.5, th(1)) == Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(cond_quantile_v_given_u(-0.1, 0.5, th(1)), DomainError);
}

TEST_CASE("conditional cdfs and quantiles are mutual inverses") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> unit(1e-9, 1.0 - 1e-9);
    for (double t : kThetas) {
        for (int i = 0; i < 2000; ++i) {
            const double p = unit(gen);
            const double s = unit(gen);
            // Backward error: the residual may not exceed what a few ulps in the
            // quantile produce, which matters where F(.|v) is steep (v near 0).
            const double u = cond_quantile_u_given_v(p, s, th(t));
            const double fu = cond_cdf_u_given_v(u, s, th(t));
            const double su = std::abs(cond_cdf_u_given_v(std::min(1.0, u + 4e-16 * u), s, th(t)) -
                                       cond_cdf_u_given_v(u - 4e-16 * u, s, th(t)));
            CHECK(std::abs(fu - p) <= 1e-14 + su);
            const double v = cond_quantile_v_given_u(p, s, th(t));
            CHECK(std::abs(cond_cdf_v_given_u(v, s, th(t)) - p) <= 1e-13);
        }
    }
}

TEST_CASE("conditional cdfs are derivatives of the copula") {
    const double h = 1e-6;
    for (double t : {0.5, 1.0, 3.0}) {
        for (double u : {0.2, 0.55, 0.8}) {
            for (double v : {0.3, 0.45, 0.9}) {
                if (classify_region({u, v}, th(t)) == RegionTag::Void) continue;
                const double du = (oracle::copula(u + h, v, t) - oracle::copula(u - h, v, t)) / (2 * h);
                const double dv = (oracle::copula(u, v + h, t) - oracle::copula(u, v - h, t)) / (2 * h);
                CHECK(cond_cdf_v_given_u(v, u, th(t)) == Approx(du).epsilon(1e-6));
                CHECK(cond_cdf_u_given_v(u, v, th(t)) == Approx(dv).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("conditional moments of U given V") {
    const auto m1 = cond_mean_var_u_given_v(0.25, th(1));
    CHECK(m1.mean == Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(m1.variance == Approx(8.0 * 0.0625 / 36.0).epsilon(1e-14));
    const auto m2 = cond_mean_var_u_given_v(0.75, th(1));
    CHECK(m2.mean == Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(m2.variance == Approx(1.0 / 18.0).epsilon(1e-14));
    for (double t : {0.3, 1.0, 6.0}) {
        const double a = t / (1.0 + t);
        const auto lo = cond_mean_var_u_given_v(a * (1 - 1e-13), th(t));
        const auto hi = cond_mean_var_u_given_v(a * (1 + 1e-13), th(t));
        CHECK(lo.mean == Approx(hi.mean).epsilon(1e-10));
        CHECK(lo.variance == Approx(hi.variance).epsilon(1e-10));
    }
}

TEST_CASE("conditional moments match quadrature of the conditional densities") {
    std::mt19937_64 gen(19);
    std::uniform_real_distribution<double> unit(0.01, 0.99);
    std::uniform_real_distribution<double> log_theta(std::log(0.05), std::log(20.0));
    for (int i = 0; i < 50; ++i) {
        const double s = unit(gen);
        const double t = std::exp(log_theta(gen));
        const double a = t / (1 + t);

        // U | V = s
        auto dens_u = [&](double u) { return oracle::density(u, s, t); };
        const std::vector<double> ub{1.0 - s / a};
        const double mu = oracle::integrate([&](double u) { return u * dens_u(u); }, 0, 1, ub);
        const double mu2 = oracle::integrate([&](double u) { return u * u * dens_u(u); }, 0, 1, ub);
        const auto mu_lib = cond_mean_var_u_given_v(s, th(t));
        CHECK(mu_lib.mean == Approx(mu).epsilon(1e-8).scale(1e-8));
        CHECK(mu_lib.variance == Approx(mu2 - mu * mu).epsilon(1e-8).scale(1e-8));

        // V | U = s
        auto dens_v = [&](double v) { return oracle::density(s, v, t); };
        const std::vector<double> vb{a * (1 - s), a};
        const double mv = oracle::integrate([&](double v) { return v * dens_v(v); }, 0, 1, vb);
        const double mv2 = oracle::integrate([&](double v) { return v * v * dens_v(v); }, 0, 1, vb);
        CHECK(cond_mean_v_given_u(s, th(t)) == Approx(mv).epsilon(1e-8).scale(1e-8));
        const auto mv_lib = cond_mean_var_v_given_u(s, th(t));
        CHECK(mv_lib.mean == Approx(mv).epsilon(1e-8).scale(1e-8));
        CHECK(mv_lib.variance == Approx(mv2 - mv * mv).epsilon(1e-8).scale(1e-8));
    }
}

TEST_CASE("regression of V on U") {
    CHECK(cond_mean_v_given_u(0.5, th(2)) == Approx(13.0 / 24.0).epsilon(1e-12));
    CHECK(cond_mean_v_given_u(0.3, th(1e-6)) == Approx(0.5).epsilon(1e-5));
    CHECK(std::abs(cond_mean_v_given_u(1.0 - 1e-9, th(2))) <= 1e-8);
    // near the removable singularities the quadrature fallback takes over
    for (double t : {1.0, 1.0 + 5e-4, 2.0 - 1e-4, 2.0}) {
        const double e = cond_mean_v_given_u(0.4, th(t));
        CHECK(e > 0.0);
        CHECK(e < 1.0);
        const auto mv = cond_mean_var_v_given_u(0.4, th(t));
        CHECK(mv.mean == Approx(e).epsilon(1e-9));
        CHECK(mv.variance > 0.0);
    }
    // strictly decreasing in u
    for (double t : {0.2, 1.0, 2.0, 7.0}) {
        double previous = 2.0;
        for (int k = 1; k < 100; ++k) {
            const double e = cond_mean_v_given_u(k / 100.0, th(t));
            CHECK(e < previous);
            previous = e;
        }
    }
}

TEST_CASE("rank measures") {
    CHECK(spearman_rho(th(1)) == Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(kendall_tau(th(1)) == -0.5);
    CHECK(kendall_tau(th(9)) == Approx(-0.9).epsilon(1e-15));
    CHECK(spearman_rho(th(0.765)) == Approx(-0.590).epsilon(1e-3));
    CHECK(kendall_tau(th(0.765)) == Approx(-0.4334).epsilon(1e-3));
    CHECK(std::abs(spearman_rho(th(1e-8))) <= 1e-7);
    CHECK(spearman_rho(th(1e8)) == Approx(-1.0).epsilon(1e-7));
    CHECK_THROWS_AS(spearman_rho(DependenceParam(-1.0)), DomainError);
    const auto m = dependence_measures(th(2));
    CHECK(m.rho == spearman_rho(th(2)));
    CHECK(m.tau == kendall_tau(th(2)));
}

TEST_CASE("rho lies below tau and both decrease") {
    double prev_rho = 0.0;
    double prev_tau = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double t = 0.05 * k;
        const double r = spearman_rho(th(t));
        const double k_tau = kendall_tau(th(t));
        CHECK(r < k_tau);
        CHECK(r - k_tau == Approx(-t / ((1 + t) * (2 + t))).epsilon(1e-12));
        CHECK(r < prev_rho);
        CHECK(k_tau < prev_tau);
        prev_rho = r;
        prev_tau = k_tau;
    }
}

TEST_CASE("measures agree with integrals of the copula") {
    for (double t : {0.25, 1.0, 3.0}) {
        const double a = t / (1 + t);
        auto inner = [&](double u) {
            return oracle::integrate([&](double v) { return oracle::copula(u, v, t); }, 0, 1,
                                     {a * (1 - u), a}, 1e-11);
        };
        const double rho = 12.0 * oracle::integrate(inner, 0, 1, {}, 1e-11) - 3.0;
        CHECK(spearman_rho(th(t)) == Approx(rho).epsilon(1e-6));

        auto inner_tau = [&](double u) {
            return oracle::integrate(
                [&](double v) { return oracle::copula(u, v, t) * oracle::density(u, v, t); }, 0,
                1, {a * (1 - u), a}, 1e-10);
        };
        const double tau = 4.0 * oracle::integrate(inner_tau, 0, 1, {}, 1e-10) - 1.0;
        CHECK(kendall_tau(th(t)) == Approx(tau).epsilon(1e-3));
    }
    // exact: the integral of C at theta = 1 is 7/36
    CHECK(spearman_rho(th(1)) == Approx(12.0 * 7.0 / 36.0 - 3.0).epsilon(1e-15));
}

TEST_CASE("inversions") {
    CHECK(theta_from_rho(-2.0 / 3.0).value() == Approx(1.0).epsilon(1e-14));
    CHECK(theta_from_rho(-0.59).value() == Approx(0.765).epsilon(1e-3));
    CHECK(theta_from_rho(-1e-6).value() == Approx(2.0e-6 / 3.0).epsilon(1e-5));
    CHECK(theta_from_tau(-0.5).value() == Approx(1.0).epsilon(1e-15));
    CHECK(theta_from_tau(-0.9).value() == Approx(9.0).epsilon(1e-14));
    CHECK(theta_from_tau(-0.43).value() == Approx(0.7544).epsilon(1e-4));
    CHECK_THROWS_AS(theta_from_rho(0.1), DomainError);
    CHECK_THROWS_AS(theta_from_rho(-1.0), DomainError);
    CHECK_THROWS_AS(theta_from_tau(0.0), DomainError);

    for (int k = 1; k < 100; ++k) {
        const double rho = -k / 100.0 * 0.999;
        const double t = theta_from_rho(rho).value();
        CHECK(spearman_rho(th(t)) == Approx(rho).epsilon(1e-12).scale(1e-12));
        const double by_bisection = oracle::bisect(
            [&](double x) { return -(-x * (3 + x) / ((1 + x) * (2 + x))) + rho; }, 0.0, 1e4);
        CHECK(t == Approx(by_bisection).epsilon(1e-10));
        const double tau = rho;
        CHECK(kendall_tau(theta_from_tau(tau)) == Approx(tau).epsilon(1e-14));
    }
}

}  // TEST_SUITE
