#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "negacopula/error.hpp"
#include "negacopula/rank_stats.hpp"
#include "support/oracles.hpp"

using namespace negacopula;
using doctest::Approx;

TEST_SUITE("rank_stats") {

TEST_CASE("average ranks") {
    const std::vector<double> x{3.0, 1.0, 2.0};
    CHECK(average_ranks(x) == std::vector<double>{3.0, 1.0, 2.0});
    const std::vector<double> tied{1.0, 1.0, 2.0, 0.5, 1.0};
    CHECK(average_ranks(tied) == std::vector<double>{3.0, 3.0, 5.0, 1.0, 3.0});
}

TEST_CASE("pseudo observations") {
    const std::vector<double> x{3.0, 1.0, 2.0};
    const std::vector<double> y{1.0, 1.0, 2.0};
    const auto p = pseudo_observations(x, y);
    REQUIRE(p.size() == 3);
    CHECK(p[0].u == 0.75);
    CHECK(p[1].u == 0.25);
    CHECK(p[2].u == 0.5);
    CHECK(p[0].v == 0.375);
    CHECK(p[1].v == 0.375);
    CHECK(p[2].v == 0.75);
    const std::vector<double> two{1.0, 2.0};
    CHECK_THROWS_AS(pseudo_observations(two, two), InsufficientData);

    std::mt19937_64 gen(1);
    std::normal_distribution<double> z;
    std::vector<double> a(500);
    std::vector<double> b(500);
    for (auto& e : a) e = z(gen);
    for (auto& e : b) e = std::round(z(gen) * 3);
    for (const auto& q : pseudo_observations(a, b)) {
        CHECK(q.u > 0.0);
        CHECK(q.u < 1.0);
        CHECK(q.v > 0.0);
        CHECK(q.v < 1.0);
    }
}

TEST_CASE("rank correlations against direct enumeration") {
    std::mt19937_64 gen(2);
    std::normal_distribution<double> z;
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 50 + 37 * rep;
        std::vector<double> x(n);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = std::round(z(gen) * 4.0);  // plenty of ties
            y[i] = rep % 2 == 0 ? std::round(z(gen) * 2.0 - 0.3 * x[i]) : z(gen);
        }
        CHECK(empirical_tau(x, y) == Approx(oracle::kendall_tau_b(x, y)).epsilon(1e-12));
        CHECK(empirical_rho(x, y) == Approx(oracle::spearman_rho(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("countermonotone and comonotone data") {
    std::vector<double> x(40);
    std::vector<double> y(40);
    for (int i = 0; i < 40; ++i) {
        x[i] = i;
        y[i] = std::exp(-0.1 * i);
    }
    CHECK(empirical_rho(x, y) == Approx(-1.0).epsilon(1e-15));
    CHECK(empirical_tau(x, y) == Approx(-1.0).epsilon(1e-15));
    CHECK(empirical_tau(x, x) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("constant column is rejected") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> c{5.0, 5.0, 5.0, 5.0};
    CHECK_THROWS_AS(empirical_rho(x, c), ConstantColumn);
    CHECK_THROWS_AS(empirical_tau(c, x), ConstantColumn);
    const std::vector<double> short_col{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(empirical_rho(x, short_col), DomainError);
}

}  // TEST_SUITE
