#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "negacopula/copula.hpp"
#include "negacopula/marginals.hpp"

namespace negacopula {

/// H(x,y) = C_theta(F(x), G(y)).
struct BivariateModel {
    MarginalModel margin_x;
    MarginalModel margin_y;
    DependenceParam theta;
};

struct XYPoint {
    double x;
    double y;
};

double joint_cdf(const BivariateModel& model, double x, double y);

/// c_theta(F(x), G(y)) f(x) g(y).
double joint_pdf(const BivariateModel& model, double x, double y);

/// P[Y <= y | X = x].
double cond_cdf_y_given_x(const BivariateModel& model, double y, double x);

/// (F^-1(u), G^-1(v)) over a copula sample drawn with sample_copula(n, theta, seed).
std::vector<XYPoint> sample_bivariate(std::size_t n, const BivariateModel& model,
                                      std::uint64_t seed);

}  // namespace negacopula
