#pragma once

// Closed-form densities and distribution functions written directly in x-y
// space. They are verification oracles for the generic Sklar composition in
// bivariate.hpp and are not used on any production path.

namespace negacopula::reference {

/// The baseline joint law (Exponential(lambda) for X, BaselineY(lambda, mu) for Y)
/// whose copula is C_theta with theta = mu / lambda.
double baseline_joint_cdf(double lambda, double mu, double x, double y);

struct WeibullMargin {
    double rate;
    double shape;
};

/// Bivariate Weibull density with F(x) = 1 - exp(-(rate x)^shape), using the
/// thresholds phi1 and phi2(y).
double bivariate_weibull_density(WeibullMargin mx, WeibullMargin my, double theta,
                                 double x, double y);

struct GammaMargin {
    double shape;
    double rate;
};

/// Bivariate Gamma density in shape/rate form, using the thresholds xi1(y) and
/// xi2 = zeta1 computed by numerical incomplete-gamma inversion.
double bivariate_gamma_density(GammaMargin mx, GammaMargin my, double theta, double x,
                               double y);

}  // namespace negacopula::reference
