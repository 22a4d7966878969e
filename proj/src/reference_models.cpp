#include "negacopula/reference_models.hpp"

#include <cmath>

#include "negacopula/numerics.hpp"

namespace negacopula::reference {

double baseline_joint_cdf(double lambda, double mu, double x, double y) {
    if (x <= 0.0 || y <= 0.0) return 0.0;
    const double total = lambda + mu;
    if (y <= 1.0) {
        if (x <= -std::log(y)) return 0.0;
        return std::pow(y, lambda) - std::exp(-lambda * x) +
               lambda / (total * std::pow(y, mu)) *
                   (std::exp(-total * x) - std::pow(y, total));
    }
    return 1.0 - std::exp(-lambda * x) -
           lambda / (total * std::pow(y, mu)) * (1.0 - std::exp(-total * x));
}

double bivariate_weibull_density(WeibullMargin mx, WeibullMargin my, double theta, double x,
                                 double y) {
    if (x <= 0.0 || y <= 0.0) return 0.0;
    const double d1 = mx.shape, d2 = my.shape, l1 = mx.rate, l2 = my.rate;
    const double common = d1 * d2 * std::pow(l1, d1) * std::pow(l2, d2) *
                          std::pow(x, d1 - 1.0) * std::pow(y, d2 - 1.0);
    const double surv_x = std::exp(-std::pow(l1 * x, d1));
    const double surv_y = std::exp(-std::pow(l2 * y, d2));

    const double phi1 = std::pow(std::log1p(theta), 1.0 / d2) / l2;
    if (y > phi1) return common * (1.0 + theta) * surv_y * std::pow(surv_x, 1.0 + theta);

    const double phi2 =
        std::pow(std::log(theta / ((1.0 + theta) * (1.0 - surv_y))), 1.0 / d1) / l1;
    if (x <= phi2) return 0.0;
    return common * std::pow(theta, theta + 1.0) / std::pow(1.0 + theta, theta) * surv_y *
           std::pow(surv_x / (1.0 - surv_y), 1.0 + theta);
}

double bivariate_gamma_density(GammaMargin mx, GammaMargin my, double theta, double x,
                               double y) {
    if (x <= 0.0 || y <= 0.0) return 0.0;
    const double a1 = mx.shape, b1 = mx.rate, a2 = my.shape, b2 = my.rate;
    const double level = theta / (1.0 + theta);

    // xi2 (= zeta1): the y at which G(y) = theta/(1+theta).
    const double xi2 = numerics::gamma_p_inv(a2, level) / b2;
    const double log_common = a1 * std::log(b1) + a2 * std::log(b2) + (a1 - 1.0) * std::log(x) +
                              (a2 - 1.0) * std::log(y) - (b1 * x + b2 * y) - std::lgamma(a1) -
                              std::lgamma(a2);
    const double surv_x = numerics::gamma_q(a1, b1 * x);
    if (y > xi2) return std::exp(log_common) * (1.0 + theta) * std::pow(surv_x, theta);

    const double gy = numerics::gamma_p(a2, b2 * y);
    const double xi1 = numerics::gamma_p_inv(a1, 1.0 - gy / level) / b1;
    if (x <= xi1) return 0.0;
    return std::exp(log_common) * std::pow(theta, 1.0 + theta) / std::pow(1.0 + theta, theta) *
           std::pow(surv_x, theta) * std::pow(gy, -(1.0 + theta));
}

}  // namespace negacopula::reference
