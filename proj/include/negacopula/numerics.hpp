#pragma once

#include <functional>
#include <initializer_list>
#include <span>

namespace negacopula::numerics {

// Special functions. All accurate to better than 1e-12 relative on the ranges
// exercised by the marginal families (shape in [1e-3, 1e4]).

double log_gamma(double x);
double digamma(double x);
double trigamma(double x);

/// Regularised lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double gamma_p(double a, double x);

/// Regularised upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// x such that P(a, x) = p. Bracketed bisection with Newton polish, tolerance 1e-12.
double gamma_p_inv(double a, double p);

double normal_cdf(double z);

/// Standard normal quantile; p in (0,1).
double normal_quantile(double p);

// Quadrature.

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) on [a, b], split at every breakpoint inside the
/// interval. Breakpoints mark kinks or jumps of the integrand.
double integrate(const Integrand& f, double a, double b,
                 std::span<const double> breakpoints = {}, double rel_tol = 1e-13);

inline double integrate(const Integrand& f, double a, double b,
                        std::initializer_list<double> breakpoints, double rel_tol = 1e-13) {
    return integrate(f, a, b, std::span<const double>(breakpoints.begin(), breakpoints.size()),
                     rel_tol);
}

}  // namespace negacopula::numerics
