#include "negacopula/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "negacopula/error.hpp"

namespace negacopula::numerics {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(what) + " = " + describe(x) + " must be positive");
    }
}

// lgamma(a) - Stirling's approximation, for a >= 10.
double stirling_error(double a) {
    const double r = 1.0 / a;
    const double r2 = r * r;
    return r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 / 1680.0)));
}

// log(x^a e^-x / Gamma(a)). For large a the direct form cancels badly, so it is
// rewritten around x = a.
double log_gamma_kernel(double a, double x) {
    if (a < 10.0) return a * std::log(x) - x - std::lgamma(a);
    const double d = (x - a) / a;
    return a * (std::log1p(d) - d) + 0.5 * std::log(a / (2.0 * std::numbers::pi)) -
           stirling_error(a);
}

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 100000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(log_gamma_kernel(a, x));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double gamma_q_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(log_gamma_kernel(a, x)) * h;
}

double gamma_density(double a, double x) {
    return std::exp(log_gamma_kernel(a, x)) / x;
}

}  // namespace

double log_gamma(double x) {
    require_positive(x, "x");
    return std::lgamma(x);
}

double digamma(double x) {
    require_positive(x, "x");
    double shift = 0.0;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / x;
    const double r2 = r * r;
    // Bernoulli-number asymptotic series.
    const double series =
        r2 * (1.0 / 12.0 -
              r2 * (1.0 / 120.0 -
                    r2 * (1.0 / 252.0 -
                          r2 * (1.0 / 240.0 - r2 * (1.0 / 132.0 - r2 * (691.0 / 32760.0))))));
    return shift + std::log(x) - 0.5 * r - series;
}

double trigamma(double x) {
    require_positive(x, "x");
    double shift = 0.0;
    while (x < 10.0) {
        shift += 1.0 / (x * x);
        x += 1.0;
    }
    const double r = 1.0 / x;
    const double r2 = r * r;
    const double series =
        r * (1.0 + r * (0.5 + r * (1.0 / 6.0 -
                                   r2 * (1.0 / 30.0 -
                                         r2 * (1.0 / 42.0 -
                                               r2 * (1.0 / 30.0 -
                                                     r2 * (5.0 / 66.0 -
                                                           r2 * (691.0 / 2730.0 -
                                                                 r2 * (7.0 / 6.0)))))))));
    return shift + series;
}

double gamma_p(double a, double x) {
    require_positive(a, "a");
    if (std::isnan(x) || x < 0.0) {
        throw DomainError("x = " + describe(x) + " must be non-negative");
    }
    if (x == 0.0) return 0.0;
    if (x == kInf) return 1.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) {
    require_positive(a, "a");
    if (std::isnan(x) || x < 0.0) {
        throw DomainError("x = " + describe(x) + " must be non-negative");
    }
    if (x == 0.0) return 1.0;
    if (x == kInf) return 0.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

double gamma_p_inv(double a, double p) {
    require_positive(a, "a");
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("p = " + describe(p) + " is outside [0, 1]");
    }
    if (p == 0.0) return 0.0;
    if (p == 1.0) return kInf;

    // Starting point: Wilson-Hilferty for a > 1, small-a power law otherwise.
    double x = 0.0;
    if (a > 1.0) {
        const double z = normal_quantile(p);
        const double c = 1.0 / (9.0 * a);
        x = a * std::pow(std::max(1.0 - c + z * std::sqrt(c), 1e-3), 3);
    } else {
        const double t = 1.0 - a * (0.253 + a * 0.12);
        x = p < t ? std::pow(p / t, 1.0 / a) : 1.0 - std::log1p(-(p - t) / (1.0 - t));
    }
    if (!(x > 0.0) || !std::isfinite(x)) x = a;

    // Residual in the tail that keeps precision.
    const bool upper = p > 0.5;
    const double target = upper ? 1.0 - p : p;
    auto residual = [&](double xx) {
        return upper ? target - gamma_q(a, xx) : gamma_p(a, xx) - target;
    };

    double lo = 0.0;
    double hi = kInf;
    for (int iter = 0; iter < 300; ++iter) {
        const double r = residual(x);
        if (r == 0.0) return x;
        if (r < 0.0) lo = x; else hi = x;

        const double dens = gamma_density(a, x);
        double next = x;
        if (dens > 0.0 && std::isfinite(dens)) {
            const double step = r / dens;
            // Halley correction: f''/f' = (a-1)/x - 1.
            const double curvature = (a - 1.0) / x - 1.0;
            next = x - step / (1.0 - 0.5 * std::min(1.0, step * curvature));
        }
        if (!(next > lo && next < hi) || !std::isfinite(next)) {
            next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * std::max(x, 1.0);
        }
        if (std::abs(next - x) <= 1e-15 * x) return next;
        if (std::isfinite(hi) && hi - lo <= 1e-15 * hi) return 0.5 * (lo + hi);
        x = next;
    }
    return x;
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("p = " + describe(p) + " is outside (0, 1)");
    }
    // Acklam's rational approximation followed by Halley refinement.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00, 2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x = 0.0;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    for (int i = 0; i < 2; ++i) {
        // Work in the tail nearest to p to keep relative accuracy.
        const double e = p < 0.5 ? normal_cdf(x) - p : (1.0 - p) - normal_cdf(-x);
        const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double integrate(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                 double rel_tol) {
    if (!(a <= b)) throw DomainError("integration bounds out of order");
    std::vector<double> knots{a};
    for (double k : breakpoints) {
        if (k > a && k < b) knots.push_back(k);
    }
    knots.push_back(b);
    std::sort(knots.begin(), knots.end());

    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (knots[i + 1] > knots[i]) {
            total += Rule::integrate(f, knots[i], knots[i + 1], 20, rel_tol);
        }
    }
    return total;
}

}  // namespace negacopula::numerics
