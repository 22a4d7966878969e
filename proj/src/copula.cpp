#include "negacopula/copula.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "negacopula/error.hpp"
#include "negacopula/numerics.hpp"

namespace negacopula {
namespace {

void require_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError(std::string(what) + " = " + describe(x) +
                          " is outside [0, 1]");
    }
}

void require_open_unit(double x, const char* what) {
    if (!(x > 0.0 && x < 1.0)) {
        throw DomainError(std::string(what) + " = " + describe(x) +
                          " is outside (0, 1)");
    }
}

// log(theta^theta / (1+theta)^(1+theta))
double log_lower_coefficient(double t) {
    return t * std::log(t) - (1.0 + t) * std::log1p(t);
}

// 1 - (1-u)^e, accurate for small u.
double one_minus_pow_complement(double u, double e) {
    return -std::expm1(e * std::log1p(-u));
}

}  // namespace

DependenceParam::DependenceParam(double theta) : theta_(theta), threshold_(theta / (1.0 + theta)) {
    if (!std::isfinite(theta) || theta < kMinTheta || theta > kMaxTheta) {
        throw DomainError("theta = " + describe(theta) + " is outside the supported range [" +
                          describe(kMinTheta) + ", " + describe(kMaxTheta) + "]");
    }
}

std::string_view to_string(RegionTag tag) {
    switch (tag) {
        case RegionTag::Void: return "void";
        case RegionTag::Lower: return "lower";
        case RegionTag::Upper: return "upper";
        case RegionTag::BoundaryLowerUpper: return "boundary_lower_upper";
        case RegionTag::BoundarySupport: return "boundary_support";
    }
    return "unknown";
}

double support_floor(double u, DependenceParam theta) {
    return theta.threshold() * (1.0 - u);
}

RegionTag classify_region(UnitPoint p, DependenceParam theta) {
    require_unit(p.u, "u");
    require_unit(p.v, "v");
    const double floor = support_floor(p.u, theta);
    if (std::abs(p.v - floor) <= kBoundaryTolerance) return RegionTag::BoundarySupport;
    if (std::abs(p.v - theta.threshold()) <= kBoundaryTolerance) {
        return RegionTag::BoundaryLowerUpper;
    }
    if (p.v < floor) return RegionTag::Void;
    if (p.v < theta.threshold()) return RegionTag::Lower;
    return RegionTag::Upper;
}

double cdf(UnitPoint p, DependenceParam theta) {
    require_unit(p.u, "u");
    require_unit(p.v, "v");
    const double u = p.u;
    const double v = p.v;
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;

    const double t = theta.value();
    const double w = 1.0 - u;
    if (v > theta.threshold()) {
        return u - (1.0 - v) * one_minus_pow_complement(u, 1.0 + t);
    }
    if (v <= theta.threshold() * w) return 0.0;
    const double tail =
        std::exp(log_lower_coefficient(t) + (1.0 + t) * std::log(w) - t * std::log(v));
    // Cancellation near the support line can leave a tiny negative residue.
    return std::max(0.0, v - w + tail);
}

double survival_copula(UnitPoint p, DependenceParam theta) {
    require_unit(p.u, "u");
    require_unit(p.v, "v");
    const double value = p.u + p.v - 1.0 + cdf({1.0 - p.u, 1.0 - p.v}, theta);
    return std::max(0.0, value);
}

double pdf(UnitPoint p, DependenceParam theta) {
    require_unit(p.u, "u");
    require_unit(p.v, "v");
    const double t = theta.value();
    const double w = 1.0 - p.u;
    if (p.v <= theta.threshold() * w) return 0.0;
    if (p.v > theta.threshold()) return (1.0 + t) * std::pow(w, t);
    const double log_coef = (1.0 + t) * std::log(t) - t * std::log1p(t);
    return std::exp(log_coef + t * std::log(w) - (1.0 + t) * std::log(p.v));
}

double cond_cdf_u_given_v(double u, double v, DependenceParam theta) {
    require_unit(u, "u");
    require_unit(v, "v");
    const double t = theta.value();
    if (v > theta.threshold()) return one_minus_pow_complement(u, 1.0 + t);
    if (v == 0.0) return 1.0;  // all conditional mass collapses at u = 1
    const double ratio = theta.threshold() * (1.0 - u) / v;
    if (ratio >= 1.0) return 0.0;
    return -std::expm1((1.0 + t) * std::log(ratio));
}

double cond_quantile_u_given_v(double p, double v, DependenceParam theta) {
    require_open_unit(p, "p");
    require_unit(v, "v");
    const double t = theta.value();
    // (1-p)^(1/(1+theta))
    const double shrink = std::exp(std::log1p(-p) / (1.0 + t));
    if (v > theta.threshold()) return -std::expm1(std::log1p(-p) / (1.0 + t));
    return 1.0 - (v / theta.threshold()) * shrink;
}

double cond_cdf_v_given_u(double v, double u, DependenceParam theta) {
    require_unit(u, "u");
    require_unit(v, "v");
    const double t = theta.value();
    const double w = 1.0 - u;
    if (v <= theta.threshold() * w) return 0.0;
    if (v <= theta.threshold()) {
        return -std::expm1(t * std::log(theta.threshold() * w / v));
    }
    return 1.0 - (1.0 + t) * (1.0 - v) * std::pow(w, t);
}

double cond_quantile_v_given_u(double p, double u, DependenceParam theta) {
    require_open_unit(p, "p");
    require_unit(u, "u");
    const double t = theta.value();
    const double w = 1.0 - u;
    const double w_pow = std::pow(w, t);
    const double junction = 1.0 - w_pow;
    if (p < junction) {
        return theta.threshold() * w * std::exp(-std::log1p(-p) / t);
    }
    return 1.0 - (1.0 - p) / ((1.0 + t) * w_pow);
}

Moments cond_mean_var_u_given_v(double v, DependenceParam theta) {
    require_unit(v, "v");
    const double t = theta.value();
    if (v <= theta.threshold()) {
        const double mean = 1.0 - (1.0 + t) * (1.0 + t) * v / (t * (t + 2.0));
        const double variance =
            std::pow(1.0 + t, 3) * v * v / (t * t * (t + 2.0) * (t + 2.0) * (t + 3.0));
        return {mean, variance};
    }
    return {1.0 / (t + 2.0), (t + 1.0) / ((t + 2.0) * (t + 2.0) * (t + 3.0))};
}

namespace {

constexpr double kSingularityBand = 1e-3;

// k-th raw moment of V | U=u by quadrature of the conditional density.
double cond_raw_moment_v_quadrature(double u, DependenceParam theta, int k) {
    const double floor = support_floor(u, theta);
    auto integrand = [&](double v) {
        return std::pow(v, k) * pdf({u, v}, theta);
    };
    return numerics::integrate(integrand, floor, 1.0, {theta.threshold()});
}

}  // namespace

double cond_mean_v_given_u(double u, DependenceParam theta) {
    require_unit(u, "u");
    const double t = theta.value();
    if (std::abs(t - 1.0) < kSingularityBand) return cond_raw_moment_v_quadrature(u, theta, 1);
    const double w = 1.0 - u;
    return std::pow(w, t) / (2.0 * (1.0 - t)) - t * t * w / (1.0 - t * t);
}

Moments cond_mean_var_v_given_u(double u, DependenceParam theta) {
    require_unit(u, "u");
    const double t = theta.value();
    const double mean = cond_mean_v_given_u(u, theta);
    double second = 0.0;
    if (std::abs(t - 2.0) < kSingularityBand || std::abs(t - 1.0) < kSingularityBand) {
        second = cond_raw_moment_v_quadrature(u, theta, 2);
    } else {
        const double w = 1.0 - u;
        const double wt = std::pow(w, t);
        const double s = (1.0 + t) * (1.0 + t);
        second = t * t * t * (wt - w * w) / (s * (2.0 - t)) +
                 wt * (1.0 + 3.0 * t + 3.0 * t * t) / (3.0 * s);
    }
    return {mean, std::max(0.0, second - mean * mean)};
}

double spearman_rho(DependenceParam theta) {
    const double t = theta.value();
    return -t * (3.0 + t) / ((1.0 + t) * (2.0 + t));
}

double kendall_tau(DependenceParam theta) {
    const double t = theta.value();
    return -t / (1.0 + t);
}

DependenceMeasures dependence_measures(DependenceParam theta) {
    return {spearman_rho(theta), kendall_tau(theta)};
}

DependenceParam theta_from_rho(double rho) {
    if (!(rho > -1.0 && rho < 0.0)) {
        throw DomainError("rho = " + describe(rho) + " is outside (-1, 0)");
    }
    // Positive root of (1+rho) t^2 + 3(1+rho) t + 2 rho = 0, written without
    // the cancellation of the textbook form.
    const double a = 1.0 + rho;
    return DependenceParam(-4.0 * rho / (3.0 * a + std::sqrt(a * (9.0 + rho))));
}

DependenceParam theta_from_tau(double tau) {
    if (!(tau > -1.0 && tau < 0.0)) {
        throw DomainError("tau = " + describe(tau) + " is outside (-1, 0)");
    }
    return DependenceParam(-tau / (1.0 + tau));
}

}  // namespace negacopula
