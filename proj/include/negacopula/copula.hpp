#pragma once

// Closed-form evaluation of the one-parameter negative-dependence copula
//
//   C(u,v) = v - (1-u) + K (1-u)^(1+t) v^(-t),  t(1-u)/(1+t) < v <= t/(1+t)
//   C(u,v) = u - (1-v) [1 - (1-u)^(1+t)],       v > t/(1+t)
//
// with K = t^t / (1+t)^(1+t), and C = 0 below the support line
// v <= t(1-u)/(1+t).

#include <cstdint>
#include <string_view>

namespace negacopula {

/// Dependence parameter theta. Accepted range is [kMinTheta, kMaxTheta]; outside it
/// the powers (1-u)^(1+theta) under/overflow.
class DependenceParam {
public:
    static constexpr double kMinTheta = 1e-8;
    static constexpr double kMaxTheta = 1e8;

    /// Throws DomainError when theta is non-finite or outside the supported range.
    explicit DependenceParam(double theta);

    double value() const noexcept { return theta_; }

    /// theta / (1 + theta): the v-level separating the Lower and Upper pieces.
    double threshold() const noexcept { return threshold_; }

    friend bool operator==(const DependenceParam&, const DependenceParam&) = default;

private:
    double theta_;
    double threshold_;
};

struct UnitPoint {
    double u;
    double v;
};

enum class RegionTag : std::uint8_t {
    Void,                ///< v < theta(1-u)/(1+theta): no mass, C = 0
    Lower,               ///< theta(1-u)/(1+theta) < v < theta/(1+theta)
    Upper,               ///< v > theta/(1+theta)
    BoundaryLowerUpper,  ///< on v = theta/(1+theta)
    BoundarySupport,     ///< on v = theta(1-u)/(1+theta)
};

std::string_view to_string(RegionTag tag);

/// Absolute tolerance used to put a point on a region boundary.
inline constexpr double kBoundaryTolerance = 1e-14;

RegionTag classify_region(UnitPoint p, DependenceParam theta);

/// Lower edge of the support at u: theta(1-u)/(1+theta).
double support_floor(double u, DependenceParam theta);

double cdf(UnitPoint p, DependenceParam theta);

/// Survival copula, u + v - 1 + C(1-u, 1-v).
double survival_copula(UnitPoint p, DependenceParam theta);

double pdf(UnitPoint p, DependenceParam theta);

// Conditional distributions. The CDFs accept the closed unit square; the
// quantiles require p in (0,1).
double cond_cdf_u_given_v(double u, double v, DependenceParam theta);
double cond_quantile_u_given_v(double p, double v, DependenceParam theta);
double cond_cdf_v_given_u(double v, double u, DependenceParam theta);
double cond_quantile_v_given_u(double p, double u, DependenceParam theta);

struct Moments {
    double mean;
    double variance;
};

/// E[U | V=v] and Var[U | V=v].
Moments cond_mean_var_u_given_v(double v, DependenceParam theta);

/// E[V | U=u]. Uses quadrature within 1e-3 of the removable singularity at theta = 1.
double cond_mean_v_given_u(double u, DependenceParam theta);

/// E[V | U=u] and Var[V | U=u]; quadrature near theta = 1 and theta = 2.
Moments cond_mean_var_v_given_u(double u, DependenceParam theta);

struct DependenceMeasures {
    double rho;
    double tau;
};

double spearman_rho(DependenceParam theta);
double kendall_tau(DependenceParam theta);
DependenceMeasures dependence_measures(DependenceParam theta);

/// Inverse of spearman_rho; rho must lie in (-1, 0).
DependenceParam theta_from_rho(double rho);

/// Inverse of kendall_tau; tau must lie in (-1, 0).
DependenceParam theta_from_tau(double tau);

}  // namespace negacopula
