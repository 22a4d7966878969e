#pragma once

// Two-stage fitting: marginals by maximum likelihood with AIC selection, then
// theta by inverting an empirical rank correlation. The bivariate likelihood is
// not maximised over theta: the density vanishes below the support line, so any
// observation there drives the likelihood to -inf.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "negacopula/bivariate.hpp"
#include "negacopula/copula.hpp"
#include "negacopula/marginals.hpp"

namespace negacopula {

/// Complete (x, y) pairs. Construction drops rows where either value is NaN.
class PairedData {
public:
    /// Throws DomainError on length mismatch or infinite values, InsufficientData
    /// when fewer than 3 complete rows remain.
    PairedData(std::span<const double> x, std::span<const double> y);

    const std::vector<double>& x() const noexcept { return x_; }
    const std::vector<double>& y() const noexcept { return y_; }
    std::size_t size() const noexcept { return x_.size(); }
    std::size_t dropped() const noexcept { return dropped_; }

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::size_t dropped_ = 0;
};

enum class ThetaMethod { RhoInversion, TauInversion };

/// Throws PositiveDependence when the chosen empirical measure is >= 0.
DependenceParam estimate_theta(const PairedData& data, ThetaMethod method);

/// sup |F_n - F| for the sorted data against a fitted model.
double ks_statistic(std::span<const double> data, const MarginalModel& fitted);

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
    std::size_t n_bootstrap = 0;   ///< replicates requested
    std::size_t n_dropped = 0;     ///< replicates whose refit failed
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// Parametric-bootstrap KS test. Each replicate draws n values from `fitted`
/// (stream derived from (seed, stream, replicate)), refits the same family and
/// recomputes the statistic; p = share of replicates with statistic >= observed.
/// Needs B >= 100. More than 1% failed refits throws FailedConvergence.
/// The result does not depend on `threads`.
KsResult ks_test_bootstrap(std::span<const double> data, const MarginalModel& fitted,
                           std::size_t n_bootstrap, std::uint64_t seed,
                           std::uint64_t stream = 0, unsigned threads = 1);

struct ConditionalCurve {
    double conditioning_x;
    std::vector<double> y;
    std::vector<double> cdf;
};

/// P[Y <= y | X = x] at `points` y values evenly spaced on (0, G^-1(0.999)].
ConditionalCurve conditional_curve(const BivariateModel& model, double x, std::size_t points);

struct FitConfig {
    std::vector<Family> families{Family::Lognormal, Family::Weibull, Family::Gamma};
    ThetaMethod method = ThetaMethod::RhoInversion;
    std::size_t n_bootstrap = 10000;  ///< 0 skips the KS tests
    std::uint64_t seed = 42;
    unsigned threads = 1;
    std::vector<double> conditional_at;
    std::size_t curve_points = 200;
};

struct FitReport {
    ModelSelection marginal_x;
    ModelSelection marginal_y;
    double rho_emp = 0.0;
    double tau_emp = 0.0;
    DependenceParam theta_hat{1.0};
    std::optional<KsResult> ks_x;
    std::optional<KsResult> ks_y;
    std::vector<ConditionalCurve> conditional_curves;
    std::size_t n = 0;
    std::size_t dropped = 0;

    BivariateModel model() const {
        return {marginal_x.best.model, marginal_y.best.model, theta_hat};
    }
};

FitReport fit_pipeline(const PairedData& data, const FitConfig& config);

}  // namespace negacopula
