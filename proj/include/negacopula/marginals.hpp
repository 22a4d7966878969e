#pragma once

// Univariate positive-support families used as copula marginals.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace negacopula {

enum class Family { Exponential, Weibull, Gamma, Lognormal, BaselineY };

std::string_view to_string(Family family);

/// Parses a family name case-insensitively ("gamma", "Weibull", ...).
std::optional<Family> parse_family(std::string_view name);

/// F(x) = 1 - exp(-rate x).
class Exponential {
public:
    explicit Exponential(double rate);
    double rate() const noexcept { return rate_; }

    double cdf(double x) const;
    double pdf(double x) const;
    double log_pdf(double x) const;
    double quantile(double p) const;

private:
    double rate_;
};

/// F(x) = 1 - exp(-(rate x)^shape).
class Weibull {
public:
    Weibull(double rate, double shape);
    double rate() const noexcept { return rate_; }
    double shape() const noexcept { return shape_; }

    double cdf(double x) const;
    double pdf(double x) const;
    double log_pdf(double x) const;
    double quantile(double p) const;

private:
    double rate_;
    double shape_;
};

/// Shape/scale parameterisation: f(x) = x^(shape-1) e^(-x/scale) / (Gamma(shape) scale^shape).
class Gamma {
public:
    Gamma(double shape, double scale);
    double shape() const noexcept { return shape_; }
    double scale() const noexcept { return scale_; }

    double cdf(double x) const;
    double pdf(double x) const;
    double log_pdf(double x) const;
    double quantile(double p) const;

private:
    double shape_;
    double scale_;
};

/// log X ~ Normal(meanlog, sdlog).
class Lognormal {
public:
    Lognormal(double meanlog, double sdlog);
    double meanlog() const noexcept { return meanlog_; }
    double sdlog() const noexcept { return sdlog_; }

    double cdf(double x) const;
    double pdf(double x) const;
    double log_pdf(double x) const;
    double quantile(double p) const;

private:
    double meanlog_;
    double sdlog_;
};

/// The second marginal of the baseline joint law the copula was extracted from:
/// G(y) = mu/(lambda+mu) y^lambda on (0,1], 1 - lambda/((lambda+mu) y^mu) above 1.
class BaselineY {
public:
    BaselineY(double lambda, double mu);
    double lambda() const noexcept { return lambda_; }
    double mu() const noexcept { return mu_; }

    double cdf(double y) const;
    double pdf(double y) const;
    double log_pdf(double y) const;
    double quantile(double p) const;

private:
    double lambda_;
    double mu_;
};

using MarginalModel = std::variant<Exponential, Weibull, Gamma, Lognormal, BaselineY>;

Family family_of(const MarginalModel& model);

/// Number of free parameters (the k in AIC).
int parameter_count(Family family);

/// Named parameters in canonical order, e.g. {{"shape", a}, {"scale", s}}.
std::vector<std::pair<std::string, double>> parameters(const MarginalModel& model);

/// Builds a model from a family and its parameters in canonical order.
MarginalModel make_marginal(Family family, std::span<const double> params);

// cdf accepts x >= 0 and +inf; pdf/log_pdf need x > 0; quantile needs p in [0,1]
// (quantile(1) = +inf). Violations throw DomainError.
double cdf(const MarginalModel& model, double x);
double pdf(const MarginalModel& model, double x);
double log_pdf(const MarginalModel& model, double x);
double quantile(const MarginalModel& model, double p);

struct FitResult {
    MarginalModel model;
    double log_likelihood;
    double aic;
    std::size_t n;
};

/// Maximum-likelihood fit. Exponential and Lognormal are closed form; Gamma and
/// Weibull use safeguarded Newton on the profile score started from the
/// method-of-moments estimate. BaselineY has no fitter.
/// Throws InsufficientData (n < 2), NonPositiveData, FailedConvergence.
FitResult mle_fit(Family family, std::span<const double> data);

double log_likelihood(const MarginalModel& model, std::span<const double> data);

/// Method-of-moments estimate used to start the iterative fits.
MarginalModel moment_estimate(Family family, std::span<const double> data);

struct FitFailure {
    Family family;
    std::string message;
};

struct ModelSelection {
    FitResult best;
    std::vector<FitResult> candidates;  ///< every family that fitted, in request order
    std::vector<FitFailure> failures;   ///< families excluded because the fit failed
};

/// Fits each family and keeps the minimum-AIC model. Needs at least two families;
/// throws the last fit error if none of them succeeds.
ModelSelection select_by_aic(std::span<const double> data, std::span<const Family> families);

}  // namespace negacopula
