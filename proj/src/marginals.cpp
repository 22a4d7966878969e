#include "negacopula/marginals.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "negacopula/error.hpp"
#include "negacopula/numerics.hpp"

namespace negacopula {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_parameter(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(name) + " = " + describe(value) +
                          " must be positive and finite");
    }
}

// cdf argument: x >= 0 or +inf.
void require_cdf_arg(double x) {
    if (std::isnan(x) || x < 0.0) {
        throw DomainError("x = " + describe(x) + " is outside the support [0, inf)");
    }
}

void require_density_arg(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("x = " + describe(x) + " is outside the support (0, inf)");
    }
}

void require_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("p = " + describe(p) + " is outside [0, 1]");
    }
}

}  // namespace

// --- families ---------------------------------------------------------------

Exponential::Exponential(double rate) : rate_(rate) { require_parameter(rate, "rate"); }

double Exponential::cdf(double x) const {
    require_cdf_arg(x);
    return -std::expm1(-rate_ * x);
}

double Exponential::pdf(double x) const { return std::exp(log_pdf(x)); }

double Exponential::log_pdf(double x) const {
    require_density_arg(x);
    return std::log(rate_) - rate_ * x;
}

double Exponential::quantile(double p) const {
    require_probability(p);
    if (p == 1.0) return kInf;
    return -std::log1p(-p) / rate_;
}

Weibull::Weibull(double rate, double shape) : rate_(rate), shape_(shape) {
    require_parameter(rate, "rate");
    require_parameter(shape, "shape");
}

double Weibull::cdf(double x) const {
    require_cdf_arg(x);
    return -std::expm1(-std::pow(rate_ * x, shape_));
}

double Weibull::pdf(double x) const { return std::exp(log_pdf(x)); }

double Weibull::log_pdf(double x) const {
    require_density_arg(x);
    return std::log(shape_) + shape_ * std::log(rate_) + (shape_ - 1.0) * std::log(x) -
           std::pow(rate_ * x, shape_);
}

double Weibull::quantile(double p) const {
    require_probability(p);
    if (p == 1.0) return kInf;
    return std::pow(-std::log1p(-p), 1.0 / shape_) / rate_;
}

Gamma::Gamma(double shape, double scale) : shape_(shape), scale_(scale) {
    require_parameter(shape, "shape");
    require_parameter(scale, "scale");
}

double Gamma::cdf(double x) const {
    require_cdf_arg(x);
    return numerics::gamma_p(shape_, x / scale_);
}

double Gamma::pdf(double x) const { return std::exp(log_pdf(x)); }

double Gamma::log_pdf(double x) const {
    require_density_arg(x);
    return -std::lgamma(shape_) - shape_ * std::log(scale_) + (shape_ - 1.0) * std::log(x) -
           x / scale_;
}

double Gamma::quantile(double p) const {
    require_probability(p);
    return scale_ * numerics::gamma_p_inv(shape_, p);
}

Lognormal::Lognormal(double meanlog, double sdlog) : meanlog_(meanlog), sdlog_(sdlog) {
    if (!std::isfinite(meanlog)) throw DomainError("meanlog must be finite");
    require_parameter(sdlog, "sdlog");
}

double Lognormal::cdf(double x) const {
    require_cdf_arg(x);
    if (x == 0.0) return 0.0;
    return numerics::normal_cdf((std::log(x) - meanlog_) / sdlog_);
}

double Lognormal::pdf(double x) const { return std::exp(log_pdf(x)); }

double Lognormal::log_pdf(double x) const {
    require_density_arg(x);
    const double z = (std::log(x) - meanlog_) / sdlog_;
    return -std::log(x) - std::log(sdlog_) - 0.5 * std::log(2.0 * std::numbers::pi) -
           0.5 * z * z;
}

double Lognormal::quantile(double p) const {
    require_probability(p);
    if (p == 0.0) return 0.0;
    if (p == 1.0) return kInf;
    return std::exp(meanlog_ + sdlog_ * numerics::normal_quantile(p));
}

BaselineY::BaselineY(double lambda, double mu) : lambda_(lambda), mu_(mu) {
    require_parameter(lambda, "lambda");
    require_parameter(mu, "mu");
}

double BaselineY::cdf(double y) const {
    require_cdf_arg(y);
    const double total = lambda_ + mu_;
    if (y <= 1.0) return mu_ / total * std::pow(y, lambda_);
    return 1.0 - lambda_ / (total * std::pow(y, mu_));
}

double BaselineY::pdf(double y) const { return std::exp(log_pdf(y)); }

double BaselineY::log_pdf(double y) const {
    require_density_arg(y);
    const double log_coef = std::log(lambda_) + std::log(mu_) - std::log(lambda_ + mu_);
    if (y <= 1.0) return log_coef + (lambda_ - 1.0) * std::log(y);
    return log_coef - (mu_ + 1.0) * std::log(y);
}

double BaselineY::quantile(double p) const {
    require_probability(p);
    if (p == 1.0) return kInf;
    const double total = lambda_ + mu_;
    const double junction = mu_ / total;
    if (p <= junction) return std::pow(p / junction, 1.0 / lambda_);
    return std::pow(lambda_ / (total * (1.0 - p)), 1.0 / mu_);
}

// --- variant dispatch -------------------------------------------------------

std::string_view to_string(Family family) {
    switch (family) {
        case Family::Exponential: return "exponential";
        case Family::Weibull: return "weibull";
        case Family::Gamma: return "gamma";
        case Family::Lognormal: return "lognormal";
        case Family::BaselineY: return "baseline_y";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (Family f : {Family::Exponential, Family::Weibull, Family::Gamma, Family::Lognormal,
                     Family::BaselineY}) {
        if (lower == to_string(f)) return f;
    }
    return std::nullopt;
}

Family family_of(const MarginalModel& model) {
    return static_cast<Family>(model.index());
}

int parameter_count(Family family) {
    return family == Family::Exponential ? 1 : 2;
}

std::vector<std::pair<std::string, double>> parameters(const MarginalModel& model) {
    struct Visitor {
        std::vector<std::pair<std::string, double>> operator()(const Exponential& m) const {
            return {{"rate", m.rate()}};
        }
        std::vector<std::pair<std::string, double>> operator()(const Weibull& m) const {
            return {{"rate", m.rate()}, {"shape", m.shape()}};
        }
        std::vector<std::pair<std::string, double>> operator()(const Gamma& m) const {
            return {{"shape", m.shape()}, {"scale", m.scale()}};
        }
        std::vector<std::pair<std::string, double>> operator()(const Lognormal& m) const {
            return {{"meanlog", m.meanlog()}, {"sdlog", m.sdlog()}};
        }
        std::vector<std::pair<std::string, double>> operator()(const BaselineY& m) const {
            return {{"lambda", m.lambda()}, {"mu", m.mu()}};
        }
    };
    return std::visit(Visitor{}, model);
}

MarginalModel make_marginal(Family family, std::span<const double> params) {
    const auto expected = static_cast<std::size_t>(parameter_count(family));
    if (params.size() != expected) {
        throw DomainError(std::string(to_string(family)) + " takes " + std::to_string(expected) +
                          " parameter(s), got " + std::to_string(params.size()));
    }
    switch (family) {
        case Family::Exponential: return Exponential(params[0]);
        case Family::Weibull: return Weibull(params[0], params[1]);
        case Family::Gamma: return Gamma(params[0], params[1]);
        case Family::Lognormal: return Lognormal(params[0], params[1]);
        case Family::BaselineY: return BaselineY(params[0], params[1]);
    }
    throw DomainError("unknown family");
}

double cdf(const MarginalModel& model, double x) {
    return std::visit([x](const auto& m) { return m.cdf(x); }, model);
}

double pdf(const MarginalModel& model, double x) {
    return std::visit([x](const auto& m) { return m.pdf(x); }, model);
}

double log_pdf(const MarginalModel& model, double x) {
    return std::visit([x](const auto& m) { return m.log_pdf(x); }, model);
}

double quantile(const MarginalModel& model, double p) {
    return std::visit([p](const auto& m) { return m.quantile(p); }, model);
}

// --- fitting ----------------------------------------------------------------

namespace {

constexpr int kMaxIterations = 100;

struct Summary {
    double mean = 0.0;
    double variance = 0.0;  // divisor n
    double mean_log = 0.0;
    double var_log = 0.0;   // divisor n
};

void validate_sample(std::span<const double> data) {
    if (data.size() < 2) {
        throw InsufficientData("need at least 2 observations, got " + std::to_string(data.size()));
    }
    for (double x : data) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw NonPositiveData("observation " + describe(x) +
                                  " is not a positive finite number");
        }
    }
}

Summary summarize(std::span<const double> data) {
    const double n = static_cast<double>(data.size());
    Summary s;
    for (double x : data) {
        s.mean += x;
        s.mean_log += std::log(x);
    }
    s.mean /= n;
    s.mean_log /= n;
    for (double x : data) {
        const double d = x - s.mean;
        const double dl = std::log(x) - s.mean_log;
        s.variance += d * d;
        s.var_log += dl * dl;
    }
    s.variance /= n;
    s.var_log /= n;
    return s;
}

// Safeguarded Newton for a decreasing score in y = log(parameter). `score`
// returns (value, derivative w.r.t. the parameter).
template <class Score>
double solve_decreasing_score(Score score, double start, const char* what) {
    double lo = -kInf;  // log-parameter bounds of the bracket
    double hi = kInf;
    double y = std::log(start);
    double value = 0.0;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const double param = std::exp(y);
        const auto [g, dg] = score(param);
        value = g;
        if (g == 0.0) return param;
        if (g > 0.0) lo = y; else hi = y;

        double next = y - g / (param * dg);
        if (!std::isfinite(next) || next <= lo || next >= hi) {
            if (std::isfinite(lo) && std::isfinite(hi)) next = 0.5 * (lo + hi);
            else next = std::isfinite(lo) ? lo + 1.0 : hi - 1.0;
        }
        const double step = std::abs(std::exp(next) - param);
        y = next;
        if (step <= 1e-12 * std::max(1.0, param)) return std::exp(y);
    }
    throw FailedConvergence(std::string(what) + " did not converge", std::exp(y),
                            std::abs(value));
}

double gamma_shape_mle(const Summary& s) {
    const double log_ratio = std::log(s.mean) - s.mean_log;
    if (!(log_ratio > 1e-14) || !(s.variance > 0.0)) {
        throw FailedConvergence("gamma shape diverges on (near-)constant data", kInf, 0.0);
    }
    auto score = [&](double a) {
        return std::pair{std::log(a) - numerics::digamma(a) - log_ratio,
                         1.0 / a - numerics::trigamma(a)};
    };
    return solve_decreasing_score(score, s.mean * s.mean / s.variance, "gamma shape");
}

struct WeibullEstimate {
    double rate;
    double shape;
};

WeibullEstimate weibull_mle(std::span<const double> data, const Summary& s) {
    if (!(s.var_log > 0.0)) {
        throw FailedConvergence("weibull shape diverges on constant data", kInf, 0.0);
    }
    std::vector<double> centred(data.size());
    std::transform(data.begin(), data.end(), centred.begin(),
                   [&](double x) { return std::log(x) - s.mean_log; });
    const double top = *std::max_element(centred.begin(), centred.end());

    // Profile score in the shape: 1/k - sum(z l) / sum(z), z = exp(k (l - top)).
    auto sums = [&](double k) {
        double sz = 0.0, szl = 0.0, szl2 = 0.0;
        for (double l : centred) {
            const double z = std::exp(k * (l - top));
            sz += z;
            szl += z * l;
            szl2 += z * l * l;
        }
        return std::array<double, 3>{sz, szl, szl2};
    };
    auto score = [&](double k) {
        const auto [sz, szl, szl2] = sums(k);
        const double m1 = szl / sz;
        const double m2 = szl2 / sz;
        return std::pair{1.0 / k - m1, -1.0 / (k * k) - (m2 - m1 * m1)};
    };
    const double start = std::numbers::pi / (std::sqrt(6.0 * s.var_log));
    const double shape = solve_decreasing_score(score, start, "weibull shape");

    // rate = (n / sum x^k)^(1/k), evaluated in logs.
    const auto [sz, szl, szl2] = sums(shape);
    const double log_sum_pow = shape * (s.mean_log + top) + std::log(sz);
    const double rate =
        std::exp((std::log(static_cast<double>(data.size())) - log_sum_pow) / shape);
    return {rate, shape};
}

}  // namespace

double log_likelihood(const MarginalModel& model, std::span<const double> data) {
    double total = 0.0;
    for (double x : data) total += log_pdf(model, x);
    return total;
}

MarginalModel moment_estimate(Family family, std::span<const double> data) {
    validate_sample(data);
    const Summary s = summarize(data);
    switch (family) {
        case Family::Exponential: return Exponential(1.0 / s.mean);
        case Family::Weibull: {
            const double shape = std::numbers::pi / std::sqrt(6.0 * s.var_log);
            return Weibull(std::tgamma(1.0 + 1.0 / shape) / s.mean, shape);
        }
        case Family::Gamma:
            return Gamma(s.mean * s.mean / s.variance, s.variance / s.mean);
        case Family::Lognormal: {
            const double sigma2 = std::log1p(s.variance / (s.mean * s.mean));
            return Lognormal(std::log(s.mean) - 0.5 * sigma2, std::sqrt(sigma2));
        }
        case Family::BaselineY: break;
    }
    throw DomainError("no moment estimator for " + std::string(to_string(family)));
}

FitResult mle_fit(Family family, std::span<const double> data) {
    validate_sample(data);
    const Summary s = summarize(data);
    MarginalModel model = Exponential(1.0);
    switch (family) {
        case Family::Exponential:
            model = Exponential(1.0 / s.mean);
            break;
        case Family::Weibull: {
            const auto est = weibull_mle(data, s);
            model = Weibull(est.rate, est.shape);
            break;
        }
        case Family::Gamma: {
            const double shape = gamma_shape_mle(s);
            model = Gamma(shape, s.mean / shape);
            break;
        }
        case Family::Lognormal:
            if (!(s.var_log > 0.0)) {
                throw FailedConvergence("lognormal sdlog is zero on constant data", 0.0, 0.0);
            }
            model = Lognormal(s.mean_log, std::sqrt(s.var_log));
            break;
        case Family::BaselineY:
            throw DomainError("baseline_y has no maximum-likelihood fitter");
    }
    const double ll = log_likelihood(model, data);
    const double aic = 2.0 * parameter_count(family) - 2.0 * ll;
    return {model, ll, aic, data.size()};
}

ModelSelection select_by_aic(std::span<const double> data, std::span<const Family> families) {
    if (families.size() < 2) throw DomainError("AIC selection needs at least two families");
    std::vector<FitResult> fits;
    std::vector<FitFailure> failures;
    for (Family family : families) {
        try {
            fits.push_back(mle_fit(family, data));
        } catch (const FailedConvergence& e) {
            failures.push_back({family, e.what()});
        }
    }
    if (fits.empty()) {
        throw FailedConvergence("no candidate family could be fitted", 0.0, 0.0);
    }
    const auto best = std::min_element(fits.begin(), fits.end(),
                                       [](const auto& a, const auto& b) { return a.aic < b.aic; });
    return {*best, std::move(fits), std::move(failures)};
}

}  // namespace negacopula
