#include "negacopula/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "negacopula/error.hpp"
#include "negacopula/rank_stats.hpp"
#include "negacopula/rng.hpp"

namespace negacopula {
namespace {

constexpr std::size_t kMinBootstrap = 100;
constexpr double kMaxDropShare = 0.01;

// Runs `f` and re-raises library errors with the pipeline stage prepended,
// keeping the error type.
template <class F>
auto with_stage(const std::string& stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const PositiveDependence&) {
        throw;
    } catch (const FailedConvergence& e) {
        throw FailedConvergence(stage + ": " + e.what(), e.last_iterate(), e.gradient_norm());
    } catch (const NonPositiveData& e) {
        throw NonPositiveData(stage + ": " + e.what());
    } catch (const ConstantColumn& e) {
        throw ConstantColumn(stage + ": " + e.what());
    } catch (const InsufficientData& e) {
        throw InsufficientData(stage + ": " + e.what());
    } catch (const DomainError& e) {
        throw DomainError(stage + ": " + e.what());
    }
}

// Replicate r of stream s draws from RandomStream(seed, s * 2^40 + r).
std::uint64_t replicate_stream(std::uint64_t stream, std::size_t replicate) {
    return (stream << 40) + static_cast<std::uint64_t>(replicate);
}

template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += threads) body(i);
        });
    }
}

}  // namespace

PairedData::PairedData(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DomainError("columns differ in length (" + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::isnan(x[i]) || std::isnan(y[i])) {
            ++dropped_;
            continue;
        }
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw DomainError("row " + std::to_string(i) + " holds a non-finite value");
        }
        x_.push_back(x[i]);
        y_.push_back(y[i]);
    }
    if (x_.size() < 3) {
        throw InsufficientData("need at least 3 complete pairs, got " + std::to_string(x_.size()));
    }
}

DependenceParam estimate_theta(const PairedData& data, ThetaMethod method) {
    if (method == ThetaMethod::RhoInversion) {
        const double rho = empirical_rho(data.x(), data.y());
        if (rho >= 0.0) throw PositiveDependence(rho);
        return theta_from_rho(rho);
    }
    const double tau = empirical_tau(data.x(), data.y());
    if (tau >= 0.0) throw PositiveDependence(tau);
    return theta_from_tau(tau);
}

double ks_statistic(std::span<const double> data, const MarginalModel& fitted) {
    if (data.empty()) throw InsufficientData("KS statistic of an empty sample");
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(fitted, sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

KsResult ks_test_bootstrap(std::span<const double> data, const MarginalModel& fitted,
                           std::size_t n_bootstrap, std::uint64_t seed, std::uint64_t stream,
                           unsigned threads) {
    if (n_bootstrap < kMinBootstrap) {
        throw DomainError("bootstrap needs at least " + std::to_string(kMinBootstrap) +
                          " replicates, got " + std::to_string(n_bootstrap));
    }
    const Family family = family_of(fitted);
    const double observed = ks_statistic(data, fitted);
    const std::size_t n = data.size();

    enum Outcome : signed char { Dropped = -1, Below = 0, AtLeast = 1 };
    std::vector<signed char> outcome(n_bootstrap, Dropped);
    parallel_for(n_bootstrap, threads, [&](std::size_t r) {
        RandomStream rng(seed, replicate_stream(stream, r));
        std::vector<double> synthetic(n);
        for (double& value : synthetic) value = quantile(fitted, rng.uniform());
        try {
            const FitResult refit = mle_fit(family, synthetic);
            outcome[r] = ks_statistic(synthetic, refit.model) >= observed ? AtLeast : Below;
        } catch (const FailedConvergence&) {
            outcome[r] = Dropped;
        }
    });

    KsResult result;
    result.statistic = observed;
    result.n_bootstrap = n_bootstrap;
    result.seed = seed;
    result.stream = stream;
    std::size_t exceed = 0;
    for (signed char o : outcome) {
        if (o == Dropped) ++result.n_dropped;
        if (o == AtLeast) ++exceed;
    }
    if (static_cast<double>(result.n_dropped) > kMaxDropShare * static_cast<double>(n_bootstrap)) {
        throw FailedConvergence("bootstrap refits failed in " + std::to_string(result.n_dropped) +
                                    " of " + std::to_string(n_bootstrap) + " replicates",
                                static_cast<double>(result.n_dropped), 0.0);
    }
    result.p_value =
        static_cast<double>(exceed) / static_cast<double>(n_bootstrap - result.n_dropped);
    return result;
}

ConditionalCurve conditional_curve(const BivariateModel& model, double x, std::size_t points) {
    if (points == 0) throw DomainError("conditional curve needs at least one point");
    ConditionalCurve curve{x, {}, {}};
    const double top = quantile(model.margin_y, 0.999);
    for (std::size_t k = 1; k <= points; ++k) {
        const double y = top * static_cast<double>(k) / static_cast<double>(points);
        curve.y.push_back(y);
        curve.cdf.push_back(cond_cdf_y_given_x(model, y, x));
    }
    return curve;
}

FitReport fit_pipeline(const PairedData& data, const FitConfig& config) {
    FitReport report{
        .marginal_x = with_stage("x margin",
                                 [&] { return select_by_aic(data.x(), config.families); }),
        .marginal_y = with_stage("y margin",
                                 [&] { return select_by_aic(data.y(), config.families); }),
        .ks_x = std::nullopt,
        .ks_y = std::nullopt,
        .conditional_curves = {},
    };
    report.n = data.size();
    report.dropped = data.dropped();
    with_stage("rank correlation", [&] {
        report.rho_emp = empirical_rho(data.x(), data.y());
        report.tau_emp = empirical_tau(data.x(), data.y());
    });
    report.theta_hat = with_stage("theta", [&] { return estimate_theta(data, config.method); });

    if (config.n_bootstrap > 0) {
        report.ks_x = with_stage("x margin KS", [&] {
            return ks_test_bootstrap(data.x(), report.marginal_x.best.model, config.n_bootstrap,
                                     config.seed, 0, config.threads);
        });
        report.ks_y = with_stage("y margin KS", [&] {
            return ks_test_bootstrap(data.y(), report.marginal_y.best.model, config.n_bootstrap,
                                     config.seed, 1, config.threads);
        });
    }
    const BivariateModel model = report.model();
    for (double x : config.conditional_at) {
        report.conditional_curves.push_back(with_stage("conditional curve", [&] {
            return conditional_curve(model, x, config.curve_points);
        }));
    }
    return report;
}

}  // namespace negacopula
