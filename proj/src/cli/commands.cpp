#include "negacopula/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "negacopula/audit.hpp"
#include "negacopula/bivariate.hpp"
#include "negacopula/cli/csv.hpp"
#include "negacopula/cli/report_json.hpp"
#include "negacopula/copula.hpp"
#include "negacopula/error.hpp"
#include "negacopula/estimation.hpp"
#include "negacopula/rng.hpp"
#include "negacopula/sampler.hpp"

namespace negacopula::cli {
namespace {

constexpr std::uint64_t kDefaultSeed = 42;
constexpr std::string_view kSeedEnv = "NEGACOPULA_SEED";
constexpr std::string_view kToolVersion = "1.0.0";

/// Raised for bad arguments that CLI11 cannot catch itself.
class UsageError : public Error {
public:
    using Error::Error;
};

struct Options {
    // shared
    std::string output;
    std::uint64_t seed = kDefaultSeed;
    CLI::Option* seed_option = nullptr;
    unsigned threads = 0;

    // fit
    std::string input;
    std::string xcol;
    std::string ycol;
    std::size_t bootstrap = 10000;
    std::vector<std::string> families{"lognormal", "weibull", "gamma"};
    std::string method = "rho";
    std::vector<double> at;
    std::size_t curve_points = 200;

    // sample / measures / audit / plot-data
    double theta = 1.0;
    CLI::Option* theta_option = nullptr;
    std::size_t n = 500;
    std::string xmarginal;
    std::string ymarginal;
    std::size_t grid = 0;
    CLI::Option* grid_option = nullptr;
    double theta_max = 20.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    CLI::Option* theta1_option = nullptr;
    CLI::Option* theta2_option = nullptr;
    std::size_t laplacian_steps = 400;
    std::size_t n_random = 10000;
    std::string what = "cdf";
    std::string model_path;
};

std::uint64_t resolve_seed(const Options& o) {
    if (o.seed_option != nullptr && o.seed_option->count() > 0) return o.seed;
    if (const char* env = std::getenv(std::string(kSeedEnv).c_str()); env != nullptr && *env) {
        std::uint64_t value = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw UsageError(std::string(kSeedEnv) + " is not an unsigned integer: " + env);
        }
        return value;
    }
    return kDefaultSeed;
}

unsigned resolve_threads(const Options& o) {
    return o.threads > 0 ? o.threads : std::max(1u, std::thread::hardware_concurrency());
}

DependenceParam checked_theta(double value, const char* name) {
    try {
        return DependenceParam(value);
    } catch (const DomainError& e) {
        throw UsageError(std::string(name) + ": " + e.what());
    }
}

MarginalModel parse_marginal_spec(const std::string& spec) {
    // family:p1[,p2]
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("marginal spec '" + spec + "' lacks ':'");
    const auto family = parse_family(spec.substr(0, colon));
    if (!family) throw UsageError("unknown family in '" + spec + "'");
    std::vector<double> params;
    std::stringstream rest(spec.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
            throw UsageError("bad parameter '" + item + "' in '" + spec + "'");
        }
        params.push_back(value);
    }
    try {
        return make_marginal(*family, params);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

// Destination stream: the --output file or `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw UsageError("cannot open output file " + path);
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

Json run_record(std::string_view command, Json config, std::optional<std::uint64_t> seed) {
    Json j;
    j["tool"] = {{"name", "negacopula"}, {"version", kToolVersion}};
    j["command"] = command;
    j["config"] = std::move(config);
    if (seed) j["rng"] = {{"algorithm", kRngAlgorithm}, {"seed", *seed}};
    return j;
}

// CSV outputs carry their run record in a sidecar <output>.run.json.
void write_sidecar(const std::string& output, const Json& record) {
    if (output.empty()) return;
    std::ofstream side(output + ".run.json", std::ios::binary);
    side << record.dump(2) << '\n';
}

// --- commands ---------------------------------------------------------------

int cmd_fit(const Options& o, std::ostream& out) {
    std::ifstream file(o.input, std::ios::binary);
    if (!file) throw UsageError("cannot open input file " + o.input);
    const CsvTable table = read_csv(file);
    const auto x = numeric_column(table, o.xcol);
    const auto y = numeric_column(table, o.ycol);

    FitConfig config;
    config.families.clear();
    for (const auto& name : o.families) {
        const auto family = parse_family(name);
        if (!family || *family == Family::BaselineY) throw UsageError("cannot fit family " + name);
        config.families.push_back(*family);
    }
    if (o.method != "rho" && o.method != "tau") throw UsageError("--method must be rho or tau");
    config.method = o.method == "rho" ? ThetaMethod::RhoInversion : ThetaMethod::TauInversion;
    config.n_bootstrap = o.bootstrap;
    config.seed = resolve_seed(o);
    config.threads = resolve_threads(o);
    config.conditional_at = o.at;
    config.curve_points = o.curve_points;

    const PairedData data(x, y);
    const FitReport report = fit_pipeline(data, config);

    Json record = run_record("fit",
                             {{"input", o.input},
                              {"xcol", o.xcol},
                              {"ycol", o.ycol},
                              {"families", o.families},
                              {"method", o.method == "rho" ? "rho_inversion" : "tau_inversion"},
                              {"bootstrap_B", o.bootstrap},
                              {"conditional_at", o.at},
                              {"curve_points", o.curve_points},
                              {"missing_policy", "drop rows with a missing value in either column"}},
                             config.seed);
    record["columns"] = {{"x", o.xcol}, {"y", o.ycol}};
    const Json body = to_json(report);
    for (const auto& [key, value] : body.items()) record[key] = value;
    Sink sink(o.output, out);
    *sink << record.dump(2) << '\n';
    return kSuccess;
}

int cmd_sample(const Options& o, std::ostream& out) {
    const DependenceParam theta = checked_theta(o.theta, "--theta");
    if (o.n == 0) throw UsageError("--n must be at least 1");
    const bool with_margins = !o.xmarginal.empty() || !o.ymarginal.empty();
    if (with_margins && (o.xmarginal.empty() || o.ymarginal.empty())) {
        throw UsageError("--xmarginal and --ymarginal must be given together");
    }
    const std::uint64_t seed = resolve_seed(o);

    Sink sink(o.output, out);
    if (with_margins) {
        const BivariateModel model{parse_marginal_spec(o.xmarginal),
                                   parse_marginal_spec(o.ymarginal), theta};
        *sink << "x,y\n";
        for (const auto& p : sample_bivariate(o.n, model, seed)) {
            const double row[] = {p.x, p.y};
            write_row(*sink, row);
        }
    } else {
        *sink << "u,v\n";
        for (const auto& p : sample_copula(o.n, theta, seed).pairs) {
            const double row[] = {p.u, p.v};
            write_row(*sink, row);
        }
    }
    write_sidecar(o.output, run_record("sample",
                                       {{"theta", o.theta},
                                        {"n", o.n},
                                        {"xmarginal", o.xmarginal},
                                        {"ymarginal", o.ymarginal}},
                                       seed));
    return kSuccess;
}

int cmd_measures(const Options& o, std::ostream& out) {
    Sink sink(o.output, out);
    if (o.grid_option->count() > 0) {
        if (o.grid < 1) throw UsageError("--grid must be at least 1");
        const DependenceParam top = checked_theta(o.theta_max, "--theta-max");
        *sink << "theta,rho,tau\n";
        for (std::size_t k = 1; k <= o.grid; ++k) {
            const DependenceParam t(top.value() * static_cast<double>(k) /
                                    static_cast<double>(o.grid));
            const double row[] = {t.value(), spearman_rho(t), kendall_tau(t)};
            write_row(*sink, row);
        }
        write_sidecar(o.output, run_record("measures",
                                           {{"grid", o.grid}, {"theta_max", o.theta_max}},
                                           std::nullopt));
        return kSuccess;
    }
    if (o.theta_option->count() == 0) throw UsageError("measures needs --theta or --grid");
    const DependenceParam theta = checked_theta(o.theta, "--theta");
    Json record = run_record("measures", {{"theta", o.theta}}, std::nullopt);
    record["theta"] = theta.value();
    record["rho"] = spearman_rho(theta);
    record["tau"] = kendall_tau(theta);
    *sink << record.dump(2) << '\n';
    return kSuccess;
}

int cmd_audit(const Options& o, std::ostream& out) {
    AuditSuiteConfig config;
    config.grid = o.grid_option->count() > 0 ? o.grid : config.grid;
    config.laplacian_steps = o.laplacian_steps;
    config.n_random = o.n_random;
    config.seed = resolve_seed(o);
    if (config.grid < 2) throw UsageError("--grid must be at least 2");
    if (config.laplacian_steps < 8) throw UsageError("--laplacian-steps must be at least 8");
    if (config.n_random < 1) throw UsageError("--n-random must be at least 1");

    const bool single = o.theta_option->count() > 0;
    const bool ordered = o.theta1_option->count() > 0 || o.theta2_option->count() > 0;
    if (!single && !ordered) throw UsageError("audit needs --theta or --theta1/--theta2");
    if (ordered && (o.theta1_option->count() == 0 || o.theta2_option->count() == 0)) {
        throw UsageError("--theta1 and --theta2 must be given together");
    }

    std::vector<AuditReport> reports;
    if (single) {
        reports = run_audit_suite(checked_theta(o.theta, "--theta"), config);
    }
    if (ordered) {
        const DependenceParam t1 = checked_theta(o.theta1, "--theta1");
        const DependenceParam t2 = checked_theta(o.theta2, "--theta2");
        if (t1.value() > t2.value()) throw UsageError("--theta1 must not exceed --theta2");
        for (auto& r : run_order_audit_suite(t1, t2, config)) reports.push_back(std::move(r));
    }

    Json array = Json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        array.push_back(to_json(r));
        all_pass = all_pass && r.pass;
    }
    Json record = run_record("audit",
                             {{"theta", single ? Json(o.theta) : Json(nullptr)},
                              {"theta1", ordered ? Json(o.theta1) : Json(nullptr)},
                              {"theta2", ordered ? Json(o.theta2) : Json(nullptr)},
                              {"grid", config.grid},
                              {"laplacian_steps", config.laplacian_steps},
                              {"n_random", config.n_random}},
                             config.seed);
    record["all_pass"] = all_pass;
    record["reports"] = array;
    Sink sink(o.output, out);
    *sink << record.dump(2) << '\n';
    return all_pass ? kSuccess : kCheckFailed;
}

BivariateModel load_model(const std::string& path) {
    if (path.empty()) throw UsageError("--model <fit report JSON> is required for this plot");
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open model file " + path);
    try {
        return model_from_fit_report(Json::parse(file));
    } catch (const Json::exception& e) {
        throw UsageError("malformed fit report " + path + ": " + e.what());
    }
}

int cmd_plotdata(const Options& o, std::ostream& out) {
    const std::size_t grid = o.grid_option->count() > 0 ? o.grid : 101;
    if (grid < 2) throw UsageError("--grid must be at least 2");
    const auto step = [&](std::size_t i) {
        return static_cast<double>(i) / static_cast<double>(grid - 1);
    };
    Sink sink(o.output, out);
    Json config{{"what", o.what}, {"grid", grid}};

    if (o.what == "cdf" || o.what == "pdf" || o.what == "survival") {
        const DependenceParam theta = checked_theta(o.theta, "--theta");
        config["theta"] = theta.value();
        *sink << "u,v,value\n";
        for (std::size_t i = 0; i < grid; ++i) {
            for (std::size_t j = 0; j < grid; ++j) {
                const UnitPoint p{step(i), step(j)};
                const double value = o.what == "cdf"   ? cdf(p, theta)
                                     : o.what == "pdf" ? pdf(p, theta)
                                                       : survival_copula(p, theta);
                const double row[] = {p.u, p.v, value};
                write_row(*sink, row);
            }
        }
    } else if (o.what == "joint") {
        const BivariateModel model = load_model(o.model_path);
        config["model"] = o.model_path;
        const double x_top = quantile(model.margin_x, 0.995);
        const double y_top = quantile(model.margin_y, 0.995);
        *sink << "x,y,value\n";
        for (std::size_t i = 0; i < grid; ++i) {
            for (std::size_t j = 0; j < grid; ++j) {
                const double x = x_top * step(i);
                const double y = y_top * step(j);
                const double row[] = {x, y, joint_cdf(model, x, y)};
                write_row(*sink, row);
            }
        }
    } else if (o.what == "cond") {
        const BivariateModel model = load_model(o.model_path);
        if (o.at.empty()) throw UsageError("--at is required for conditional curves");
        config["model"] = o.model_path;
        config["at"] = o.at;
        *sink << "y,cdf,conditioning_x\n";
        for (double x : o.at) {
            if (!(x >= 0.0)) throw UsageError("--at values must be non-negative");
            const ConditionalCurve curve = conditional_curve(model, x, grid);
            for (std::size_t k = 0; k < curve.y.size(); ++k) {
                const double row[] = {curve.y[k], curve.cdf[k], x};
                write_row(*sink, row);
            }
        }
    } else {
        throw UsageError("--what must be one of cdf, pdf, survival, joint, cond");
    }
    write_sidecar(o.output, run_record("plot-data", config, std::nullopt));
    return kSuccess;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Negative-dependence copula toolkit: fitting, simulation, measures and audits",
                 "negacopula"};
    app.require_subcommand(1);
    Options o;

    auto add_seed = [&](CLI::App* sub) {
        return sub->add_option("--seed", o.seed,
                                        "RNG seed (falls back to $NEGACOPULA_SEED, then 42)");
    };

    auto* fit = app.add_subcommand("fit", "Fit marginals and theta to paired data");
    fit->add_option("--input", o.input, "CSV file with a header row")->required();
    fit->add_option("--xcol", o.xcol, "Column used as X")->required();
    fit->add_option("--ycol", o.ycol, "Column used as Y")->required();
    fit->add_option("--bootstrap", o.bootstrap, "KS bootstrap replicates (0 skips the test)");
    fit->add_option("--families", o.families, "Candidate marginal families")->delimiter(',');
    fit->add_option("--method", o.method, "theta estimator: rho or tau inversion");
    fit->add_option("--at", o.at, "X values for conditional CDF curves of Y")->delimiter(',');
    fit->add_option("--curve-points", o.curve_points, "Points per conditional curve");
    fit->add_option("--threads", o.threads, "Worker threads for the bootstrap (0 = all cores)");
    fit->add_option("--output", o.output, "Write the JSON report here instead of stdout");
    auto* fit_seed = add_seed(fit);

    auto* sample = app.add_subcommand("sample", "Simulate from the copula or a bivariate model");
    sample->add_option("--theta", o.theta, "Dependence parameter")->required();
    sample->add_option("--n", o.n, "Number of pairs");
    sample->add_option("--xmarginal", o.xmarginal, "X marginal, e.g. gamma:7.171,1.375");
    sample->add_option("--ymarginal", o.ymarginal, "Y marginal, e.g. gamma:1.7,24.775");
    sample->add_option("--output", o.output, "CSV destination");
    auto* sample_seed = add_seed(sample);

    auto* measures = app.add_subcommand("measures", "Spearman's rho and Kendall's tau");
    o.theta_option = measures->add_option("--theta", o.theta, "Dependence parameter");
    auto* measures_grid = measures->add_option("--grid", o.grid, "Emit a rho/tau curve CSV");
    measures->add_option("--theta-max", o.theta_max, "Upper end of the --grid curve");
    measures->add_option("--output", o.output, "Destination");

    auto* audit = app.add_subcommand("audit", "Numerically certify the dependence properties");
    auto* audit_theta = audit->add_option("--theta", o.theta, "Run the single-theta suite");
    o.theta1_option = audit->add_option("--theta1", o.theta1, "Smaller theta for orderings");
    o.theta2_option = audit->add_option("--theta2", o.theta2, "Larger theta for orderings");
    auto* audit_grid = audit->add_option("--grid", o.grid, "Grid resolution (default 200)");
    audit->add_option("--laplacian-steps", o.laplacian_steps, "Steps per axis for the Laplacian");
    audit->add_option("--n-random", o.n_random, "Random rectangles / quadruples");
    audit->add_option("--output", o.output, "Destination");
    auto* audit_seed = add_seed(audit);

    auto* plot = app.add_subcommand("plot-data", "Emit plot data as long-format CSV");
    plot->add_option("--what", o.what, "cdf | pdf | survival | joint | cond");
    auto* plot_theta = plot->add_option("--theta", o.theta, "Dependence parameter (copula plots)");
    auto* plot_grid = plot->add_option("--grid", o.grid, "Points per axis (default 101)");
    plot->add_option("--model", o.model_path, "Fit report JSON (joint / cond plots)");
    plot->add_option("--at", o.at, "Conditioning X values")->delimiter(',');
    plot->add_option("--output", o.output, "Destination");
    (void)plot_theta;

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (fit->parsed()) {
            o.seed_option = fit_seed;
            return cmd_fit(o, out);
        }
        if (sample->parsed()) {
            o.seed_option = sample_seed;
            return cmd_sample(o, out);
        }
        if (measures->parsed()) {
            o.grid_option = measures_grid;
            return cmd_measures(o, out);
        }
        if (audit->parsed()) {
            o.seed_option = audit_seed;
            o.theta_option = audit_theta;
            o.grid_option = audit_grid;
            return cmd_audit(o, out);
        }
        if (plot->parsed()) {
            o.grid_option = plot_grid;
            return cmd_plotdata(o, out);
        }
    } catch (const CsvError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const PositiveDependence& e) {
        err << "error: " << e.what() << '\n';
        return kModelInapplicable;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kUsageError;
}

}  // namespace negacopula::cli
