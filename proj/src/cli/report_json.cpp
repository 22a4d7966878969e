#include "negacopula/cli/report_json.hpp"

#include <string>
#include <vector>

#include "negacopula/error.hpp"

namespace negacopula::cli {

Json to_json(const MarginalModel& model) {
    Json params = Json::object();
    for (const auto& [name, value] : parameters(model)) params[name] = value;
    return {{"family", to_string(family_of(model))}, {"params", params}};
}

Json to_json(const FitResult& fit) {
    Json j = to_json(fit.model);
    j["log_likelihood"] = fit.log_likelihood;
    j["aic"] = fit.aic;
    j["n"] = fit.n;
    return j;
}

Json to_json(const ModelSelection& selection) {
    Json j = to_json(selection.best);
    Json table = Json::array();
    for (const auto& fit : selection.candidates) table.push_back(to_json(fit));
    j["aic_table"] = table;
    Json excluded = Json::array();
    for (const auto& failure : selection.failures) {
        excluded.push_back({{"family", to_string(failure.family)}, {"reason", failure.message}});
    }
    j["excluded"] = excluded;
    return j;
}

Json to_json(const KsResult& ks) {
    return {{"statistic", ks.statistic}, {"p_value", ks.p_value}, {"B", ks.n_bootstrap},
            {"dropped", ks.n_dropped},   {"seed", ks.seed},       {"stream", ks.stream}};
}

Json to_json(const AuditReport& report) {
    Json j;
    j["check_name"] = report.check_name;
    if (report.theta) j["theta"] = *report.theta;
    if (report.theta_pair) {
        j["theta_pair"] = {report.theta_pair->first, report.theta_pair->second};
    }
    j["grid_spec"] = report.grid_spec;
    j["worst_violation"] = report.worst_violation;
    j["tolerance"] = report.tolerance;
    j["pass"] = report.pass;
    j["points_checked"] = report.points_checked;
    j["points_excluded"] = report.points_excluded;
    return j;
}

Json to_json(const ConditionalCurve& curve) {
    return {{"conditioning_x", curve.conditioning_x}, {"y", curve.y}, {"cdf", curve.cdf}};
}

Json to_json(const FitReport& report) {
    Json j;
    j["n"] = report.n;
    j["dropped_rows"] = report.dropped;
    j["marginals"] = {{"x", to_json(report.marginal_x)}, {"y", to_json(report.marginal_y)}};
    j["rho_emp"] = report.rho_emp;
    j["tau_emp"] = report.tau_emp;
    j["theta_hat"] = report.theta_hat.value();
    j["model_measures"] = {{"rho", spearman_rho(report.theta_hat)},
                           {"tau", kendall_tau(report.theta_hat)}};
    if (report.ks_x && report.ks_y) {
        j["ks"] = {{"x", to_json(*report.ks_x)}, {"y", to_json(*report.ks_y)}};
    } else {
        j["ks"] = nullptr;
    }
    Json curves = Json::array();
    for (const auto& c : report.conditional_curves) curves.push_back(to_json(c));
    j["conditional_curves"] = curves;
    return j;
}

MarginalModel marginal_from_json(const Json& j) {
    const auto family = parse_family(j.at("family").get<std::string>());
    if (!family) throw DomainError("unknown family '" + j.at("family").get<std::string>() + "'");
    const Json& params = j.at("params");
    std::vector<double> values;
    switch (*family) {
        case Family::Exponential: values = {params.at("rate")}; break;
        case Family::Weibull: values = {params.at("rate"), params.at("shape")}; break;
        case Family::Gamma: values = {params.at("shape"), params.at("scale")}; break;
        case Family::Lognormal: values = {params.at("meanlog"), params.at("sdlog")}; break;
        case Family::BaselineY: values = {params.at("lambda"), params.at("mu")}; break;
    }
    return make_marginal(*family, values);
}

BivariateModel model_from_fit_report(const Json& report) {
    const Json& marginals = report.at("marginals");
    return {marginal_from_json(marginals.at("x")), marginal_from_json(marginals.at("y")),
            DependenceParam(report.at("theta_hat").get<double>())};
}

}  // namespace negacopula::cli
