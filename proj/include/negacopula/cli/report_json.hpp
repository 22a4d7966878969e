#pragma once

#include "json.hpp"

#include "negacopula/audit.hpp"
#include "negacopula/bivariate.hpp"
#include "negacopula/estimation.hpp"
#include "negacopula/marginals.hpp"

namespace negacopula::cli {

using Json = nlohmann::ordered_json;

Json to_json(const MarginalModel& model);
Json to_json(const FitResult& fit);
Json to_json(const ModelSelection& selection);
Json to_json(const KsResult& ks);
Json to_json(const AuditReport& report);
Json to_json(const ConditionalCurve& curve);

/// The result fields of a fit run (config/rng blocks are added by the caller).
Json to_json(const FitReport& report);

/// Rebuilds a model from {"family": ..., "params": {...}}.
MarginalModel marginal_from_json(const Json& j);

/// Rebuilds the fitted bivariate model from a fit report.
BivariateModel model_from_fit_report(const Json& report);

}  // namespace negacopula::cli
