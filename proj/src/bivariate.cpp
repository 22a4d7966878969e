#include "negacopula/bivariate.hpp"

#include "negacopula/sampler.hpp"

namespace negacopula {

double joint_cdf(const BivariateModel& model, double x, double y) {
    return cdf({cdf(model.margin_x, x), cdf(model.margin_y, y)}, model.theta);
}

double joint_pdf(const BivariateModel& model, double x, double y) {
    const double density = pdf({cdf(model.margin_x, x), cdf(model.margin_y, y)}, model.theta);
    if (density == 0.0) return 0.0;
    return density * pdf(model.margin_x, x) * pdf(model.margin_y, y);
}

double cond_cdf_y_given_x(const BivariateModel& model, double y, double x) {
    return cond_cdf_v_given_u(cdf(model.margin_y, y), cdf(model.margin_x, x), model.theta);
}

std::vector<XYPoint> sample_bivariate(std::size_t n, const BivariateModel& model,
                                      std::uint64_t seed) {
    const SampleBatch batch = sample_copula(n, model.theta, seed);
    std::vector<XYPoint> out;
    out.reserve(n);
    for (const auto& p : batch.pairs) {
        out.push_back({quantile(model.margin_x, p.u), quantile(model.margin_y, p.v)});
    }
    return out;
}

}  // namespace negacopula
