#include "negacopula/sampler.hpp"

#include "negacopula/error.hpp"

namespace negacopula {

std::vector<UnitPoint> sample_copula(std::size_t n, DependenceParam theta, RandomStream& rng) {
    std::vector<UnitPoint> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = rng.uniform();
        const double p = rng.uniform();
        pairs.push_back({cond_quantile_u_given_v(p, v, theta), v});
    }
    return pairs;
}

SampleBatch sample_copula(std::size_t n, DependenceParam theta, std::uint64_t seed) {
    if (n == 0) throw DomainError("sample size must be at least 1");
    RandomStream rng(seed);
    return {sample_copula(n, theta, rng), seed, theta};
}

}  // namespace negacopula
