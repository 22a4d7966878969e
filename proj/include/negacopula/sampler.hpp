#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "negacopula/copula.hpp"
#include "negacopula/rng.hpp"

namespace negacopula {

struct SampleBatch {
    std::vector<UnitPoint> pairs;
    std::uint64_t seed;
    DependenceParam theta;
};

/// Conditional-inversion sampling: v and p drawn independently from U(0,1), then
/// u = cond_quantile_u_given_v(p, v). Output is a pure function of (n, theta, seed).
SampleBatch sample_copula(std::size_t n, DependenceParam theta, std::uint64_t seed);

/// Same draws as sample_copula, from an explicit stream (used by parallel callers).
std::vector<UnitPoint> sample_copula(std::size_t n, DependenceParam theta, RandomStream& rng);

}  // namespace negacopula
