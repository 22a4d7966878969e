#pragma once

#include <span>
#include <vector>

#include "negacopula/copula.hpp"

namespace negacopula {

/// 1-based ranks with ties replaced by their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// (rank(x_i)/(n+1), rank(y_i)/(n+1)) with average ranks. Needs n >= 3.
std::vector<UnitPoint> pseudo_observations(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of average ranks. Throws ConstantColumn on zero rank variance.
double empirical_rho(std::span<const double> x, std::span<const double> y);

/// Tie-corrected Kendall tau-b, O(n log n). Throws ConstantColumn when a column is constant.
double empirical_tau(std::span<const double> x, std::span<const double> y);

}  // namespace negacopula
