#include "negacopula/rank_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "negacopula/error.hpp"

namespace negacopula {
namespace {

void require_pairs(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DomainError("columns differ in length (" + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
    }
    if (x.size() < 3) {
        throw InsufficientData("need at least 3 pairs, got " + std::to_string(x.size()));
    }
}

// Number of pairs i < j with values[i] > values[j]; sorts `values`.
std::int64_t count_inversions(std::vector<double>& values) {
    std::vector<double> buffer(values.size());
    std::int64_t inversions = 0;
    for (std::size_t width = 1; width < values.size(); width *= 2) {
        for (std::size_t lo = 0; lo < values.size(); lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, values.size());
            const std::size_t hi = std::min(lo + 2 * width, values.size());
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (values[j] < values[i]) {
                    inversions += static_cast<std::int64_t>(mid - i);
                    buffer[k++] = values[j++];
                } else {
                    buffer[k++] = values[i++];
                }
            }
            while (i < mid) buffer[k++] = values[i++];
            while (j < hi) buffer[k++] = values[j++];
        }
        values.swap(buffer);
    }
    return inversions;
}

// Sum of t(t-1)/2 over runs of consecutive equal entries.
template <class Equal>
std::int64_t tied_pairs(std::size_t n, Equal equal) {
    std::int64_t total = 0;
    std::int64_t run = 1;
    for (std::size_t i = 1; i < n; ++i) {
        if (equal(i - 1, i)) {
            ++run;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    return total + run * (run - 1) / 2;
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
        // positions i..j-1 share the mean of ranks i+1..j
        const double rank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
        i = j;
    }
    return ranks;
}

std::vector<UnitPoint> pseudo_observations(std::span<const double> x, std::span<const double> y) {
    require_pairs(x, y);
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double scale = 1.0 / static_cast<double>(x.size() + 1);
    std::vector<UnitPoint> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = {rx[i] * scale, ry[i] * scale};
    return out;
}

double empirical_rho(std::span<const double> x, std::span<const double> y) {
    require_pairs(x, y);
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const double mean = 0.5 * static_cast<double>(x.size() + 1);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw ConstantColumn("a column has zero rank variance");
    return sxy / std::sqrt(sxx * syy);
}

double empirical_tau(std::span<const double> x, std::span<const double> y) {
    require_pairs(x, y);
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
    });

    const std::int64_t x_ties =
        tied_pairs(n, [&](std::size_t i, std::size_t j) { return x[order[i]] == x[order[j]]; });
    const std::int64_t joint_ties = tied_pairs(n, [&](std::size_t i, std::size_t j) {
        return x[order[i]] == x[order[j]] && y[order[i]] == y[order[j]];
    });

    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
    const std::int64_t discordant = count_inversions(ys);  // ys is now sorted
    const std::int64_t y_ties =
        tied_pairs(n, [&](std::size_t i, std::size_t j) { return ys[i] == ys[j]; });

    const std::int64_t total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
    if (total == x_ties || total == y_ties) throw ConstantColumn("a column is constant");
    const double numerator =
        static_cast<double>(total - x_ties - y_ties + joint_ties - 2 * discordant);
    return numerator / std::sqrt(static_cast<double>(total - x_ties)) /
           std::sqrt(static_cast<double>(total - y_ties));
}

}  // namespace negacopula
