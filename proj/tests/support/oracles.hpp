#pragma once

// Reference implementations used only by the tests. They avoid the library's
// own quadrature, root finders and rank code so that a shared bug cannot make a
// check pass by agreeing with itself.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

// Adaptive Simpson with Richardson correction.
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-12) {
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Integrates over [a,b] split at every breakpoint that falls strictly inside.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        std::vector<double> breaks = {}, double tol = 1e-12) {
    std::vector<double> knots{a};
    std::sort(breaks.begin(), breaks.end());
    for (double x : breaks) {
        if (x > a && x < b) knots.push_back(x);
    }
    knots.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        total += simpson(f, knots[i], knots[i + 1], tol / static_cast<double>(knots.size()));
    }
    return total;
}

// Root of an increasing function on [lo, hi] by plain bisection.
inline double bisect(const std::function<double(double)>& g, double lo, double hi,
                     int iterations = 200) {
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// The copula written out directly from its piecewise definition.
inline double copula(double u, double v, double t) {
    const double a = t / (1.0 + t);
    const double w = 1.0 - u;
    if (v <= a * w) return 0.0;
    if (v <= a) return v - w + std::pow(t, t) / std::pow(1.0 + t, 1.0 + t) * std::pow(w, 1.0 + t) *
                                   std::pow(v, -t);
    return u - (1.0 - v) * (1.0 - std::pow(w, 1.0 + t));
}

inline double density(double u, double v, double t) {
    const double a = t / (1.0 + t);
    const double w = 1.0 - u;
    if (v <= a * w) return 0.0;
    if (v <= a) return std::pow(t, 1.0 + t) / std::pow(1.0 + t, t) * std::pow(w, t) *
                       std::pow(v, -1.0 - t);
    return (1.0 + t) * std::pow(w, t);
}

// Integral of the density over [0,u] x [0,v], inner integral in v.
inline double density_mass(double u, double v, double t, double tol = 1e-10) {
    const double a = t / (1.0 + t);
    auto inner = [&](double s) {
        const double lo = a * (1.0 - s);
        if (!(v > lo)) return 0.0;
        // Below a the integrand decays like r^(-1-t) from a spike at lo; geometric knots
        // keep every panel within a factor of two in r.
        std::vector<double> breaks{a};
        if (lo > 0.0) {
            for (double r = 2.0 * lo; r < std::min(v, a); r *= 2.0) breaks.push_back(r);
        }
        return integrate([&](double r) { return density(s, r, t); }, lo, v, breaks, tol);
    };
    std::vector<double> outer_breaks;
    if (v < a) outer_breaks.push_back(1.0 - v / a);
    // The Lower-part scale shrinks as s -> 1, so refine geometrically there too.
    for (double d = 0.5; d > 1e-12; d *= 0.5) {
        if (1.0 - d < u) outer_breaks.push_back(1.0 - d);
    }
    return integrate(inner, 0.0, u, outer_breaks, tol);
}

// Kendall tau-b by enumerating all pairs.
inline double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double concordant = 0.0;
    double discordant = 0.0;
    double tied_x = 0.0;
    double tied_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            if (dx == 0.0 && dy == 0.0) continue;
            if (dx == 0.0) {
                tied_x += 1.0;
            } else if (dy == 0.0) {
                tied_y += 1.0;
            } else if ((dx > 0.0) == (dy > 0.0)) {
                concordant += 1.0;
            } else {
                discordant += 1.0;
            }
        }
    }
    return (concordant - discordant) /
           std::sqrt((concordant + discordant + tied_x) * (concordant + discordant + tied_y));
}

// Pearson correlation of average ranks, ranks found by counting.
inline double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
    auto ranks = [](const std::vector<double>& z) {
        std::vector<double> r(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
            double below = 0.0;
            double equal = 0.0;
            for (double other : z) {
                below += other < z[i] ? 1.0 : 0.0;
                equal += other == z[i] ? 1.0 : 0.0;
            }
            r[i] = below + 0.5 * (equal + 1.0);
        }
        return r;
    };
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mean = 0.5 * (n + 1.0);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (rx[i] - mean) * (ry[i] - mean);
        sxx += (rx[i] - mean) * (rx[i] - mean);
        syy += (ry[i] - mean) * (ry[i] - mean);
    }
    return sxy / std::sqrt(sxx * syy);
}

// sup |C_n - C| over the interior lattice k/(grid+1); C_n counts u_i <= s, v_i <= t.
template <typename Point, typename Copula>
double empirical_copula_distance(const std::vector<Point>& pts, std::size_t grid,
                                 Copula&& copula_fn) {
    std::vector<std::vector<double>> counts(grid + 2, std::vector<double>(grid + 2, 0.0));
    const double g = static_cast<double>(grid + 1);
    for (const auto& p : pts) {
        // smallest lattice index k with p <= k/g
        const auto iu = static_cast<std::size_t>(std::min(g, std::ceil(p.u * g)));
        const auto iv = static_cast<std::size_t>(std::min(g, std::ceil(p.v * g)));
        counts[iu][iv] += 1.0;
    }
    // 2D cumulative sum
    for (std::size_t i = 0; i <= grid + 1; ++i) {
        for (std::size_t j = 0; j <= grid + 1; ++j) {
            if (i > 0) counts[i][j] += counts[i - 1][j];
            if (j > 0) counts[i][j] += counts[i][j - 1];
            if (i > 0 && j > 0) counts[i][j] -= counts[i - 1][j - 1];
        }
    }
    const double n = static_cast<double>(pts.size());
    double worst = 0.0;
    for (std::size_t i = 1; i <= grid; ++i) {
        for (std::size_t j = 1; j <= grid; ++j) {
            const double s = static_cast<double>(i) / g;
            const double t = static_cast<double>(j) / g;
            worst = std::max(worst, std::abs(counts[i][j] / n - copula_fn(s, t)));
        }
    }
    return worst;
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

}  // namespace oracle
