#include "negacopula/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "negacopula/error.hpp"
#include "negacopula/rng.hpp"

namespace negacopula {
namespace {

constexpr double kExactTolerance = 1e-12;
constexpr double kMonotoneTolerance = 1e-9;
constexpr double kLaplacianTolerance = 1e-7;
constexpr double kNlrEqualityTolerance = 1e-10;

AuditReport single(std::string name, DependenceParam theta, std::string grid_spec,
                   double tolerance) {
    AuditReport r;
    r.check_name = std::move(name);
    r.theta = theta.value();
    r.grid_spec = std::move(grid_spec);
    r.tolerance = tolerance;
    r.worst_violation = -std::numeric_limits<double>::infinity();
    return r;
}

AuditReport pair(std::string name, DependenceParam t1, DependenceParam t2, std::string grid_spec,
                 double tolerance) {
    AuditReport r;
    r.check_name = std::move(name);
    r.theta_pair = std::pair{t1.value(), t2.value()};
    r.grid_spec = std::move(grid_spec);
    r.tolerance = tolerance;
    r.worst_violation = -std::numeric_limits<double>::infinity();
    return r;
}

void record(AuditReport& r, double violation) {
    r.worst_violation = std::max(r.worst_violation, violation);
    ++r.points_checked;
}

void require_ordered(DependenceParam t1, DependenceParam t2) {
    if (t1.value() > t2.value()) throw DomainError("ordering audits need theta1 <= theta2");
}

double interior(std::size_t k, std::size_t grid) {
    return static_cast<double>(k) / static_cast<double>(grid + 1);
}

std::string lattice_spec(std::size_t grid) {
    return "closed lattice k/" + std::to_string(grid) + ", " + std::to_string(grid + 1) + "x" +
           std::to_string(grid + 1) + " points";
}

std::string interior_spec(std::size_t grid) {
    return "interior grid k/" + std::to_string(grid + 1) + ", k=1.." + std::to_string(grid) +
           " in each coordinate";
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

// Quadruple u1 <= u2, v1 <= v2. Odd draws put (u1, v1) above `floor_theta`'s
// support line, so all four corners carry density.
struct Quadruple {
    double u1, u2, v1, v2;
};

Quadruple draw_quadruple(RandomStream& rng, bool in_support, DependenceParam floor_theta) {
    double u1 = rng.uniform(), u2 = rng.uniform();
    if (u1 > u2) std::swap(u1, u2);
    double v1 = rng.uniform(), v2 = rng.uniform();
    if (in_support) {
        const double floor = support_floor(u1, floor_theta);
        v1 = floor + (1.0 - floor) * v1;
        v2 = v1 + (1.0 - v1) * v2;
    } else if (v1 > v2) {
        std::swap(v1, v2);
    }
    return {u1, u2, v1, v2};
}

double relative_gap(double excess, double lhs, double rhs) {
    return excess / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

}  // namespace

AuditReport finalize(AuditReport report) {
    if (report.points_checked == 0) report.worst_violation = 0.0;
    report.pass = report.worst_violation <= report.tolerance;
    return report;
}

AuditReport audit_boundary_conditions(DependenceParam theta, std::size_t grid) {
    auto r = single("boundary_conditions", theta, lattice_spec(grid) + " on the four edges",
                    kExactTolerance);
    for (std::size_t k = 0; k <= grid; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(grid);
        record(r, std::abs(cdf({t, 0.0}, theta)));
        record(r, std::abs(cdf({0.0, t}, theta)));
        record(r, std::abs(cdf({t, 1.0}, theta) - t));
        record(r, std::abs(cdf({1.0, t}, theta) - t));
    }
    return finalize(r);
}

double rectangle_volume(double u1, double u2, double v1, double v2, DependenceParam theta) {
    return (cdf({u2, v2}, theta) - cdf({u1, v2}, theta)) -
           (cdf({u2, v1}, theta) - cdf({u1, v1}, theta));
}

AuditReport audit_rectangle_inequality(DependenceParam theta, std::size_t n_rect,
                                       std::uint64_t seed) {
    auto r = single("rectangle_inequality", theta,
                    std::to_string(n_rect) +
                        " random rectangles (half uniform, half width <= 2e-3 straddling the "
                        "region boundaries), seed " + std::to_string(seed),
                    kExactTolerance);
    RandomStream rng(seed);
    for (std::size_t i = 0; i < n_rect; ++i) {
        double u1, u2, v1, v2;
        if (i % 2 == 0) {
            u1 = rng.uniform(); u2 = rng.uniform();
            v1 = rng.uniform(); v2 = rng.uniform();
        } else {
            const double u0 = rng.uniform();
            const double v0 = (i % 4 == 1) ? support_floor(u0, theta) : theta.threshold();
            const double h = 1e-3;
            u1 = clamp_unit(u0 - h * rng.uniform()); u2 = clamp_unit(u0 + h * rng.uniform());
            v1 = clamp_unit(v0 - h * rng.uniform()); v2 = clamp_unit(v0 + h * rng.uniform());
        }
        if (u1 > u2) std::swap(u1, u2);
        if (v1 > v2) std::swap(v1, v2);
        record(r, -rectangle_volume(u1, u2, v1, v2, theta));
    }
    return finalize(r);
}

AuditReport audit_frechet_bounds(DependenceParam theta, std::size_t grid) {
    auto r = single("frechet_bounds", theta, lattice_spec(grid), kExactTolerance);
    for (std::size_t i = 0; i <= grid; ++i) {
        for (std::size_t j = 0; j <= grid; ++j) {
            const double u = static_cast<double>(i) / static_cast<double>(grid);
            const double v = static_cast<double>(j) / static_cast<double>(grid);
            const double c = cdf({u, v}, theta);
            record(r, std::max(std::max(u + v - 1.0, 0.0) - c, c - std::min(u, v)));
        }
    }
    return finalize(r);
}

AuditReport audit_nqd(DependenceParam theta, std::size_t grid) {
    auto r = single("nqd", theta, lattice_spec(grid), kExactTolerance);
    for (std::size_t i = 0; i <= grid; ++i) {
        for (std::size_t j = 0; j <= grid; ++j) {
            const double u = static_cast<double>(i) / static_cast<double>(grid);
            const double v = static_cast<double>(j) / static_cast<double>(grid);
            record(r, cdf({u, v}, theta) - u * v);
        }
    }
    return finalize(r);
}

std::vector<AuditReport> audit_tail_monotonicity(DependenceParam theta, std::size_t grid) {
    const std::string spec = interior_spec(grid) + ", neighbouring differences";
    auto lti_yx = single("lti_y_given_x", theta, spec + "; C/u nondecreasing in u",
                         kMonotoneTolerance);
    auto lti_xy = single("lti_x_given_y", theta, spec + "; C/v nondecreasing in v",
                         kMonotoneTolerance);
    auto rtd_yx = single("rtd_y_given_x", theta, spec + "; (v-C)/(1-u) nondecreasing in u",
                         kMonotoneTolerance);
    auto rtd_xy = single("rtd_x_given_y", theta, spec + "; (u-C)/(1-v) nondecreasing in v",
                         kMonotoneTolerance);

    for (std::size_t a = 1; a <= grid; ++a) {
        const double fixed = interior(a, grid);
        for (std::size_t k = 1; k < grid; ++k) {
            const double s0 = interior(k, grid);
            const double s1 = interior(k + 1, grid);
            // `fixed` plays v for the u-direction checks and u for the v-direction ones.
            const double cu0 = cdf({s0, fixed}, theta), cu1 = cdf({s1, fixed}, theta);
            const double cv0 = cdf({fixed, s0}, theta), cv1 = cdf({fixed, s1}, theta);
            record(lti_yx, cu0 / s0 - cu1 / s1);
            record(lti_xy, cv0 / s0 - cv1 / s1);
            record(rtd_yx, (fixed - cu0) / (1.0 - s0) - (fixed - cu1) / (1.0 - s1));
            record(rtd_xy, (fixed - cv0) / (1.0 - s0) - (fixed - cv1) / (1.0 - s1));
        }
    }
    return {finalize(lti_yx), finalize(lti_xy), finalize(rtd_yx), finalize(rtd_xy)};
}

std::vector<AuditReport> audit_stochastic_monotonicity(DependenceParam theta, std::size_t grid) {
    const double h = 1.0 / static_cast<double>(grid + 1);
    const std::string spec = interior_spec(grid) + ", second differences / h^2; stencils " +
                             "within one step of a region boundary excluded";
    auto sd_yx = single("sd_y_given_x", theta, spec + "; convex in u", kMonotoneTolerance);
    auto sd_xy = single("sd_x_given_y", theta, spec + "; convex in v", kMonotoneTolerance);
    const double a = theta.threshold();

    for (std::size_t i = 1; i <= grid; ++i) {
        for (std::size_t j = 1; j <= grid; ++j) {
            const double u = interior(i, grid);
            const double v = interior(j, grid);
            const double c = cdf({u, v}, theta);
            // u-direction stencil meets the support line at u* = 1 - v/a.
            if (std::abs(u - (1.0 - v / a)) <= h) {
                ++sd_yx.points_excluded;
            } else {
                const double d2 =
                    (cdf({u + h, v}, theta) - 2.0 * c + cdf({u - h, v}, theta)) / (h * h);
                record(sd_yx, -d2);
            }
            if (std::abs(v - a * (1.0 - u)) <= h || std::abs(v - a) <= h) {
                ++sd_xy.points_excluded;
            } else {
                const double d2 =
                    (cdf({u, v + h}, theta) - 2.0 * c + cdf({u, v - h}, theta)) / (h * h);
                record(sd_xy, -d2);
            }
        }
    }
    return {finalize(sd_yx), finalize(sd_xy)};
}

std::vector<AuditReport> audit_nlr(DependenceParam theta, std::size_t n_quad, std::uint64_t seed) {
    const std::string spec = std::to_string(n_quad) +
                             " random quadruples (half with all corners in the support), seed " +
                             std::to_string(seed) + "; relative to max(1, lhs, rhs)";
    auto inequality = single("nlr_inequality", theta, spec, kExactTolerance);
    auto equality = single("nlr_equality_on_support", theta, spec, kNlrEqualityTolerance);
    RandomStream rng(seed);
    for (std::size_t i = 0; i < n_quad; ++i) {
        const auto q = draw_quadruple(rng, i % 2 == 1, theta);
        const double c11 = pdf({q.u1, q.v1}, theta), c22 = pdf({q.u2, q.v2}, theta);
        const double c12 = pdf({q.u1, q.v2}, theta), c21 = pdf({q.u2, q.v1}, theta);
        const double lhs = c11 * c22;
        const double rhs = c12 * c21;
        record(inequality, relative_gap(lhs - rhs, lhs, rhs));
        if (c11 > 0.0 && c22 > 0.0 && c12 > 0.0 && c21 > 0.0) {
            record(equality, std::abs(lhs - rhs) / std::max(lhs, rhs));
        }
    }
    return {finalize(inequality), finalize(equality)};
}

AuditReport audit_subharmonic(DependenceParam theta, std::size_t steps) {
    if (steps < 8) throw DomainError("subharmonic audit needs at least 8 steps");
    const double h = 1.0 / static_cast<double>(steps);
    auto r = single("subharmonic", theta,
                    "five-point Laplacian, h = 1/" + std::to_string(steps) +
                        ", interior points two or more steps from the edges and region boundaries",
                    kLaplacianTolerance);
    const double a = theta.threshold();
    for (std::size_t i = 2; i + 2 <= steps; ++i) {
        for (std::size_t j = 2; j + 2 <= steps; ++j) {
            const double u = static_cast<double>(i) * h;
            const double v = static_cast<double>(j) * h;
            if (std::abs(v - a * (1.0 - u)) <= 2.0 * h || std::abs(v - a) <= 2.0 * h) {
                ++r.points_excluded;
                continue;
            }
            const double laplacian = (cdf({u + h, v}, theta) + cdf({u - h, v}, theta) +
                                      cdf({u, v + h}, theta) + cdf({u, v - h}, theta) -
                                      4.0 * cdf({u, v}, theta)) /
                                     (h * h);
            record(r, -laplacian);
        }
    }
    return finalize(r);
}

AuditReport audit_order_nqd(DependenceParam theta1, DependenceParam theta2, std::size_t grid) {
    require_ordered(theta1, theta2);
    auto r = pair("order_nqd", theta1, theta2, lattice_spec(grid) + "; C_theta2 - C_theta1",
                  kExactTolerance);
    for (std::size_t i = 0; i <= grid; ++i) {
        for (std::size_t j = 0; j <= grid; ++j) {
            const double u = static_cast<double>(i) / static_cast<double>(grid);
            const double v = static_cast<double>(j) / static_cast<double>(grid);
            record(r, cdf({u, v}, theta2) - cdf({u, v}, theta1));
        }
    }
    return finalize(r);
}

AuditReport audit_order_nrd(DependenceParam theta1, DependenceParam theta2, std::size_t u_grid,
                            std::size_t v_grid) {
    require_ordered(theta1, theta2);
    auto r = pair("order_nrd", theta1, theta2,
                  "u: " + interior_spec(u_grid) + "; v: " + interior_spec(v_grid) +
                      "; T(u) = Q_theta2(F_theta1(v|u)|u) nonincreasing in u",
                  kMonotoneTolerance);
    auto transform = [&](double v, double u) {
        const double p = cond_cdf_v_given_u(v, u, theta1);
        if (p <= 0.0) return support_floor(u, theta2);  // right-continuous inverse at 0
        if (p >= 1.0) return 1.0;
        return cond_quantile_v_given_u(p, u, theta2);
    };
    for (std::size_t j = 1; j <= v_grid; ++j) {
        const double v = interior(j, v_grid);
        double previous = transform(v, interior(1, u_grid));
        for (std::size_t k = 2; k <= u_grid; ++k) {
            const double current = transform(v, interior(k, u_grid));
            record(r, current - previous);
            previous = current;
        }
    }
    return finalize(r);
}

AuditReport audit_order_nlr(DependenceParam theta1, DependenceParam theta2, std::size_t n_quad,
                            std::uint64_t seed) {
    require_ordered(theta1, theta2);
    auto r = pair("order_nlr", theta1, theta2,
                  std::to_string(n_quad) +
                      " random quadruples (half inside the common support), seed " +
                      std::to_string(seed) + "; relative to max(1, lhs, rhs)",
                  kExactTolerance);
    RandomStream rng(seed);
    for (std::size_t i = 0; i < n_quad; ++i) {
        const auto q = draw_quadruple(rng, i % 2 == 1, theta2);
        const double f11 = pdf({q.u1, q.v1}, theta1), f22 = pdf({q.u2, q.v2}, theta1);
        const double f12 = pdf({q.u1, q.v2}, theta1), f21 = pdf({q.u2, q.v1}, theta1);
        const double g11 = pdf({q.u1, q.v1}, theta2), g22 = pdf({q.u2, q.v2}, theta2);
        const double g12 = pdf({q.u1, q.v2}, theta2), g21 = pdf({q.u2, q.v1}, theta2);
        const double lhs = f11 * f22 * g12 * g21;
        const double rhs = f12 * f21 * g11 * g22;
        record(r, relative_gap(rhs - lhs, lhs, rhs));
    }
    return finalize(r);
}

std::vector<AuditReport> run_audit_suite(DependenceParam theta, const AuditSuiteConfig& config) {
    std::vector<AuditReport> out;
    out.push_back(audit_boundary_conditions(theta, config.grid));
    out.push_back(audit_rectangle_inequality(theta, config.n_random, config.seed));
    out.push_back(audit_frechet_bounds(theta, config.grid));
    out.push_back(audit_nqd(theta, config.grid));
    for (auto& r : audit_tail_monotonicity(theta, config.grid)) out.push_back(std::move(r));
    for (auto& r : audit_stochastic_monotonicity(theta, config.grid)) out.push_back(std::move(r));
    for (auto& r : audit_nlr(theta, config.n_random, config.seed)) out.push_back(std::move(r));
    out.push_back(audit_subharmonic(theta, config.laplacian_steps));
    return out;
}

std::vector<AuditReport> run_order_audit_suite(DependenceParam theta1, DependenceParam theta2,
                                               const AuditSuiteConfig& config) {
    return {audit_order_nqd(theta1, theta2, config.grid),
            audit_order_nrd(theta1, theta2, config.grid, config.grid),
            audit_order_nlr(theta1, theta2, config.n_random, config.seed)};
}

}  // namespace negacopula
