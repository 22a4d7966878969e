#pragma once

// Falsifiable numerical checks of the dependence properties and orderings of
// C_theta. Each check reports the worst signed violation found; positive values
// above the tolerance mean the property failed on the sampled points.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "negacopula/copula.hpp"

namespace negacopula {

struct AuditReport {
    std::string check_name;
    std::optional<double> theta;
    std::optional<std::pair<double, double>> theta_pair;
    std::string grid_spec;
    double worst_violation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::size_t points_checked = 0;
    std::size_t points_excluded = 0;  ///< grid points inside a boundary exclusion band
};

/// Sets pass = (worst_violation <= tolerance).
AuditReport finalize(AuditReport report);

/// C(u,0) = C(0,v) = 0, C(u,1) = u, C(1,v) = v on a grid; tolerance 1e-12.
AuditReport audit_boundary_conditions(DependenceParam theta, std::size_t grid);

/// C-volume of [u1,u2]x[v1,v2], grouped by column so degenerate rectangles give 0 exactly.
double rectangle_volume(double u1, double u2, double v1, double v2, DependenceParam theta);

/// Random rectangles, half uniform and half small ones straddling the region
/// boundaries; violation = -(C-volume). Tolerance 1e-12.
AuditReport audit_rectangle_inequality(DependenceParam theta, std::size_t n_rect,
                                       std::uint64_t seed);

/// Fréchet-Hoeffding bounds on the closed (grid+1)^2 lattice; tolerance 1e-12.
AuditReport audit_frechet_bounds(DependenceParam theta, std::size_t grid);

/// max(C(u,v) - uv) on the closed (grid+1)^2 lattice; tolerance 1e-12.
AuditReport audit_nqd(DependenceParam theta, std::size_t grid);

/// LTI(Y|X), LTI(X|Y), RTD(Y|X), RTD(X|Y) via monotonicity of C/u, C/v,
/// (v-C)/(1-u), (u-C)/(1-v) between neighbouring interior grid points. Tolerance 1e-9.
std::vector<AuditReport> audit_tail_monotonicity(DependenceParam theta, std::size_t grid);

/// SD(Y|X) and SD(X|Y): second central differences of C in u and in v (divided
/// by h^2) are >= -1e-9 away from the region boundaries.
std::vector<AuditReport> audit_stochastic_monotonicity(DependenceParam theta, std::size_t grid);

/// Four-point density inequality c11 c22 <= c12 c21 on random quadruples, and
/// equality (1e-10 relative) when all four corners carry positive density.
/// Violations are measured relative to max(1, lhs, rhs).
std::vector<AuditReport> audit_nlr(DependenceParam theta, std::size_t n_quad,
                                   std::uint64_t seed);

/// Five-point Laplacian of C with step 1/steps, >= -1e-7 at interior points at least
/// two steps away from the region boundaries.
AuditReport audit_subharmonic(DependenceParam theta, std::size_t steps);

/// C_theta2 <= C_theta1 pointwise for theta1 <= theta2; tolerance 1e-12.
AuditReport audit_order_nqd(DependenceParam theta1, DependenceParam theta2, std::size_t grid);

/// T(u) = Q_theta2(F_theta1(v|u) | u) is nonincreasing in u for every v.
/// Tolerance 1e-9 on neighbouring differences.
AuditReport audit_order_nrd(DependenceParam theta1, DependenceParam theta2,
                            std::size_t u_grid, std::size_t v_grid);

/// f11 f22 g12 g21 >= f12 f21 g11 g22 with f = c_theta1, g = c_theta2, on random
/// quadruples; relative tolerance 1e-12.
AuditReport audit_order_nlr(DependenceParam theta1, DependenceParam theta2,
                            std::size_t n_quad, std::uint64_t seed);

struct AuditSuiteConfig {
    std::size_t grid = 200;
    std::size_t laplacian_steps = 400;
    std::size_t n_random = 10000;
    std::uint64_t seed = 42;
};

/// Every single-theta check.
std::vector<AuditReport> run_audit_suite(DependenceParam theta, const AuditSuiteConfig& config);

/// Every ordering check for theta1 <= theta2.
std::vector<AuditReport> run_order_audit_suite(DependenceParam theta1, DependenceParam theta2,
                                               const AuditSuiteConfig& config);

}  // namespace negacopula
