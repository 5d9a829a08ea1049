#pragma once

#include <array>

#include "nbarrier/barrier.hpp"
#include "nbarrier/model.hpp"

namespace nbarrier {

/// Solution of the tangency system
///
///   alpha u + d beta v = lambda2,   F(u, v) = 0,   F_u/alpha = F_v/(d beta):
///
/// the level lambda2 at which the q-line becomes tangent to the quadratic
/// curve F = 0, the point of tangency, the quadratic lambda2 satisfies, and
/// the derived inner barrier levels. The rejected second root (whose
/// tangency point leaves the open first quadrant) is kept for diagnostics.
struct TangentSolution {
    double lambda2;
    double u_t, v_t; ///< tangency point, strictly inside the first quadrant

    double mu0, mu1, mu2; ///< coefficients of mu2 L^2 + mu1 L + mu0 = 0
    double disc;          ///< its discriminant mu1^2 - 4 mu0 mu2 (> 0 inside the window)

    double lambda1, eta; ///< (lambda2/d, lambda2/d) for d >= 1, (lambda2 d, lambda2) for d < 1

    std::array<double, 2> d_window; ///< admissible open interval for d

    double lambda2_rejected;
    double u_rejected, v_rejected;
};

/// Solve the tangency system. Requires the bistable regime and d strictly
/// inside the admissibility window; throws OutsideWindow when the
/// discriminant is non-positive there. Root selection is geometric: the
/// returned root is the one whose tangency point lies in the open first
/// quadrant.
TangentSolution solve_tangent(const ScaledParams& p, const Weights& w);

/// Endpoints (d_min, d_max) of the admissibility interval
///
///   (S -+ sqrt(S^2 - 4 alpha beta k)) / (2 beta),  S = alpha a1 + a2 beta k.
///
/// The radicand is exactly hyperbola_check(p, w), so both endpoints are
/// real and positive in the bistable regime. d_min is evaluated in the
/// fused form 2 alpha k / (S + sqrt(...)) to avoid cancellation.
std::array<double, 2> window(const ScaledParams& p, const Weights& w);

/// The tangent-line lower bound lambda2 * min[d, 1/d] for q. Strictly
/// stronger than the coarse bound of bounds_scaled whenever the window
/// condition holds.
double sharp_lower_bound(const ScaledParams& p, const Weights& w);

/// Closed-form two-sided bound on u + v when d = k = 1:
///   4/(a1 + a2 + 2) <= u + v <= 1.
/// This is the tangent bound specialised to alpha = beta = d = k = 1.
BoundPair equal_diffusion_sum_bounds(double a1, double a2);

} // namespace nbarrier
