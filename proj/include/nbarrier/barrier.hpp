#pragma once

#include <array>
#include <string>

#include "nbarrier/model.hpp"

namespace nbarrier {

/// Positive weights (alpha, beta) defining the linear combinations
/// p = alpha u + beta v and q = alpha u + d beta v whose levels the
/// N-barrier is built from.
struct Weights {
    double alpha;
    double beta;

    void validate() const;
};

/// Which bound an N-barrier certifies.
enum class BoundSide { LOWER, UPPER };

/// Which of the four (diffusion, weight) branches produced the levels.
/// The weight comparison is beta a2 d vs alpha a1 for lower barriers and
/// beta d vs alpha for upper ones; ties go to the GE branch.
enum class BarrierCase {
    D_GE1_WEIGHT_GE,
    D_GE1_WEIGHT_LT,
    D_LT1_WEIGHT_GE,
    D_LT1_WEIGHT_LT,
};

const char* to_string(BoundSide s);
const char* to_string(BarrierCase c);

/// One N-barrier: two level lines of q = alpha u + d beta v (inner level
/// lambda1, outer level lambda2) and one level line of p = alpha u + beta v
/// (level eta). For a lower barrier the regions nest as
/// Q_{lambda1} subset P_eta subset Q_{lambda2}; for an upper barrier the
/// lambda1 line dominates (lambda1 >= lambda2).
struct Barrier {
    BoundSide direction;
    double lambda1;
    double lambda2;
    double eta;
    BarrierCase case_tag;
    Weights weights;
    double d; ///< diffusion ratio the q-lines were built with
};

/// Intercepts of two nested nullcline-like triangles: the nonlinearities
/// are sign-definite outside u/u_bar + v/v_bar >= 1 and inside
/// u/u_low + v/v_low <= 1.
struct GeneralNullclineBox {
    double u_bar;
    double v_bar;
    double u_low;
    double v_low;

    void validate() const;
};

/// A two-sided pointwise bound on a weighted combination of the profile.
struct BoundPair {
    double lower;
    double upper;
    std::string quantity;
};

/// bounds_general result: the bound pair plus the three line levels of the
/// lower construction (zeroed by chi when an endpoint state is the origin).
struct GeneralBounds {
    BoundPair pair;
    double lambda1;
    double lambda2;
    double eta;
};

/// Lower N-barrier for q = alpha u + d beta v in the bistable regime.
/// The golden level tables:
///   d >= 1, beta a2 d >= alpha a1: (alpha/(a2 d), alpha/a2, alpha/(a2 d))
///   d >= 1, beta a2 d <  alpha a1: (beta/a1, beta d/a1, beta/a1)
///   d <  1, beta a2 d >= alpha a1: (alpha d/a2, alpha/a2, alpha/a2)
///   d <  1, beta a2 d <  alpha a1: (beta d^2/a1, beta d/a1, beta d/a1)
/// In every case lambda1 = min[alpha/(a2 d), beta/a1] min[1, d^2].
/// Throws NotBistable outside the bistable regime.
Barrier lower_barrier_scaled(const ScaledParams& p, const Weights& w);

/// Upper N-barrier for q. Level tables:
///   d >= 1, beta d >= alpha: (beta d^2, beta d, beta d)
///   d >= 1, beta d <  alpha: (alpha d, alpha, alpha)
///   d <  1, beta d >= alpha: (beta, beta d, beta)
///   d <  1, beta d <  alpha: (alpha/d, alpha, alpha/d)
/// In every case lambda1 = max[alpha/d, beta] max[1, d^2].
Barrier upper_barrier_scaled(const ScaledParams& p, const Weights& w);

/// The two-sided maximum principle for q = alpha u + d beta v:
///   min[alpha/(a2 d), beta/a1] min[1, d^2] <= q <= max[alpha/d, beta] max[1, d^2].
/// Independent of the wave speed and of k by construction.
BoundPair bounds_scaled(const ScaledParams& p, const Weights& w);

/// Generalized maximum principle for a u + b v under nullcline boxing:
///   upper = max(a u_bar, b v_bar) max(d1,d2)/min(d1,d2)
///   lower = min(a u_low, b v_low) min(d1,d2)/max(d1,d2) * chi
/// where chi = 0 iff either endpoint state is the origin. The returned
/// levels describe the lower construction:
///   lambda2 = min(a u_low, b v_low), eta = min(1/d1, 1/d2) lambda2,
///   lambda1 = min(d1/d2, d2/d1) lambda2.
GeneralBounds bounds_general(double d1, double d2, const GeneralNullclineBox& box,
                             double a, double b, bool e_minus_zero, bool e_plus_zero);

/// Maximum principle for the raw system's q = d1 alpha u + d2 beta v:
///   min[alpha sigma2/(c21 d2), beta sigma1/(c12 d1)] min[d1^2, d2^2]
///     <= q <= max[alpha sigma1/(c11 d2), beta sigma2/(c22 d1)] max[d1^2, d2^2].
/// Throws NotBistable when [BiS] fails.
BoundPair bounds_unscaled(const UnscaledParams& p, const Weights& w);

/// Discriminant (alpha a1 + beta k a2)^2 - 4 alpha beta k of the quadratic
/// curve F(u, v) = 0; strictly positive in the bistable regime, where the
/// curve is a hyperbola.
double hyperbola_check(const ScaledParams& p, const Weights& w);

/// F(u, v) = alpha u (1 - u - a1 v) + beta k v (1 - a2 u - v): the weighted
/// combination of the two reaction terms. Its zero set passes through
/// (0,0), (1,0), (0,1) and the interior equilibrium.
double F_eval(const ScaledParams& p, const Weights& w, double u, double v);

/// An oriented segment in the (u, v) plane.
struct Segment {
    Point a;
    Point b;
};

/// The three barrier lines clipped to the positive quadrant, for plotting:
/// q-line at lambda1, q-line at lambda2, p-line at eta (in that order).
std::array<Segment, 3> barrier_segments(const Barrier& b);

} // namespace nbarrier
