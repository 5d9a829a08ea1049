#include "nbarrier/tangent.hpp"

#include <cassert>
#include <cmath>
#include <utility>

#include "nbarrier/errors.hpp"

namespace nbarrier {

namespace {

struct TangencyCoeffs {
    double S;     // alpha a1 + a2 beta k
    double G;     // S^2 - 4 alpha beta k (hyperbola discriminant)
    double delta; // beta d^2 - d S + alpha k; negative exactly inside the window
    double mu0, mu1, mu2;
};

TangencyCoeffs tangency_coeffs(const ScaledParams& p, const Weights& w) {
    const double a = w.alpha, b = w.beta, d = p.d, k = p.k;
    TangencyCoeffs c{};
    // Same evaluation order as hyperbola_check so the radicand matches it
    // bit for bit.
    c.S = a * p.a1 + b * k * p.a2;
    c.G = c.S * c.S - 4.0 * a * b * k;
    c.delta = b * d * d - d * c.S + a * k;
    c.mu2 = c.G / (4.0 * a * b * c.delta);
    c.mu1 = -((d + k) * c.S - 2.0 * k * (a + b * d)) / (2.0 * c.delta);
    c.mu0 = a * b * (d - k) * (d - k) / (4.0 * c.delta);
    return c;
}

// Tangency point of the q-line at level lambda, from eliminating the two
// linear equations of the tangency system.
Point tangency_point(const ScaledParams& p, const Weights& w, double S, double delta,
                     double lambda) {
    const double a = w.alpha, b = w.beta, d = p.d, k = p.k;
    const double u = ((2.0 * a * k - d * S) * lambda + a * b * d * (d - k)) / (2.0 * a * delta);
    const double v = ((S - 2.0 * b * d) * lambda + a * b * (d - k)) / (-2.0 * b * delta);
    return {u, v};
}

} // namespace

std::array<double, 2> window(const ScaledParams& p, const Weights& w) {
    p.validate();
    w.validate();
    if (!bistable(p)) {
        throw NotBistable("tangent construction requires the bistable regime");
    }
    const double S = w.alpha * p.a1 + w.beta * p.k * p.a2;
    const double G = S * S - 4.0 * w.alpha * w.beta * p.k;
    const double root = std::sqrt(G);
    // d_min = (S - root)/(2 beta) rewritten to avoid cancellation when
    // 4 alpha beta k << S^2.
    const double d_min = 2.0 * w.alpha * p.k / (S + root);
    const double d_max = (S + root) / (2.0 * w.beta);
    return {d_min, d_max};
}

TangentSolution solve_tangent(const ScaledParams& p, const Weights& w) {
    p.validate();
    w.validate();
    if (!bistable(p)) {
        throw NotBistable("tangent construction requires the bistable regime");
    }
    const auto c = tangency_coeffs(p, w);
    if (!(c.delta < 0.0)) {
        throw OutsideWindow("diffusion ratio d outside the tangency admissibility window");
    }

    const double disc = c.mu1 * c.mu1 - 4.0 * c.mu2 * c.mu0;
    if (!(disc > 0.0)) {
        throw OutsideWindow("tangency discriminant non-positive");
    }

    double root_a, root_b;
    if (c.mu0 == 0.0) {
        // d = k degenerates the quadratic: the roots are 0 (tangent through
        // the origin) and -mu1/mu2; evaluating the latter directly keeps the
        // closed-form identities exact.
        root_a = -c.mu1 / c.mu2;
        root_b = 0.0;
    } else {
        // Stable form: compute the root away from cancellation first, then
        // its partner through the product mu0/mu2.
        const double sq = std::sqrt(disc);
        const double t = -0.5 * (c.mu1 + std::copysign(sq, c.mu1));
        root_a = t / c.mu2;
        root_b = c.mu0 / t;
    }

    const Point pt_a = tangency_point(p, w, c.S, c.delta, root_a);
    const Point pt_b = tangency_point(p, w, c.S, c.delta, root_b);

    // Generically exactly one of the two parallel tangent lines touches the
    // curve inside the open first quadrant, and it is the one at the larger
    // level. Near the edge of the admissibility region both tangency points
    // can leave the quadrant; the larger level is still the valid one, since
    // inside the window F restricted to any line of this slope is an upward
    // parabola, hence nonnegative on the whole tangent line.
    const double min_a = std::min(pt_a[0], pt_a[1]);
    const double min_b = std::min(pt_b[0], pt_b[1]);
    const bool a_interior = min_a > 0.0;
    const bool b_interior = min_b > 0.0;
    bool pick_a = root_a >= root_b;
    if (a_interior != b_interior) pick_a = a_interior;
    const double lambda2 = pick_a ? root_a : root_b;
    const Point pt = pick_a ? pt_a : pt_b;
    const double rejected = pick_a ? root_b : root_a;
    const Point pt_rej = pick_a ? pt_b : pt_a;

    if (!(lambda2 > 0.0)) {
        throw Error("tangency root selection failed: no positive level");
    }
    // The discarded tangency point never lies in the open first quadrant.
    assert(std::min(pt_rej[0], pt_rej[1]) <= 1e-12 * std::max(1.0, std::abs(rejected)));

    TangentSolution sol{};
    sol.lambda2 = lambda2;
    sol.u_t = pt[0];
    sol.v_t = pt[1];
    sol.mu0 = c.mu0;
    sol.mu1 = c.mu1;
    sol.mu2 = c.mu2;
    sol.disc = disc;
    if (p.d >= 1.0) {
        sol.lambda1 = lambda2 / p.d;
        sol.eta = lambda2 / p.d;
    } else {
        sol.lambda1 = lambda2 * p.d;
        sol.eta = lambda2;
    }
    sol.d_window = window(p, w);
    sol.lambda2_rejected = rejected;
    sol.u_rejected = pt_rej[0];
    sol.v_rejected = pt_rej[1];
    return sol;
}

double sharp_lower_bound(const ScaledParams& p, const Weights& w) {
    const TangentSolution sol = solve_tangent(p, w);
    return sol.lambda2 * std::min(p.d, 1.0 / p.d);
}

BoundPair equal_diffusion_sum_bounds(double a1, double a2) {
    if (!(a1 > 1.0) || !(a2 > 1.0)) {
        throw NotBistable("closed-form u+v bounds require a1 > 1 and a2 > 1");
    }
    return {4.0 / (a1 + a2 + 2.0), 1.0, "u + v"};
}

} // namespace nbarrier
