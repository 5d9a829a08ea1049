#include "nbarrier/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbarrier/errors.hpp"

namespace nbarrier {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidParams(std::string(name) + " must be finite and strictly positive, got " +
                            std::to_string(value));
    }
}

void require_bistable_scaled(const ScaledParams& p) {
    p.validate();
    if (!bistable(p)) {
        throw NotBistable("bounds require the bistable regime a1 > 1 and a2 > 1");
    }
}

} // namespace

void Weights::validate() const {
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
}

void GeneralNullclineBox::validate() const {
    require_positive(u_low, "u_low");
    require_positive(v_low, "v_low");
    if (!(u_bar > u_low) || !(v_bar > v_low)) {
        throw InvalidParams("nullcline box requires u_bar > u_low and v_bar > v_low");
    }
}

const char* to_string(BoundSide s) {
    return s == BoundSide::LOWER ? "LOWER" : "UPPER";
}

const char* to_string(BarrierCase c) {
    switch (c) {
        case BarrierCase::D_GE1_WEIGHT_GE: return "D_GE1_WEIGHT_GE";
        case BarrierCase::D_GE1_WEIGHT_LT: return "D_GE1_WEIGHT_LT";
        case BarrierCase::D_LT1_WEIGHT_GE: return "D_LT1_WEIGHT_GE";
        case BarrierCase::D_LT1_WEIGHT_LT: return "D_LT1_WEIGHT_LT";
    }
    return "UNKNOWN";
}

Barrier lower_barrier_scaled(const ScaledParams& p, const Weights& w) {
    require_bistable_scaled(p);
    w.validate();
    const double a = w.alpha, b = w.beta, d = p.d;
    Barrier out{BoundSide::LOWER, 0.0, 0.0, 0.0, BarrierCase::D_GE1_WEIGHT_GE, w, d};
    // Ties (d = 1, equal weight products) go to the GE branches.
    if (d >= 1.0) {
        if (b * p.a2 * d >= a * p.a1) {
            out.case_tag = BarrierCase::D_GE1_WEIGHT_GE;
            out.lambda1 = a / (p.a2 * d);
            out.lambda2 = a / p.a2;
            out.eta = a / (p.a2 * d);
        } else {
            out.case_tag = BarrierCase::D_GE1_WEIGHT_LT;
            out.lambda1 = b / p.a1;
            out.lambda2 = b * d / p.a1;
            out.eta = b / p.a1;
        }
    } else {
        if (b * p.a2 * d >= a * p.a1) {
            out.case_tag = BarrierCase::D_LT1_WEIGHT_GE;
            out.lambda1 = a * d / p.a2;
            out.lambda2 = a / p.a2;
            out.eta = a / p.a2;
        } else {
            out.case_tag = BarrierCase::D_LT1_WEIGHT_LT;
            out.lambda1 = b * d * d / p.a1;
            out.lambda2 = b * d / p.a1;
            out.eta = b * d / p.a1;
        }
    }
    return out;
}

Barrier upper_barrier_scaled(const ScaledParams& p, const Weights& w) {
    require_bistable_scaled(p);
    w.validate();
    const double a = w.alpha, b = w.beta, d = p.d;
    Barrier out{BoundSide::UPPER, 0.0, 0.0, 0.0, BarrierCase::D_GE1_WEIGHT_GE, w, d};
    if (d >= 1.0) {
        if (b * d >= a) {
            out.case_tag = BarrierCase::D_GE1_WEIGHT_GE;
            out.lambda1 = b * d * d;
            out.lambda2 = b * d;
            out.eta = b * d;
        } else {
            out.case_tag = BarrierCase::D_GE1_WEIGHT_LT;
            out.lambda1 = a * d;
            out.lambda2 = a;
            out.eta = a;
        }
    } else {
        if (b * d >= a) {
            out.case_tag = BarrierCase::D_LT1_WEIGHT_GE;
            out.lambda1 = b;
            out.lambda2 = b * d;
            out.eta = b;
        } else {
            out.case_tag = BarrierCase::D_LT1_WEIGHT_LT;
            out.lambda1 = a / d;
            out.lambda2 = a;
            out.eta = a / d;
        }
    }
    return out;
}

BoundPair bounds_scaled(const ScaledParams& p, const Weights& w) {
    require_bistable_scaled(p);
    w.validate();
    const double d = p.d;
    const double lower = std::min(w.alpha / (p.a2 * d), w.beta / p.a1) * std::min(1.0, d * d);
    const double upper = std::max(w.alpha / d, w.beta) * std::max(1.0, d * d);
    return {lower, upper, "alpha*u + d*beta*v"};
}

GeneralBounds bounds_general(double d1, double d2, const GeneralNullclineBox& box,
                             double a, double b, bool e_minus_zero, bool e_plus_zero) {
    require_positive(d1, "d1");
    require_positive(d2, "d2");
    require_positive(a, "a");
    require_positive(b, "b");
    box.validate();

    const double ratio = std::max(d1, d2) / std::min(d1, d2);
    const double upper = std::max(a * box.u_bar, b * box.v_bar) * ratio;

    const double lambda2 = std::min(a * box.u_low, b * box.v_low);
    const double eta = std::min(1.0 / d1, 1.0 / d2) * lambda2;
    const double lambda1 = std::min(d1 / d2, d2 / d1) * lambda2;
    // When either endpoint state is the origin only the trivial lower bound
    // a u + b v >= 0 remains.
    const double chi = (e_minus_zero || e_plus_zero) ? 0.0 : 1.0;
    return {{lambda1 * chi, upper, "a*u + b*v"}, lambda1, lambda2, eta};
}

BoundPair bounds_unscaled(const UnscaledParams& p, const Weights& w) {
    p.validate();
    w.validate();
    if (!bis(p)) {
        throw NotBistable("bounds require the bistable condition [BiS]");
    }
    const double lo_factor = std::min(p.d1 * p.d1, p.d2 * p.d2);
    const double hi_factor = std::max(p.d1 * p.d1, p.d2 * p.d2);
    const double lower =
        std::min(w.alpha * p.sigma2 / (p.c21 * p.d2), w.beta * p.sigma1 / (p.c12 * p.d1)) * lo_factor;
    const double upper =
        std::max(w.alpha * p.sigma1 / (p.c11 * p.d2), w.beta * p.sigma2 / (p.c22 * p.d1)) * hi_factor;
    return {lower, upper, "d1*alpha*u + d2*beta*v"};
}

double hyperbola_check(const ScaledParams& p, const Weights& w) {
    p.validate();
    w.validate();
    const double s = w.alpha * p.a1 + w.beta * p.k * p.a2;
    return s * s - 4.0 * w.alpha * w.beta * p.k;
}

double F_eval(const ScaledParams& p, const Weights& w, double u, double v) {
    return w.alpha * u * (1.0 - u - p.a1 * v) + w.beta * p.k * v * (1.0 - p.a2 * u - v);
}

std::array<Segment, 3> barrier_segments(const Barrier& b) {
    const double a = b.weights.alpha;
    const double be = b.weights.beta;
    // q-lines run from (lambda/alpha, 0) to (0, lambda/(d beta)); the p-line
    // from (eta/alpha, 0) to (0, eta/beta). All intercepts are positive, so
    // the quadrant clip is exactly the intercept segment.
    auto q_line = [&](double lambda) {
        return Segment{{lambda / a, 0.0}, {0.0, lambda / (b.d * be)}};
    };
    return {q_line(b.lambda1), q_line(b.lambda2),
            Segment{{b.eta / a, 0.0}, {0.0, b.eta / be}}};
}

} // namespace nbarrier
