#include "nbarrier/model.hpp"

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

} // namespace

void ScaledParams::validate() const {
    require_positive(a1, "a1");
    require_positive(a2, "a2");
    require_positive(d, "d");
    require_positive(k, "k");
}

bool bistable(const ScaledParams& p) {
    return p.a1 > 1.0 && p.a2 > 1.0;
}

void UnscaledParams::validate() const {
    require_positive(d1, "d1");
    require_positive(d2, "d2");
    require_positive(sigma1, "sigma1");
    require_positive(sigma2, "sigma2");
    require_positive(c11, "c11");
    require_positive(c12, "c12");
    require_positive(c21, "c21");
    require_positive(c22, "c22");
}

bool bis(const UnscaledParams& p) {
    return p.sigma1 / p.c11 > p.sigma2 / p.c21 && p.sigma2 / p.c22 > p.sigma1 / p.c12;
}

void ThreeSpeciesParams::validate() const {
    require_positive(d1, "d1");
    require_positive(d2, "d2");
    require_positive(d3, "d3");
    require_positive(sigma1, "sigma1");
    require_positive(sigma2, "sigma2");
    require_positive(sigma3, "sigma3");
    require_positive(c11, "c11");
    require_positive(c12, "c12");
    require_positive(c13, "c13");
    require_positive(c21, "c21");
    require_positive(c22, "c22");
    require_positive(c23, "c23");
    require_positive(c31, "c31");
    require_positive(c32, "c32");
    require_positive(c33, "c33");
}

const char* to_string(RegimeCase c) {
    switch (c) {
        case RegimeCase::U_WINS: return "U_WINS";
        case RegimeCase::V_WINS: return "V_WINS";
        case RegimeCase::BISTABLE: return "BISTABLE";
        case RegimeCase::COEXIST: return "COEXIST";
    }
    return "UNKNOWN";
}

RegimeCase classify(const ScaledParams& p) {
    p.validate();
    if (p.a1 == 1.0 || p.a2 == 1.0) {
        throw AmbiguousRegime("regime undefined at a1 = 1 or a2 = 1");
    }
    if (p.a1 < 1.0 && p.a2 > 1.0) return RegimeCase::U_WINS;
    if (p.a2 < 1.0 && p.a1 > 1.0) return RegimeCase::V_WINS;
    if (p.a1 > 1.0 && p.a2 > 1.0) return RegimeCase::BISTABLE;
    return RegimeCase::COEXIST;
}

Equilibria equilibria(const ScaledParams& p) {
    p.validate();
    Equilibria eq{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, std::nullopt};
    const double denom = 1.0 - p.a1 * p.a2;
    if (denom != 0.0) {
        const double u_star = (1.0 - p.a1) / denom;
        const double v_star = (1.0 - p.a2) / denom;
        if (u_star > 0.0 && v_star > 0.0) {
            eq.e4 = Point{u_star, v_star};
        }
    }
    return eq;
}

ScaleResult scale(const UnscaledParams& p) {
    p.validate();
    ScaledParams scaled{
        p.c12 * p.sigma2 / (p.c22 * p.sigma1),
        p.c21 * p.sigma1 / (p.c11 * p.sigma2),
        p.d2 / p.d1,
        p.sigma2 / p.sigma1,
    };
    ScaleMap map{
        p.c11 / p.sigma1,
        p.c22 / p.sigma2,
        std::sqrt(p.sigma1 / p.d1),
        p.sigma1,
    };
    return {scaled, map};
}

} // namespace nbarrier
