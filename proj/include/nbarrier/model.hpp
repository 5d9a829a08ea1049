#pragma once

#include <array>
#include <optional>

namespace nbarrier {

/// A point in the (u, v) phase plane.
using Point = std::array<double, 2>;

/// Parameters of the scaled two-species competition system
///
///   u_t = u_yy     + u (1 - u - a1 v)
///   v_t = d v_yy + k v (1 - a2 u - v)
///
/// All four parameters are strictly positive.
struct ScaledParams {
    double a1; ///< inter-specific rate felt by u
    double a2; ///< inter-specific rate felt by v
    double d;  ///< diffusion ratio
    double k;  ///< growth-rate ratio

    void validate() const;
};

/// True iff both semi-trivial states (1,0) and (0,1) are locally stable,
/// i.e. a1 > 1 and a2 > 1. Not enforced at construction.
bool bistable(const ScaledParams& p);

/// Parameters of the raw (unscaled) two-species system
///
///   u_t = d1 u_yy + u (sigma1 - c11 u - c12 v)
///   v_t = d2 v_yy + v (sigma2 - c21 u - c22 v)
struct UnscaledParams {
    double d1, d2;         ///< diffusion rates
    double sigma1, sigma2; ///< intrinsic growth rates
    double c11, c12;       ///< competition felt by u (intra, inter)
    double c21, c22;       ///< competition felt by v (inter, intra)

    void validate() const;
};

/// Bistability condition [BiS] for the raw system:
/// sigma1/c11 > sigma2/c21 and sigma2/c22 > sigma1/c12.
bool bis(const UnscaledParams& p);

/// Parameters of the three-species competition system with full 3x3
/// competition matrix; all 15 entries strictly positive.
struct ThreeSpeciesParams {
    double d1, d2, d3;
    double sigma1, sigma2, sigma3;
    double c11, c12, c13;
    double c21, c22, c23;
    double c31, c32, c33;

    void validate() const;
};

/// Stability regime of the scaled system, determined by the signs of
/// (a1 - 1) and (a2 - 1).
enum class RegimeCase {
    U_WINS,   ///< a1 < 1 < a2: u excludes v
    V_WINS,   ///< a2 < 1 < a1: v excludes u
    BISTABLE, ///< a1 > 1, a2 > 1: both semi-trivial states stable
    COEXIST,  ///< a1 < 1, a2 < 1: interior state attracts
};

const char* to_string(RegimeCase c);

/// Equilibria of the scaled system. e1..e3 always exist; the interior
/// state e4 is present only when it lies in the open positive quadrant.
struct Equilibria {
    Point e1; ///< (0, 0)
    Point e2; ///< (1, 0)
    Point e3; ///< (0, 1)
    std::optional<Point> e4; ///< ((1-a1)/(1-a1 a2), (1-a2)/(1-a1 a2))
};

/// Classify the regime. Throws AmbiguousRegime when a1 = 1 or a2 = 1
/// (the classification is defined by strict inequalities only).
RegimeCase classify(const ScaledParams& p);

/// All equilibria of the scaled system. Pure: identical input yields
/// bitwise-identical output.
Equilibria equilibria(const ScaledParams& p);

/// Affine correspondence between raw and scaled systems:
///
///   scaled u = (c11/sigma1) u      scaled x = sqrt(sigma1/d1) x
///   scaled v = (c22/sigma2) v      scaled t = sigma1 t
///
/// Speeds transform as scaled theta = theta / sqrt(sigma1 d1).
struct ScaleMap {
    double u_factor; ///< c11/sigma1
    double v_factor; ///< c22/sigma2
    double x_factor; ///< sqrt(sigma1/d1)
    double t_factor; ///< sigma1

    Point to_scaled_state(Point s) const {
        return {s[0] * u_factor, s[1] * v_factor};
    }
    Point to_unscaled_state(Point s) const {
        return {s[0] / u_factor, s[1] / v_factor};
    }
    double to_scaled_x(double x) const { return x * x_factor; }
    double to_unscaled_x(double x) const { return x / x_factor; }
    double to_scaled_speed(double theta) const { return theta * x_factor / t_factor; }
    double to_unscaled_speed(double theta) const { return theta * t_factor / x_factor; }
};

struct ScaleResult {
    ScaledParams scaled;
    ScaleMap map;
};

/// Nondimensionalize the raw system:
///
///   d = d2/d1,  k = sigma2/sigma1,
///   a1 = c12 sigma2 / (c22 sigma1),  a2 = c21 sigma1 / (c11 sigma2),
///
/// together with the state/space/time map that transports profiles both
/// ways. bis(p) holds iff the scaled parameters are bistable.
ScaleResult scale(const UnscaledParams& p);

} // namespace nbarrier
