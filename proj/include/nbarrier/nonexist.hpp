#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nbarrier/model.hpp"

namespace nbarrier {

/// Outcome of the three-species nonexistence test. The criterion is
/// one-directional: INCONCLUSIVE means it makes no claim, not that a wave
/// exists.
enum class Verdict { NONEXISTENCE_CERTIFIED, INCONCLUSIVE };

const char* to_string(Verdict v);

/// The three hypotheses of the nonexistence criterion, with signed margins.
/// phi1 = sigma1 c33 - sigma3 c13 and phi2 = sigma2 c33 - sigma3 c23 are the
/// growth margins of u and v after the third species is eliminated at its
/// maximum level sigma3/c33.
struct ThreeSpeciesVerdict {
    double phi1;
    double phi2;

    bool h1; ///< phi1 > 0 and phi2 > 0
    bool h2; ///< c21 phi1 > c11 phi2 and c12 phi2 > c22 phi1
    bool h3; ///< h3_lhs >= h3_rhs (equality certifies)

    double h3_lhs; ///< min[c31 phi2/(c21 d2), c32 phi1/(c12 d1)] min[d1^2, d2^2]
    double h3_rhs; ///< sigma3 c33

    struct Margins {
        double h1; ///< min(phi1, phi2)
        double h2; ///< min(c21 phi1 - c11 phi2, c12 phi2 - c22 phi1)
        double h3; ///< h3_lhs - h3_rhs
    } margins;

    Verdict verdict; ///< NONEXISTENCE_CERTIFIED iff h1 && h2 && h3
};

/// Evaluate the nonexistence criterion. Pure and total on valid inputs.
ThreeSpeciesVerdict check(const ThreeSpeciesParams& p);

/// Effective growth rates of u and v after eliminating w:
///   (sigma1 - c13 sigma3/c33, sigma2 - c23 sigma3/c33) = (phi1/c33, phi2/c33).
/// w_max is the elimination level used in the derivation and must satisfy
/// 0 <= w_max <= sigma3/c33 (the worst case is always the maximum level,
/// which is what the returned rates encode). Exposed so callers can display
/// the proof chain.
std::pair<double, double> reduced_system_margin(const ThreeSpeciesParams& p, double w_max);

/// The two-species system obtained by eliminating w at its maximum level:
/// growth rates phi_i/c33 with the original (d1, d2) and 2x2 competition
/// block. Valid (and bistable in the [BiS] sense) exactly when h1 and h2
/// hold. The unscaled lower bound of this system with weights (c31, c32)
/// reproduces h3_lhs / c33, which is how certification chains back to the
/// two-species maximum principle.
UnscaledParams reduced_two_species(const ThreeSpeciesParams& p);

/// Re-evaluate check() with one named field substituted by each value in
/// turn, order preserved. Throws UnknownAxis when axis does not name a
/// ThreeSpeciesParams field, InvalidParams when a value breaks positivity.
std::vector<ThreeSpeciesVerdict> sweep(const ThreeSpeciesParams& base, const std::string& axis,
                                       const std::vector<double>& values);

} // namespace nbarrier
