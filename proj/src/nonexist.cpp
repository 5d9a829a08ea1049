#include "nbarrier/nonexist.hpp"

#include <algorithm>
#include <cmath>

#include "nbarrier/errors.hpp"

namespace nbarrier {

const char* to_string(Verdict v) {
    return v == Verdict::NONEXISTENCE_CERTIFIED ? "NONEXISTENCE_CERTIFIED" : "INCONCLUSIVE";
}

ThreeSpeciesVerdict check(const ThreeSpeciesParams& p) {
    p.validate();
    ThreeSpeciesVerdict out{};
    out.phi1 = p.sigma1 * p.c33 - p.sigma3 * p.c13;
    out.phi2 = p.sigma2 * p.c33 - p.sigma3 * p.c23;

    out.margins.h1 = std::min(out.phi1, out.phi2);
    out.h1 = out.phi1 > 0.0 && out.phi2 > 0.0;

    const double h2a = p.c21 * out.phi1 - p.c11 * out.phi2;
    const double h2b = p.c12 * out.phi2 - p.c22 * out.phi1;
    out.margins.h2 = std::min(h2a, h2b);
    out.h2 = h2a > 0.0 && h2b > 0.0;

    out.h3_lhs = std::min(p.c31 * out.phi2 / (p.c21 * p.d2), p.c32 * out.phi1 / (p.c12 * p.d1)) *
                 std::min(p.d1 * p.d1, p.d2 * p.d2);
    out.h3_rhs = p.sigma3 * p.c33;
    out.margins.h3 = out.h3_lhs - out.h3_rhs;
    out.h3 = out.h3_lhs >= out.h3_rhs; // equality certifies

    out.verdict = (out.h1 && out.h2 && out.h3) ? Verdict::NONEXISTENCE_CERTIFIED
                                               : Verdict::INCONCLUSIVE;
    return out;
}

std::pair<double, double> reduced_system_margin(const ThreeSpeciesParams& p, double w_max) {
    p.validate();
    if (!(w_max >= 0.0) || !(w_max <= p.sigma3 / p.c33)) {
        throw InvalidParams("w_max must lie in [0, sigma3/c33]");
    }
    return {p.sigma1 - p.c13 * p.sigma3 / p.c33, p.sigma2 - p.c23 * p.sigma3 / p.c33};
}

UnscaledParams reduced_two_species(const ThreeSpeciesParams& p) {
    const auto [s1, s2] = reduced_system_margin(p, p.sigma3 / p.c33);
    UnscaledParams reduced{p.d1, p.d2, s1, s2, p.c11, p.c12, p.c21, p.c22};
    reduced.validate(); // requires h1 (positive effective rates)
    return reduced;
}

std::vector<ThreeSpeciesVerdict> sweep(const ThreeSpeciesParams& base, const std::string& axis,
                                       const std::vector<double>& values) {
    static const std::pair<const char*, double ThreeSpeciesParams::*> fields[] = {
        {"d1", &ThreeSpeciesParams::d1},         {"d2", &ThreeSpeciesParams::d2},
        {"d3", &ThreeSpeciesParams::d3},         {"sigma1", &ThreeSpeciesParams::sigma1},
        {"sigma2", &ThreeSpeciesParams::sigma2}, {"sigma3", &ThreeSpeciesParams::sigma3},
        {"c11", &ThreeSpeciesParams::c11},       {"c12", &ThreeSpeciesParams::c12},
        {"c13", &ThreeSpeciesParams::c13},       {"c21", &ThreeSpeciesParams::c21},
        {"c22", &ThreeSpeciesParams::c22},       {"c23", &ThreeSpeciesParams::c23},
        {"c31", &ThreeSpeciesParams::c31},       {"c32", &ThreeSpeciesParams::c32},
        {"c33", &ThreeSpeciesParams::c33},
    };
    double ThreeSpeciesParams::*member = nullptr;
    for (const auto& [name, ptr] : fields) {
        if (axis == name) {
            member = ptr;
            break;
        }
    }
    if (!member) {
        throw UnknownAxis("unknown sweep axis '" + axis + "'");
    }
    std::vector<ThreeSpeciesVerdict> out;
    out.reserve(values.size());
    for (double value : values) {
        ThreeSpeciesParams point = base;
        point.*member = value;
        out.push_back(check(point));
    }
    return out;
}

} // namespace nbarrier
