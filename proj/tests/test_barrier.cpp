#include <doctest.h>

#include <cmath>
#include <random>

#include "nbarrier/barrier.hpp"
#include "nbarrier/errors.hpp"
#include "nbarrier/model.hpp"
#include "rational.hpp"
#include "sampling.hpp"

using namespace nbarrier;
using testutil::Rat;
using testutil::RatTriple;

namespace {

void check_triple(const Barrier& b, const RatTriple& expected) {
    CHECK(b.lambda1 == doctest::Approx(expected.lambda1.value()).epsilon(1e-14));
    CHECK(b.lambda2 == doctest::Approx(expected.lambda2.value()).epsilon(1e-14));
    CHECK(b.eta == doctest::Approx(expected.eta.value()).epsilon(1e-14));
}

} // namespace

TEST_CASE("lower barrier reproduces the four golden level triples") {
    const ScaledParams base{2.0, 3.0, 2.0, 1.0};

    SUBCASE("d >= 1, heavy beta side") {
        const Barrier b = lower_barrier_scaled(base, {17.0, 18.0});
        CHECK(b.case_tag == BarrierCase::D_GE1_WEIGHT_GE);
        const RatTriple oracle = testutil::lower_levels(2, 3, 17, 18, 2);
        CHECK(oracle.lambda1 == Rat(17, 6));
        CHECK(oracle.lambda2 == Rat(17, 3));
        CHECK(oracle.eta == Rat(17, 6));
        check_triple(b, oracle);
    }
    SUBCASE("d >= 1, heavy alpha side") {
        const Barrier b = lower_barrier_scaled(base, {17.0, 5.0});
        CHECK(b.case_tag == BarrierCase::D_GE1_WEIGHT_LT);
        const RatTriple oracle = testutil::lower_levels(2, 3, 17, 5, 2);
        CHECK(oracle.lambda1 == Rat(5, 2));
        CHECK(oracle.lambda2 == Rat(5));
        CHECK(oracle.eta == Rat(5, 2));
        check_triple(b, oracle);
    }
    SUBCASE("d < 1, heavy beta side") {
        const Barrier b = lower_barrier_scaled({2.0, 3.0, 2.0 / 3.0, 1.0}, {17.0, 18.0});
        CHECK(b.case_tag == BarrierCase::D_LT1_WEIGHT_GE);
        const RatTriple oracle = testutil::lower_levels(2, 3, 17, 18, Rat(2, 3));
        CHECK(oracle.lambda1 == Rat(34, 9));
        CHECK(oracle.lambda2 == Rat(17, 3));
        CHECK(oracle.eta == Rat(17, 3));
        check_triple(b, oracle);
    }
    SUBCASE("d < 1, heavy alpha side") {
        const Barrier b = lower_barrier_scaled({2.0, 3.0, 0.5, 1.0}, {17.0, 18.0});
        CHECK(b.case_tag == BarrierCase::D_LT1_WEIGHT_LT);
        const RatTriple oracle = testutil::lower_levels(2, 3, 17, 18, Rat(1, 2));
        CHECK(oracle.lambda1 == Rat(9, 4));
        CHECK(oracle.lambda2 == Rat(9, 2));
        CHECK(oracle.eta == Rat(9, 2));
        check_triple(b, oracle);
    }
}

TEST_CASE("upper barrier reproduces the four golden level triples") {
    SUBCASE("d >= 1, beta d >= alpha") {
        const Barrier b = upper_barrier_scaled({2.0, 3.0, 2.0, 1.0}, {17.0, 18.0});
        CHECK(b.case_tag == BarrierCase::D_GE1_WEIGHT_GE);
        const RatTriple oracle = testutil::upper_levels(17, 18, 2);
        CHECK(oracle.lambda1 == Rat(72));
        CHECK(oracle.lambda2 == Rat(36));
        CHECK(oracle.eta == Rat(36));
        check_triple(b, oracle);
    }
    SUBCASE("d >= 1, beta d < alpha") {
        const Barrier b = upper_barrier_scaled({2.0, 3.0, 2.0, 1.0}, {17.0, 5.0});
        CHECK(b.case_tag == BarrierCase::D_GE1_WEIGHT_LT);
        const RatTriple oracle = testutil::upper_levels(17, 5, 2);
        CHECK(oracle.lambda1 == Rat(34));
        CHECK(oracle.lambda2 == Rat(17));
        CHECK(oracle.eta == Rat(17));
        check_triple(b, oracle);
    }
    SUBCASE("d < 1, beta d >= alpha") {
        const Barrier b = upper_barrier_scaled({2.0, 3.0, 2.0 / 3.0, 1.0}, {17.0, 33.0});
        CHECK(b.case_tag == BarrierCase::D_LT1_WEIGHT_GE);
        const RatTriple oracle = testutil::upper_levels(17, 33, Rat(2, 3));
        CHECK(oracle.lambda1 == Rat(33));
        CHECK(oracle.lambda2 == Rat(22));
        CHECK(oracle.eta == Rat(33));
        check_triple(b, oracle);
    }
    SUBCASE("d < 1, beta d < alpha") {
        const Barrier b = upper_barrier_scaled({2.0, 3.0, 0.5, 1.0}, {17.0, 18.0});
        CHECK(b.case_tag == BarrierCase::D_LT1_WEIGHT_LT);
        const RatTriple oracle = testutil::upper_levels(17, 18, Rat(1, 2));
        CHECK(oracle.lambda1 == Rat(34));
        CHECK(oracle.lambda2 == Rat(17));
        CHECK(oracle.eta == Rat(34));
        check_triple(b, oracle);
    }
}

TEST_CASE("lambda1 equals the composite min/max formulas in every case") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 1000; ++i) {
        const ScaledParams p = testutil::random_bistable(rng);
        const Weights w = testutil::random_weights(rng);
        const Barrier lo = lower_barrier_scaled(p, w);
        const Barrier hi = upper_barrier_scaled(p, w);
        const BoundPair pair = bounds_scaled(p, w);
        CHECK(lo.lambda1 == doctest::Approx(pair.lower).epsilon(1e-13));
        CHECK(hi.lambda1 == doctest::Approx(pair.upper).epsilon(1e-13));
        // Barrier shape invariants.
        CHECK(lo.lambda1 <= lo.eta * std::min(1.0, p.d) * (1.0 + 1e-15));
        CHECK(lo.lambda1 <= lo.lambda2 * (1.0 + 1e-15));
        CHECK(hi.lambda1 >= hi.lambda2 * (1.0 - 1e-15));
        CHECK(lo.lambda1 > 0.0);
        CHECK(hi.lambda2 > 0.0);
    }
}

TEST_CASE("tie-breaks go to the GE branches") {
    // d = 1 lands in the d >= 1 branch, where all three lower lines coincide.
    const Barrier b1 = lower_barrier_scaled({2.0, 3.0, 1.0, 1.0}, {1.0, 1.0});
    CHECK(b1.case_tag == BarrierCase::D_GE1_WEIGHT_GE);
    CHECK(b1.lambda1 == b1.lambda2);
    CHECK(b1.lambda1 == b1.eta);

    // beta a2 d == alpha a1 exactly: 18*2*... use a1=2, a2=3, d=2, beta=1, alpha=3.
    const Barrier b2 = lower_barrier_scaled({2.0, 3.0, 2.0, 1.0}, {3.0, 1.0});
    CHECK(1.0 * 3.0 * 2.0 == 3.0 * 2.0);
    CHECK(b2.case_tag == BarrierCase::D_GE1_WEIGHT_GE);

    const Barrier b3 = upper_barrier_scaled({2.0, 3.0, 2.0, 1.0}, {2.0, 1.0});
    CHECK(b3.case_tag == BarrierCase::D_GE1_WEIGHT_GE); // beta d == alpha
}

TEST_CASE("lower nesting Q_l1 within P_eta within Q_l2 within the inner triangle, exact") {
    // Vertex containment in exact rational arithmetic for the four golden
    // parameter sets. All regions are convex, so vertices suffice.
    struct Case {
        Rat alpha, beta, d;
    };
    const Case cases[] = {
        {17, 18, 2},
        {17, 5, 2},
        {17, 18, Rat(2, 3)},
        {17, 18, Rat(1, 2)},
    };
    const Rat a1 = 2, a2 = 3;
    for (const Case& c : cases) {
        const RatTriple t = testutil::lower_levels(a1, a2, c.alpha, c.beta, c.d);
        // Q_lambda vertices: (l/alpha, 0), (0, l/(d beta)); P_eta vertices:
        // (eta/alpha, 0), (0, eta/beta). The origin is shared by all regions.
        const Rat q1_u = t.lambda1 / c.alpha, q1_v = t.lambda1 / (c.d * c.beta);
        const Rat p_u = t.eta / c.alpha, p_v = t.eta / c.beta;
        const Rat q2_u = t.lambda2 / c.alpha, q2_v = t.lambda2 / (c.d * c.beta);

        // Q_{l1} inside P_eta: alpha u + beta v <= eta at both vertices.
        CHECK(c.alpha * q1_u <= t.eta);
        CHECK(c.beta * q1_v <= t.eta);
        // P_eta inside Q_{l2}: alpha u + d beta v <= lambda2 at both vertices.
        CHECK(c.alpha * p_u <= t.lambda2);
        CHECK(c.d * c.beta * p_v <= t.lambda2);
        // Q_{l2} inside the inner triangle: both reaction terms nonnegative.
        const Rat one{1};
        CHECK(q2_u <= one / a2); // on the u axis the binding constraint is 1 - a2 u >= 0
        CHECK(q2_v <= one / a1); // on the v axis it is 1 - a1 v >= 0
    }
}

TEST_CASE("bounds_scaled matches the figure-caption composition and ignores k and theta") {
    const BoundPair b = bounds_scaled({2.0, 3.0, 2.0, 1.0}, {17.0, 18.0});
    CHECK(b.lower == doctest::Approx(17.0 / 6.0).epsilon(1e-15));
    CHECK(b.upper == doctest::Approx(72.0).epsilon(1e-15));

    const BoundPair unit = bounds_scaled({2.0, 3.0, 1.0, 1.0}, {1.0, 1.0});
    CHECK(unit.lower == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(unit.upper == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        ScaledParams p = testutil::random_bistable(rng);
        const Weights w = testutil::random_weights(rng);
        const BoundPair ref = bounds_scaled(p, w);
        for (double k : {0.5, 1.0, 2.0, 17.0}) {
            p.k = k;
            const BoundPair other = bounds_scaled(p, w);
            CHECK(other.lower == ref.lower); // bitwise: k never enters
            CHECK(other.upper == ref.upper);
        }
    }
}

TEST_CASE("bounds_scaled is positively homogeneous in the weights") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 500; ++i) {
        const ScaledParams p = testutil::random_bistable(rng);
        const Weights w = testutil::random_weights(rng);
        std::uniform_real_distribution<double> sdist(0.1, 10.0);
        const double s = sdist(rng);
        const BoundPair base = bounds_scaled(p, w);
        const BoundPair scaled = bounds_scaled(p, {s * w.alpha, s * w.beta});
        CHECK(scaled.lower == doctest::Approx(s * base.lower).epsilon(1e-14));
        CHECK(scaled.upper == doctest::Approx(s * base.upper).epsilon(1e-14));
    }
}

TEST_CASE("bounds_general handles the chi indicator and diffusion ratios") {
    const GeneralNullclineBox box{1.0, 1.0, 0.5, 0.5};
    SUBCASE("equal diffusion collapses both factors") {
        const GeneralBounds g = bounds_general(1.0, 1.0, box, 1.0, 1.0, false, false);
        CHECK(g.pair.lower == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(g.pair.upper == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("an origin endpoint zeroes the lower bound") {
        const GeneralBounds g = bounds_general(1.0, 1.0, box, 1.0, 1.0, false, true);
        CHECK(g.pair.lower == 0.0);
        CHECK(g.pair.upper == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(g.lambda1 == doctest::Approx(0.5).epsilon(1e-15)); // construction level survives
    }
    SUBCASE("diffusion ratio 4") {
        const GeneralBounds g = bounds_general(1.0, 4.0, box, 1.0, 1.0, false, false);
        CHECK(g.pair.lower == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
        CHECK(g.pair.upper == doctest::Approx(4.0).epsilon(1e-15));
        CHECK(g.lambda2 == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(g.eta == doctest::Approx(0.125).epsilon(1e-15));
        CHECK(g.lambda1 == doctest::Approx(0.125).epsilon(1e-15));
    }
}

TEST_CASE("the generalized lower bound never beats the specialized one") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 1000; ++i) {
        const ScaledParams p = testutil::random_bistable(rng);
        const Weights w = testutil::random_weights(rng);
        const GeneralNullclineBox box{1.0, 1.0, 1.0 / p.a2, 1.0 / p.a1};
        const GeneralBounds g =
            bounds_general(1.0, p.d, box, w.alpha, w.beta * p.d, false, false);
        const BoundPair s = bounds_scaled(p, w);
        CHECK(g.pair.lower <= s.lower + 1e-12 * std::max(1.0, s.lower));
    }
    // They coincide at d = 1.
    const ScaledParams p1{2.0, 3.0, 1.0, 1.0};
    const Weights w1{17.0, 18.0};
    const GeneralBounds g1 =
        bounds_general(1.0, 1.0, {1.0, 1.0, 1.0 / 3.0, 1.0 / 2.0}, 17.0, 18.0, false, false);
    CHECK(g1.pair.lower == doctest::Approx(bounds_scaled(p1, w1).lower).epsilon(1e-14));
}

TEST_CASE("bounds_unscaled matches the appendix displays") {
    SUBCASE("alpha = 1/d1, beta = 1/d2 bounds u + v") {
        std::mt19937_64 rng(53);
        for (int i = 0; i < 200; ++i) {
            const UnscaledParams p = testutil::random_bis(rng);
            const BoundPair b = bounds_unscaled(p, {1.0 / p.d1, 1.0 / p.d2});
            const double lo = std::min(p.sigma2 / p.c21, p.sigma1 / p.c12) *
                              std::min(p.d1 / p.d2, p.d2 / p.d1);
            const double hi = std::max(p.sigma1 / p.c11, p.sigma2 / p.c22) *
                              std::max(p.d1 / p.d2, p.d2 / p.d1);
            CHECK(b.lower == doctest::Approx(lo).epsilon(1e-12));
            CHECK(b.upper == doctest::Approx(hi).epsilon(1e-12));
        }
    }
    SUBCASE("alpha = r1/d1, beta = r2/d2 bounds r1 u + r2 v") {
        std::mt19937_64 rng(59);
        std::uniform_real_distribution<double> rdist(0.1, 5.0);
        for (int i = 0; i < 200; ++i) {
            const UnscaledParams p = testutil::random_bis(rng);
            const double r1 = rdist(rng), r2 = rdist(rng);
            const BoundPair b = bounds_unscaled(p, {r1 / p.d1, r2 / p.d2});
            const double lo = std::min(r1 * p.sigma2 / p.c21, r2 * p.sigma1 / p.c12) *
                              std::min(p.d1 / p.d2, p.d2 / p.d1);
            const double hi = std::max(r1 * p.sigma1 / p.c11, r2 * p.sigma2 / p.c22) *
                              std::max(p.d1 / p.d2, p.d2 / p.d1);
            CHECK(b.lower == doctest::Approx(lo).epsilon(1e-12));
            CHECK(b.upper == doctest::Approx(hi).epsilon(1e-12));
        }
    }
    SUBCASE("symmetric golden point") {
        const UnscaledParams p{1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 1.0};
        const BoundPair b = bounds_unscaled(p, {1.0, 1.0});
        CHECK(b.lower == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("unscaled bounds transport through the scaling map") {
    // q_unscaled = d1 alpha u + d2 beta v equals d1 * q_scaled for the
    // transported weights (alpha sigma1/c11, beta sigma2/c22), so the bound
    // pairs must agree up to the same factor. This pins the scaling map and
    // both bound formulas against each other.
    std::mt19937_64 rng(61);
    for (int i = 0; i < 1000; ++i) {
        const UnscaledParams p = testutil::random_bis(rng);
        const Weights w = testutil::random_weights(rng);
        const auto [scaled, map] = scale(p);
        const Weights tw{w.alpha * p.sigma1 / p.c11, w.beta * p.sigma2 / p.c22};
        const BoundPair raw = bounds_unscaled(p, w);
        const BoundPair thru = bounds_scaled(scaled, tw);
        CHECK(raw.lower == doctest::Approx(p.d1 * thru.lower).epsilon(1e-12));
        CHECK(raw.upper == doctest::Approx(p.d1 * thru.upper).epsilon(1e-12));
    }
}

TEST_CASE("hyperbola discriminant") {
    CHECK(hyperbola_check({2.0, 3.0, 1.0, 1.0}, {17.0, 18.0}) ==
          doctest::Approx(6520.0).epsilon(1e-15));
    // Boundary case of the underlying estimate.
    CHECK(hyperbola_check({1.0, 1.0, 1.0, 1.0}, {1.0, 1.0}) == doctest::Approx(0.0));
    std::mt19937_64 rng(67);
    for (int i = 0; i < 1000; ++i) {
        const ScaledParams p = testutil::random_bistable(rng);
        const Weights w = testutil::random_weights(rng);
        CHECK(hyperbola_check(p, w) > 0.0);
    }
}

TEST_CASE("F passes through the corner equilibria and keeps its sign pattern") {
    const ScaledParams p{2.0, 3.0, 1.0, 1.0};
    const Weights w{17.0, 18.0};
    CHECK(F_eval(p, w, 0.0, 0.0) == 0.0);
    CHECK(F_eval(p, w, 1.0, 0.0) == 0.0);
    CHECK(F_eval(p, w, 0.0, 1.0) == 0.0);
    const Equilibria eq = equilibria(p);
    REQUIRE(eq.e4.has_value());
    CHECK(std::abs(F_eval(p, w, (*eq.e4)[0], (*eq.e4)[1])) <= 1e-13);

    // F >= 0 inside the inner triangle, F <= 0 beyond the outer one.
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int inner = 0, outer = 0;
    while (inner < 200) {
        const double u = unit(rng), v = unit(rng);
        if (p.a2 * u + p.a1 * v <= 1.0) {
            CHECK(F_eval(p, w, u, v) >= -1e-14);
            ++inner;
        }
    }
    while (outer < 200) {
        const double u = 3.0 * unit(rng), v = 3.0 * unit(rng);
        if (u + v >= 1.0) {
            CHECK(F_eval(p, w, u, v) <= 1e-14);
            ++outer;
        }
    }
}

TEST_CASE("barrier operations require bistability") {
    const ScaledParams mono{0.5, 2.0, 1.0, 1.0};
    CHECK_THROWS_AS(lower_barrier_scaled(mono, {1.0, 1.0}), NotBistable);
    CHECK_THROWS_AS(upper_barrier_scaled(mono, {1.0, 1.0}), NotBistable);
    CHECK_THROWS_AS(bounds_scaled(mono, {1.0, 1.0}), NotBistable);
    const UnscaledParams bad{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
    CHECK_FALSE(bis(bad));
    CHECK_THROWS_AS(bounds_unscaled(bad, {1.0, 1.0}), NotBistable);
    CHECK_THROWS_AS(bounds_scaled({2.0, 3.0, 1.0, 1.0}, {0.0, 1.0}), InvalidParams);
}

TEST_CASE("barrier segments clip to the positive quadrant") {
    const Barrier b = lower_barrier_scaled({2.0, 3.0, 2.0, 1.0}, {17.0, 18.0});
    const auto segs = barrier_segments(b);
    CHECK(segs[0].a[0] == doctest::Approx(b.lambda1 / 17.0));
    CHECK(segs[0].b[1] == doctest::Approx(b.lambda1 / (2.0 * 18.0)));
    CHECK(segs[1].a[0] == doctest::Approx(b.lambda2 / 17.0));
    CHECK(segs[2].a[0] == doctest::Approx(b.eta / 17.0));
    CHECK(segs[2].b[1] == doctest::Approx(b.eta / 18.0));
    for (const Segment& s : segs) {
        CHECK(s.a[1] == 0.0);
        CHECK(s.b[0] == 0.0);
    }
}
