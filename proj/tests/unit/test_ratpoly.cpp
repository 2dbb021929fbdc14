#include <gtest/gtest.h>

#include "generators.hpp"

using namespace dmyq;

namespace {

Poly2 X() { return Poly2::x(); }
Poly2 Y() { return Poly2::y(); }
Poly2 C(long n, long d = 1) { return Poly2::constant(rat(n, d)); }

// Evaluation of sum c z^p conj(z)^q at z = x + iy, in Gaussian rationals.
GaussRat eval_complex(const ComplexCoeffs& cc, const Rat& x, const Rat& y) {
    GaussRat z(x, y);
    GaussRat w(x, -y);
    GaussRat acc;
    for (const auto& [e, c] : cc.terms()) {
        GaussRat t = c;
        for (int k = 0; k < e.i; ++k) t = t * z;
        for (int k = 0; k < e.j; ++k) t = t * w;
        acc = acc + t;
    }
    return acc;
}

}  // namespace

TEST(Rational, ParseAndFormat) {
    EXPECT_EQ(parse_rat("3/6"), rat(1, 2));
    EXPECT_EQ(parse_rat("-7"), Rat(-7));
    EXPECT_EQ(to_string(rat(-2, 4)), "-1/2");
    EXPECT_EQ(to_string(Rat(5)), "5");
    EXPECT_THROW(parse_rat("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rat("x"), std::invalid_argument);
    EXPECT_THROW(parse_rat(""), std::invalid_argument);
}

TEST(Rational, DyadicRoundIsExactOnDyadics) {
    EXPECT_EQ(dyadic_round(0.75), rat(3, 4));
    EXPECT_EQ(dyadic_round(-16.0), Rat(-16));
    Rat r = dyadic_round(1.0 / 3.0);
    EXPECT_LT(abs(r - rat(1, 3)), Rat(Int(1), Int(1) << 39));
}

TEST(Rational, SimplestBetween) {
    EXPECT_EQ(simplest_between(rat(1, 3), rat(2, 3)), rat(1, 2));
    EXPECT_EQ(simplest_between(rat(7, 2), rat(9, 2)), Rat(4));
    EXPECT_EQ(simplest_between(rat(-9, 2), rat(-7, 2)), Rat(-4));
    EXPECT_EQ(simplest_between(rat(-1, 2), rat(1, 2)), Rat(0));
    testgen::Rng rng(7);
    for (int k = 0; k < 200; ++k) {
        Rat lo = testgen::small_rat(rng, 20, 9);
        Rat hi = lo + testgen::rat_in(rng, 0, 1, 16) + rat(1, 1000);
        Rat s = simplest_between(lo, hi);
        EXPECT_LE(lo, s);
        EXPECT_LE(s, hi);
    }
}

TEST(Poly2Arith, SpecExamples) {
    EXPECT_EQ(X() * Y(), Poly2::monomial(Rat(1), 1, 1));
    EXPECT_EQ((X() + Y()) * (X() - Y()), X() * X() - Y() * Y());
    Poly2 f = rat(1, 2) * X() + Y() * Y();
    EXPECT_EQ(f - rat(1, 2) * X(), Y() * Y());
    EXPECT_EQ((f - rat(1, 2) * X()).size(), 1u);
    EXPECT_EQ(diff(f, Var::Y), C(2) * Y());
    EXPECT_EQ(diff(Y().pow(3), Var::Y), C(3) * Y() * Y());
    EXPECT_EQ(diff((X() + Y()).pow(3), Var::X), C(3) * X() * X() + C(6) * X() * Y() + C(3) * Y() * Y());
    EXPECT_EQ(eval(X() * X() + Y() * Y(), Rat(3), Rat(4)), Rat(25));
    Poly2 g = rat(1, 3) * Y() + Y().pow(3);
    EXPECT_EQ(eval(g, Rat(0), Rat(1)), rat(4, 3));
    EXPECT_EQ(eval(diff(g, Var::Y), Rat(0), Rat(1)), rat(10, 3));
    EXPECT_EQ(eval(Poly2{}, rat(2, 7), rat(-5)), Rat(0));
}

TEST(Poly2Arith, Degree) {
    EXPECT_EQ(Poly2{}.degree(), -1);
    EXPECT_EQ(C(3).degree(), 0);
    EXPECT_EQ((X() * Y() + Y()).degree(), 2);
}

TEST(Poly2Arith, SubstLinearExamples) {
    RatMat minus_id = RatMat::from(Rat(-1), Rat(0), Rat(0), Rat(-1));
    EXPECT_EQ(subst_linear(X(), minus_id), -X());
    RatMat shear = RatMat::from(Rat(1), Rat(1), Rat(0), Rat(1));
    EXPECT_EQ(subst_linear(X() * X(), shear), X() * X() + C(2) * X() * Y() + Y() * Y());
    RatMat swap = RatMat::from(Rat(0), Rat(1), Rat(1), Rat(0));
    EXPECT_EQ(subst_linear(X() * Y(), swap), X() * Y());
}

TEST(Poly2Arith, HomogComponents) {
    auto parts = homog_components(rat(1, 2) * X() + Y() * Y());
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].first, 1);
    EXPECT_EQ(parts[0].second, rat(1, 2) * X());
    EXPECT_EQ(parts[1].first, 2);
    EXPECT_EQ(parts[1].second, Y() * Y());

    auto sq = homog_components((X() + Y()).pow(2));
    ASSERT_EQ(sq.size(), 1u);
    EXPECT_EQ(sq[0].first, 2);
    EXPECT_TRUE(homog_components(Poly2{}).empty());
}

TEST(Poly2Arith, RingAxiomsAgreeWithPointEvaluation) {
    testgen::Rng rng(1);
    for (int k = 0; k < 300; ++k) {
        Poly2 f = testgen::poly2(rng, 0, 4);
        Poly2 g = testgen::poly2(rng, 0, 4);
        Poly2 h = testgen::poly2(rng, 0, 3);
        Rat x = testgen::small_rat(rng), y = testgen::small_rat(rng);
        EXPECT_EQ(eval(f + g, x, y), eval(f, x, y) + eval(g, x, y));
        EXPECT_EQ(eval(f * g, x, y), eval(f, x, y) * eval(g, x, y));
        EXPECT_EQ(f * (g + h), f * g + f * h);
        EXPECT_EQ(f * g, g * f);
        EXPECT_EQ((f * g) * h, f * (g * h));
        EXPECT_TRUE((f - f).is_zero());
        EXPECT_EQ(diff(f * g, Var::X), diff(f, Var::X) * g + f * diff(g, Var::X));
        EXPECT_EQ(diff(f * g, Var::Y), diff(f, Var::Y) * g + f * diff(g, Var::Y));
        EXPECT_EQ(eval_f64(f, x.get_d(), y.get_d()), eval_f64(f, x.get_d(), y.get_d()));
        EXPECT_NEAR(eval_f64(f, x.get_d(), y.get_d()), eval(f, x, y).get_d(),
                    1e-9 * (1 + std::abs(eval(f, x, y).get_d())));
    }
}

TEST(Poly2Arith, SubstLinearInverseAndEvaluation) {
    testgen::Rng rng(2);
    for (int k = 0; k < 200; ++k) {
        Poly2 f = testgen::poly2(rng, 0, 4);
        RatMat M = testgen::invertible(rng);
        Poly2 g = subst_linear(f, M);
        EXPECT_EQ(subst_linear(g, M.inverse()), f);
        RatVec p{testgen::small_rat(rng), testgen::small_rat(rng)};
        EXPECT_EQ(eval(g, p), eval(f, M * p));
    }
}

TEST(ComplexForm, SpecExamples) {
    ComplexCoeffs id = to_complex(PolyMap::identity());
    ASSERT_EQ(id.size(), 1u);
    EXPECT_EQ(id.coeff({1, 0}), GaussRat(Rat(1)));

    PolyMap cube{X().pow(3) - C(3) * X() * Y() * Y(), Y().pow(3) - C(3) * X() * X() * Y()};
    ComplexCoeffs cc = to_complex(cube);
    ASSERT_EQ(cc.size(), 1u);
    EXPECT_EQ(cc.coeff({0, 3}), GaussRat(Rat(1)));

    PolyMap z4{rat(1, 2) * X() - Y().pow(3), rat(1, 2) * Y() + X().pow(3)};
    ComplexCoeffs c4 = to_complex(z4);
    EXPECT_EQ(c4.size(), 3u);
    EXPECT_EQ(c4.coeff({1, 0}), GaussRat(rat(1, 2)));
    EXPECT_EQ(c4.coeff({2, 1}), GaussRat(Rat(0), rat(3, 4)));
    EXPECT_EQ(c4.coeff({0, 3}), GaussRat(Rat(0), rat(1, 4)));
}

TEST(ComplexForm, RoundTripAndPointwiseAgreement) {
    testgen::Rng rng(3);
    for (int k = 0; k < 200; ++k) {
        PolyMap F = testgen::map(rng, 5);
        ComplexCoeffs cc = to_complex(F);
        EXPECT_EQ(from_complex(cc), F);
        Rat x = testgen::small_rat(rng), y = testgen::small_rat(rng);
        GaussRat v = eval_complex(cc, x, y);
        EXPECT_EQ(v.re, eval(F.f1, x, y));
        EXPECT_EQ(v.im, eval(F.f2, x, y));
    }
}

TEST(RestrictToLine, SpecExamples) {
    Poly1 u2 = Poly1::monomial(Rat(1), 2);
    EXPECT_EQ(restrict_to_line((X() + Y()).pow(2), Rat(1), Rat(1)), u2);
    EXPECT_EQ(restrict_to_line(Y().pow(4) + C(2) * Y() * Y(), Rat(0), Rat(1)),
              Poly1::monomial(Rat(1), 4) + Poly1::monomial(Rat(2), 2));
    EXPECT_THROW(restrict_to_line(X() * X() + Y() * Y(), Rat(1), Rat(0)), NotAFunctionOfU);
}

TEST(RestrictToLine, RoundTrip) {
    testgen::Rng rng(4);
    for (int k = 0; k < 200; ++k) {
        Poly1 rho = testgen::poly1(rng, 6);
        Rat a = testgen::small_rat(rng), b = testgen::small_rat(rng);
        if (a == 0 && b == 0) continue;
        Poly2 f = compose_line(rho, a, b);
        EXPECT_EQ(restrict_to_line(f, a, b), rho);
    }
}

TEST(Poly1Arith, DivmodAndDerivative) {
    testgen::Rng rng(5);
    for (int k = 0; k < 200; ++k) {
        Poly1 p = testgen::poly1(rng, 7);
        Poly1 d = testgen::poly1(rng, 3);
        if (d.is_zero()) continue;
        auto [q, r] = p.divmod(d);
        EXPECT_EQ(q * d + r, p);
        EXPECT_LT(r.degree(), d.degree());
        Rat u = testgen::small_rat(rng);
        EXPECT_EQ((p * d).eval(u), p.eval(u) * d.eval(u));
        EXPECT_EQ((p * d).derivative(), p.derivative() * d + p * d.derivative());
    }
}
