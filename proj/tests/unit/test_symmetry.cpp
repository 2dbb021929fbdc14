#include <gtest/gtest.h>

#include <numbers>

#include "generators.hpp"

using namespace dmyq;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexCoeffs single(GaussRat c, int p, int q) {
    ComplexCoeffs cc;
    cc.add_term({p, q}, c);
    return cc;
}

// Largest k <= 12 such that rotation by 2 pi / k commutes with F, by direct substitution.
int rotation_order_by_substitution(const PolyMap& F) {
    int best = 1;
    for (int k = 2; k <= 12; ++k)
        if (is_equivariant(F, rotation_matrix(2 * kPi / k))) best = k;
    return best;
}

// Maps with a mix of symmetry types.
PolyMap symmetric_sample(testgen::Rng& rng, int k) {
    switch (k % 6) {
        case 0: return testgen::rotation_equivariant(rng, 3 + static_cast<int>(testgen::uniform(rng, 0, 3)));
        case 1: return testgen::klein_equivariant(rng);
        case 2: {
            // kappa-equivariant, then rotated so the axis is not a multiple of pi/4
            Poly2 f1, f2;
            for (int t = 0; t < 3; ++t) {
                int i = static_cast<int>(testgen::uniform(rng, 0, 3));
                int j = 2 * static_cast<int>(testgen::uniform(rng, 0, 1));
                f1.add_term({i, j}, testgen::small_rat(rng));
                f2.add_term({i, j + 1}, testgen::small_rat(rng));
            }
            f1.add_term({1, 0}, Rat(1));
            PolyMap F{f1 - Poly2::constant(f1.coeff({0, 0})), f2};
            RatMat R = RatMat::from(rat(3, 5), rat(-4, 5), rat(4, 5), rat(3, 5));
            return conjugate(F, R);
        }
        case 3: return testgen::even_skew(rng);
        case 4: return testgen::map(rng, 4);
        default: return reconstruct(testgen::normal_form(rng, 3));
    }
}

}  // namespace

TEST(RotationSubgroup, SpecExamples) {
    EXPECT_EQ(rotation_subgroup(single(GaussRat(Rat(1)), 1, 0)), (RotationOrder{true, 0}));
    EXPECT_EQ(rotation_subgroup(single(GaussRat(Rat(1)), 0, 3)), (RotationOrder{false, 4}));
    ComplexCoeffs z4 = to_complex(parse_map("(x/2 - y^3, y/2 + x^3)"));
    EXPECT_EQ(rotation_subgroup(z4), (RotationOrder{false, 4}));
    EXPECT_THROW(rotation_subgroup(ComplexCoeffs{}), ZeroMapError);
}

TEST(ReflectionAxes, SpecExamples) {
    ReflectionAxes conj_z = reflection_axes(single(GaussRat(Rat(1)), 0, 1));
    ASSERT_EQ(conj_z.axes.size(), 2u);
    EXPECT_DOUBLE_EQ(conj_z.axes[0].angle, 0);
    EXPECT_DOUBLE_EQ(conj_z.axes[1].angle, kPi / 2);
    EXPECT_TRUE(conj_z.axes[0].exact);

    ReflectionAxes cube = reflection_axes(single(GaussRat(Rat(1)), 0, 3));
    ASSERT_EQ(cube.axes.size(), 4u);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(cube.axes[k].angle, k * kPi / 4, 1e-15);

    EXPECT_FALSE(reflection_axes(to_complex(parse_map("(x/2 - y^3, y/2 + x^3)"))).any());
}

TEST(Classify, SpecExamples) {
    SymmetryGroup k = classify(parse_map("(x/2 + y^2, y/3)"));
    EXPECT_EQ(k.classification, SymmetryClass::Z2_reflection);
    ASSERT_TRUE(k.reflection_axis_angle);
    EXPECT_EQ(*k.reflection_axis_angle, 0.0);

    SymmetryGroup z4 = classify(parse_map("(x/2 - y^3, y/2 + x^3)"));
    EXPECT_EQ(z4.classification, SymmetryClass::Zn);
    EXPECT_EQ(z4.rotation.n, 4);
    EXPECT_FALSE(z4.has_reflection);
    EXPECT_EQ(z4.label(), "Z4");

    EXPECT_EQ(classify(parse_map("(x*(x^2+y^2), y*(x^2+y^2))")).classification, SymmetryClass::O2);
    EXPECT_EQ(classify(parse_map("(x^3 - 3*x*y^2, y^3 - 3*x^2*y)")).classification, SymmetryClass::Dn);
}

// The map (x/2, y/3 + x^2) commutes with (x, y) -> (-x, y), a reflection about the y-axis.
TEST(Classify, TriangularPositiveControlHasReflection) {
    PolyMap F = parse_map("(x/2, y/3 + x^2)");
    EXPECT_TRUE(is_equivariant(F, RatMat::from(Rat(-1), Rat(0), Rat(0), Rat(1))));
    EXPECT_FALSE(is_equivariant(F, RatMat::from(Rat(-1), Rat(0), Rat(0), Rat(-1))));
    SymmetryGroup g = classify(F);
    EXPECT_EQ(g.classification, SymmetryClass::Z2_reflection);
    EXPECT_DOUBLE_EQ(*g.reflection_axis_angle, kPi / 2);
}

TEST(Classify, ZeroMapIsO2) { EXPECT_EQ(classify(PolyMap{}).classification, SymmetryClass::O2); }

TEST(Classify, NonRealInvariantTermDropsReflections) {
    // i z^2 conj(z): every rotation commutes, no reflection does.
    PolyMap F = from_complex(single(GaussRat(Rat(0), Rat(1)), 2, 1));
    SymmetryGroup g = classify(F);
    EXPECT_EQ(g.classification, SymmetryClass::SO2);
    ASSERT_EQ(g.generators.size(), 1u);
    ASSERT_TRUE(g.generators[0].exact);
    EXPECT_TRUE(is_equivariant(F, *g.generators[0].exact));
}

TEST(IsEquivariant, SpecExamples) {
    testgen::Rng rng(31);
    for (int k = 0; k < 20; ++k) {
        double t = std::uniform_real_distribution<double>(0, 2 * kPi)(rng);
        EXPECT_TRUE(is_equivariant(PolyMap::identity(), rotation_matrix(t)));
        EXPECT_TRUE(is_equivariant(PolyMap::identity(), reflection_matrix(t)));
    }
    PolyMap F = parse_map("(x/2 + y^2, y/3)");
    EXPECT_TRUE(is_equivariant(F, RatMat::from(Rat(1), Rat(0), Rat(0), Rat(-1))));
    EXPECT_FALSE(is_equivariant(F, RatMat::from(Rat(-1), Rat(0), Rat(0), Rat(-1))));
    EXPECT_THROW(is_equivariant(F, RatMat::from(Rat(2), Rat(0), Rat(0), Rat(1))), NotOrthogonal);
}

TEST(Classify, GeneratorsAndMaximality) {
    testgen::Rng rng(32);
    for (int k = 0; k < 300; ++k) {
        PolyMap F = symmetric_sample(rng, k);
        if (F.is_zero()) continue;
        SymmetryGroup g = classify(F);
        ASSERT_FALSE(g.generators.empty());
        for (const auto& gen : g.generators) EXPECT_TRUE(is_equivariant(F, gen)) << format_map(F);

        if (!g.rotation.continuous) {
            const int n = g.rotation.n;
            EXPECT_FALSE(is_equivariant(F, rotation_matrix(kPi / n))) << format_map(F);
            if (n <= 12) EXPECT_EQ(rotation_order_by_substitution(F), n) << format_map(F);
        }
        if (g.has_reflection && !g.rotation.continuous) {
            const double phi = *g.reflection_axis_angle;
            EXPECT_TRUE(is_equivariant(F, reflection_matrix(phi)));
            EXPECT_FALSE(is_equivariant(F, reflection_matrix(phi + kPi / (2 * g.rotation.n)))) << format_map(F);
            EXPECT_EQ(g.axes.size(), static_cast<std::size_t>(g.rotation.n)) << format_map(F);
            for (const auto& ax : g.axes) EXPECT_TRUE(is_equivariant(F, reflection_matrix(ax.angle)));
        }
        if (!g.has_reflection) {
            for (int j = 0; j < 90; ++j) EXPECT_FALSE(is_equivariant(F, reflection_matrix(j * kPi / 90)));
        }
    }
}

TEST(Classify, RotationEquivariantMapsContainZn) {
    testgen::Rng rng(33);
    for (int n = 3; n <= 6; ++n)
        for (int k = 0; k < 25; ++k) {
            PolyMap F = testgen::rotation_equivariant(rng, n);
            SymmetryGroup g = classify(F);
            EXPECT_TRUE(g.rotation.continuous || g.rotation.n % n == 0) << format_map(F);
            EXPECT_FALSE(g.is_trivial_or_z2());
        }
}

TEST(Classify, Deterministic) {
    testgen::Rng rng(34);
    for (int k = 0; k < 50; ++k) {
        PolyMap F = symmetric_sample(rng, k);
        if (F.is_zero()) continue;
        SymmetryGroup a = classify(F), b = classify(F);
        EXPECT_EQ(a.classification, b.classification);
        EXPECT_EQ(a.rotation, b.rotation);
        EXPECT_EQ(a.reflection_axis_angle, b.reflection_axis_angle);
    }
}
