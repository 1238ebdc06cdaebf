#include "poincare_support.hpp"

#include <gtest/gtest.h>

#include <lspectra/poincare.hpp>

#include <random>

using namespace lspectra;
using support::times_four;
using support::z4_example;

TEST(FormOps, TransposeIsInvolutionAndCommutesWithBoundary) {
    std::mt19937 rng(5);
    IntComplex C({{0, 2}, {1, 1}, {2, 2}}, {{1, IntMatrix{{2}, {0}}}, {2, IntMatrix{{0, 0}}}});
    for (int w = 0; w <= 4; ++w)
        for (int t = 0; t < 10; ++t) {
            ChainForm f = zero_form(C, w);
            for (auto& [a, M] : f.blocks)
                for (std::size_t i = 0; i < M.rows(); ++i)
                    for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) = static_cast<long>(rng() % 7) - 3;
            EXPECT_EQ(form_transpose(C, form_transpose(C, f)), f);
            EXPECT_EQ(form_boundary(C, form_transpose(C, f)), form_transpose(C, form_boundary(C, f)));
            EXPECT_TRUE(form_boundary(C, form_boundary(C, f)).is_zero());
        }
}

TEST(FormOps, BoundaryMatchesPairingOnElements) {
    IntComplex C = times_four();
    ChainForm f{1, {{0, IntMatrix{{3}}}, {1, IntMatrix{{5}}}}};
    ChainForm df = form_boundary(C, f);
    // (df)(x, y) for x, y in C_1: f(dx, y) - f(x, dy) = 4*3 - 5*4
    EXPECT_EQ(df.block(C, 1), (IntMatrix{{12 - 20}}));
}

TEST(Structures, BuiltinsArePoincare) {
    for (std::string n : {"E", "F", "hyperbolic", "unit"}) {
        StructuredComplex S = builtin_structure(n);
        EXPECT_TRUE(structure_violations(S).empty()) << n;
        EXPECT_TRUE(poincare_check(S)) << n;
    }
    EXPECT_THROW(builtin_structure("G"), InvalidInput);
}

TEST(Structures, SymmetrizationOfF) {
    StructuredComplex F = builtin_F();
    EXPECT_EQ(symmetrization(F).block(F.C, 1), (IntMatrix{{0, 1}, {-1, 0}}));
    EXPECT_EQ(symmetrization(builtin_hyperbolic()).block(F.C, 1), (IntMatrix{{0, 1}, {-1, 0}}));
}

TEST(Structures, RelationCheckerRejectsBrokenData) {
    // u must be -2(p - p')
    EXPECT_THROW(make_structured(times_four(), StructureKind::Quadratic, 1,
                                 {{0, ChainForm{1, {{0, IntMatrix{{1}}}}}}}),
                 Degenerate);
    EXPECT_THROW(make_structured(times_four(), StructureKind::Quadratic, 1,
                                 {{0, ChainForm{1, {{0, IntMatrix{{1, 0}}}}}}}),
                 InvalidInput);
    StructuredComplex E = builtin_E();
    E.levels[1].blocks[-1](0, 0) += 2;
    EXPECT_FALSE(structure_violations(E).empty());
}

TEST(Structures, PoincareRejectsDegenerateForms) {
    // p + p' is the determinant of the duality map in degree 0
    EXPECT_TRUE(poincare_check(z4_example(1, 0)));
    EXPECT_TRUE(poincare_check(z4_example(3, -2)));
    EXPECT_FALSE(poincare_check(z4_example(1, 1)));
    EXPECT_FALSE(poincare_check(z4_example(0, 0)));
    StructuredComplex bad = plane_in_degree_one(1, 1, 1, 1);
    EXPECT_FALSE(poincare_check(bad));
}

TEST(Structures, SearchFindsStructureOnE) {
    StructuredComplex E = builtin_E();
    ChainForm phi = E.level(0);
    // adjoint pairing C_0 with C_{-1} must be a unit, and the two halves differ by sign
    Int alpha = phi.block(E.C, 0)(0, 0), beta = phi.block(E.C, -1)(0, 0);
    EXPECT_EQ(abs(alpha), 1);
    EXPECT_EQ(beta, -alpha);
    // the symmetric structure on the E complex cannot be symmetrized from a quadratic one
    EXPECT_FALSE(find_structure(e_complex(), StructureKind::Quadratic, -1, 2).has_value());
}

TEST(Products, SatisfyRelationsAcrossExamples) {
    std::vector<StructuredComplex> sym{builtin_E(), builtin_unit()};
    std::vector<StructuredComplex> quad{builtin_F(), builtin_hyperbolic(), z4_example(1, 0), z4_example(2, -1)};
    auto q2 = find_structure(IntComplex({{1, 1}, {0, 1}}, {{1, IntMatrix{{2}}}}), StructureKind::Quadratic, 1, 3);
    ASSERT_TRUE(q2.has_value());
    quad.push_back(*q2);
    for (auto& S : sym)
        for (auto& Q : quad) {
            StructuredComplex P = tensor_structured(S, Q);
            EXPECT_TRUE(structure_violations(P).empty());
            EXPECT_EQ(P.dim, S.dim + Q.dim);
            EXPECT_TRUE(poincare_check(P));
        }
}

TEST(Products, IteratedProductsKeepHigherLevelsConsistent) {
    StructuredComplex E = builtin_E();
    std::vector<StructuredComplex> quad{builtin_F(), z4_example(1, 0), z4_example(2, -1)};
    for (auto Q : quad)
        for (int k = 0; k < 3; ++k) {
            Q = tensor_structured(E, Q);
            EXPECT_TRUE(structure_violations(Q).empty());
            EXPECT_TRUE(poincare_check(Q));
        }
}

// Z in a single degree h with only the top level psi_{2h - dim} = [u]; the
// relations hold exactly when 3h - dim is odd or s = 0.
TEST(Products, TopLevelOnlyFactors) {
    StructuredComplex E = builtin_E();
    int used = 0;
    for (int h = -1; h <= 2; ++h)
        for (int dim = -2; dim <= 3; ++dim) {
            const int s = 2 * h - dim;
            if (s < 0) continue;
            IntComplex C({{h, 1}}, {});
            std::map<int, ChainForm> lv{{s, ChainForm{2 * h, {{h, IntMatrix{{1}}}}}}};
            StructuredComplex Q{C, StructureKind::Quadratic, dim, lv};
            EXPECT_EQ(structure_violations(Q).empty(), s == 0 || (3 * h - dim) % 2 != 0) << h << " " << dim;
            if (!structure_violations(Q).empty()) continue;
            ++used;
            StructuredComplex P = tensor_structured(E, Q);
            EXPECT_TRUE(structure_violations(P).empty());
            P = tensor_structured(E, P);
            EXPECT_TRUE(structure_violations(P).empty());
        }
    EXPECT_GT(used, 6);
}

TEST(Products, UnitActsTrivially) {
    StructuredComplex Z4 = z4_example(1, 0);
    StructuredComplex P = tensor_structured(builtin_unit(), Z4);
    for (int s = 0; s <= 2; ++s) EXPECT_EQ(P.level(s), Z4.level(s));
}

TEST(Linking, EFTable) {
    StructuredComplex P = tensor_structured(builtin_E(), builtin_F());
    EXPECT_EQ(P.dim, 1);
    EXPECT_TRUE(P.level(1).is_zero());
    LinkingForm L = linking_form(P);
    ASSERT_EQ(L.order(), 4);
    // (a, b) -> (a^2 + ab + b^2) / 2 on (Z/2)^2
    for (long a = 0; a < 2; ++a)
        for (long b = 0; b < 2; ++b)
            EXPECT_EQ(L.q(L.index({a, b})), Dyadic(a * a + a * b + b * b, 1)) << a << b;
    EXPECT_EQ(brown_kervaire(L), 4);
}

TEST(Linking, Z4ExampleMatchesDirectEvaluation) {
    for (auto [p, p2] : std::vector<std::pair<long, long>>{{1, 0}, {0, 1}, {2, -1}, {-1, 2}, {3, -2}}) {
        StructuredComplex S = z4_example(p, p2);
        LinkingForm L = linking_form(S);
        ASSERT_EQ(L.order(), 4);
        // x = 1: z = 1 in C_1, dz = 4, so q = (u + 4p) / 16
        Dyadic expect(Int(-2 * (p - p2) + 4 * p), 4);
        EXPECT_EQ(L.q(1), expect);
        Dyadic r = L.q(1);
        EXPECT_EQ(r.exp, 3u);  // odd multiple of 1/8
        EXPECT_TRUE(nondegenerate(L));
    }
}

TEST(Linking, IndependentOfLiftChoices) {
    std::mt19937 rng(11);
    std::vector<StructuredComplex> cases{tensor_structured(builtin_E(), builtin_F()),
                                         tensor_structured(builtin_E(), builtin_hyperbolic()), z4_example(1, 0),
                                         z4_example(2, -1)};
    for (auto& S : cases) EXPECT_EQ(support::lift_mismatches(S, rng, 8), 0);
}

TEST(Linking, CertifyValues) {
    EXPECT_EQ(certify_ef(builtin_E(), builtin_F()), 4);
    EXPECT_EQ(certify_ef(builtin_E(), builtin_hyperbolic()), 0);
    EXPECT_EQ(certify_ef(builtin_unit(), builtin_F()), 0);
    EXPECT_THROW(certify_ef(builtin_F(), builtin_E()), InvalidInput);
}

TEST(Linking, RejectsBadInput) {
    EXPECT_THROW(linking_form(builtin_E()), InvalidInput);
    EXPECT_THROW(linking_value(z4_example(1, 0), {Int(1)}, Int(3)), InvalidInput);
    // odd torsion
    StructuredComplex S3 = make_structured(IntComplex({{1, 1}, {0, 1}}, {{1, IntMatrix{{3}}}}),
                                           StructureKind::Quadratic, 1,
                                           {{0, ChainForm{1, {{0, IntMatrix{{1}}}, {1, IntMatrix{{-1}}}}}},
                                            {1, ChainForm{2, {{1, IntMatrix{{-3}}}}}}});
    EXPECT_THROW(linking_form(S3), InvalidInput);
}
