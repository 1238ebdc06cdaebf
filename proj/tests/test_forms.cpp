#include "forms_support.hpp"

#include <gtest/gtest.h>

#include <lspectra/forms.hpp>

#include <random>

using namespace lspectra;
using support::cyclic_form;
using support::plane_form;

namespace {

// Number of positive / negative eigenvalues of a real symmetric matrix from
// the sign changes of its characteristic polynomial (all roots are real).
int signature_by_charpoly(const IntMatrix& A) {
    const std::size_t n = A.rows();
    // Faddeev-LeVerrier: coefficients c_k of det(tI - A) = sum c_k t^k
    std::vector<mpq_class> c(n + 1);
    c[n] = 1;
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n)), AM(n, std::vector<mpq_class>(n));
    for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                mpq_class s = 0;
                for (std::size_t l = 0; l < n; ++l) s += mpq_class(A(i, l)) * M[l][j];
                AM[i][j] = s;
            }
        for (std::size_t i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
        M = AM;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                mpq_class s = 0;
                for (std::size_t l = 0; l < n; ++l) s += mpq_class(A(i, l)) * M[l][j];
                AM[i][j] = s;
            }
        mpq_class tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += AM[i][i];
        c[n - k] = -tr / mpq_class(static_cast<long>(k));
    }
    auto changes = [](std::vector<mpq_class> p) {
        int ch = 0, last = 0;
        for (auto& v : p) {
            int s = sgn(v);
            if (s == 0) continue;
            if (last && s != last) ++ch;
            last = s;
        }
        return ch;
    };
    int pos = changes(c);
    std::vector<mpq_class> neg = c;  // p(-t)
    for (std::size_t k = 0; k <= n; ++k)
        if (k % 2) neg[k] = -neg[k];
    return pos - changes(neg);
}

}  // namespace

TEST(Signature, Examples) {
    EXPECT_EQ(signature(e8_form()), 8);
    EXPECT_EQ(signature(SymForm{{1, 0}, {0, -1}}), 0);
    EXPECT_EQ(signature(IntMatrix::identity(3)), 3);
    EXPECT_EQ(signature(SymForm{{0, 1}, {1, 0}}), 0);
    EXPECT_EQ(signature(SymForm{{0, 1, 0}, {1, 0, 0}, {0, 0, -3}}), -1);
    EXPECT_THROW(signature(SymForm{{1, 1}, {1, 1}}), Degenerate);
    EXPECT_THROW(signature(SymForm{{1, 2}, {0, 1}}), InvalidInput);
}

TEST(Signature, E8IsUnimodular) {
    EXPECT_EQ(smith_normal_form(e8_form()).diagonal(), std::vector<Int>(8, Int(1)));
}

TEST(Signature, RandomAgainstCharacteristicPolynomial) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dim(1, 6), val(-5, 5);
    int done = 0;
    while (done < 150) {
        std::size_t n = dim(rng);
        IntMatrix A(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) A(i, j) = A(j, i) = val(rng);
        if (smith_normal_form(A).rank < n) {
            EXPECT_THROW(signature(A), Degenerate);
            continue;
        }
        EXPECT_EQ(signature(A), signature_by_charpoly(A)) << A.to_string();
        ++done;
    }
}

TEST(Arf, Examples) {
    EXPECT_EQ(arf(F2QuadForm({{0, 1}, {0, 0}})), 0);
    EXPECT_EQ(arf(F2QuadForm({{1, 1}, {0, 1}})), 1);
    EXPECT_EQ(arf(F2QuadForm({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}})), 0);
    EXPECT_THROW(arf(F2QuadForm(std::vector<std::vector<int>>{{1}})), Degenerate);
    EXPECT_THROW(arf(F2QuadForm({{1, 0}, {0, 1}})), Degenerate);
    EXPECT_THROW(F2QuadForm({{1, 0}, {1, 1}}), InvalidInput);
}

// Arf is additive and invariant under change of basis; build forms from known
// planes and scramble them with random invertible matrices.
TEST(Arf, InvariantUnderBasisChange) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
        int planes = 1 + t % 4;
        std::size_t n = 2 * planes;
        std::vector<std::vector<int>> M(n, std::vector<int>(n, 0));
        int expected = 0;
        for (int p = 0; p < planes; ++p) {
            bool odd = rng() & 1;
            M[2 * p][2 * p + 1] = 1;
            if (odd) M[2 * p][2 * p] = M[2 * p + 1][2 * p + 1] = 1;
            expected ^= odd;
        }
        F2QuadForm base(M);
        // random invertible P (columns), q'(v) = q(P v)
        std::vector<std::uint64_t> cols;
        for (;;) {
            cols.assign(n, 0);
            for (auto& c : cols) c = rng() & ((1ULL << n) - 1);
            std::vector<std::uint64_t> r = cols;
            std::size_t rank = 0;
            for (std::size_t b = 0; b < n; ++b) {
                std::size_t p = rank;
                while (p < n && !(r[p] >> b & 1)) ++p;
                if (p == n) continue;
                std::swap(r[p], r[rank]);
                for (std::size_t i = 0; i < n; ++i)
                    if (i != rank && (r[i] >> b & 1)) r[i] ^= r[rank];
                ++rank;
            }
            if (rank == n) break;
        }
        auto apply = [&](std::uint64_t v) {
            std::uint64_t w = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (v >> i & 1) w ^= cols[i];
            return w;
        };
        std::vector<std::vector<int>> N(n, std::vector<int>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            N[i][i] = base.q(apply(1ULL << i));
            for (std::size_t j = i + 1; j < n; ++j)
                N[i][j] = base.q(apply((1ULL << i) | (1ULL << j))) ^ base.q(apply(1ULL << i)) ^
                          base.q(apply(1ULL << j));
        }
        EXPECT_EQ(arf(F2QuadForm(N)), expected);
    }
}

TEST(Dyadic, ParseAndPrint) {
    EXPECT_EQ(Dyadic::parse("1/2").to_string(), "1/2");
    EXPECT_EQ(Dyadic::parse("3/2^3").to_string(), "3/8");
    EXPECT_EQ(Dyadic::parse("-1/8").to_string(), "7/8");
    EXPECT_EQ(Dyadic::parse("2/4").to_string(), "1/2");
    EXPECT_EQ(Dyadic::parse("5").to_string(), "0");
    EXPECT_THROW(Dyadic::parse("1/3"), InvalidInput);
    EXPECT_THROW(Dyadic::parse("x/2"), InvalidInput);
}

TEST(LinkingForms, BrownKervaireExamples) {
    EXPECT_EQ(brown_kervaire(plane_form(1, true)), 4);
    EXPECT_EQ(brown_kervaire(plane_form(1, false)), 0);
    LinkingForm quarter = LinkingForm::from_function({2}, [](const std::vector<long>& x) {
        return Dyadic(Int(x[0] * x[0]), 2);
    });
    EXPECT_EQ(brown_kervaire(quarter), 1);
    EXPECT_EQ(brown_kervaire(LinkingForm()), 0);
    EXPECT_EQ(witt_parity(quarter), 1);
    EXPECT_EQ(witt_parity(plane_form(1, true)), 0);
}

TEST(LinkingForms, DegenerateGaussSumRejected) {
    LinkingForm zero = LinkingForm::from_function({2}, [](const std::vector<long>&) { return Dyadic(); });
    EXPECT_FALSE(nondegenerate(zero));
    EXPECT_THROW(brown_kervaire(zero), Degenerate);
}

TEST(LinkingForms, QuadraticAndNondegenerate) {
    LinkingForm F = plane_form(1, true);
    EXPECT_TRUE(check_quadratic(F, {0, 1, 2, 3, 4, 5, 6, 7}));
    EXPECT_TRUE(nondegenerate(F));
    LinkingForm half = cyclic_form(0 + 1, 1);  // x^2/4 on Z/2
    EXPECT_TRUE(nondegenerate(half));
    LinkingForm q12 = LinkingForm::from_function({2}, [](const std::vector<long>& x) {
        return Dyadic(Int(x[0]), 1);
    });
    EXPECT_TRUE(check_quadratic(q12, {0, 1, 2, 3}));
    // corrupt q(1,1)
    auto vals = F.values();
    vals[F.index({1, 1})] = Dyadic(Int(1), 2);
    LinkingForm bad(F.factors(), vals);
    EXPECT_FALSE(check_quadratic(bad, {0, 1, 2, 3, 4, 5, 6, 7}));
}

TEST(LinkingForms, GaussSumMatchesFloatingPoint) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; ++t) {
        LinkingForm L = support::random_form(rng, 8);
        ASSERT_TRUE(check_quadratic(L, {0, 1, 2, 3, 5}));
        ASSERT_TRUE(nondegenerate(L));
        GaussSum g = gauss_sum(L);
        EXPECT_EQ(g.beta, support::beta_numeric(L));
        EXPECT_TRUE((g.value * g.value.conj()).is_integer(Int(L.order())));
    }
}

TEST(LinkingForms, BetaAdditive) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 40; ++t) {
        LinkingForm A = support::random_form(rng, 4), B = support::random_form(rng, 4);
        EXPECT_EQ(brown_kervaire(orthogonal_sum(A, B)), (brown_kervaire(A) + brown_kervaire(B)) % 8);
        EXPECT_EQ(witt_parity(orthogonal_sum(A, B)), (witt_parity(A) + witt_parity(B)) % 2);
    }
}

TEST(LinkingForms, RejectsBadShapes) {
    EXPECT_THROW(LinkingForm({3}, {Dyadic(), Dyadic(), Dyadic()}), InvalidInput);
    EXPECT_THROW(LinkingForm({2}, {Dyadic()}), InvalidInput);
    EXPECT_THROW(LinkingForm({4096, 2}, std::vector<Dyadic>(8192)), EnumerationLimit);
}

TEST(Cyclotomic, SqrtTwo) {
    Cyclotomic2 r2(3);
    r2.add_zeta(1, 1);
    r2.add_zeta(-1, 1);
    EXPECT_TRUE((r2 * r2).is_integer(Int(2)));
    // 1 + i = sqrt2 * zeta_8
    Cyclotomic2 lhs(3);
    lhs.add_zeta(0, 1);
    lhs.add_zeta(2, 1);
    EXPECT_EQ(lhs, r2 * Cyclotomic2::zeta_power(3, 1));
}
