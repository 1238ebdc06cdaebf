#pragma once

#include <lspectra/poincare.hpp>

#include <random>

namespace support {

using namespace lspectra;

inline IntComplex times_four() { return IntComplex({{1, 1}, {0, 1}}, {{1, IntMatrix{{4}}}}); }

// Z --4--> Z in degrees 1 -> 0 with psi_0 pairing C_0 x C_1 to p and C_1 x C_0
// to p'. The level-1 entry u is forced: 4(p - p') = -2u.
inline StructuredComplex z4_example(long p, long p2) {
    return make_structured(times_four(), StructureKind::Quadratic, 1,
                           {{0, ChainForm{1, {{0, IntMatrix{{p}}}, {1, IntMatrix{{p2}}}}}},
                            {1, ChainForm{2, {{1, IntMatrix{{-2 * (p - p2)}}}}}}});
}

// Brute-force evaluation of the pairing x^T M y.
inline Int naive_pair(const std::vector<Int>& x, const IntMatrix& M, const std::vector<Int>& y) {
    Int acc = 0;
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) acc += x[i] * M(i, j) * y[j];
    return acc;
}

// Re-evaluates q on every torsion class of a 1-dimensional structure with a
// randomly perturbed cycle representative and lift, directly from the
// defining formula. Returns the number of disagreements with linking_form.
inline int lift_mismatches(const StructuredComplex& S, std::mt19937& rng, int trials) {
    LinkingForm L = linking_form(S);
    TorsionBasis tb = torsion_basis(S.C, 0);
    const std::size_t n0 = S.C.rank(0), n1 = S.C.rank(1);
    int bad = 0;
    for (long x = 0; x < L.order(); ++x) {
        auto coords = L.element(x);
        Int ord = 1;
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i]) {
                Int o = tb.orders[i] / gcd_int(Int(coords[i]), tb.orders[i]);
                if (o > ord) ord = o;
            }
        for (int t = 0; t < trials; ++t) {
            // y' = y + d w, lifted by z' = z + s w with s any power-of-two multiple of the order
            Int s = ord << static_cast<unsigned>(rng() % 3);
            std::vector<Int> w(n1), z(n1);
            for (auto& v : w) v = static_cast<long>(rng() % 9) - 4;
            for (std::size_t i = 0; i < coords.size(); ++i)
                for (std::size_t r = 0; r < n1; ++r) z[r] += Int(coords[i]) * s / tb.orders[i] * tb.lifts[i][r];
            for (std::size_t r = 0; r < n1; ++r) z[r] += s * w[r];
            std::vector<Int> y(n0);
            for (std::size_t i = 0; i < coords.size(); ++i)
                for (std::size_t r = 0; r < n0; ++r) y[r] += Int(coords[i]) * tb.reps[i][r];
            std::vector<Int> dw = S.C.d(1).apply(w);
            for (std::size_t r = 0; r < n0; ++r) y[r] += dw[r];
            std::vector<Int> dz = S.C.d(1).apply(z);
            for (std::size_t r = 0; r < n0; ++r)
                if (dz[r] != s * y[r]) return -1;
            Int num = naive_pair(dz, S.level(0).block(S.C, 0), z) + naive_pair(z, S.level(1).block(S.C, 1), z);
            Dyadic direct(num, static_cast<unsigned>(2 * (mpz_sizeinbase(s.get_mpz_t(), 2) - 1)));
            if (!(direct == L.q(x)) || !(linking_value(S, z, s) == L.q(x))) ++bad;
        }
    }
    return bad;
}

}  // namespace support
