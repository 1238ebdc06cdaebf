#pragma once

#include "chain.hpp"
#include "forms.hpp"

#include <functional>

namespace lspectra {

// Bilinear form on a complex pairing C_a with C_{weight-a}; blocks[a] has
// shape rank(a) x rank(weight - a).
struct ChainForm {
    int weight = 0;
    std::map<int, IntMatrix> blocks;

    IntMatrix block(const IntComplex& C, int a) const {
        auto it = blocks.find(a);
        return it == blocks.end() ? IntMatrix(C.rank(a), C.rank(weight - a)) : it->second;
    }
    bool is_zero() const {
        for (auto& [a, M] : blocks)
            if (!M.is_zero()) return false;
        return true;
    }
    friend bool operator==(const ChainForm& x, const ChainForm& y) {
        if (x.weight != y.weight) return false;
        for (auto& [a, M] : x.blocks) {
            auto it = y.blocks.find(a);
            if (it == y.blocks.end() ? !M.is_zero() : !(M == it->second)) return false;
        }
        for (auto& [a, M] : y.blocks)
            if (!x.blocks.count(a) && !M.is_zero()) return false;
        return true;
    }
};

inline int sign_of(long e) { return e % 2 == 0 ? 1 : -1; }

inline ChainForm zero_form(const IntComplex& C, int weight) {
    ChainForm f{weight, {}};
    for (auto& [a, r] : C.ranks())
        if (C.rank(weight - a)) f.blocks[a] = IntMatrix(r, C.rank(weight - a));
    return f;
}

// (delta f)(x, y) = f(dx, y) + (-1)^{|x|} f(x, dy)
inline ChainForm form_boundary(const IntComplex& C, const ChainForm& f) {
    ChainForm r = zero_form(C, f.weight + 1);
    for (auto& [a, M] : r.blocks) {
        const int b = f.weight + 1 - a;
        if (C.rank(a - 1)) M = M + C.d(a).transpose() * f.block(C, a - 1);
        if (C.rank(b - 1)) M = M + Int(sign_of(a)) * (f.block(C, a) * C.d(b));
    }
    return r;
}

// (T f)(x, y) = (-1)^{|x||y|} f(y, x)
inline ChainForm form_transpose(const IntComplex& C, const ChainForm& f) {
    ChainForm r = zero_form(C, f.weight);
    for (auto& [a, M] : r.blocks) {
        const int b = f.weight - a;
        M = Int(sign_of(static_cast<long>(a) * b)) * f.block(C, b).transpose();
    }
    return r;
}

inline ChainForm form_combine(const IntComplex& C, const ChainForm& x, int cx, const ChainForm& y, int cy) {
    if (x.weight != y.weight) throw std::logic_error("weight mismatch");
    ChainForm r = zero_form(C, x.weight);
    for (auto& [a, M] : r.blocks) M = Int(cx) * x.block(C, a) + Int(cy) * y.block(C, a);
    return r;
}

enum class StructureKind { Symmetric, Quadratic };

// A symmetric structure has levels phi_s of weight dim - s; a quadratic one
// has psi_s of weight dim + s. Only finitely many levels can be nonzero.
struct StructuredComplex {
    IntComplex C;
    StructureKind kind = StructureKind::Symmetric;
    int dim = 0;
    std::map<int, ChainForm> levels;

    int level_weight(int s) const { return kind == StructureKind::Symmetric ? dim - s : dim + s; }

    int max_level() const {
        if (C.is_zero()) return 0;
        return kind == StructureKind::Symmetric ? std::max(0, dim - 2 * C.lo()) : std::max(0, 2 * C.hi() - dim);
    }

    ChainForm level(int s) const {
        auto it = levels.find(s);
        ChainForm f = zero_form(C, level_weight(s));
        if (it == levels.end()) return f;
        for (auto& [a, M] : it->second.blocks) {
            if (!f.blocks.count(a)) {
                if (!M.is_zero()) throw InvalidInput("structure block at degree " + std::to_string(a) + " has no partner");
                continue;
            }
            f.blocks[a] = M;
        }
        return f;
    }
};

inline std::vector<std::string> structure_violations(const StructuredComplex& S) {
    std::vector<std::string> bad;
    const IntComplex& C = S.C;
    for (auto& [s, f] : S.levels) {
        if (f.weight != S.level_weight(s)) bad.push_back("level " + std::to_string(s) + " has the wrong weight");
        for (auto& [a, M] : f.blocks)
            if (M.rows() != C.rank(a) || M.cols() != C.rank(f.weight - a))
                bad.push_back("level " + std::to_string(s) + " block " + std::to_string(a) + " has the wrong shape");
    }
    if (!bad.empty()) return bad;
    const int top = S.max_level() + 1;
    if (S.kind == StructureKind::Symmetric) {
        // delta phi_s = (-1)^dim (1 + (-1)^s T) phi_{s-1}
        if (!form_boundary(C, S.level(0)).is_zero()) bad.push_back("delta phi_0 != 0");
        for (int s = 1; s <= top; ++s) {
            ChainForm prev = S.level(s - 1);
            ChainForm rhs = form_combine(C, prev, sign_of(S.dim), form_transpose(C, prev), sign_of(S.dim + s));
            if (!(form_boundary(C, S.level(s)) == rhs)) bad.push_back("relation fails at level " + std::to_string(s));
        }
    } else {
        // delta psi_s = (-1)^{s+1} (1 + (-1)^{s+1} T) psi_{s+1}
        for (int s = 0; s <= top; ++s) {
            ChainForm next = S.level(s + 1);
            ChainForm rhs = form_combine(C, next, sign_of(s + 1), form_transpose(C, next), 1);
            if (!(form_boundary(C, S.level(s)) == rhs)) bad.push_back("relation fails at level " + std::to_string(s));
        }
    }
    return bad;
}

inline StructuredComplex make_structured(IntComplex C, StructureKind kind, int dim, std::map<int, ChainForm> levels) {
    StructuredComplex S{std::move(C), kind, dim, std::move(levels)};
    auto bad = structure_violations(S);
    if (!bad.empty()) {
        if (bad.front().find("shape") != std::string::npos || bad.front().find("weight") != std::string::npos)
            throw InvalidInput(bad.front());
        throw Degenerate("not a structure: " + bad.front());
    }
    return S;
}

// phi_0, or (1 + T) psi_0 for a quadratic structure.
inline ChainForm symmetrization(const StructuredComplex& S) {
    ChainForm f = S.level(0);
    if (S.kind == StructureKind::Symmetric) return f;
    return form_combine(S.C, f, 1, form_transpose(S.C, f), 1);
}

// Adjoint of phi_0 as a chain map C -> dual(C, dim).
inline std::map<int, IntMatrix> duality_map(const StructuredComplex& S) {
    ChainForm phi = symmetrization(S);
    std::map<int, IntMatrix> f;
    for (auto& [a, r] : S.C.ranks()) f[a] = phi.block(S.C, a).transpose();
    return f;
}

inline bool poincare_check(const StructuredComplex& S) {
    IntComplex D = dual(S.C, S.dim);
    auto f = duality_map(S);
    if (!is_chain_map(S.C, D, f)) return false;
    return is_acyclic(mapping_cone(S.C, D, f));
}

// ---------------------------------------------------------------------------
// Products

// (f [x] g)((x (x) y), (x' (x) y')) = (-1)^{|y||x'|} f(x, x') g(y, y')
inline ChainForm form_product(const IntComplex& C, const IntComplex& D, const IntComplex& CD, const TensorLayout& L,
                              const ChainForm& f, const ChainForm& g) {
    ChainForm r = zero_form(CD, f.weight + g.weight);
    for (auto& [n, M] : r.blocks) {
        const int m = r.weight - n;
        for (auto& [p, off] : L.blocks.at(n)) {
            const int q = n - p, p2 = f.weight - p, q2 = g.weight - q;
            if (!C.rank(p2) || !D.rank(q2) || p2 + q2 != m) continue;
            const std::size_t off2 = L.offset(m, p2);
            const IntMatrix F = f.block(C, p), G = g.block(D, q);
            const int sign = sign_of(static_cast<long>(q) * p2);
            const std::size_t rq = D.rank(q), rq2 = D.rank(q2);
            for (std::size_t i = 0; i < F.rows(); ++i)
                for (std::size_t i2 = 0; i2 < F.cols(); ++i2) {
                    if (F(i, i2) == 0) continue;
                    for (std::size_t j = 0; j < G.rows(); ++j)
                        for (std::size_t j2 = 0; j2 < G.cols(); ++j2)
                            if (G(j, j2) != 0) M(off + i * rq + j, off2 + i2 * rq2 + j2) += sign * F(i, i2) * G(j, j2);
                }
        }
    }
    return r;
}

// Symmetric (x) quadratic -> quadratic, through the diagonal of the standard
// resolution W: Delta(e_s) = sum_r (-1)^{r(s+1)} e_r (x) T^r e_{s-r}.
inline StructuredComplex tensor_structured(const StructuredComplex& S, const StructuredComplex& Q) {
    if (S.kind != StructureKind::Symmetric || Q.kind != StructureKind::Quadratic)
        throw InvalidInput("tensor_structured expects a symmetric and a quadratic structure");
    IntComplex CD = tensor(S.C, Q.C);
    TensorLayout L = tensor_layout(S.C, Q.C);
    const int dim = S.dim + Q.dim;
    StructuredComplex P{CD, StructureKind::Quadratic, dim, {}};
    const int top = P.max_level();
    for (int j = 0; j <= top; ++j) {
        ChainForm acc = zero_form(CD, dim + j);
        for (int i = 0; i <= S.max_level(); ++i) {
            const int s = i + j;
            if (s > Q.max_level()) break;
            ChainForm phi = S.level(i);
            if (j % 2) phi = form_transpose(S.C, phi);
            ChainForm term = form_product(S.C, Q.C, CD, L, phi, Q.level(s));
            const int sign = sign_of(static_cast<long>(j) * (s + 1) + static_cast<long>(S.dim) * j);
            acc = form_combine(CD, acc, 1, term, sign);
        }
        if (!acc.is_zero()) P.levels[j] = acc;
    }
    auto bad = structure_violations(P);
    if (!bad.empty()) throw Degenerate("product structure fails: " + bad.front());
    return P;
}

// ---------------------------------------------------------------------------
// Linking form of a 2-locally acyclic quadratic complex of dimension 2m+1 on
// the torsion of H_m:  mu([y]) = (psi_1(z, z) + psi_0(dz, z)) / s^2  where
// dz = s y and s is the order of [y].

struct TorsionBasis {
    std::vector<Int> orders;                       // each > 1
    std::vector<std::vector<Int>> reps, lifts;     // y_i in C_m, z_i with d z_i = order_i * y_i
};

inline TorsionBasis torsion_basis(const IntComplex& C, int m) {
    TorsionBasis tb;
    if (!C.rank(m) || !C.rank(m + 1)) return tb;
    SnfResult s = smith_normal_form(C.d(m + 1));
    for (std::size_t i = 0; i < s.rank; ++i) {
        if (s.D(i, i) == 1) continue;
        tb.orders.push_back(s.D(i, i));
        std::vector<Int> y(C.rank(m)), z(C.rank(m + 1));
        for (std::size_t r = 0; r < y.size(); ++r) y[r] = s.U_inv(r, i);
        for (std::size_t r = 0; r < z.size(); ++r) z[r] = s.V(r, i);
        tb.reps.push_back(y);
        tb.lifts.push_back(z);
    }
    return tb;
}

inline Int pair_vectors(const std::vector<Int>& x, const IntMatrix& M, const std::vector<Int>& y) {
    Int acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) acc += x[i] * M(i, j) * y[j];
    }
    return acc;
}

// The formula for one chain-level choice: dz must equal s * y.
inline Dyadic linking_value(const StructuredComplex& S, const std::vector<Int>& z, const Int& s) {
    if (S.kind != StructureKind::Quadratic || S.dim % 2 == 0)
        throw InvalidInput("linking forms need an odd-dimensional quadratic structure");
    if (s <= 0 || mpz_popcount(s.get_mpz_t()) != 1) throw InvalidInput("lift multiplier must be a power of two");
    const int m = (S.dim - 1) / 2;
    std::vector<Int> dz = S.C.d(m + 1).apply(z);
    Int num = pair_vectors(dz, S.level(0).block(S.C, m), z);
    if (S.C.rank(m + 1)) num += pair_vectors(z, S.level(1).block(S.C, m + 1), z);
    unsigned e = static_cast<unsigned>(2 * (mpz_sizeinbase(s.get_mpz_t(), 2) - 1));
    return Dyadic(num, e);
}

inline LinkingForm linking_form(const StructuredComplex& S) {
    if (S.kind != StructureKind::Quadratic) throw InvalidInput("linking forms need a quadratic structure");
    if (S.dim % 2 == 0) return LinkingForm();
    const int m = (S.dim - 1) / 2;
    TorsionBasis tb = torsion_basis(S.C, m);
    std::vector<long> factors;
    for (auto& o : tb.orders) {
        if (mpz_popcount(o.get_mpz_t()) != 1) throw InvalidInput("homology has odd torsion " + o.get_str());
        if (!o.fits_slong_p() || o > kLinkingFormMaxOrder) throw EnumerationLimit("torsion too large");
        factors.push_back(o.get_si());
    }
    return LinkingForm::from_function(factors, [&](const std::vector<long>& a) {
        Int s = 1;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0) {
                Int ord = Int(factors[i]) / gcd_int(Int(a[i]), Int(factors[i]));
                if (ord > s) s = ord;
            }
        std::vector<Int> z(S.C.rank(m + 1));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            Int c = Int(a[i]) * s / factors[i];
            for (std::size_t r = 0; r < z.size(); ++r) z[r] += c * tb.lifts[i][r];
        }
        return linking_value(S, z, s);
    });
}

// Brown-Kervaire invariant of the linking form of the product S (x) Q.
inline int certify_ef(const StructuredComplex& S, const StructuredComplex& Q) {
    StructuredComplex P = tensor_structured(S, Q);
    if (!poincare_check(P)) throw Degenerate("product is not Poincare");
    LinkingForm L = linking_form(P);
    if (!nondegenerate(L)) throw Degenerate("linking form of the product is degenerate");
    return brown_kervaire(L);
}

// ---------------------------------------------------------------------------
// Search for a Poincare structure with small entries. Values are tried in the
// order 0, 1, -1, 2, -2, ... for each unknown entry in turn.

inline std::optional<StructuredComplex> find_structure(const IntComplex& C, StructureKind kind, int dim, long bound) {
    StructuredComplex S{C, kind, dim, {}};
    struct Slot {
        int level, a;
        std::size_t i, j;
    };
    std::vector<Slot> slots;
    for (int s = 0; s <= S.max_level(); ++s) {
        ChainForm f = zero_form(C, S.level_weight(s));
        for (auto& [a, M] : f.blocks)
            for (std::size_t i = 0; i < M.rows(); ++i)
                for (std::size_t j = 0; j < M.cols(); ++j) slots.push_back({s, a, i, j});
        S.levels[s] = f;
    }
    std::vector<long> values{0};
    for (long v = 1; v <= bound; ++v) values.insert(values.end(), {v, -v});
    if (slots.size() > 12) throw EnumerationLimit("too many unknowns for structure search");

    std::vector<std::size_t> digit(slots.size(), 0);
    for (;;) {
        for (std::size_t k = 0; k < slots.size(); ++k)
            S.levels[slots[k].level].blocks[slots[k].a](slots[k].i, slots[k].j) = values[digit[k]];
        if (structure_violations(S).empty() && poincare_check(S)) return S;
        std::size_t p = slots.size();
        while (p-- > 0) {
            if (++digit[p] < values.size()) break;
            digit[p] = 0;
        }
        if (p == static_cast<std::size_t>(-1)) return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Named representatives.

// Z --2--> Z in degrees 0 -> -1: homology Z/2 in degree -1.
inline IntComplex e_complex() { return IntComplex({{0, 1}, {-1, 1}}, {{0, IntMatrix{{2}}}}); }

inline StructuredComplex builtin_E() {
    auto S = find_structure(e_complex(), StructureKind::Symmetric, -1, 2);
    if (!S) throw std::logic_error("no symmetric structure on the E complex");
    return *S;
}

inline StructuredComplex plane_in_degree_one(long a, long b, long c, long d) {
    IntComplex C({{1, 2}}, {});
    return make_structured(C, StructureKind::Quadratic, 2, {{0, ChainForm{2, {{1, IntMatrix{{a, b}, {c, d}}}}}}});
}

// Z^2 in degree 1 with quadratic refinement a^2 + ab + b^2 (Arf invariant 1).
inline StructuredComplex builtin_F() { return plane_in_degree_one(1, 1, 0, 1); }
// Same lattice with refinement ab (Arf invariant 0).
inline StructuredComplex builtin_hyperbolic() { return plane_in_degree_one(0, 1, 0, 0); }

inline StructuredComplex builtin_unit() {
    return make_structured(IntComplex({{0, 1}}, {}), StructureKind::Symmetric, 0,
                           {{0, ChainForm{0, {{0, IntMatrix{{1}}}}}}});
}

inline StructuredComplex builtin_structure(const std::string& name) {
    if (name == "E") return builtin_E();
    if (name == "F") return builtin_F();
    if (name == "hyperbolic") return builtin_hyperbolic();
    if (name == "unit") return builtin_unit();
    throw InvalidInput("unknown structured complex '" + name + "' (expected E, F, hyperbolic or unit)");
}

}  // namespace lspectra
