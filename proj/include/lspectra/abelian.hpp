#pragma once

#include "errors.hpp"
#include "matrix.hpp"
#include "snf.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace lspectra {

// Finitely generated abelian group Z^r + Z/d1 + ... + Z/dk in invariant-factor
// form: every d_i >= 2 and d_i | d_{i+1}. Equal values are isomorphic groups.
class FgAbGroup {
public:
    FgAbGroup() = default;
    explicit FgAbGroup(std::size_t free_rank, std::vector<Int> torsion = {})
        : FgAbGroup(from_parts(free_rank, std::move(torsion))) {}

    // Direct sum of cyclic groups of the given orders; 0 means Z.
    static FgAbGroup from_orders(const std::vector<Int>& orders) {
        std::size_t r = 0;
        std::vector<Int> tors;
        for (const Int& o : orders) {
            if (o == 0)
                ++r;
            else if (abs(o) != 1)
                tors.push_back(abs(o));
        }
        return from_parts(r, std::move(tors));
    }

    static FgAbGroup cyclic(long n) { return from_orders({Int(n)}); }
    static FgAbGroup Z(std::size_t r = 1) { return from_orders(std::vector<Int>(r, Int(0))); }

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }

    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
    bool is_finite() const { return free_rank_ == 0; }
    bool is_free() const { return torsion_.empty(); }

    Int torsion_order() const {
        Int o = 1;
        for (auto& d : torsion_) o *= d;
        return o;
    }

    FgAbGroup torsion_subgroup() const { return from_parts(0, torsion_); }
    FgAbGroup free_part() const { return from_parts(free_rank_, {}); }

    // Generator orders in canonical order: free generators first, then torsion.
    std::vector<Int> orders() const {
        std::vector<Int> o(free_rank_, Int(0));
        o.insert(o.end(), torsion_.begin(), torsion_.end());
        return o;
    }
    std::size_t num_generators() const { return free_rank_ + torsion_.size(); }

    friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

    friend FgAbGroup operator+(const FgAbGroup& a, const FgAbGroup& b) {
        std::vector<Int> o = a.orders(), ob = b.orders();
        o.insert(o.end(), ob.begin(), ob.end());
        return from_orders(o);
    }

    std::string to_string() const {
        if (is_trivial()) return "0";
        std::string s;
        if (free_rank_ == 1)
            s = "Z";
        else if (free_rank_ > 1)
            s = "Z^" + std::to_string(free_rank_);
        for (auto& d : torsion_) {
            if (!s.empty()) s += " + ";
            s += "Z/" + d.get_str();
        }
        return s;
    }

    // Inverse of to_string; also accepts non-canonical sums such as "Z/2 + Z/3".
    static FgAbGroup parse(std::string_view text) {
        std::vector<Int> orders;
        std::string tok;
        auto flush = [&](std::string t) {
            t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
            if (t.empty()) throw InvalidInput("empty summand in group text");
            if (t == "0") return;
            if (t == "Z") {
                orders.emplace_back(0);
                return;
            }
            if (t.rfind("Z^", 0) == 0) {
                long r = parse_count(t.substr(2));
                for (long i = 0; i < r; ++i) orders.emplace_back(0);
                return;
            }
            if (t.rfind("Z/", 0) == 0) {
                long d = parse_count(t.substr(2));
                if (d < 1) throw InvalidInput("cyclic order must be positive: " + t);
                orders.emplace_back(d);
                return;
            }
            throw InvalidInput("unrecognised summand '" + t + "'");
        };
        for (char c : text) {
            if (c == '+') {
                flush(tok);
                tok.clear();
            } else {
                tok += c;
            }
        }
        flush(tok);
        return from_orders(orders);
    }

private:
    static long parse_count(const std::string& s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw InvalidInput("expected a non-negative integer, got '" + s + "'");
        return std::stol(s);
    }

    static FgAbGroup from_parts(std::size_t r, std::vector<Int> tors) {
        FgAbGroup g;
        g.free_rank_ = r;
        if (tors.empty()) return g;
        SnfResult s = smith_normal_form(IntMatrix::diagonal(tors));
        for (auto& d : s.diagonal())
            if (d > 1) g.torsion_.push_back(d);
        return g;
    }

    std::size_t free_rank_ = 0;
    std::vector<Int> torsion_;
};

inline std::ostream& operator<<(std::ostream& os, const FgAbGroup& g) { return os << g.to_string(); }

// Z^m / (column span of A)
inline FgAbGroup cokernel(const IntMatrix& A) {
    SnfResult s = smith_normal_form(A);
    std::vector<Int> orders;
    for (std::size_t i = 0; i < A.rows(); ++i) orders.push_back(i < s.rank ? s.D(i, i) : Int(0));
    return FgAbGroup::from_orders(orders);
}

inline Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Hom(A, B)
inline FgAbGroup hom_group(const FgAbGroup& A, const FgAbGroup& B) {
    std::vector<Int> o(A.free_rank() * B.free_rank(), Int(0));
    for (std::size_t i = 0; i < A.free_rank(); ++i)
        for (auto& e : B.torsion()) o.push_back(e);
    for (auto& d : A.torsion())
        for (auto& e : B.torsion()) o.push_back(gcd_int(d, e));
    return FgAbGroup::from_orders(o);
}

// Ext^1(A, B)
inline FgAbGroup ext_group(const FgAbGroup& A, const FgAbGroup& B) {
    std::vector<Int> o;
    for (auto& d : A.torsion()) {
        for (std::size_t j = 0; j < B.free_rank(); ++j) o.push_back(d);
        for (auto& e : B.torsion()) o.push_back(gcd_int(d, e));
    }
    return FgAbGroup::from_orders(o);
}

// ---------------------------------------------------------------------------
// Homomorphisms between explicitly presented groups.
//
// A presentation is a list of generator orders (0 = infinite order); the group
// is Z^g modulo the diagonal relations. A map A -> B is an integer matrix whose
// column j is the image of generator j of A written in B's generators.

using GenOrders = std::vector<Int>;

inline IntMatrix relation_matrix(const GenOrders& orders) {
    std::size_t nrel = 0;
    for (auto& o : orders)
        if (o != 0) ++nrel;
    IntMatrix R(orders.size(), nrel);
    std::size_t c = 0;
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (orders[i] != 0) R(i, c++) = orders[i];
    return R;
}

inline FgAbGroup presented_group(const GenOrders& orders) { return FgAbGroup::from_orders(orders); }

inline bool is_zero_element(const std::vector<Int>& v, const GenOrders& orders) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (orders[i] == 0) {
            if (v[i] != 0) return false;
        } else if (!mpz_divisible_p(v[i].get_mpz_t(), orders[i].get_mpz_t())) {
            return false;
        }
    }
    return true;
}

// Representative with torsion coordinates reduced into [0, order).
inline std::vector<Int> reduce_element(std::vector<Int> v, const GenOrders& orders) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (orders[i] != 0) mpz_fdiv_r(v[i].get_mpz_t(), v[i].get_mpz_t(), orders[i].get_mpz_t());
    return v;
}

inline bool is_homomorphism(const IntMatrix& F, const GenOrders& src, const GenOrders& tgt) {
    if (F.rows() != tgt.size() || F.cols() != src.size()) return false;
    for (std::size_t j = 0; j < src.size(); ++j) {
        if (src[j] == 0) continue;
        std::vector<Int> col = F.column(j);
        for (auto& v : col) v *= src[j];
        if (!is_zero_element(col, tgt)) return false;
    }
    return true;
}

inline void require_homomorphism(const IntMatrix& F, const GenOrders& src, const GenOrders& tgt) {
    if (F.rows() != tgt.size() || F.cols() != src.size())
        throw InvalidInput("map matrix is " + std::to_string(F.rows()) + "x" + std::to_string(F.cols()) +
                           ", expected " + std::to_string(tgt.size()) + "x" + std::to_string(src.size()));
    if (!is_homomorphism(F, src, tgt)) throw InvalidInput("matrix does not define a homomorphism");
}

inline FgAbGroup map_cokernel(const IntMatrix& F, const GenOrders& src, const GenOrders& tgt) {
    require_homomorphism(F, src, tgt);
    return cokernel(IntMatrix::hcat(F, relation_matrix(tgt)));
}

// Sublattice of Z^{src} mapping into the relations of the target: the full
// preimage of ker f. Returned as a basis in columns.
inline IntMatrix kernel_preimage(const IntMatrix& F, const GenOrders& tgt) {
    IntMatrix R = relation_matrix(tgt);
    IntMatrix K = kernel_basis(IntMatrix::hcat(F, R));
    IntMatrix P(F.cols(), K.cols());
    for (std::size_t i = 0; i < F.cols(); ++i)
        for (std::size_t j = 0; j < K.cols(); ++j) P(i, j) = K(i, j);
    return image_basis(P);
}

// L / (column span of S), where S lies inside the lattice with basis L.
inline FgAbGroup quotient_of_lattices(const IntMatrix& L, const IntMatrix& S) {
    SnfResult s = smith_normal_form(L);
    IntMatrix X(L.cols(), S.cols());
    for (std::size_t j = 0; j < S.cols(); ++j) {
        auto x = solve_integral(s, S.column(j));
        if (!x) throw std::logic_error("sublattice not contained in lattice");
        for (std::size_t i = 0; i < L.cols(); ++i) X(i, j) = (*x)[i];
    }
    return cokernel(X);
}

inline FgAbGroup map_kernel(const IntMatrix& F, const GenOrders& src, const GenOrders& tgt) {
    require_homomorphism(F, src, tgt);
    return quotient_of_lattices(kernel_preimage(F, tgt), relation_matrix(src));
}

inline FgAbGroup map_image(const IntMatrix& F, const GenOrders& src, const GenOrders& tgt) {
    require_homomorphism(F, src, tgt);
    IntMatrix R = relation_matrix(tgt);
    return quotient_of_lattices(image_basis(IntMatrix::hcat(F, R)), R);
}

inline bool is_isomorphism(const IntMatrix& F, const GenOrders& src, const GenOrders& tgt) {
    return map_kernel(F, src, tgt).is_trivial() && map_cokernel(F, src, tgt).is_trivial();
}

// ---------------------------------------------------------------------------

inline constexpr long kDefaultExtensionBound = 1L << 12;

// All middle terms E (up to isomorphism) of extensions 0 -> A -> E -> B -> 0,
// enumerated over the classes of Ext(B, A). The split extension comes first.
inline std::vector<FgAbGroup> extension_candidates(const FgAbGroup& A, const FgAbGroup& B,
                                                   long bound = kDefaultExtensionBound) {
    const Int total = A.torsion_order() * B.torsion_order();
    if (total > bound)
        throw EnumerationLimit("torsion order " + total.get_str() +
                               " exceeds enumeration bound " + std::to_string(bound));
    FgAbGroup ext = ext_group(B, A);
    if (ext.free_rank() != 0 || ext.torsion_order() > bound)
        throw EnumerationLimit("Ext has " + ext.torsion_order().get_str() + " classes, above bound " +
                               std::to_string(bound));

    const GenOrders ao = A.orders(), bo = B.orders();
    const std::size_t ga = ao.size(), gb = bo.size();

    // One class choice c_k in A / b_k A per torsion generator of B.
    std::vector<std::size_t> tors_b;
    for (std::size_t k = 0; k < gb; ++k)
        if (bo[k] != 0) tors_b.push_back(k);
    std::vector<Int> radix;  // flattened (k, i) digit ranges
    for (std::size_t k : tors_b)
        for (std::size_t i = 0; i < ga; ++i) radix.push_back(ao[i] == 0 ? bo[k] : gcd_int(ao[i], bo[k]));

    std::vector<FgAbGroup> out;
    std::vector<Int> digit(radix.size(), Int(0));
    for (;;) {
        // relations: A's own, then b_k * lift_k - c_k
        std::vector<std::vector<Int>> cols;
        for (std::size_t i = 0; i < ga; ++i)
            if (ao[i] != 0) {
                std::vector<Int> c(ga + gb);
                c[i] = ao[i];
                cols.push_back(c);
            }
        for (std::size_t t = 0; t < tors_b.size(); ++t) {
            std::vector<Int> c(ga + gb);
            c[ga + tors_b[t]] = bo[tors_b[t]];
            for (std::size_t i = 0; i < ga; ++i) c[i] = -digit[t * ga + i];
            cols.push_back(c);
        }
        IntMatrix R(ga + gb, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < ga + gb; ++i) R(i, j) = cols[j][i];
        FgAbGroup E = cokernel(R);
        if (std::find(out.begin(), out.end(), E) == out.end()) out.push_back(E);

        std::size_t p = 0;
        while (p < digit.size()) {
            if (++digit[p] < radix[p]) break;
            digit[p] = 0;
            ++p;
        }
        if (p == digit.size()) break;
    }
    return out;
}

}  // namespace lspectra
