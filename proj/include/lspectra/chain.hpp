#pragma once

#include "abelian.hpp"

#include <map>
#include <set>

namespace lspectra {

// Bounded chain complex of finitely generated free abelian groups,
// homologically graded: d_n maps C_n to C_{n-1}.
class IntComplex {
public:
    IntComplex() = default;
    IntComplex(std::map<int, std::size_t> ranks, std::map<int, IntMatrix> differentials)
        : ranks_(std::move(ranks)), d_(std::move(differentials)) {
        for (auto it = ranks_.begin(); it != ranks_.end();)
            it = it->second == 0 ? ranks_.erase(it) : std::next(it);
        for (auto it = d_.begin(); it != d_.end();) {
            const int n = it->first;
            const IntMatrix& M = it->second;
            if (M.rows() != rank(n - 1) || M.cols() != rank(n))
                throw InvalidInput("d_" + std::to_string(n) + " has shape " + std::to_string(M.rows()) + "x" +
                                   std::to_string(M.cols()) + ", expected " + std::to_string(rank(n - 1)) + "x" +
                                   std::to_string(rank(n)));
            it = M.is_zero() ? d_.erase(it) : std::next(it);
        }
        for (auto& [n, M] : d_) {
            auto below = d_.find(n - 1);
            if (below != d_.end() && !(below->second * M).is_zero())
                throw Degenerate("d_" + std::to_string(n - 1) + " * d_" + std::to_string(n) + " != 0");
        }
    }

    std::size_t rank(int n) const {
        auto it = ranks_.find(n);
        return it == ranks_.end() ? 0 : it->second;
    }
    IntMatrix d(int n) const {
        auto it = d_.find(n);
        return it == d_.end() ? IntMatrix(rank(n - 1), rank(n)) : it->second;
    }
    const std::map<int, std::size_t>& ranks() const { return ranks_; }
    const std::map<int, IntMatrix>& differentials() const { return d_; }

    bool is_zero() const { return ranks_.empty(); }
    int lo() const { return ranks_.empty() ? 0 : ranks_.begin()->first; }
    int hi() const { return ranks_.empty() ? -1 : ranks_.rbegin()->first; }

    friend bool operator==(const IntComplex&, const IntComplex&) = default;

private:
    std::map<int, std::size_t> ranks_;
    std::map<int, IntMatrix> d_;
};

inline FgAbGroup homology(const IntComplex& C, int n) {
    const std::size_t r = C.rank(n);
    if (r == 0) return FgAbGroup();
    const std::size_t cycles = r - smith_normal_form(C.d(n)).rank;
    SnfResult in = smith_normal_form(C.d(n + 1));
    std::vector<Int> orders(cycles - in.rank, Int(0));
    for (std::size_t i = 0; i < in.rank; ++i) orders.push_back(in.D(i, i));
    return FgAbGroup::from_orders(orders);
}

inline bool is_acyclic(const IntComplex& C) {
    for (auto& [n, r] : C.ranks())
        if (!homology(C, n).is_trivial()) return false;
    return true;
}

inline bool is_power_of_two(const Int& v) { return v > 0 && mpz_popcount(v.get_mpz_t()) == 1; }

// Homology is finite of 2-power order in every degree.
inline bool acyclic_after_inverting_two(const IntComplex& C) {
    for (auto& [n, r] : C.ranks()) {
        FgAbGroup h = homology(C, n);
        if (!h.is_finite() || !is_power_of_two(h.torsion_order())) return false;
    }
    return true;
}

// Basis of (C (x) D)_n: blocks C_p (x) D_{n-p} in increasing p, each block
// ordered with the C index major.
struct TensorLayout {
    std::map<int, std::vector<std::pair<int, std::size_t>>> blocks;  // n -> (p, offset)

    std::size_t offset(int n, int p) const {
        for (auto& [q, off] : blocks.at(n))
            if (q == p) return off;
        throw std::logic_error("missing tensor block");
    }
};

inline TensorLayout tensor_layout(const IntComplex& C, const IntComplex& D) {
    TensorLayout L;
    for (auto& [p, rc] : C.ranks())
        for (auto& [q, rd] : D.ranks()) L.blocks[p + q];
    for (auto& [n, v] : L.blocks) {
        std::size_t off = 0;
        for (auto& [p, rc] : C.ranks()) {
            std::size_t rd = D.rank(n - p);
            if (rd == 0) continue;
            v.emplace_back(p, off);
            off += rc * rd;
        }
    }
    return L;
}

// d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy
inline IntComplex tensor(const IntComplex& C, const IntComplex& D) {
    TensorLayout L = tensor_layout(C, D);
    std::map<int, std::size_t> ranks;
    for (auto& [n, blocks] : L.blocks) {
        std::size_t r = 0;
        for (auto& [p, off] : blocks) r += C.rank(p) * D.rank(n - p);
        ranks[n] = r;
    }
    auto rank_of = [&](int n) { return ranks.count(n) ? ranks[n] : std::size_t(0); };
    std::map<int, IntMatrix> diffs;
    for (auto& [n, blocks] : L.blocks) {
        if (!rank_of(n - 1)) continue;
        IntMatrix M(rank_of(n - 1), rank_of(n));
        for (auto& [p, off] : blocks) {
            const int q = n - p;
            const std::size_t rc = C.rank(p), rd = D.rank(q);
            const int sign = (p % 2 == 0) ? 1 : -1;
            if (C.rank(p - 1)) {
                IntMatrix dc = C.d(p);
                std::size_t o2 = L.offset(n - 1, p - 1);
                for (std::size_t i = 0; i < rc; ++i)
                    for (std::size_t j = 0; j < rd; ++j)
                        for (std::size_t i2 = 0; i2 < C.rank(p - 1); ++i2)
                            if (dc(i2, i) != 0) M(o2 + i2 * rd + j, off + i * rd + j) += dc(i2, i);
            }
            if (D.rank(q - 1)) {
                IntMatrix dd = D.d(q);
                std::size_t o2 = L.offset(n - 1, p);
                const std::size_t rd2 = D.rank(q - 1);
                for (std::size_t i = 0; i < rc; ++i)
                    for (std::size_t j = 0; j < rd; ++j)
                        for (std::size_t j2 = 0; j2 < rd2; ++j2)
                            if (dd(j2, j) != 0) M(o2 + i * rd2 + j2, off + i * rd + j) += sign * dd(j2, j);
            }
        }
        diffs[n] = M;
    }
    return IntComplex(ranks, diffs);
}

// Degree k holds Hom(C_{dim-k}, Z); the differential in degree k is
// (-1)^{k+1} (d_{dim-k+1})^T.
inline IntComplex dual(const IntComplex& C, int dim) {
    std::map<int, std::size_t> ranks;
    for (auto& [n, r] : C.ranks()) ranks[dim - n] = r;
    std::map<int, IntMatrix> diffs;
    for (auto& [n, M] : C.differentials()) {
        const int k = dim - n + 1;
        diffs[k] = ((k + 1) % 2 == 0 ? Int(1) : Int(-1)) * M.transpose();
    }
    return IntComplex(ranks, diffs);
}

// Cone(f)_n = A_{n-1} + B_n with d(a, b) = (-d a, f a + d b).
inline IntComplex mapping_cone(const IntComplex& A, const IntComplex& B, const std::map<int, IntMatrix>& f) {
    std::map<int, std::size_t> ranks;
    for (auto& [n, r] : A.ranks()) ranks[n + 1] += r;
    for (auto& [n, r] : B.ranks()) ranks[n] += r;
    std::map<int, IntMatrix> diffs;
    for (auto& [n, r] : ranks) {
        const std::size_t a1 = A.rank(n - 1), b0 = B.rank(n), a2 = A.rank(n - 2), b1 = B.rank(n - 1);
        if (a2 + b1 == 0) continue;
        IntMatrix M(a2 + b1, a1 + b0);
        IntMatrix da = A.d(n - 1), db = B.d(n);
        for (std::size_t i = 0; i < a2; ++i)
            for (std::size_t j = 0; j < a1; ++j) M(i, j) = -da(i, j);
        auto it = f.find(n - 1);
        if (it != f.end() && a1)
            for (std::size_t i = 0; i < b1; ++i)
                for (std::size_t j = 0; j < a1; ++j) M(a2 + i, j) = it->second(i, j);
        for (std::size_t i = 0; i < b1; ++i)
            for (std::size_t j = 0; j < b0; ++j) M(a2 + i, a1 + j) = db(i, j);
        diffs[n] = M;
    }
    return IntComplex(ranks, diffs);
}

// f_{n-1} d_n == d_n f_n for every n.
inline bool is_chain_map(const IntComplex& A, const IntComplex& B, const std::map<int, IntMatrix>& f) {
    auto comp = [&](int n) {
        auto it = f.find(n);
        return it == f.end() ? IntMatrix(B.rank(n), A.rank(n)) : it->second;
    };
    for (auto& [n, M] : f)
        if (M.rows() != B.rank(n) || M.cols() != A.rank(n)) return false;
    std::set<int> degrees;
    for (auto& [n, r] : A.ranks()) degrees.insert(n);
    for (int n : degrees)
        if (!(comp(n - 1) * A.d(n) == B.d(n) * comp(n))) return false;
    return true;
}

}  // namespace lspectra
