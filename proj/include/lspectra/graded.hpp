#pragma once

#include "abelian.hpp"

#include <map>
#include <numeric>
#include <optional>

namespace lspectra {

inline int floor_mod(long a, long p) {
    long r = a % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

// Degreewise groups on a finite window [lo, hi]. A declared period p lets
// lookups outside the window fold back into it; without one they throw.
class GradedGroup {
public:
    GradedGroup() = default;
    GradedGroup(int lo, int hi, std::vector<FgAbGroup> groups, std::optional<int> period = std::nullopt)
        : lo_(lo), hi_(hi), groups_(std::move(groups)), period_(period) {
        if (lo > hi) throw InvalidInput("empty window [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
        if (groups_.size() != static_cast<std::size_t>(hi - lo + 1))
            throw InvalidInput("window has " + std::to_string(hi - lo + 1) + " degrees but " +
                               std::to_string(groups_.size()) + " groups were given");
        if (period_) {
            if (*period_ <= 0) throw InvalidInput("period must be positive");
            for (int n = lo; n + *period_ <= hi; ++n)
                if (!(groups_[n - lo] == groups_[n + *period_ - lo]))
                    throw InvalidInput("declared period " + std::to_string(*period_) + " fails at degree " +
                                       std::to_string(n));
        }
    }

    template <class Fn>
    static GradedGroup generate(int lo, int hi, Fn&& fn, std::optional<int> period = std::nullopt) {
        std::vector<FgAbGroup> g;
        for (int n = lo; n <= hi; ++n) g.push_back(fn(n));
        return GradedGroup(lo, hi, std::move(g), period);
    }

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    std::optional<int> period() const { return period_; }
    const std::vector<FgAbGroup>& groups() const { return groups_; }

    bool covers(int n) const { return period_ || (n >= lo_ && n <= hi_); }

    const FgAbGroup& at(int n) const {
        if (n >= lo_ && n <= hi_) return groups_[n - lo_];
        if (period_) return groups_[floor_mod(static_cast<long>(n) - lo_, *period_)];
        throw OutOfWindow("degree " + std::to_string(n) + " outside window [" + std::to_string(lo_) + "," +
                          std::to_string(hi_) + "] of a non-periodic table");
    }

    GradedGroup restrict(int lo, int hi) const {
        return generate(lo, hi, [&](int n) { return at(n); }, period_);
    }

    friend bool operator==(const GradedGroup&, const GradedGroup&) = default;

private:
    int lo_ = 0, hi_ = 0;
    std::vector<FgAbGroup> groups_{FgAbGroup()};
    std::optional<int> period_;
};

// X[k]: degree n holds X_{n-k}.
inline GradedGroup shift(const GradedGroup& X, int k) {
    return GradedGroup(X.lo() + k, X.hi() + k, X.groups(), X.period());
}

inline GradedGroup direct_sum(const GradedGroup& X, const GradedGroup& Y) {
    int lo, hi;
    std::optional<int> period;
    if (X.period() && Y.period()) {
        lo = std::min(X.lo(), Y.lo());
        hi = std::max(X.hi(), Y.hi());
        period = std::lcm(*X.period(), *Y.period());
    } else if (X.period()) {
        lo = Y.lo(), hi = Y.hi();
    } else if (Y.period()) {
        lo = X.lo(), hi = X.hi();
    } else {
        lo = std::max(X.lo(), Y.lo());
        hi = std::min(X.hi(), Y.hi());
    }
    return GradedGroup::generate(lo, hi, [&](int n) { return X.at(n) + Y.at(n); }, period);
}

// Zero above k (inclusive bound kept).
inline GradedGroup truncate_at_most(const GradedGroup& X, int k) {
    return GradedGroup::generate(X.lo(), X.hi(), [&](int n) { return n <= k ? X.at(n) : FgAbGroup(); });
}
inline GradedGroup truncate_at_least(const GradedGroup& X, int k) {
    return GradedGroup::generate(X.lo(), X.hi(), [&](int n) { return n >= k ? X.at(n) : FgAbGroup(); });
}

// First degree where the two tables differ, if any. Windows must agree.
inline std::optional<int> first_mismatch(const GradedGroup& X, const GradedGroup& Y) {
    if (X.lo() != Y.lo() || X.hi() != Y.hi())
        throw InvalidInput("cannot compare windows [" + std::to_string(X.lo()) + "," + std::to_string(X.hi()) +
                           "] and [" + std::to_string(Y.lo()) + "," + std::to_string(Y.hi()) + "]");
    for (int n = X.lo(); n <= X.hi(); ++n)
        if (!(X.at(n) == Y.at(n))) return n;
    return std::nullopt;
}

inline bool compare_graded(const GradedGroup& X, const GradedGroup& Y) { return !first_mismatch(X, Y); }

// pi_n I(G) = Hom(G_{-n}, Z) + Ext(G_{-n-1}, Z)
inline FgAbGroup anderson_dual_degree(const GradedGroup& G, int n) {
    return G.at(-n).free_part() + G.at(-n - 1).torsion_subgroup();
}

inline GradedGroup anderson_dual(const GradedGroup& G, int lo, int hi) {
    return GradedGroup::generate(lo, hi, [&](int n) { return anderson_dual_degree(G, n); }, G.period());
}

// Largest window the input supports: a periodic table keeps the reflected
// window, otherwise the top degree is lost to the Ext term.
inline GradedGroup anderson_dual(const GradedGroup& G) {
    int lo = -G.hi(), hi = G.period() ? -G.lo() : -G.lo() - 1;
    if (lo > hi) throw OutOfWindow("window too small to dualise");
    return anderson_dual(G, lo, hi);
}

inline bool double_dual_check(const GradedGroup& G) {
    GradedGroup dd = anderson_dual(anderson_dual(G));
    return compare_graded(dd, G.restrict(dd.lo(), dd.hi()));
}

// ---------------------------------------------------------------------------

// Degreewise generator presentations, the carrier for explicit maps.
struct PresentedGraded {
    int lo = 0, hi = -1;
    std::vector<GenOrders> gens;
    std::optional<int> period;

    bool has(int n) const { return n >= lo && n <= hi; }
    const GenOrders& at(int n) const {
        if (!has(n)) throw OutOfWindow("degree " + std::to_string(n) + " outside presented window");
        return gens[n - lo];
    }
    GradedGroup groups() const {
        return GradedGroup::generate(lo, hi, [&](int n) { return presented_group(at(n)); }, period);
    }

    static PresentedGraded canonical(const GradedGroup& G, int lo, int hi) {
        PresentedGraded p{lo, hi, {}, G.period()};
        for (int n = lo; n <= hi; ++n) p.gens.push_back(G.at(n).orders());
        return p;
    }
};

// Map of degree s: component n sends source_n to target_{n+s}.
struct GradedMap {
    PresentedGraded source, target;
    int degree_shift = 0;
    std::map<int, IntMatrix> components;

    GradedMap() = default;
    GradedMap(PresentedGraded src, PresentedGraded tgt, int s, std::map<int, IntMatrix> comps)
        : source(std::move(src)), target(std::move(tgt)), degree_shift(s), components(std::move(comps)) {
        for (auto& [n, M] : components) {
            if (!source.has(n) || !target.has(n + s))
                throw OutOfWindow("map component at degree " + std::to_string(n) + " leaves the window");
            require_homomorphism(M, source.at(n), target.at(n + s));
        }
    }

    bool has(int n) const { return components.count(n) != 0; }
    const IntMatrix& at(int n) const {
        auto it = components.find(n);
        if (it == components.end()) throw OutOfWindow("no map component at degree " + std::to_string(n));
        return it->second;
    }
    FgAbGroup kernel(int n) const { return map_kernel(at(n), source.at(n), target.at(n + degree_shift)); }
    FgAbGroup cokernel(int n) const { return map_cokernel(at(n), source.at(n), target.at(n + degree_shift)); }
    bool is_iso(int n) const { return is_isomorphism(at(n), source.at(n), target.at(n + degree_shift)); }
};

// Multiplication by an integer on a table, over degrees [lo, hi].
inline GradedMap scalar_map(const GradedGroup& G, const Int& c, int lo, int hi) {
    PresentedGraded p = PresentedGraded::canonical(G, lo, hi);
    std::map<int, IntMatrix> comps;
    for (int n = lo; n <= hi; ++n) {
        std::size_t g = p.at(n).size();
        comps[n] = c * IntMatrix::identity(g);
    }
    return GradedMap(p, p, 0, std::move(comps));
}

// Degrees (of the middle term) where im f != ker g. Composable maps only.
inline std::vector<int> exactness_failures(const GradedMap& f, const GradedMap& g) {
    std::vector<int> bad;
    for (auto& [m, G] : g.components) {
        int fn = m - f.degree_shift;
        if (!f.has(fn)) continue;
        const IntMatrix& F = f.at(fn);
        const GenOrders& B = g.source.at(m);
        if (!(f.target.at(m) == B)) throw InvalidInput("maps are not composable at degree " + std::to_string(m));
        const GenOrders& C = g.target.at(m + g.degree_shift);

        bool ok = true;
        IntMatrix GF = G * F;
        for (std::size_t j = 0; j < GF.cols() && ok; ++j)
            if (!is_zero_element(GF.column(j), C)) ok = false;
        if (ok) {
            IntMatrix P = kernel_preimage(G, C);
            SnfResult im = smith_normal_form(IntMatrix::hcat(F, relation_matrix(B)));
            for (std::size_t j = 0; j < P.cols() && ok; ++j)
                if (!in_column_span(im, P.column(j))) ok = false;
        }
        if (!ok) bad.push_back(m);
    }
    return bad;
}

inline bool check_exact(const GradedMap& f, const GradedMap& g) { return exactness_failures(f, g).empty(); }

// ---------------------------------------------------------------------------

// 0 -> sub -> E -> quotient -> 0 with E known only up to the candidate list.
struct SesDatum {
    FgAbGroup sub, quotient;
    std::vector<FgAbGroup> candidates;
    std::optional<FgAbGroup> resolved;

    static SesDatum make(FgAbGroup sub, FgAbGroup quotient) {
        SesDatum d{std::move(sub), std::move(quotient), {}, std::nullopt};
        d.candidates = extension_candidates(d.sub, d.quotient);
        if (d.candidates.size() == 1) d.resolved = d.candidates.front();
        return d;
    }

    // Keep the candidates whose torsion subgroup is the given group.
    SesDatum with_torsion(const FgAbGroup& torsion) const {
        SesDatum d = *this;
        d.candidates.clear();
        for (auto& c : candidates)
            if (c.torsion_subgroup() == torsion) d.candidates.push_back(c);
        d.resolved = d.candidates.size() == 1 ? std::optional<FgAbGroup>(d.candidates.front()) : std::nullopt;
        return d;
    }
};

// Homotopy of the cofibre C of mul : M[s] -> M, degree by degree:
//   0 -> coker(M_{n-s} -> M_n) -> pi_n C -> ker(M_{n-1-s} -> M_{n-1}) -> 0
inline std::map<int, SesDatum> cofibre_of_mult(const GradedMap& mul) {
    std::map<int, SesDatum> out;
    const int s = mul.degree_shift;
    for (int n = mul.target.lo; n <= mul.target.hi; ++n) {
        if (!mul.has(n - s) || !mul.has(n - 1 - s)) continue;
        out.emplace(n, SesDatum::make(mul.cokernel(n - s), mul.kernel(n - 1 - s)));
    }
    return out;
}

inline GradedGroup resolved_table(const std::map<int, SesDatum>& data) {
    if (data.empty()) throw InvalidInput("no cofibre data");
    int lo = data.begin()->first, hi = data.rbegin()->first;
    return GradedGroup::generate(lo, hi, [&](int n) {
        auto it = data.find(n);
        if (it == data.end()) throw OutOfWindow("cofibre data missing degree " + std::to_string(n));
        if (!it->second.resolved)
            throw InvalidInput("extension at degree " + std::to_string(n) + " is not determined by the sequence");
        return *it->second.resolved;
    });
}

// G / c: the cofibre of multiplication by c, on G's window minus the bottom
// degree (or all of it when G is periodic).
inline GradedGroup quotient_by(const GradedGroup& G, long c) {
    int lo = G.period() ? G.lo() - 1 : G.lo();
    GradedGroup r = resolved_table(cofibre_of_mult(scalar_map(G, Int(c), lo, G.hi())));
    if (G.period()) return GradedGroup(r.lo(), r.hi(), r.groups(), G.period());
    return r;
}

// Product over one period of Ext(G_i, G_{i+1}).
inline FgAbGroup torsor_count(const GradedGroup& G, int period) {
    if (period <= 0) throw InvalidInput("period must be positive");
    if (!G.period() && G.hi() - G.lo() < period)
        throw InvalidInput("window [" + std::to_string(G.lo()) + "," + std::to_string(G.hi()) +
                           "] does not contain a full period plus one degree");
    FgAbGroup total;
    for (int i = G.lo(); i < G.lo() + period; ++i) total = total + ext_group(G.at(i), G.at(i + 1));
    return total;
}

}  // namespace lspectra
