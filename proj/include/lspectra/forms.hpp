#pragma once

#include "abelian.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>

namespace lspectra {

// ---------------------------------------------------------------------------
// Symmetric bilinear forms over Z

using SymForm = IntMatrix;

// Exact congruence diagonalisation over Q. A zero pivot with a nonzero
// off-diagonal entry is fixed by adding one basis vector to another.
inline int signature(const SymForm& A) {
    const std::size_t n = A.rows();
    if (A.cols() != n) throw InvalidInput("form matrix must be square");
    if (!(A.transpose() == A)) throw InvalidInput("form matrix must be symmetric");
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = mpq_class(A(i, j));

    auto swap_idx = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        for (auto& row : a) std::swap(row[i], row[j]);
    };
    int sig = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][p] == 0) ++p;
        if (p == n) {
            std::optional<std::pair<std::size_t, std::size_t>> off;
            for (std::size_t i = k; i < n && !off; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (a[i][j] != 0) {
                        off = {i, j};
                        break;
                    }
            if (!off) throw Degenerate("form is singular");
            auto [i, j] = *off;
            for (std::size_t c = 0; c < n; ++c) a[i][c] += a[j][c];
            for (std::size_t r = 0; r < n; ++r) a[r][i] += a[r][j];
            p = i;
        }
        swap_idx(k, p);
        // Schur complement of the pivot
        for (std::size_t r = k + 1; r < n; ++r)
            for (std::size_t c = k + 1; c < n; ++c) a[r][c] -= a[r][k] * a[k][c] / a[k][k];
        for (std::size_t r = k + 1; r < n; ++r) a[r][k] = a[k][r] = 0;
        sig += sgn(a[k][k]);
    }
    return sig;
}

inline SymForm e8_form() {
    // Cartan matrix of the E8 root system
    return SymForm{{2, -1, 0, 0, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0, 0, 0}, {0, -1, 2, -1, 0, 0, 0, -1},
                   {0, 0, -1, 2, -1, 0, 0, 0},  {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
                   {0, 0, 0, 0, 0, -1, 2, 0},   {0, 0, -1, 0, 0, 0, 0, 2}};
}

// ---------------------------------------------------------------------------
// Quadratic forms over F2: q(v) = v^T M v with M upper triangular.

struct F2QuadForm {
    std::size_t dim = 0;
    std::vector<std::vector<int>> M;

    F2QuadForm() = default;
    explicit F2QuadForm(std::vector<std::vector<int>> m) : dim(m.size()), M(std::move(m)) {
        for (std::size_t i = 0; i < dim; ++i) {
            if (M[i].size() != dim) throw InvalidInput("F2 form matrix must be square");
            for (std::size_t j = 0; j < dim; ++j) {
                M[i][j] &= 1;
                if (j < i && M[i][j]) throw InvalidInput("F2 form matrix must be upper triangular");
            }
        }
    }

    int q(std::uint64_t v) const {
        int s = 0;
        for (std::size_t i = 0; i < dim; ++i)
            if (v >> i & 1)
                for (std::size_t j = i; j < dim; ++j)
                    if ((v >> j & 1) && M[i][j]) s ^= 1;
        return s;
    }

    // Polarisation M + M^T has full rank over F2.
    bool nondegenerate() const {
        std::vector<std::uint64_t> rows(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                if (i != j && ((M[i][j] ^ M[j][i]) & 1)) rows[i] |= std::uint64_t(1) << j;
        std::size_t rank = 0;
        for (std::size_t c = 0; c < dim; ++c) {
            std::size_t p = rank;
            while (p < dim && !(rows[p] >> c & 1)) ++p;
            if (p == dim) continue;
            std::swap(rows[p], rows[rank]);
            for (std::size_t r = 0; r < dim; ++r)
                if (r != rank && (rows[r] >> c & 1)) rows[r] ^= rows[rank];
            ++rank;
        }
        return rank == dim;
    }
};

// The value q takes on the majority of vectors.
inline int arf(const F2QuadForm& f) {
    if (f.dim % 2) throw Degenerate("Arf invariant needs even dimension");
    if (f.dim > 30) throw EnumerationLimit("F2 form too large to enumerate");
    if (!f.nondegenerate()) throw Degenerate("F2 form is degenerate");
    std::uint64_t ones = 0, total = std::uint64_t(1) << f.dim;
    for (std::uint64_t v = 0; v < total; ++v) ones += f.q(v);
    return 2 * ones > total ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Quadratic linking forms on finite abelian 2-groups.

// Element of Q/Z with 2-power denominator: num / 2^exp in lowest terms.
struct Dyadic {
    Int num = 0;
    unsigned exp = 0;

    Dyadic() = default;
    Dyadic(Int n, unsigned e) : num(std::move(n)), exp(e) { normalise(); }

    void normalise() {
        Int den = Int(1) << exp;
        mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (num == 0) {
            exp = 0;
            return;
        }
        unsigned tz = static_cast<unsigned>(mpz_scan1(num.get_mpz_t(), 0));
        tz = std::min(tz, exp);
        num >>= tz;
        exp -= tz;
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        unsigned e = std::max(a.exp, b.exp);
        return Dyadic((a.num << (e - a.exp)) + (b.num << (e - b.exp)), e);
    }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
        unsigned e = std::max(a.exp, b.exp);
        return Dyadic((a.num << (e - a.exp)) - (b.num << (e - b.exp)), e);
    }
    friend Dyadic operator*(const Int& r, const Dyadic& a) { return Dyadic(r * a.num, a.exp); }
    friend bool operator==(const Dyadic&, const Dyadic&) = default;
    bool is_zero() const { return num == 0; }

    std::string to_string() const {
        if (exp == 0) return "0";
        return num.get_str() + "/" + Int(Int(1) << exp).get_str();
    }

    // Accepts "0", "n/d" with d a power of two, and "n/2^m".
    static Dyadic parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Dyadic(Int(s), 0);
            Int n(s.substr(0, slash));
            std::string den = s.substr(slash + 1);
            if (den.rfind("2^", 0) == 0) return Dyadic(n, static_cast<unsigned>(std::stoul(den.substr(2))));
            Int d(den);
            if (d <= 0 || mpz_popcount(d.get_mpz_t()) != 1)
                throw InvalidInput("denominator must be a power of two: " + s);
            return Dyadic(n, static_cast<unsigned>(mpz_sizeinbase(d.get_mpz_t(), 2) - 1));
        } catch (const std::invalid_argument&) {
            throw InvalidInput("bad dyadic value '" + s + "'");
        }
    }
};

inline constexpr long kLinkingFormMaxOrder = 1L << 12;

// q on G = Z/f_1 + ... + Z/f_k, stored for every element in mixed radix
// (first coordinate fastest). Values are also kept as integers over a common
// denominator 2^E so the exhaustive checks stay cheap.
class LinkingForm {
public:
    LinkingForm() : values_{Dyadic()} { index_values(); }
    LinkingForm(std::vector<long> factors, std::vector<Dyadic> values)
        : factors_(std::move(factors)), values_(std::move(values)) {
        long n = 1;
        for (long f : factors_) {
            if (f < 2 || (f & (f - 1))) throw InvalidInput("linking form factors must be powers of two >= 2");
            n *= f;
            if (n > kLinkingFormMaxOrder) throw EnumerationLimit("linking form group too large");
        }
        if (static_cast<long>(values_.size()) != n)
            throw InvalidInput("expected " + std::to_string(n) + " values, got " + std::to_string(values_.size()));
        index_values();
    }

    template <class Fn>
    static LinkingForm from_function(std::vector<long> factors, Fn&& q) {
        long n = 1;
        for (long f : factors) n *= f;
        std::vector<Dyadic> v;
        std::vector<long> x(factors.size(), 0);
        for (long i = 0; i < n; ++i) {
            v.push_back(q(x));
            for (std::size_t k = 0; k < x.size(); ++k) {
                if (++x[k] < factors[k]) break;
                x[k] = 0;
            }
        }
        return LinkingForm(std::move(factors), std::move(v));
    }

    const std::vector<long>& factors() const { return factors_; }
    long order() const { return static_cast<long>(values_.size()); }
    int log2_order() const {
        int e = 0;
        for (long n = order(); n > 1; n >>= 1) ++e;
        return e;
    }

    std::vector<long> element(long idx) const {
        std::vector<long> x(factors_.size());
        for (std::size_t k = 0; k < factors_.size(); ++k) {
            x[k] = idx % factors_[k];
            idx /= factors_[k];
        }
        return x;
    }
    long index(const std::vector<long>& x) const {
        long idx = 0;
        for (std::size_t k = factors_.size(); k-- > 0;) {
            long v = ((x[k] % factors_[k]) + factors_[k]) % factors_[k];
            idx = idx * factors_[k] + v;
        }
        return idx;
    }
    long add(long i, long j) const {
        long r = 0, stride = 1;
        for (long f : factors_) {
            r += ((i % f + j % f) % f) * stride;
            i /= f, j /= f, stride *= f;
        }
        return r;
    }
    long scale(long i, long c) const {
        long r = 0, stride = 1;
        for (long f : factors_) {
            long d = ((i % f) * (c % f)) % f;
            r += (d < 0 ? d + f : d) * stride;
            i /= f, stride *= f;
        }
        return r;
    }
    long generator(std::size_t k) const {
        std::vector<long> x(factors_.size(), 0);
        x[k] = 1;
        return index(x);
    }

    const Dyadic& q(long i) const { return values_[i]; }
    const Dyadic& q(const std::vector<long>& x) const { return values_[index(x)]; }
    Dyadic b(long i, long j) const { return q(add(i, j)) - q(i) - q(j); }
    const std::vector<Dyadic>& values() const { return values_; }

    // q(i) = raw(i) / 2^raw_exp()
    std::uint64_t raw(long i) const { return raw_[i]; }
    unsigned raw_exp() const { return exp_; }
    std::uint64_t raw_b(long i, long j) const { return (raw_[add(i, j)] - raw_[i] - raw_[j]) & mask(); }
    std::uint64_t mask() const { return exp_ == 0 ? 0 : (~std::uint64_t(0)) >> (64 - exp_); }

    unsigned max_exp() const { return exp_; }

    friend bool operator==(const LinkingForm& a, const LinkingForm& b) {
        return a.factors_ == b.factors_ && a.values_ == b.values_;
    }

private:
    void index_values() {
        exp_ = 0;
        for (auto& v : values_) exp_ = std::max(exp_, v.exp);
        if (exp_ > 62) throw InvalidInput("linking form denominators above 2^62 are not supported");
        raw_.clear();
        for (auto& v : values_) raw_.push_back(v.num.get_ui() << (exp_ - v.exp));
    }

    std::vector<long> factors_;
    std::vector<Dyadic> values_;
    std::vector<std::uint64_t> raw_;
    unsigned exp_ = 0;
};

inline LinkingForm orthogonal_sum(const LinkingForm& A, const LinkingForm& B) {
    std::vector<long> f = A.factors();
    f.insert(f.end(), B.factors().begin(), B.factors().end());
    const std::size_t ka = A.factors().size();
    return LinkingForm::from_function(f, [&](const std::vector<long>& x) {
        std::vector<long> xa(x.begin(), x.begin() + ka), xb(x.begin() + ka, x.end());
        return A.q(xa) + B.q(xb);
    });
}

// q(r x) = r^2 q(x) for the given scalars, and b(x, y) = q(x+y) - q(x) - q(y)
// additive in x (checked on generators, which suffices by induction).
inline bool check_quadratic(const LinkingForm& L, const std::vector<long>& scalars) {
    const std::uint64_t m = L.mask();
    for (long x = 0; x < L.order(); ++x)
        for (long r : scalars) {
            std::uint64_t rr = static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(r);
            if (L.raw(L.scale(x, r)) != ((rr * L.raw(x)) & m)) return false;
        }
    for (std::size_t k = 0; k < L.factors().size(); ++k) {
        const long g = L.generator(k);
        for (long y = 0; y < L.order(); ++y)
            for (long z = 0; z < L.order(); ++z)
                if (L.raw_b(L.add(g, y), z) != ((L.raw_b(g, z) + L.raw_b(y, z)) & m)) return false;
    }
    return true;
}

// The adjoint x -> b(x, -) is injective.
inline bool nondegenerate(const LinkingForm& L) {
    for (long x = 1; x < L.order(); ++x) {
        bool seen = false;
        for (long y = 0; y < L.order() && !seen; ++y) seen = L.raw_b(x, y) != 0;
        if (!seen) return false;
    }
    return true;
}

// Second Witt-group invariant: parity of log2 |G|.
inline int witt_parity(const LinkingForm& L) { return L.log2_order() % 2; }

// ---------------------------------------------------------------------------
// Exact arithmetic in Z[zeta_N], N = 2^m >= 8, basis 1, zeta, ..., zeta^{N/2-1}.

class Cyclotomic2 {
public:
    explicit Cyclotomic2(unsigned m) : m_(m), c_(std::size_t(1) << (m - 1)) {
        if (m < 3) throw InvalidInput("cyclotomic conductor must be at least 8");
    }

    static Cyclotomic2 zeta_power(unsigned m, long k) {
        Cyclotomic2 z(m);
        z.add_zeta(k, 1);
        return z;
    }

    long conductor() const { return 2L * static_cast<long>(c_.size()); }
    const std::vector<Int>& coeffs() const { return c_; }

    void add_zeta(long k, const Int& c) {
        const long N = conductor(), half = N / 2;
        long r = ((k % N) + N) % N;
        if (r >= half)
            c_[r - half] -= c;
        else
            c_[r] += c;
    }

    friend Cyclotomic2 operator*(const Cyclotomic2& a, const Cyclotomic2& b) {
        Cyclotomic2 r(a.m_);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                if (b.c_[j] != 0) r.add_zeta(static_cast<long>(i + j), a.c_[i] * b.c_[j]);
        }
        return r;
    }
    friend Cyclotomic2 operator*(const Int& s, Cyclotomic2 a) {
        for (auto& v : a.c_) v *= s;
        return a;
    }
    friend Cyclotomic2 operator+(Cyclotomic2 a, const Cyclotomic2& b) {
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
        return a;
    }
    friend bool operator==(const Cyclotomic2&, const Cyclotomic2&) = default;

    // Complex conjugation zeta -> zeta^{-1}.
    Cyclotomic2 conj() const {
        Cyclotomic2 r(m_);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) r.add_zeta(-static_cast<long>(i), c_[i]);
        return r;
    }

    bool is_integer(const Int& v) const {
        if (c_[0] != v) return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

private:
    unsigned m_;
    std::vector<Int> c_;
};

struct GaussSum {
    Cyclotomic2 value;
    int beta;
};

// sum over x of exp(2 pi i q(x)), written as sqrt|G| * zeta_8^beta.
inline GaussSum gauss_sum(const LinkingForm& L) {
    const unsigned m = std::max(3u, L.max_exp());
    const long N = 1L << m;
    Cyclotomic2 sum(m);
    for (const Dyadic& v : L.values()) {
        long k = v.num.get_si() << (m - v.exp);
        sum.add_zeta(k, 1);
    }
    if (!(sum * sum.conj()).is_integer(Int(L.order())))
        throw Degenerate("Gauss sum has the wrong norm; the form is degenerate");

    const int n = L.log2_order();
    const long e8 = N / 8;
    for (int beta = 0; beta < 8; ++beta) {
        Cyclotomic2 target(m);
        if (n % 2 == 0) {
            target.add_zeta(beta * e8, Int(1) << (n / 2));
        } else {
            // sqrt(2) = zeta_8 + zeta_8^{-1}
            target.add_zeta((beta + 1) * e8, Int(1) << (n / 2));
            target.add_zeta((beta - 1) * e8, Int(1) << (n / 2));
        }
        if (target == sum) return {sum, beta};
    }
    throw Degenerate("Gauss sum is not sqrt|G| times an eighth root of unity");
}

inline int brown_kervaire(const LinkingForm& L) { return gauss_sum(L).beta; }

}  // namespace lspectra
