#pragma once

#include "matrix.hpp"

#include <algorithm>
#include <optional>

namespace lspectra {

// U * A * V == D with D diagonal, d_1 | d_2 | ..., all d_i >= 0.
// U_inv and V_inv are carried along so callers can change bases both ways.
struct SnfResult {
    IntMatrix U, D, V;
    IntMatrix U_inv, V_inv;
    std::size_t rank = 0;

    std::vector<Int> diagonal() const {
        std::vector<Int> d;
        for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
        return d;
    }
};

namespace detail {

struct SnfWork {
    IntMatrix D, U, V, Ui, Vi;

    void row_add(std::size_t i, std::size_t k, const Int& c) {
        D.add_row(i, k, c);
        U.add_row(i, k, c);
        Ui.add_col(k, i, -c);
    }
    void col_add(std::size_t j, std::size_t k, const Int& c) {
        D.add_col(j, k, c);
        V.add_col(j, k, c);
        Vi.add_row(k, j, -c);
    }
    void row_swap(std::size_t i, std::size_t k) {
        D.swap_rows(i, k);
        U.swap_rows(i, k);
        Ui.swap_cols(i, k);
    }
    void col_swap(std::size_t j, std::size_t k) {
        D.swap_cols(j, k);
        V.swap_cols(j, k);
        Vi.swap_rows(j, k);
    }
    void row_neg(std::size_t i) {
        D.negate_row(i);
        U.negate_row(i);
        Ui.negate_col(i);
    }
};

}  // namespace detail

inline SnfResult smith_normal_form(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    detail::SnfWork w{A, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(m),
                      IntMatrix::identity(n)};
    IntMatrix& D = w.D;
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        for (;;) {
            // pivot on the entry of least absolute value
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D(i, j) != 0 && (!best || abs(D(i, j)) < abs(D(best->first, best->second))))
                        best = {i, j};
            if (!best) goto finished;
            w.row_swap(t, best->first);
            w.col_swap(t, best->second);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                if (q != 0) w.row_add(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                if (q != 0) w.col_add(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                        w.row_add(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D(t, t) < 0) w.row_neg(t);
    }
finished:
    SnfResult r{std::move(w.U), std::move(w.D), std::move(w.V), std::move(w.Ui), std::move(w.Vi), t};
    return r;
}

// Columns spanning the kernel of A (a basis of the saturated lattice).
inline IntMatrix kernel_basis(const IntMatrix& A) {
    SnfResult s = smith_normal_form(A);
    const std::size_t n = A.cols();
    IntMatrix K(n, n - s.rank);
    for (std::size_t j = s.rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) K(i, j - s.rank) = s.V(i, j);
    return K;
}

// Columns forming a basis of the column span of A.
inline IntMatrix image_basis(const IntMatrix& A) {
    SnfResult s = smith_normal_form(A);
    const std::size_t m = A.rows();
    IntMatrix B(m, s.rank);
    for (std::size_t j = 0; j < s.rank; ++j)
        for (std::size_t i = 0; i < m; ++i) B(i, j) = s.U_inv(i, j) * s.D(j, j);
    return B;
}

// Solve A x = b over Z; empty optional when no integral solution exists.
inline std::optional<std::vector<Int>> solve_integral(const SnfResult& s, const std::vector<Int>& b) {
    std::vector<Int> y = s.U.apply(b);
    std::vector<Int> z(s.V.rows());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < s.rank) {
            if (!mpz_divisible_p(y[i].get_mpz_t(), s.D(i, i).get_mpz_t())) return std::nullopt;
            mpz_divexact(z[i].get_mpz_t(), y[i].get_mpz_t(), s.D(i, i).get_mpz_t());
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(z);
}

inline bool in_column_span(const SnfResult& s, const std::vector<Int>& b) {
    return solve_integral(s, b).has_value();
}

}  // namespace lspectra
