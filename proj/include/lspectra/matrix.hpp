#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lspectra {

using Int = mpz_class;

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (long v : r) a_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMatrix diagonal(const std::vector<Int>& d) {
        IntMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const {
        for (auto& v : a_)
            if (v != 0) return false;
        return true;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<Int> column(std::size_t j) const {
        std::vector<Int> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }
    void swap_cols(std::size_t j, std::size_t k) {
        if (j == k) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
    }
    // row_i += c * row_k
    void add_row(std::size_t i, std::size_t k, const Int& c) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += c * (*this)(k, j);
    }
    // col_j += c * col_k
    void add_col(std::size_t j, std::size_t k, const Int& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += c * (*this)(i, k);
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }
    void negate_col(std::size_t j) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
    }

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch in product");
        IntMatrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const Int& v = x(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }
    friend IntMatrix operator+(IntMatrix x, const IntMatrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch in sum");
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
        return x;
    }
    friend IntMatrix operator-(IntMatrix x, const IntMatrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch in difference");
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
        return x;
    }
    friend IntMatrix operator*(const Int& s, IntMatrix x) {
        for (auto& v : x.a_) v *= s;
        return x;
    }

    std::vector<Int> apply(const std::vector<Int>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
        std::vector<Int> r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    // Columns of x followed by columns of y.
    static IntMatrix hcat(const IntMatrix& x, const IntMatrix& y) {
        if (x.rows_ != y.rows_) throw std::invalid_argument("hcat row mismatch");
        IntMatrix r(x.rows_, x.cols_ + y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i) {
            for (std::size_t j = 0; j < x.cols_; ++j) r(i, j) = x(i, j);
            for (std::size_t j = 0; j < y.cols_; ++j) r(i, x.cols_ + j) = y(i, j);
        }
        return r;
    }
    static IntMatrix block_diag(const IntMatrix& x, const IntMatrix& y) {
        IntMatrix r(x.rows_ + y.rows_, x.cols_ + y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t j = 0; j < x.cols_; ++j) r(i, j) = x(i, j);
        for (std::size_t i = 0; i < y.rows_; ++i)
            for (std::size_t j = 0; j < y.cols_; ++j) r(x.rows_ + i, x.cols_ + j) = y(i, j);
        return r;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) os << ',';
            os << '[';
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) os << ',';
                os << (*this)(i, j).get_str();
            }
            os << ']';
        }
        os << ']';
        return os.str();
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

}  // namespace lspectra
