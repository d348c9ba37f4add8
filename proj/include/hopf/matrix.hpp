#ifndef HOPF_MATRIX_HPP
#define HOPF_MATRIX_HPP

// Dense exact linear algebra over the rationals.

#include "hopf/rational.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hopf {

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
        return m;
    }

    static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        if (rows.empty()) return {};
        RatMatrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("RatMatrix: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// this - s * I
    RatMatrix shifted(const Rational& s) const {
        if (!square()) throw std::invalid_argument("RatMatrix::shifted: non-square");
        RatMatrix m = *this;
        for (std::size_t i = 0; i < rows_; ++i) m(i, i) -= s;
        return m;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

inline RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("mat_mul: dimension mismatch (" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + ")");
    RatMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Rational& bkj = b(k, j);
                if (!bkj.is_zero()) c(i, j) += aik * bkj;
            }
        }
    return c;
}

inline RatMatrix mat_pow(const RatMatrix& m, unsigned t) {
    if (!m.square()) throw std::invalid_argument("mat_pow: non-square matrix");
    RatMatrix result = RatMatrix::identity(m.rows()), base = m;
    while (t) {
        if (t & 1u) result = mat_mul(result, base);
        t >>= 1u;
        if (t) base = mat_mul(base, base);
    }
    return result;
}

/// Row vector times matrix.
inline std::vector<Rational> vec_mul(std::span<const Rational> v, const RatMatrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vec_mul: dimension mismatch");
    std::vector<Rational> out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) out[j] += v[i] * m(i, j);
    }
    return out;
}

/// Matrix times column vector.
inline std::vector<Rational> mat_vec(const RatMatrix& m, std::span<const Rational> v) {
    if (v.size() != m.cols()) throw std::invalid_argument("mat_vec: dimension mismatch");
    std::vector<Rational> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
    return out;
}

namespace detail {

using IntMatrix = std::vector<std::vector<Integer>>;

// Clears denominators row by row; row scaling preserves rank.
inline IntMatrix integer_rows(const RatMatrix& m) {
    IntMatrix out(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer den(1);
        for (const auto& x : m.row(i)) den = lcm(den, x.denominator());
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i][j] = m(i, j).numerator() * (den / m(i, j).denominator());
    }
    return out;
}

// Scales the whole matrix by one common denominator.
inline std::pair<IntMatrix, Integer> integer_scaled(const RatMatrix& m) {
    Integer den(1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (const auto& x : m.row(i)) den = lcm(den, x.denominator());
    IntMatrix out(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i][j] = m(i, j).numerator() * (den / m(i, j).denominator());
    return {std::move(out), den};
}

}  // namespace detail

/// Rank by Bareiss fraction-free elimination (first nonzero pivot).
inline std::size_t rank(const RatMatrix& m) {
    auto a = detail::integer_rows(m);
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    Integer prev(1);
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

/// Right-kernel basis read off the reduced row echelon form. Each vector has
/// a 1 in its free column and 0 in the other free columns.
inline std::vector<std::vector<Rational>> nullspace(const RatMatrix& m) {
    RatMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
        Rational inv = Rational(1) / a(r, c);
        for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols);
        v[f] = Rational(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// True iff the product over `eigenvalues` of (m - lambda I) vanishes. When the
/// set holds every eigenvalue this certifies diagonalizability. The product is
/// formed over the integers after clearing one common denominator.
inline bool annihilation_check(const RatMatrix& m, std::span<const Rational> eigenvalues) {
    if (!m.square()) throw std::invalid_argument("annihilation_check: non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return true;
    if (eigenvalues.empty()) return false;
    auto scaled = detail::integer_scaled(m);
    detail::IntMatrix& a = scaled.first;
    Integer common = scaled.second;
    const Integer den = common;
    for (const auto& lam : eigenvalues) common = lcm(common, lam.denominator());
    if (common != den) {
        Integer scale = common / den;
        for (auto& row : a)
            for (auto& x : row) x *= scale;
    }

    auto factor = [&](const Rational& lam) {
        detail::IntMatrix f = a;
        Integer shift = lam.numerator() * (common / lam.denominator());
        for (std::size_t i = 0; i < n; ++i) f[i][i] -= shift;
        return f;
    };
    detail::IntMatrix prod = factor(eigenvalues[0]);
    for (std::size_t e = 1; e < eigenvalues.size(); ++e) {
        detail::IntMatrix f = factor(eigenvalues[e]);
        detail::IntMatrix next(n, std::vector<Integer>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (prod[i][k] == 0) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (f[k][j] != 0) next[i][j] += prod[i][k] * f[k][j];
            }
        prod = std::move(next);
    }
    for (const auto& row : prod)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

}  // namespace hopf

#endif  // HOPF_MATRIX_HPP
