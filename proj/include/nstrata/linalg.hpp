#ifndef NSTRATA_LINALG_HPP
#define NSTRATA_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nstrata/rational.hpp>

namespace nstrata
{

// Dense row-major matrix. Sizes here never exceed a few dozen, so there is no
// attempt at blocking or expression templates.
template <typename T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            c[i] = (*this)(i, j);
        }
        return c;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b)
    {
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T &aik = a(i, k);
                if (aik == T{}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    c(i, j) += aik * b(k, j);
                }
            }
        }
        return c;
    }

    template <typename U>
    std::vector<U> apply(std::span<const U> v) const
    {
        std::vector<U> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            U acc{};
            for (std::size_t j = 0; j < cols_; ++j) {
                if ((*this)(i, j) != T{}) {
                    acc += U((*this)(i, j)) * v[j];
                }
            }
            out[i] = acc;
        }
        return out;
    }

    friend bool operator==(const Matrix &, const Matrix &) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix &m);

// Inverse over Q, or nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix &m);

// Unique solution of a square system, or nullopt when singular.
std::optional<std::vector<Rational>> solve(RatMatrix a, std::vector<Rational> b);

std::size_t rank(RatMatrix m);

// Integer kernel basis {x in Z^cols : m x = 0}, returned as columns.
IntMatrix integer_kernel(const IntMatrix &m);

// Smith normal form of an integer matrix A (r x c): U A V = D with U, V
// unimodular. Only the row transform is kept since callers only ever need to
// coordinatize the cokernel Z^r / A Z^c.
struct SmithForm
{
    // Diagonal of D, length min(r, c); every entry divides the next, all >= 0.
    std::vector<std::int64_t> diagonal;
    IntMatrix left;
    IntMatrix left_inverse;
};

SmithForm smith_normal_form(IntMatrix a);

// Integer polynomials, coefficients stored from the constant term upward.
using IntPoly = std::vector<std::int64_t>;

// det(T I - m) for a square integer matrix.
IntPoly characteristic_polynomial(const IntMatrix &m);

// The d-th cyclotomic polynomial.
IntPoly cyclotomic_polynomial(std::int64_t d);

// Exact division by a monic divisor; nullopt when the remainder is nonzero.
std::optional<IntPoly> divide_exact(const IntPoly &num, const IntPoly &monic_divisor);

std::int64_t euler_phi(std::int64_t d);

} // namespace nstrata

#endif
