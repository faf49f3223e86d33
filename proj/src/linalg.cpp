#include <nstrata/linalg.hpp>

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include <nstrata/errors.hpp>

namespace nstrata
{

namespace
{

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("integer matrix overflow");
    }
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("integer matrix overflow");
    }
    return r;
}

// Row/column operations on an integer matrix with optional bookkeeping of the
// accumulated row transform U and its inverse.
struct RowTracker
{
    IntMatrix *u = nullptr;
    IntMatrix *uinv = nullptr;

    void swap(std::size_t i, std::size_t j) const
    {
        if (u == nullptr) {
            return;
        }
        for (std::size_t k = 0; k < u->cols(); ++k) {
            std::swap((*u)(i, k), (*u)(j, k));
        }
        for (std::size_t k = 0; k < uinv->rows(); ++k) {
            std::swap((*uinv)(k, i), (*uinv)(k, j));
        }
    }

    // row_i += f * row_j
    void add(std::size_t i, std::size_t j, std::int64_t f) const
    {
        if (u == nullptr) {
            return;
        }
        for (std::size_t k = 0; k < u->cols(); ++k) {
            (*u)(i, k) = checked_add((*u)(i, k), checked_mul(f, (*u)(j, k)));
        }
        // Inverse picks up col_j -= f * col_i.
        for (std::size_t k = 0; k < uinv->rows(); ++k) {
            (*uinv)(k, j) = checked_add((*uinv)(k, j), checked_mul(-f, (*uinv)(k, i)));
        }
    }

    void negate(std::size_t i) const
    {
        if (u == nullptr) {
            return;
        }
        for (std::size_t k = 0; k < u->cols(); ++k) {
            (*u)(i, k) = -(*u)(i, k);
        }
        for (std::size_t k = 0; k < uinv->rows(); ++k) {
            (*uinv)(k, i) = -(*uinv)(k, i);
        }
    }
};

void row_swap(IntMatrix &a, std::size_t i, std::size_t j, const RowTracker &t)
{
    for (std::size_t k = 0; k < a.cols(); ++k) {
        std::swap(a(i, k), a(j, k));
    }
    t.swap(i, j);
}

void row_add(IntMatrix &a, std::size_t i, std::size_t j, std::int64_t f, const RowTracker &t)
{
    for (std::size_t k = 0; k < a.cols(); ++k) {
        a(i, k) = checked_add(a(i, k), checked_mul(f, a(j, k)));
    }
    t.add(i, j, f);
}

void col_swap(IntMatrix &a, std::size_t i, std::size_t j)
{
    for (std::size_t k = 0; k < a.rows(); ++k) {
        std::swap(a(k, i), a(k, j));
    }
}

void col_add(IntMatrix &a, std::size_t i, std::size_t j, std::int64_t f)
{
    for (std::size_t k = 0; k < a.rows(); ++k) {
        a(k, i) = checked_add(a(k, i), checked_mul(f, a(k, j)));
    }
}

// Floor division that rounds toward negative infinity.
std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    auto q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

void trim(IntPoly &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

} // namespace

RatMatrix to_rational(const IntMatrix &m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r(i, j) = Rational(m(i, j));
        }
    }
    return r;
}

std::optional<RatMatrix> inverse(const RatMatrix &m)
{
    const auto n = m.rows();
    if (n != m.cols()) {
        throw std::invalid_argument("inverse of a non-square matrix");
    }
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) {
            ++p;
        }
        if (p == n) {
            return std::nullopt;
        }
        if (p != c) {
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(a(p, k), a(c, k));
                std::swap(inv(p, k), inv(c, k));
            }
        }
        const Rational piv = a(c, c);
        for (std::size_t k = 0; k < n; ++k) {
            a(c, k) /= piv;
            inv(c, k) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c).is_zero()) {
                continue;
            }
            const Rational f = a(r, c);
            for (std::size_t k = 0; k < n; ++k) {
                a(r, k) -= f * a(c, k);
                inv(r, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

std::optional<std::vector<Rational>> solve(RatMatrix a, std::vector<Rational> b)
{
    const auto n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c).is_zero()) {
            ++p;
        }
        if (p == n) {
            return std::nullopt;
        }
        if (p != c) {
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(a(p, k), a(c, k));
            }
            std::swap(b[p], b[c]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c).is_zero()) {
                continue;
            }
            const Rational f = a(r, c) / a(c, c);
            for (std::size_t k = c; k < n; ++k) {
                a(r, k) -= f * a(c, k);
            }
            b[r] -= f * b[c];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) {
            acc -= a(i, k) * x[k];
        }
        x[i] = acc / a(i, i);
    }
    return x;
}

std::size_t rank(RatMatrix m)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) {
            ++p;
        }
        if (p == m.rows()) {
            continue;
        }
        for (std::size_t k = 0; k < m.cols(); ++k) {
            std::swap(m(p, k), m(r, k));
        }
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c).is_zero()) {
                continue;
            }
            const Rational f = m(i, c) / m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k) {
                m(i, k) -= f * m(r, k);
            }
        }
        ++r;
    }
    return r;
}

IntMatrix integer_kernel(const IntMatrix &m)
{
    // Column-reduce m to echelon form with unimodular column operations
    // tracked in v; columns of v whose image vanishes span the kernel.
    const auto rows = m.rows();
    const auto cols = m.cols();
    IntMatrix a = m;
    IntMatrix v = IntMatrix::identity(cols);
    std::size_t pivot_col = 0;
    for (std::size_t r = 0; r < rows && pivot_col < cols; ++r) {
        // Euclid across columns pivot_col..cols-1 in row r.
        while (true) {
            std::size_t best = cols;
            for (std::size_t c = pivot_col; c < cols; ++c) {
                if (a(r, c) != 0 && (best == cols || std::llabs(a(r, c)) < std::llabs(a(r, best)))) {
                    best = c;
                }
            }
            if (best == cols) {
                break;
            }
            col_swap(a, pivot_col, best);
            col_swap(v, pivot_col, best);
            bool done = true;
            for (std::size_t c = pivot_col + 1; c < cols; ++c) {
                if (a(r, c) == 0) {
                    continue;
                }
                const auto q = floor_div(a(r, c), a(r, pivot_col));
                col_add(a, c, pivot_col, -q);
                col_add(v, c, pivot_col, -q);
                if (a(r, c) != 0) {
                    done = false;
                }
            }
            if (done) {
                ++pivot_col;
                break;
            }
        }
    }
    IntMatrix kernel(cols, cols - pivot_col);
    for (std::size_t c = pivot_col; c < cols; ++c) {
        for (std::size_t i = 0; i < cols; ++i) {
            kernel(i, c - pivot_col) = v(i, c);
        }
    }
    return kernel;
}

SmithForm smith_normal_form(IntMatrix a)
{
    const auto rows = a.rows();
    const auto cols = a.cols();
    SmithForm out;
    out.left = IntMatrix::identity(rows);
    out.left_inverse = IntMatrix::identity(rows);
    const RowTracker tracker{&out.left, &out.left_inverse};

    const auto diag = std::min(rows, cols);
    for (std::size_t t = 0; t < diag; ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pr = rows;
            std::size_t pc = cols;
            for (std::size_t i = t; i < rows; ++i) {
                for (std::size_t j = t; j < cols; ++j) {
                    if (a(i, j) != 0 && (pr == rows || std::llabs(a(i, j)) < std::llabs(a(pr, pc)))) {
                        pr = i;
                        pc = j;
                    }
                }
            }
            if (pr == rows) {
                break;
            }
            row_swap(a, t, pr, tracker);
            col_swap(a, t, pc);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) != 0) {
                    row_add(a, i, t, -floor_div(a(i, t), a(t, t)), tracker);
                    clean = clean && a(i, t) == 0;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) != 0) {
                    col_add(a, j, t, -floor_div(a(t, j), a(t, t)));
                    clean = clean && a(t, j) == 0;
                }
            }
            if (!clean) {
                continue;
            }
            // Pivot must divide the whole trailing block.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
                }
            }
            if (bad == rows) {
                break;
            }
            row_add(a, t, bad, 1, tracker);
        }
        if (a(t, t) < 0) {
            for (std::size_t k = 0; k < cols; ++k) {
                a(t, k) = -a(t, k);
            }
            tracker.negate(t);
        }
        out.diagonal.push_back(a(t, t));
    }
    return out;
}

IntPoly characteristic_polynomial(const IntMatrix &m)
{
    // Faddeev-LeVerrier over Q; all divisions are exact.
    const auto n = m.rows();
    const RatMatrix a = to_rational(m);
    std::vector<Rational> coeff(n + 1);
    coeff[n] = Rational(1);
    RatMatrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix next = a * mk;
        for (std::size_t i = 0; i < n; ++i) {
            next(i, i) += coeff[n - k + 1];
        }
        mk = std::move(next);
        const RatMatrix amk = a * mk;
        Rational tr;
        for (std::size_t i = 0; i < n; ++i) {
            tr += amk(i, i);
        }
        coeff[n - k] = -tr / Rational(static_cast<std::int64_t>(k));
    }
    IntPoly p(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        if (!coeff[i].is_integer()) {
            throw InvariantViolation("non-integral characteristic polynomial coefficient");
        }
        p[i] = coeff[i].num();
    }
    return p;
}

std::optional<IntPoly> divide_exact(const IntPoly &num, const IntPoly &monic_divisor)
{
    IntPoly rem = num;
    IntPoly div = monic_divisor;
    trim(rem);
    trim(div);
    if (div.empty() || div.back() != 1) {
        throw std::invalid_argument("divide_exact needs a monic divisor");
    }
    if (rem.size() < div.size()) {
        if (rem.empty()) {
            return IntPoly{};
        }
        return std::nullopt;
    }
    IntPoly quot(rem.size() - div.size() + 1, 0);
    for (std::size_t k = quot.size(); k-- > 0;) {
        const auto c = rem[k + div.size() - 1];
        quot[k] = c;
        for (std::size_t j = 0; j < div.size(); ++j) {
            rem[k + j] = checked_add(rem[k + j], checked_mul(-c, div[j]));
        }
    }
    trim(rem);
    if (!rem.empty()) {
        return std::nullopt;
    }
    return quot;
}

IntPoly cyclotomic_polynomial(std::int64_t d)
{
    if (d < 1) {
        throw std::invalid_argument("cyclotomic index must be positive");
    }
    // T^d - 1 divided by every Phi_e with e a proper divisor of d.
    IntPoly p(static_cast<std::size_t>(d) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(d)] = 1;
    for (std::int64_t e = 1; e < d; ++e) {
        if (d % e == 0) {
            p = *divide_exact(p, cyclotomic_polynomial(e));
        }
    }
    return p;
}

std::int64_t euler_phi(std::int64_t d)
{
    std::int64_t result = d;
    for (std::int64_t p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            while (d % p == 0) {
                d /= p;
            }
            result -= result / p;
        }
    }
    if (d > 1) {
        result -= result / d;
    }
    return result;
}

} // namespace nstrata
