#ifndef NSTRATA_TESTS_ORACLES_HPP
#define NSTRATA_TESTS_ORACLES_HPP

// Brute-force reference computations. None of these call the library code
// paths they are used to check; they only share the number types.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <nstrata/linalg.hpp>
#include <nstrata/rational.hpp>
#include <nstrata/root_datum.hpp>

namespace oracle
{

using nstrata::ExtendedRational;
using nstrata::IntMatrix;
using nstrata::Rational;

// Value at x = 1..n of the least concave majorant of (0, 0) and the finite
// (i, d_i): the largest chord value over every pair of points spanning x.
inline std::vector<Rational> concave_majorant(const std::vector<ExtendedRational> &d)
{
    const auto n = static_cast<std::int64_t>(d.size());
    std::vector<std::pair<std::int64_t, Rational>> pts{{0, Rational()}};
    for (std::int64_t i = 1; i <= n; ++i) {
        if (d[i - 1].is_finite()) {
            pts.emplace_back(i, d[i - 1].value());
        }
    }
    std::vector<Rational> out;
    for (std::int64_t x = 1; x <= n; ++x) {
        bool have = false;
        Rational best;
        for (const auto &[xa, ya] : pts) {
            for (const auto &[xb, yb] : pts) {
                if (xa > x || xb < x || (xa == xb && xa != x)) {
                    continue;
                }
                const Rational v = xa == xb ? ya : ya + (yb - ya) * Rational(x - xa, xb - xa);
                if (!have || v > best) {
                    best = v;
                    have = true;
                }
            }
        }
        out.push_back(best);
    }
    return out;
}

// Slopes of a GLn point given by partial sums.
inline std::vector<Rational> slopes_of(const std::vector<Rational> &partial)
{
    std::vector<Rational> s;
    for (std::size_t i = 0; i < partial.size(); ++i) {
        s.push_back(i == 0 ? partial[0] : partial[i] - partial[i - 1]);
    }
    return s;
}

// Reflection in alpha_j written out from the root matrix entries.
inline IntMatrix reflection_matrix(const IntMatrix &alpha, std::size_t j)
{
    const auto n = alpha.rows();
    IntMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        s(j, k) -= alpha(k, j);
    }
    return s;
}

// Closure of the simple reflections under multiplication.
inline std::vector<IntMatrix> weyl_group(const nstrata::RootDatum &datum)
{
    const auto n = datum.rank();
    std::vector<IntMatrix> gens;
    for (std::size_t j = 0; j < datum.semisimple_rank(); ++j) {
        gens.push_back(reflection_matrix(datum.alpha(), j));
    }
    IntMatrix id(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        id(i, i) = 1;
    }
    auto key = [](const IntMatrix &m) {
        std::vector<std::int64_t> k;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (auto v : m.row(i)) {
                k.push_back(v);
            }
        }
        return k;
    };
    std::set<std::vector<std::int64_t>> seen{key(id)};
    std::vector<IntMatrix> all{id};
    for (std::size_t at = 0; at < all.size(); ++at) {
        for (const auto &g : gens) {
            IntMatrix m = all[at] * g;
            if (seen.insert(key(m)).second) {
                all.push_back(std::move(m));
            }
        }
    }
    return all;
}

// Number of cycles of i -> i + k on Z/n.
inline std::int64_t shift_cycles(std::int64_t k, std::int64_t n)
{
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::int64_t cycles = 0;
    for (std::int64_t s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) {
            continue;
        }
        ++cycles;
        for (auto i = s; !seen[static_cast<std::size_t>(i)]; i = ((i + k) % n + n) % n) {
            seen[static_cast<std::size_t>(i)] = true;
        }
    }
    return cycles;
}

// For a datum with rank-one torus: the least t > 0 such that some integral
// point with torus coordinate t pairs to zero with every simple root. This
// is the order of the component group.
inline std::int64_t central_period(const nstrata::RootDatum &datum, std::int64_t limit = 1000)
{
    const auto l = datum.semisimple_rank();
    nstrata::RatMatrix ct(l, l);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            ct(j, i) = Rational(datum.alpha()(i, j));
        }
    }
    for (std::int64_t t = 1; t <= limit; ++t) {
        std::vector<Rational> rhs(l);
        for (std::size_t j = 0; j < l; ++j) {
            rhs[j] = Rational(-t * datum.alpha()(l, j));
        }
        const auto x = *nstrata::solve(ct, rhs);
        if (std::all_of(x.begin(), x.end(), [](const Rational &r) { return r.is_integer(); })) {
            return t;
        }
    }
    return -1;
}

// All concave polygons through (0, 0) and (n, mu_n) with integral vertices,
// lying on or below the partial-sum polygon mu, as partial-sum vectors.
// Vertices are chosen among the interior abscissae and interpolated.
inline std::vector<std::vector<Rational>> gl_polygons_below(const std::vector<Rational> &mu)
{
    const auto n = mu.size();
    const Rational top = mu[n - 1];
    std::set<std::vector<Rational>> out;
    std::vector<std::size_t> xs;
    std::vector<std::int64_t> ys;
    auto emit = [&]() {
        std::vector<std::pair<std::size_t, Rational>> vs{{0, Rational()}};
        for (std::size_t k = 0; k < xs.size(); ++k) {
            vs.emplace_back(xs[k], Rational(ys[k]));
        }
        vs.emplace_back(n, top);
        std::vector<Rational> y(n);
        for (std::size_t k = 0; k + 1 < vs.size(); ++k) {
            const auto [xa, ya] = vs[k];
            const auto [xb, yb] = vs[k + 1];
            for (auto x = xa + 1; x <= xb; ++x) {
                y[x - 1] = ya + (yb - ya) * Rational(static_cast<std::int64_t>(x - xa), static_cast<std::int64_t>(xb - xa));
            }
        }
        for (std::size_t k = 1; k + 1 < vs.size(); ++k) {
            const auto s0 = (vs[k].second - vs[k - 1].second) / Rational(static_cast<std::int64_t>(vs[k].first - vs[k - 1].first));
            const auto s1 = (vs[k + 1].second - vs[k].second) / Rational(static_cast<std::int64_t>(vs[k + 1].first - vs[k].first));
            if (!(s0 > s1)) {
                return;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (y[i] > mu[i]) {
                return;
            }
        }
        out.insert(y);
    };
    auto rec = [&](auto &&self, std::size_t from) -> void {
        emit();
        for (std::size_t x = from; x < n; ++x) {
            const Rational lo = top * Rational(static_cast<std::int64_t>(x), static_cast<std::int64_t>(n));
            for (auto v = lo.ceil(); v <= mu[x - 1].floor(); ++v) {
                xs.push_back(x);
                ys.push_back(v);
                self(self, x + 1);
                xs.pop_back();
                ys.pop_back();
            }
        }
    };
    rec(rec, 1);
    return {out.begin(), out.end()};
}

} // namespace oracle

#endif
