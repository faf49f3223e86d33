#include <nstrata/chamber.hpp>

#include <algorithm>
#include <sstream>

#include <nstrata/errors.hpp>

namespace nstrata
{

namespace
{

void require_subset_rank(const RootDatum &datum)
{
    if (datum.semisimple_rank() > kMaxSubsetRank) {
        throw ResourceLimitError("face enumeration needs semisimple rank <= " + std::to_string(kMaxSubsetRank));
    }
}

std::vector<Rational> torus_part(const APoint &x, std::size_t l)
{
    return {x.coords.begin() + static_cast<std::ptrdiff_t>(l), x.coords.end()};
}

std::vector<Rational> torus_part(const ValuationVector &d, std::size_t l)
{
    std::vector<Rational> t;
    for (std::size_t i = l; i < d.size(); ++i) {
        if (d[i].is_neg_inf()) {
            throw PreconditionError("-inf is only allowed in the first l coordinates");
        }
        t.push_back(d[i].value());
    }
    return t;
}

// y lies in a_P^+ for the face S.
bool in_open_face(const RootDatum &datum, const APoint &y, LeviDescriptor s)
{
    for (std::size_t j = 0; j < datum.semisimple_rank(); ++j) {
        const auto p = datum.root_pairing(j, y).sign();
        if (s.contains(j) ? p != 0 : p <= 0) {
            return false;
        }
    }
    return true;
}

std::string point_label(const RootDatum &datum, const APoint &x)
{
    const auto slopes = gl_slopes(datum, x);
    const auto &v = slopes ? *slopes : x.coords;
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + v[i].str();
    }
    return s + ")";
}

} // namespace

LeviDescriptor face_of(const RootDatum &datum, const APoint &y)
{
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < datum.semisimple_rank(); ++j) {
        if (datum.root_pairing(j, y).is_zero()) {
            mask |= std::uint64_t{1} << j;
        }
    }
    return LeviDescriptor(mask);
}

APoint clip(const RootDatum &datum, const ValuationVector &d)
{
    if (d.size() != datum.rank()) {
        throw ValidationError("point has " + std::to_string(d.size()) + " coordinates, expected " +
                              std::to_string(datum.rank()));
    }
    const auto l = datum.semisimple_rank();
    const auto t = torus_part(d, l);
    const auto g = datum.central_coords(t);
    APoint out(d.size());
    for (std::size_t i = 0; i < l; ++i) {
        out[i] = d[i].is_neg_inf() ? g[i] : std::max(d[i].value() - g[i], Rational()) + g[i];
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
        out[l + k] = t[k];
    }
    return out;
}

std::int64_t neg_inf_bound(const RootDatum &datum, const ValuationVector &d)
{
    const auto g = datum.central_coords(torus_part(d, datum.semisimple_rank()));
    // v -> max(v - g_i, 0) + g_i is constant exactly for v <= g_i.
    std::int64_t bound = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bound = i == 0 ? g[i].floor() : std::min(bound, g[i].floor());
    }
    return bound;
}

Retraction retract(const RootDatum &datum, const ValuationVector &d)
{
    require_subset_rank(datum);
    const APoint x = clip(datum, d);
    const std::size_t count = std::size_t{1} << datum.semisimple_rank();
    std::optional<Retraction> found;
    for (std::size_t mask = 0; mask < count; ++mask) {
        const LeviDescriptor s(mask);
        APoint y = project_levi(datum, x, s);
        if (!in_open_face(datum, y, s) || !leq(datum, x, y)) {
            continue;
        }
        if (found) {
            throw InvariantViolation("two faces accept the same point");
        }
        found = Retraction{std::move(y), s};
    }
    if (!found) {
        throw InvariantViolation("no face accepts the point");
    }
    return *found;
}

Retraction retract(const RootDatum &datum, const APoint &x)
{
    return retract(datum, ValuationVector(x));
}

APoint retract_closest(const RootDatum &datum, const APoint &x)
{
    require_subset_rank(datum);
    const auto l = datum.semisimple_rank();
    const auto &ginv = datum.gram_inverse();
    const auto &h = datum.root_gram();
    std::vector<Rational> ax(l);
    for (std::size_t j = 0; j < l; ++j) {
        ax[j] = datum.root_pairing(j, x);
    }
    const std::size_t count = std::size_t{1} << l;
    for (std::size_t mask = 0; mask < count; ++mask) {
        const LeviDescriptor s(mask);
        const auto idx = s.indices();
        // Multipliers: H_S lambda_S = -(A^T x)_S.
        const auto *hinv = datum.root_gram_block_inverse(s);
        std::vector<Rational> lambda(idx.size());
        bool feasible = true;
        for (std::size_t a = 0; a < idx.size() && feasible; ++a) {
            for (std::size_t b = 0; b < idx.size(); ++b) {
                lambda[a] -= (*hinv)(a, b) * ax[idx[b]];
            }
            feasible = lambda[a].sign() >= 0;
        }
        if (!feasible) {
            continue;
        }
        // Primal feasibility off the face.
        for (std::size_t j = 0; j < l && feasible; ++j) {
            if (s.contains(j)) {
                continue;
            }
            Rational v = ax[j];
            for (std::size_t a = 0; a < idx.size(); ++a) {
                v += h(j, idx[a]) * lambda[a];
            }
            feasible = v.sign() >= 0;
        }
        if (!feasible) {
            continue;
        }
        // y = x + G^{-1} A_S lambda_S
        APoint y = x;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t a = 0; a < idx.size(); ++a) {
                Rational col;
                for (std::size_t k = 0; k < x.size(); ++k) {
                    const auto akj = datum.alpha()(k, idx[a]);
                    if (akj != 0) {
                        col += ginv(i, k) * Rational(akj);
                    }
                }
                y[i] += col * lambda[a];
            }
        }
        return y;
    }
    throw InvariantViolation("no face satisfies the KKT conditions");
}

std::optional<NewtonPoint> is_newton_point(const RootDatum &datum, const APoint &y)
{
    if (y.size() != datum.rank() || !is_dominant(datum, y)) {
        return std::nullopt;
    }
    const auto s = face_of(datum, y);
    // p_M fixes the coordinates outside S, so an integral preimage exists
    // exactly when those coordinates are integers; the S-coordinates of a
    // preimage are arbitrary.
    APoint lift(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < datum.semisimple_rank() && s.contains(i)) {
            lift[i] = Rational(y[i].floor());
        } else if (!y[i].is_integer()) {
            return std::nullopt;
        } else {
            lift[i] = y[i];
        }
    }
    return NewtonPoint{y, s, std::move(lift)};
}

std::vector<NewtonPoint> newton_points_below(const RootDatum &datum, const NewtonPoint &mu, std::size_t guard)
{
    require_subset_rank(datum);
    const auto l = datum.semisimple_rank();
    const auto g = datum.central_coords(torus_part(mu.point, l));
    std::vector<NewtonPoint> out;
    const std::size_t count = std::size_t{1} << l;
    std::size_t visited = 0;
    for (std::size_t mask = 0; mask < count; ++mask) {
        const LeviDescriptor s(mask);
        std::vector<std::size_t> free;
        std::vector<std::int64_t> lo;
        std::vector<std::int64_t> hi;
        bool empty = false;
        for (std::size_t i = 0; i < l; ++i) {
            if (s.contains(i)) {
                continue;
            }
            // Dominance forces nu_i >= g_i, and nu <= mu forces nu_i <= mu_i.
            free.push_back(i);
            lo.push_back(g[i].ceil());
            hi.push_back(mu.point[i].floor());
            empty = empty || lo.back() > hi.back();
        }
        if (empty) {
            continue;
        }
        std::vector<std::int64_t> cur = lo;
        while (true) {
            if (++visited > guard) {
                throw ResourceLimitError("Newton point enumeration exceeds guard of " + std::to_string(guard));
            }
            APoint seed = mu.point;
            for (std::size_t i = 0; i < l; ++i) {
                seed[i] = Rational();
            }
            for (std::size_t f = 0; f < free.size(); ++f) {
                seed[free[f]] = Rational(cur[f]);
            }
            APoint nu = project_levi(datum, seed, s);
            if (in_open_face(datum, nu, s) && leq(datum, nu, mu.point)) {
                APoint lift = seed;
                for (std::size_t i = 0; i < l; ++i) {
                    if (s.contains(i)) {
                        lift[i] = Rational(nu[i].floor());
                    }
                }
                out.push_back(NewtonPoint{std::move(nu), s, std::move(lift)});
            }
            std::size_t f = 0;
            for (; f < free.size(); ++f) {
                if (++cur[f] <= hi[f]) {
                    break;
                }
                cur[f] = lo[f];
            }
            if (f == free.size()) {
                break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const NewtonPoint &a, const NewtonPoint &b) { return a.point < b.point; });
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse(const RootDatum &datum, const std::vector<NewtonPoint> &points)
{
    const auto m = points.size();
    std::vector<std::vector<bool>> below(m, std::vector<bool>(m, false));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            below[a][b] = a != b && points[a].point != points[b].point && leq(datum, points[a].point, points[b].point);
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            if (!below[a][b]) {
                continue;
            }
            bool covered = true;
            for (std::size_t c = 0; c < m && covered; ++c) {
                covered = !(below[a][c] && below[c][b]);
            }
            if (covered) {
                edges.emplace_back(a, b);
            }
        }
    }
    return edges;
}

std::string hasse_dot(const RootDatum &datum, const std::vector<NewtonPoint> &points)
{
    std::ostringstream os;
    os << "digraph newton {\n  rankdir=BT;\n";
    for (std::size_t a = 0; a < points.size(); ++a) {
        os << "  n" << a << " [label=\"" << point_label(datum, points[a].point) << "\"];\n";
    }
    for (const auto &[a, b] : hasse(datum, points)) {
        os << "  n" << a << " -> n" << b << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace nstrata
