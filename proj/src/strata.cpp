#include <nstrata/strata.hpp>

#include <nstrata/errors.hpp>

namespace nstrata
{

bool StratumConditions::accepts(const ValuationVector &d) const
{
    for (const auto &c : conditions) {
        const auto &v = d[c.i];
        if (c.rel == Relation::leq ? v > ExtendedRational(c.bound) : v != ExtendedRational(c.bound)) {
            return false;
        }
    }
    return true;
}

NewtonPoint stratum_of(const RootDatum &datum, const ValuationVector &d)
{
    for (const auto &v : d.coords) {
        if (v.is_finite() && !v.value().is_integer()) {
            throw PreconditionError("stratum_of needs integral valuations, got " + v.str());
        }
    }
    auto nu = is_newton_point(datum, retract(datum, d).y);
    if (!nu) {
        throw InvariantViolation("retraction of an integral point is not a Newton point");
    }
    return *nu;
}

StratumConditions stratum_conditions(const RootDatum &datum, const NewtonPoint &mu, bool closed)
{
    const auto l = datum.semisimple_rank();
    StratumConditions out{mu, face_of(datum, mu.point), closed, {}};
    for (std::size_t i = 0; i < datum.rank(); ++i) {
        const bool inequality = i < l && (closed || out.i_mu.contains(i));
        out.conditions.push_back(Condition{i, inequality ? Relation::leq : Relation::eq, mu.point[i]});
    }
    return out;
}

std::int64_t dim_leq(const RootDatum &datum, const APoint &mu)
{
    std::int64_t d = 0;
    for (std::size_t i = 0; i < datum.semisimple_rank(); ++i) {
        d += mu[i].floor();
    }
    return d;
}

std::int64_t codim(const RootDatum &datum, const APoint &nu, const APoint &mu)
{
    if (!leq(datum, nu, mu)) {
        throw PreconditionError("codim needs nu <= mu");
    }
    return dim_leq(datum, mu) - dim_leq(datum, nu);
}

std::vector<Rational> rational_fundamental_weight(const RootDatum &datum, std::size_t i)
{
    const auto l = datum.semisimple_rank();
    std::vector<Rational> w(datum.rank());
    w[i] = Rational(1);
    // Subtract the torus characters that agree with w_i on a_G.
    for (std::size_t k = 0; k < datum.torus_rank(); ++k) {
        std::vector<Rational> t(datum.torus_rank());
        t[k] = Rational(1);
        w[l + k] = -datum.central_coords(t)[i];
    }
    return w;
}

std::int64_t codim_chai(const RootDatum &datum, const APoint &nu, const APoint &mu)
{
    if (!mu.is_integral() || !is_dominant(datum, mu)) {
        throw PreconditionError("codim_chai needs an integral dominant mu");
    }
    if (!leq(datum, nu, mu)) {
        throw PreconditionError("codim_chai needs nu <= mu");
    }
    const APoint diff = mu - nu;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < datum.semisimple_rank(); ++i) {
        const auto w = rational_fundamental_weight(datum, i);
        Rational p;
        for (std::size_t k = 0; k < w.size(); ++k) {
            p += w[k] * diff[k];
        }
        total += p.ceil();
    }
    return total;
}

Rational d_G(const RootDatum &datum, const APoint &nu)
{
    Rational s;
    for (std::size_t i = 0; i < datum.semisimple_rank(); ++i) {
        s += nu[i].frac();
    }
    return s;
}

LeviCheck d_levi_check(const RootDatum &datum, const NewtonPoint &nu)
{
    const RootDatum m = levi(datum, nu.levi);
    const APoint moved = permute(nu.point, levi_permutation(datum, nu.levi));
    LeviCheck out{d_G(datum, nu.point), d_G(m, moved), false};
    out.pass = out.d_G == out.d_M;
    return out;
}

} // namespace nstrata
