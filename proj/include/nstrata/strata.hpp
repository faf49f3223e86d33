#ifndef NSTRATA_STRATA_HPP
#define NSTRATA_STRATA_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nstrata/chamber.hpp>
#include <nstrata/root_datum.hpp>

namespace nstrata
{

enum class Relation
{
    leq,
    eq,
};

// val c_i (rel) bound, with i 0-based.
struct Condition
{
    std::size_t i = 0;
    Relation rel = Relation::eq;
    Rational bound;
};

// Inequalities on a valuation vector cutting out the stratum of mu
// (closed == false) or its closure (closed == true).
struct StratumConditions
{
    NewtonPoint mu;
    LeviDescriptor i_mu;
    bool closed = false;
    std::vector<Condition> conditions;

    bool accepts(const ValuationVector &d) const;
};

// The Newton point of an integral valuation vector; -inf allowed in the
// first l entries. Throws PreconditionError on non-integral entries.
NewtonPoint stratum_of(const RootDatum &datum, const ValuationVector &d);

StratumConditions stratum_conditions(const RootDatum &datum, const NewtonPoint &mu, bool closed);

// sum_{i<l} floor(<w_i, mu>)
std::int64_t dim_leq(const RootDatum &datum, const APoint &mu);

// dim_leq(mu) - dim_leq(nu). Throws PreconditionError unless nu <= mu.
std::int64_t codim(const RootDatum &datum, const APoint &nu, const APoint &mu);

// The fundamental weight of node i as an element of X^*(A)_Q: it takes the
// value delta_ij on alpha_j^vee and vanishes on a_G.
std::vector<Rational> rational_fundamental_weight(const RootDatum &datum, std::size_t i);

// sum_{i<l} ceil(<varpi_i, mu - nu>) for integral dominant mu >= nu.
std::int64_t codim_chai(const RootDatum &datum, const APoint &nu, const APoint &mu);

// sum_{i<l} fr(<w_i, nu>)
Rational d_G(const RootDatum &datum, const APoint &nu);

struct LeviCheck
{
    Rational d_G;
    Rational d_M;
    bool pass = false;
};

// Compares d_G(nu) with d_M(nu) computed inside the Levi datum of nu's face.
LeviCheck d_levi_check(const RootDatum &datum, const NewtonPoint &nu);

} // namespace nstrata

#endif
