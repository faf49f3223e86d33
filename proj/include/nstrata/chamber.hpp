#ifndef NSTRATA_CHAMBER_HPP
#define NSTRATA_CHAMBER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nstrata/root_datum.hpp>

namespace nstrata
{

inline constexpr std::size_t kDefaultEnumerationGuard = 1'000'000;

// A dominant point y with its face S (<alpha_j, y> = 0 exactly for j in S)
// and an integral point whose p_M-image is y.
struct NewtonPoint
{
    APoint point;
    LeviDescriptor levi;
    APoint lift;

    friend bool operator==(const NewtonPoint &a, const NewtonPoint &b) { return a.point == b.point; }
};

struct Retraction
{
    APoint y;
    LeviDescriptor levi;
};

// {j : <alpha_j, y> = 0}
LeviDescriptor face_of(const RootDatum &datum, const APoint &y);

// The map d -> d' that clips the semisimple part of d to the positive
// ϖ-orthant; -inf entries land on the central value. The result is finite
// and has the same retraction as d.
APoint clip(const RootDatum &datum, const ValuationVector &d);

// Any integer <= this bound may stand in for a -inf entry of a valuation
// vector with the given torus coordinates without changing its retraction.
std::int64_t neg_inf_bound(const RootDatum &datum, const ValuationVector &d);

// The retraction r onto the dominant chamber, via face enumeration over the
// clipped input. Requires l <= kMaxSubsetRank.
Retraction retract(const RootDatum &datum, const ValuationVector &d);
Retraction retract(const RootDatum &datum, const APoint &x);

// Closest dominant point under the W-invariant form, computed independently
// of retract() by solving the KKT system on each face.
APoint retract_closest(const RootDatum &datum, const APoint &x);

std::optional<NewtonPoint> is_newton_point(const RootDatum &datum, const APoint &y);

// Every Newton point nu <= mu, sorted by coordinates. Throws
// ResourceLimitError when the candidate box exceeds `guard`.
std::vector<NewtonPoint> newton_points_below(const RootDatum &datum, const NewtonPoint &mu,
                                             std::size_t guard = kDefaultEnumerationGuard);

// Covering relations of <= among `points`, as (lower, upper) index pairs in
// lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> hasse(const RootDatum &datum, const std::vector<NewtonPoint> &points);

// Graphviz rendering of the Hasse diagram; GLn points are labelled by slopes.
std::string hasse_dot(const RootDatum &datum, const std::vector<NewtonPoint> &points);

} // namespace nstrata

#endif
