#ifndef NSTRATA_AFFINE_HPP
#define NSTRATA_AFFINE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nstrata/linalg.hpp>
#include <nstrata/root_datum.hpp>

namespace nstrata
{

// x -> linear * x + translation, with translation in X_*(A).
struct AffineWeylElement
{
    std::vector<std::int64_t> translation;
    IntMatrix linear;

    static AffineWeylElement identity(std::size_t n);
    static AffineWeylElement translation_by(std::span<const std::int64_t> mu);

    APoint act(const APoint &x) const;

    // (t, w)(t', w') = (t + w t', w w')
    friend AffineWeylElement operator*(const AffineWeylElement &a, const AffineWeylElement &b);
    friend bool operator==(const AffineWeylElement &, const AffineWeylElement &) = default;
};

// The affine function x -> <gradient, x> + constant on a.
struct AffineRoot
{
    std::vector<std::int64_t> gradient;
    std::int64_t constant = 0;
    // Coroot of the gradient in APoint coordinates.
    std::vector<std::int64_t> coroot;

    Rational operator()(const APoint &x) const;
    friend bool operator==(const AffineRoot &a, const AffineRoot &b)
    {
        return a.gradient == b.gradient && a.constant == b.constant;
    }
};

// Positive roots of the factor as coefficient vectors over all l simple roots.
std::vector<std::vector<std::int64_t>> positive_roots(const RootDatum &datum, const SimpleFactor &factor);

// Alcove data: simple affine roots alpha_0..alpha_{l-1}, then one -theta + 1
// per irreducible factor, and a point strictly inside the base alcove.
struct AlcoveGeometry
{
    std::vector<AffineRoot> simple_roots;
    std::vector<std::vector<std::int64_t>> highest_roots; // coefficients per factor
    std::vector<std::int64_t> coxeter_numbers;            // per factor
    APoint base_point;
};

AlcoveGeometry alcove_geometry(const RootDatum &datum);

AffineWeylElement affine_reflection(const AffineRoot &a);

struct AlcoveReduction
{
    AffineWeylElement x0;
    // x0 = s_{word[k-1]} ... s_{word[0]} x, indices into simple_roots.
    std::vector<std::size_t> word;
};

// Greedy descent to the element of x W_aff that stabilizes the base alcove.
AlcoveReduction alcove_reduce(const RootDatum &datum, const AlcoveGeometry &geom, const AffineWeylElement &x);
AlcoveReduction alcove_reduce(const RootDatum &datum, const AffineWeylElement &x);

// An element of Lambda_G, named by any integral lift. Its class is the
// tuple of the last n - l coordinates of the lift.
struct LambdaGElement
{
    std::vector<std::int64_t> lift;

    static LambdaGElement from_class(const RootDatum &datum, std::span<const std::int64_t> coords);
    std::vector<std::int64_t> class_coords(const RootDatum &datum) const;
};

AffineWeylElement section_s(const RootDatum &datum, const LambdaGElement &nu);
WeylElement w_nu(const RootDatum &datum, const LambdaGElement &nu);

// n - dim of the fixed space of w_nu.
std::size_t defect(const RootDatum &datum, const LambdaGElement &nu);

// fr(<w_i, p_G(lift)>), i 0-based.
Rational chi(const RootDatum &datum, std::size_t i, const LambdaGElement &nu);

struct DefectReport
{
    std::vector<std::int64_t> class_coords;
    std::vector<std::size_t> w_word;
    std::size_t defect = 0;
    Rational d_G;
    Rational chi_sum;
    bool pass = false;
};

// Checks d_G(p_G(nu)) = defect / 2 and 2 sum_i chi_i = defect.
DefectReport verify_theorem_d_equals_half_defect(const RootDatum &datum, const LambdaGElement &nu);

struct CharReport
{
    IntPoly characteristic_polynomial;
    // (d, multiplicity of the d-th cyclotomic factor)
    std::vector<std::pair<std::int64_t, std::int64_t>> cyclotomic_factors;
    std::vector<Rational> chis;
    bool pass = false;
    std::string detail;
};

// Compares eigenvalue orders of w_nu with the denominators of the chi_i.
CharReport reflection_char_multiset_check(const RootDatum &datum, const LambdaGElement &nu);

// Smallest k >= 1 with m^k = 1; throws ResourceLimitError past `cap`.
std::int64_t matrix_order(const IntMatrix &m, std::int64_t cap = 10'000);

} // namespace nstrata

#endif
