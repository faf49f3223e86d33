#ifndef NSTRATA_ROOT_DATUM_HPP
#define NSTRATA_ROOT_DATUM_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nstrata/linalg.hpp>
#include <nstrata/rational.hpp>

namespace nstrata
{

inline constexpr std::size_t kMaxRank = 32;
inline constexpr std::size_t kDefaultOrbitGuard = 1'000'000;
// Largest semisimple rank for which per-subset tables are precomputed and
// subset enumeration is permitted.
inline constexpr std::size_t kMaxSubsetRank = 8;

// A point of a = X_*(A) (x) R, stored as the tuple (<w_1, x>, ..., <w_n, x>).
// In these coordinates the simple coroots are the standard basis vectors
// e_1, ..., e_l.
struct APoint
{
    std::vector<Rational> coords;

    APoint() = default;
    explicit APoint(std::vector<Rational> c) : coords(std::move(c)) {}
    explicit APoint(std::size_t n) : coords(n) {}

    static APoint from_ints(std::span<const std::int64_t> v);

    std::size_t size() const noexcept { return coords.size(); }
    Rational &operator[](std::size_t i) { return coords[i]; }
    const Rational &operator[](std::size_t i) const { return coords[i]; }

    bool is_integral() const;

    friend APoint operator+(const APoint &a, const APoint &b);
    friend APoint operator-(const APoint &a, const APoint &b);

    friend bool operator==(const APoint &, const APoint &) = default;
    friend auto operator<=>(const APoint &a, const APoint &b) { return a.coords <=> b.coords; }
};

// A tuple in (Q u {-inf})^l x Q^{n-l}, e.g. the coefficient valuations d_c.
struct ValuationVector
{
    std::vector<ExtendedRational> coords;

    ValuationVector() = default;
    explicit ValuationVector(std::vector<ExtendedRational> c) : coords(std::move(c)) {}
    explicit ValuationVector(const APoint &x);

    std::size_t size() const noexcept { return coords.size(); }
    const ExtendedRational &operator[](std::size_t i) const { return coords[i]; }
    ExtendedRational &operator[](std::size_t i) { return coords[i]; }

    bool is_finite() const;
    // Throws std::domain_error if any coordinate is -inf.
    APoint finite() const;

    friend bool operator==(const ValuationVector &, const ValuationVector &) = default;
};

// A character of A in the basis w_1, ..., w_n of X^*(A).
struct Weight
{
    std::vector<std::int64_t> coords;

    Weight() = default;
    explicit Weight(std::vector<std::int64_t> c) : coords(std::move(c)) {}

    std::size_t size() const noexcept { return coords.size(); }
    std::int64_t operator[](std::size_t i) const { return coords[i]; }

    friend bool operator==(const Weight &, const Weight &) = default;
    friend auto operator<=>(const Weight &a, const Weight &b) { return a.coords <=> b.coords; }
};

// A subset of the simple roots (0-based indices), naming the standard Levi M
// whose simple roots they are.
class LeviDescriptor
{
public:
    constexpr LeviDescriptor() noexcept = default;
    constexpr explicit LeviDescriptor(std::uint64_t mask) noexcept : mask_(mask) {}

    static LeviDescriptor from_indices(std::span<const std::size_t> indices);
    static LeviDescriptor full(std::size_t l);

    constexpr std::uint64_t mask() const noexcept { return mask_; }
    constexpr bool contains(std::size_t j) const noexcept { return ((mask_ >> j) & 1U) != 0; }
    std::size_t size() const noexcept;
    std::vector<std::size_t> indices() const;

    friend constexpr bool operator==(const LeviDescriptor &, const LeviDescriptor &) noexcept = default;
    friend constexpr auto operator<=>(const LeviDescriptor &, const LeviDescriptor &) noexcept = default;

private:
    std::uint64_t mask_ = 0;
};

// An irreducible component of the Dynkin diagram; `nodes` are its simple root
// indices in increasing order.
struct SimpleFactor
{
    char family = 'A';
    std::size_t rank = 0;
    std::vector<std::size_t> nodes;

    std::string label() const { return std::string(1, family) + std::to_string(rank); }
};

// Weyl group element acting on APoint coordinates. `word` lists simple
// reflection indices left to right: word {a, b} is the product s_a s_b.
struct WeylElement
{
    IntMatrix matrix;
    std::vector<std::size_t> word;

    friend bool operator==(const WeylElement &a, const WeylElement &b) { return a.matrix == b.matrix; }
};

// Combinatorial skeleton of a split reductive group with simply connected
// derived group.
//
// `alpha` is n x l; column j holds the simple root alpha_j in the basis
// w_1, ..., w_n of X^*(A). Its top l x l block is the Cartan matrix with
// alpha(i, j) = <alpha_j, alpha_i^vee>. `root_lengths[j]` is (alpha_j, alpha_j)
// for the W-invariant form used by the closest-point oracle.
class RootDatum
{
public:
    RootDatum(IntMatrix alpha, std::size_t semisimple_rank, std::vector<Rational> root_lengths,
              std::string label = {}, std::optional<std::size_t> gl_degree = std::nullopt);

    std::size_t rank() const noexcept { return n_; }
    std::size_t semisimple_rank() const noexcept { return l_; }
    std::size_t torus_rank() const noexcept { return n_ - l_; }

    const IntMatrix &alpha() const noexcept { return alpha_; }
    std::int64_t cartan(std::size_t i, std::size_t j) const { return alpha_(i, j); }
    Weight simple_root(std::size_t j) const;
    const std::vector<Rational> &root_lengths() const noexcept { return lengths_; }
    const std::vector<SimpleFactor> &factors() const noexcept { return factors_; }
    const std::string &label() const noexcept { return label_; }
    // Set only for the GLn preset in its standard coordinates, where points
    // also have a slope description.
    std::optional<std::size_t> gl_degree() const noexcept { return gl_degree_; }

    // <alpha_j, x>
    Rational root_pairing(std::size_t j, const APoint &x) const;

    // Coordinates 0..l-1 of the unique point of a_G whose torus coordinates
    // (indices l..n-1) are `torus`.
    std::vector<Rational> central_coords(std::span<const Rational> torus) const;

    // Inverse of the principal Cartan block on S, indexed by position in
    // S.indices(): entry (a, b) inverts alpha(S_a, S_b). Null when l exceeds
    // kMaxSubsetRank (no tables are built then).
    const RatMatrix *cartan_block_inverse(LeviDescriptor s) const;

    // The W-invariant inner product on a in APoint coordinates.
    const RatMatrix &gram() const { return tables_->gram; }
    const RatMatrix &gram_inverse() const { return tables_->gram_inverse; }
    // The induced form on the simple roots: ((alpha_j, alpha_k))_{jk},
    // obtained by inverting gram().
    const RatMatrix &root_gram() const { return tables_->root_gram; }
    const RatMatrix *root_gram_block_inverse(LeviDescriptor s) const;

    std::string describe() const;

private:
    struct Tables
    {
        RatMatrix central_map; // l x (n-l): torus coords -> central coords
        RatMatrix gram;
        RatMatrix gram_inverse;
        RatMatrix root_gram;
        std::vector<RatMatrix> cartan_inverse;    // indexed by mask
        std::vector<RatMatrix> root_gram_inverse; // indexed by mask
    };

    void validate() const;
    void build_tables();

    std::size_t n_ = 0;
    std::size_t l_ = 0;
    IntMatrix alpha_;
    std::vector<Rational> lengths_;
    std::vector<SimpleFactor> factors_;
    std::string label_;
    std::optional<std::size_t> gl_degree_;
    std::shared_ptr<const Tables> tables_;
};

// Cartan block (alpha(i, j) = <alpha_j, alpha_i^vee>) and Bourbaki root
// lengths for a simple simply connected type, nodes in Bourbaki order.
struct SimpleType
{
    char family = 'A';
    std::size_t rank = 0;
    IntMatrix cartan;
    std::vector<Rational> lengths;
};

SimpleType simple_type(char family, std::size_t rank);

// Parses the group grammar
//   spec   := factor ("*" factor)*
//   factor := SCTYPE | "GL" INT | "T" INT | "Gext(" SCTYPE [";m=" INTVEC] ")"
// INTVEC is either a comma list of l integers or a signed sum of basis terms
// such as "-e1" or "e2-2e5". Gext without m picks the lowest node whose
// class realises the largest cyclic quotient of the fundamental group.
RootDatum build_group(std::string_view spec);

// Simple type plus a rank-one torus whose extension row is m.
RootDatum gext(char family, std::size_t rank, std::span<const std::int64_t> m);

// Pairing with -inf absorption. Throws PreconditionError when a -inf
// coordinate meets a negative coefficient.
ExtendedRational pair(const Weight &lambda, const ValuationVector &x);
Rational pair(const Weight &lambda, const APoint &x);

bool is_dominant(const RootDatum &datum, const APoint &x);

// x <= y iff y - x is a non-negative combination of simple coroots.
bool leq(const RootDatum &datum, const APoint &x, const APoint &y);

IntMatrix simple_reflection(const RootDatum &datum, std::size_t j);
WeylElement weyl_from_word(const RootDatum &datum, std::span<const std::size_t> word);
WeylElement weyl_identity(std::size_t n);
APoint apply(const IntMatrix &m, const APoint &x);
APoint apply(const WeylElement &w, const APoint &x);
Weight reflect_weight(const RootDatum &datum, std::size_t j, const Weight &lambda);

struct DominantRep
{
    APoint point;
    WeylElement w; // point == w . x
};

DominantRep dominant_rep(const RootDatum &datum, const APoint &x);

// Reduced word of w, recovered by straightening w applied to a regular
// dominant point.
std::vector<std::size_t> reduced_word(const RootDatum &datum, const IntMatrix &w);

// Sorted W-orbit of a weight. Throws ResourceLimitError past `guard` elements.
std::vector<Weight> weyl_orbit(const RootDatum &datum, const Weight &lambda,
                               std::size_t guard = kDefaultOrbitGuard);

// p_M: projection of a onto a_M along the span of the coroots in S.
APoint project_levi(const RootDatum &datum, const APoint &x, LeviDescriptor s);

// The Levi datum for S. Coordinates are permuted so the retained simple roots
// come first; levi_permutation gives new position -> old index.
RootDatum levi(const RootDatum &datum, LeviDescriptor s);
std::vector<std::size_t> levi_permutation(const RootDatum &datum, LeviDescriptor s);
APoint permute(const APoint &x, std::span<const std::size_t> perm);

// Lambda_G / X_*(A_G) as invariant factors, with a lift in X_*(A) of a
// generator for each factor.
struct ComponentGroup
{
    std::vector<std::int64_t> invariant_factors;
    std::vector<std::vector<std::int64_t>> generators;
    IntMatrix coordinatizer; // rows used with class_of
    std::vector<std::size_t> factor_rows;

    std::int64_t order() const;
    // Coordinates of mu's class, one residue per invariant factor.
    std::vector<std::int64_t> class_of(std::span<const std::int64_t> mu) const;
    // One lift per element of the group, in lexicographic order of residues.
    std::vector<std::vector<std::int64_t>> all_classes() const;
};

ComponentGroup component_group(const RootDatum &datum);

// Replace w_i by w_i + sum_k lambda(i, k) w_{l+k} for i < l. `lambda` is
// l x (n - l). The returned datum describes the same group in the new basis.
RootDatum change_extension(const RootDatum &datum, const IntMatrix &lambda);
APoint change_extension_coords(const RootDatum &datum, const IntMatrix &lambda, const APoint &x);

// Slopes (nu_1 >= ... >= nu_n) of a point of the GLn preset, or nullopt for
// other data.
std::optional<std::vector<Rational>> gl_slopes(const RootDatum &datum, const APoint &x);
APoint from_gl_slopes(std::span<const Rational> slopes);

} // namespace nstrata

#endif
