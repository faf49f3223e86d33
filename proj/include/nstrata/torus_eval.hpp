#ifndef NSTRATA_TORUS_EVAL_HPP
#define NSTRATA_TORUS_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nstrata/root_datum.hpp>

namespace nstrata
{

// Finite sum of c * pi^v with rational exponents, under the convention
// val(pi) = -1, so val(p) = -(least exponent) and val(0) = -inf.
class LaurentPoly
{
public:
    LaurentPoly() = default;

    static LaurentPoly monomial(Rational coefficient, Rational exponent);
    static LaurentPoly constant(Rational c) { return monomial(c, Rational()); }

    const std::map<Rational, Rational> &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    // lcm of the exponent denominators (1 for the zero polynomial).
    std::int64_t denominator() const;

    ExtendedRational val() const;

    // Single-term polynomials only; throws PreconditionError otherwise.
    LaurentPoly invert_monomial() const;
    // Integer power of a monomial (negative powers allowed).
    LaurentPoly monomial_pow(std::int64_t k) const;

    // Terms by increasing exponent, "c*pi^(v)" joined by " + "; "0" if empty.
    std::string str() const;
    // Inverse of str() for a single term, also accepting "pi^(v)", "-pi^(v)"
    // and a bare coefficient.
    static LaurentPoly parse_monomial(std::string_view text);

    LaurentPoly operator-() const;
    LaurentPoly &operator+=(const LaurentPoly &o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b) { return a += -b; }
    friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b);
    friend bool operator==(const LaurentPoly &, const LaurentPoly &) = default;

private:
    void add_term(const Rational &exponent, const Rational &coefficient);

    std::map<Rational, Rational> terms_;
};

// A point a of A given by the monomials w_i(a).
struct TorusPoint
{
    std::vector<LaurentPoly> values;

    // Comma-separated monomials, e.g. "1*pi^(-1),-1*pi^(-2)".
    static TorusPoint parse(std::string_view text);
    std::int64_t denominator() const;
    std::string str() const;

    // Componentwise product.
    friend TorusPoint operator*(const TorusPoint &a, const TorusPoint &b);
};

LaurentPoly eval_char(const Weight &lambda, const TorusPoint &a);

// (nu_a)_i = val w_i(a)
APoint nu_a(const TorusPoint &a);

// W-orbits of w_1..w_l; reused across evaluations.
std::vector<std::vector<Weight>> fundamental_orbits(const RootDatum &datum, std::size_t guard = kDefaultOrbitGuard);

struct CEvaluation
{
    std::vector<LaurentPoly> values;
    ValuationVector d_c;
};

// c_i(a) = sum over the W-orbit of w_i of e^lambda(a) for i < l, w_i(a) otherwise.
CEvaluation eval_c(const RootDatum &datum, const TorusPoint &a);
CEvaluation eval_c(const RootDatum &datum, const std::vector<std::vector<Weight>> &orbits, const TorusPoint &a);

struct RnuReport
{
    APoint nu_dominant;
    APoint retracted;
    ValuationVector d_c;
    bool retract_matches = false;
    bool inequalities_hold = false;
    bool strictness_holds = false;
    bool pass = false;
    std::string detail;
};

// r(d_c) against the dominant conjugate of nu_a, the bounds
// val c_i <= <w_i, nu_dom> (equality off I_M), and uniqueness of the
// maximal orbit term off I_M.
RnuReport check_thm_rnu(const RootDatum &datum, const std::vector<std::vector<Weight>> &orbits, const TorusPoint &a);
RnuReport check_thm_rnu(const RootDatum &datum, const TorusPoint &a);

// Slopes, in decreasing order, of the least concave majorant of
// (0, 0), (i, d_i) for i = 1..n; -inf entries are skipped and d_n must be finite.
std::vector<Rational> classical_newton_slopes(const std::vector<ExtendedRational> &d);

struct RandomTorusOptions
{
    std::int64_t denominator = 2;    // exponents drawn from (1/N)Z before any wall projection
    std::int64_t exponent_bound = 4; // |v| <= exponent_bound
    // Probability of pushing nu_a onto a random face, where orbit terms collide.
    double wall_probability = 0.5;
};

TorusPoint random_torus_point(const RootDatum &datum, std::mt19937_64 &rng, const RandomTorusOptions &opts = {});

} // namespace nstrata

#endif
