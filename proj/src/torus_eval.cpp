#include <nstrata/torus_eval.hpp>

#include <algorithm>
#include <iterator>

#include <nstrata/chamber.hpp>
#include <nstrata/errors.hpp>

namespace nstrata
{

namespace
{

Rational rational_pow(Rational base, std::int64_t k)
{
    if (k < 0) {
        base = Rational(1) / base;
        k = -k;
    }
    Rational out(1);
    while (k > 0) {
        if (k & 1) {
            out *= base;
        }
        base *= base;
        k >>= 1;
    }
    return out;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::monomial(Rational coefficient, Rational exponent)
{
    LaurentPoly p;
    p.add_term(exponent, coefficient);
    return p;
}

void LaurentPoly::add_term(const Rational &exponent, const Rational &coefficient)
{
    if (coefficient.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

std::int64_t LaurentPoly::denominator() const
{
    std::int64_t n = 1;
    for (const auto &[e, c] : terms_) {
        n = lcm64(n, e.den());
    }
    return n;
}

ExtendedRational LaurentPoly::val() const
{
    if (terms_.empty()) {
        return ExtendedRational::neg_inf();
    }
    return ExtendedRational(-terms_.begin()->first);
}

LaurentPoly LaurentPoly::invert_monomial() const
{
    return monomial_pow(-1);
}

LaurentPoly LaurentPoly::monomial_pow(std::int64_t k) const
{
    if (!is_monomial()) {
        throw PreconditionError("only a single nonzero term can be inverted or raised to a power");
    }
    const auto &[e, c] = *terms_.begin();
    return monomial(rational_pow(c, k), e * Rational(k));
}

std::string LaurentPoly::str() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string s;
    for (const auto &[e, c] : terms_) {
        if (!s.empty()) {
            s += " + ";
        }
        s += c.str() + "*pi^(" + e.str() + ")";
    }
    return s;
}

LaurentPoly LaurentPoly::parse_monomial(std::string_view text)
{
    const auto s = trim(text);
    const auto pi = s.find("pi");
    if (pi == std::string_view::npos) {
        return constant(Rational::parse(s));
    }
    Rational coef(1);
    auto head = trim(s.substr(0, pi));
    if (!head.empty()) {
        if (head.back() == '*') {
            coef = Rational::parse(head.substr(0, head.size() - 1));
        } else if (head == "-") {
            coef = Rational(-1);
        } else if (head != "+") {
            throw ParseError("malformed monomial '" + std::string(text) + "'");
        }
    }
    auto tail = trim(s.substr(pi + 2));
    Rational exponent(1);
    if (!tail.empty()) {
        if (tail.front() != '^') {
            throw ParseError("malformed monomial '" + std::string(text) + "'");
        }
        tail.remove_prefix(1);
        if (!tail.empty() && tail.front() == '(') {
            if (tail.back() != ')') {
                throw ParseError("unbalanced parenthesis in '" + std::string(text) + "'");
            }
            tail = tail.substr(1, tail.size() - 2);
        }
        exponent = Rational::parse(tail);
    }
    return monomial(coef, exponent);
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly p = *this;
    for (auto &[e, c] : p.terms_) {
        c = -c;
    }
    return p;
}

LaurentPoly &LaurentPoly::operator+=(const LaurentPoly &o)
{
    for (const auto &[e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b)
{
    LaurentPoly p;
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            p.add_term(ea + eb, ca * cb);
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Torus points

TorusPoint TorusPoint::parse(std::string_view text)
{
    TorusPoint a;
    while (true) {
        const auto comma = text.find(',');
        auto p = LaurentPoly::parse_monomial(text.substr(0, comma));
        if (!p.is_monomial()) {
            throw ParseError("torus coordinates must be nonzero monomials");
        }
        a.values.push_back(std::move(p));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return a;
}

std::int64_t TorusPoint::denominator() const
{
    std::int64_t n = 1;
    for (const auto &v : values) {
        n = lcm64(n, v.denominator());
    }
    return n;
}

std::string TorusPoint::str() const
{
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += (i ? "," : "") + values[i].str();
    }
    return s;
}

TorusPoint operator*(const TorusPoint &a, const TorusPoint &b)
{
    TorusPoint c;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        c.values.push_back(a.values[i] * b.values[i]);
    }
    return c;
}

LaurentPoly eval_char(const Weight &lambda, const TorusPoint &a)
{
    if (lambda.size() != a.values.size()) {
        throw ValidationError("weight and torus point have different ranks");
    }
    Rational coef(1);
    Rational exponent;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] == 0) {
            continue;
        }
        const auto &[e, c] = *a.values[i].monomial_pow(lambda[i]).terms().begin();
        coef *= c;
        exponent += e;
    }
    return LaurentPoly::monomial(coef, exponent);
}

APoint nu_a(const TorusPoint &a)
{
    APoint x(a.values.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!a.values[i].is_monomial()) {
            throw PreconditionError("torus coordinates must be nonzero monomials");
        }
        x[i] = a.values[i].val().value();
    }
    return x;
}

std::vector<std::vector<Weight>> fundamental_orbits(const RootDatum &datum, std::size_t guard)
{
    std::vector<std::vector<Weight>> out;
    for (std::size_t i = 0; i < datum.semisimple_rank(); ++i) {
        std::vector<std::int64_t> w(datum.rank(), 0);
        w[i] = 1;
        out.push_back(weyl_orbit(datum, Weight(std::move(w)), guard));
    }
    return out;
}

CEvaluation eval_c(const RootDatum &datum, const std::vector<std::vector<Weight>> &orbits, const TorusPoint &a)
{
    if (a.values.size() != datum.rank()) {
        throw ValidationError("torus point has " + std::to_string(a.values.size()) + " coordinates, expected " +
                              std::to_string(datum.rank()));
    }
    CEvaluation out;
    for (std::size_t i = 0; i < datum.rank(); ++i) {
        LaurentPoly c;
        if (i < datum.semisimple_rank()) {
            for (const auto &lambda : orbits[i]) {
                c += eval_char(lambda, a);
            }
        } else {
            c = a.values[i];
        }
        out.d_c.coords.push_back(c.val());
        out.values.push_back(std::move(c));
    }
    return out;
}

CEvaluation eval_c(const RootDatum &datum, const TorusPoint &a)
{
    return eval_c(datum, fundamental_orbits(datum), a);
}

RnuReport check_thm_rnu(const RootDatum &datum, const std::vector<std::vector<Weight>> &orbits, const TorusPoint &a)
{
    const auto l = datum.semisimple_rank();
    const APoint nu = nu_a(a);
    RnuReport r;
    r.nu_dominant = dominant_rep(datum, nu).point;
    r.d_c = eval_c(datum, orbits, a).d_c;
    r.retracted = retract(datum, r.d_c).y;
    r.retract_matches = r.retracted == r.nu_dominant;

    const auto face = face_of(datum, r.nu_dominant);
    r.inequalities_hold = true;
    r.strictness_holds = true;
    for (std::size_t i = 0; i < datum.rank() && r.inequalities_hold; ++i) {
        const ExtendedRational bound(r.nu_dominant[i]);
        const bool strict = i >= l || !face.contains(i);
        if (r.d_c[i] > bound || (strict && r.d_c[i] != bound)) {
            r.inequalities_hold = false;
            r.detail = "val c_" + std::to_string(i + 1) + " = " + r.d_c[i].str() + " against bound " + bound.str();
        }
        if (i >= l) {
            continue;
        }
        // Orbit terms attaining the maximal valuation <w_i, nu_dom>.
        std::size_t top = 0;
        for (const auto &lambda : orbits[i]) {
            if (pair(lambda, nu) == r.nu_dominant[i]) {
                ++top;
            }
        }
        if (strict && top != 1) {
            r.strictness_holds = false;
            r.detail = std::to_string(top) + " maximal terms in c_" + std::to_string(i + 1);
        }
    }
    if (!r.retract_matches && r.detail.empty()) {
        r.detail = "r(d_c) differs from the dominant conjugate of nu_a";
    }
    r.pass = r.retract_matches && r.inequalities_hold && r.strictness_holds;
    return r;
}

RnuReport check_thm_rnu(const RootDatum &datum, const TorusPoint &a)
{
    return check_thm_rnu(datum, fundamental_orbits(datum), a);
}

std::vector<Rational> classical_newton_slopes(const std::vector<ExtendedRational> &d)
{
    if (d.empty() || d.back().is_neg_inf()) {
        throw PreconditionError("the last entry must be finite");
    }
    struct Pt
    {
        Rational x;
        Rational y;
    };
    std::vector<Pt> hull{{Rational(), Rational()}};
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].is_neg_inf()) {
            continue;
        }
        const Pt c{Rational(static_cast<std::int64_t>(i + 1)), d[i].value()};
        // Drop the middle point while it lies on or below the chord.
        while (hull.size() >= 2) {
            const auto &a = hull[hull.size() - 2];
            const auto &b = hull.back();
            if ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) < Rational()) {
                break;
            }
            hull.pop_back();
        }
        hull.push_back(c);
    }
    std::vector<Rational> slopes;
    for (std::size_t k = 1; k < hull.size(); ++k) {
        const Rational s = (hull[k].y - hull[k - 1].y) / (hull[k].x - hull[k - 1].x);
        for (auto x = hull[k - 1].x.num(); x < hull[k].x.num(); ++x) {
            slopes.push_back(s);
        }
    }
    return slopes;
}

TorusPoint random_torus_point(const RootDatum &datum, std::mt19937_64 &rng, const RandomTorusOptions &opts)
{
    const auto n = datum.rank();
    const auto l = datum.semisimple_rank();
    const auto N = opts.denominator;
    std::uniform_int_distribution<std::int64_t> num(-opts.exponent_bound * N, opts.exponent_bound * N);
    APoint nu(n);
    for (std::size_t i = 0; i < n; ++i) {
        nu[i] = Rational(num(rng), N);
    }
    std::bernoulli_distribution on_wall(opts.wall_probability);
    if (l > 0 && on_wall(rng)) {
        // Project onto a random nonempty face, then move by a random Weyl
        // element so the collision is not always in the dominant chamber.
        std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << l) - 1);
        nu = project_levi(datum, nu, LeviDescriptor(mask(rng)));
        std::uniform_int_distribution<std::size_t> node(0, l - 1);
        std::uniform_int_distribution<std::size_t> length(0, 2 * l);
        for (auto k = length(rng); k > 0; --k) {
            nu = apply(simple_reflection(datum, node(rng)), nu);
        }
    }
    static constexpr std::int64_t kCoefficients[] = {1, -1, 2, -2};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(kCoefficients) - 1);
    TorusPoint a;
    for (std::size_t i = 0; i < n; ++i) {
        a.values.push_back(LaurentPoly::monomial(Rational(kCoefficients[pick(rng)]), -nu[i]));
    }
    return a;
}

} // namespace nstrata
