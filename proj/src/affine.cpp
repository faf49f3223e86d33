#include <nstrata/affine.hpp>

#include <algorithm>
#include <numeric>
#include <set>

#include <nstrata/errors.hpp>
#include <nstrata/strata.hpp>

namespace nstrata
{

namespace
{

constexpr std::size_t kMaxReductionSteps = 1'000'000;

std::vector<Rational> to_rationals(std::span<const std::int64_t> v)
{
    return std::vector<Rational>(v.begin(), v.end());
}

} // namespace

// ---------------------------------------------------------------------------
// AffineWeylElement

AffineWeylElement AffineWeylElement::identity(std::size_t n)
{
    return AffineWeylElement{std::vector<std::int64_t>(n, 0), IntMatrix::identity(n)};
}

AffineWeylElement AffineWeylElement::translation_by(std::span<const std::int64_t> mu)
{
    return AffineWeylElement{{mu.begin(), mu.end()}, IntMatrix::identity(mu.size())};
}

APoint AffineWeylElement::act(const APoint &x) const
{
    APoint y = apply(linear, x);
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += Rational(translation[i]);
    }
    return y;
}

AffineWeylElement operator*(const AffineWeylElement &a, const AffineWeylElement &b)
{
    auto t = a.linear.apply<std::int64_t>(b.translation);
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] += a.translation[i];
    }
    return AffineWeylElement{std::move(t), a.linear * b.linear};
}

Rational AffineRoot::operator()(const APoint &x) const
{
    Rational v(constant);
    for (std::size_t i = 0; i < gradient.size(); ++i) {
        if (gradient[i] != 0) {
            v += Rational(gradient[i]) * x[i];
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Root system data

std::vector<std::vector<std::int64_t>> positive_roots(const RootDatum &datum, const SimpleFactor &factor)
{
    const auto l = datum.semisimple_rank();
    std::set<std::vector<std::int64_t>> roots;
    std::vector<std::vector<std::int64_t>> level;
    for (auto j : factor.nodes) {
        std::vector<std::int64_t> c(l, 0);
        c[j] = 1;
        roots.insert(c);
        level.push_back(std::move(c));
    }
    // Root strings: beta + alpha_j is a root iff p - <beta, alpha_j^vee> > 0,
    // where p is the length of the string below beta.
    while (!level.empty()) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto &beta : level) {
            for (auto j : factor.nodes) {
                std::int64_t pairing = 0;
                for (auto k : factor.nodes) {
                    pairing += beta[k] * datum.alpha()(j, k);
                }
                std::int64_t p = 0;
                auto down = beta;
                while (down[j] > 0) {
                    --down[j];
                    if (!roots.contains(down)) {
                        break;
                    }
                    ++p;
                }
                if (p - pairing > 0) {
                    auto up = beta;
                    ++up[j];
                    if (roots.insert(up).second) {
                        next.push_back(std::move(up));
                    }
                }
            }
        }
        level = std::move(next);
    }
    return {roots.begin(), roots.end()};
}

AlcoveGeometry alcove_geometry(const RootDatum &datum)
{
    const auto n = datum.rank();
    const auto l = datum.semisimple_rank();
    AlcoveGeometry g;
    for (std::size_t j = 0; j < l; ++j) {
        std::vector<std::int64_t> coroot(n, 0);
        coroot[j] = 1;
        g.simple_roots.push_back(AffineRoot{datum.alpha().column(j), 0, std::move(coroot)});
    }
    std::vector<Rational> wall_values(l);
    for (const auto &f : datum.factors()) {
        const auto roots = positive_roots(datum, f);
        const auto height = [](const std::vector<std::int64_t> &c) { return std::accumulate(c.begin(), c.end(), std::int64_t{0}); };
        const auto theta = *std::max_element(roots.begin(), roots.end(),
                                             [&](const auto &a, const auto &b) { return height(a) < height(b); });
        const std::int64_t h = height(theta) + 1;
        g.highest_roots.push_back(theta);
        g.coxeter_numbers.push_back(h);

        // theta^vee = sum_k c_k (L_k / L_theta) alpha_k^vee
        Rational theta_len;
        for (auto a : f.nodes) {
            for (auto b : f.nodes) {
                theta_len += Rational(theta[a] * theta[b]) * datum.root_gram()(a, b);
            }
        }
        std::vector<std::int64_t> gradient(n, 0);
        std::vector<std::int64_t> coroot(n, 0);
        for (auto k : f.nodes) {
            const Rational c = Rational(theta[k]) * datum.root_lengths()[k] / theta_len;
            if (!c.is_integer()) {
                throw InvariantViolation("highest coroot is not integral");
            }
            coroot[k] = -c.num();
            for (std::size_t i = 0; i < n; ++i) {
                gradient[i] -= theta[k] * datum.alpha()(i, k);
            }
            wall_values[k] = Rational(1, h + 1);
        }
        g.simple_roots.push_back(AffineRoot{std::move(gradient), 1, std::move(coroot)});
    }
    // Base point: <alpha_j, p0> = 1/(h+1), torus coordinates 0.
    g.base_point = APoint(n);
    if (l > 0) {
        RatMatrix ct(l, l);
        for (std::size_t i = 0; i < l; ++i) {
            for (std::size_t j = 0; j < l; ++j) {
                ct(j, i) = Rational(datum.alpha()(i, j));
            }
        }
        const auto b = *solve(ct, wall_values);
        for (std::size_t i = 0; i < l; ++i) {
            g.base_point[i] = b[i];
        }
    }
    for (const auto &a : g.simple_roots) {
        Rational pairing;
        for (std::size_t i = 0; i < n; ++i) {
            pairing += Rational(a.gradient[i] * a.coroot[i]);
        }
        if (pairing != Rational(2) || a(g.base_point).sign() <= 0) {
            throw InvariantViolation("inconsistent alcove data");
        }
    }
    return g;
}

AffineWeylElement affine_reflection(const AffineRoot &a)
{
    // s_a(x) = x - a(x) beta^vee
    const auto n = a.gradient.size();
    AffineWeylElement s = AffineWeylElement::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.translation[i] = -a.constant * a.coroot[i];
        for (std::size_t k = 0; k < n; ++k) {
            s.linear(i, k) -= a.coroot[i] * a.gradient[k];
        }
    }
    return s;
}

AlcoveReduction alcove_reduce(const RootDatum &datum, const AlcoveGeometry &geom, const AffineWeylElement &x)
{
    if (x.translation.size() != datum.rank()) {
        throw ValidationError("affine element has the wrong rank");
    }
    AlcoveReduction out{x, {}};
    APoint p = x.act(geom.base_point);
    for (std::size_t step = 0;; ++step) {
        if (step > kMaxReductionSteps) {
            throw InvariantViolation("alcove reduction did not terminate");
        }
        std::size_t a = 0;
        for (; a < geom.simple_roots.size(); ++a) {
            if (geom.simple_roots[a](p).sign() < 0) {
                break;
            }
        }
        if (a == geom.simple_roots.size()) {
            return out;
        }
        const auto s = affine_reflection(geom.simple_roots[a]);
        out.x0 = s * out.x0;
        out.word.push_back(a);
        p = s.act(p);
    }
}

AlcoveReduction alcove_reduce(const RootDatum &datum, const AffineWeylElement &x)
{
    return alcove_reduce(datum, alcove_geometry(datum), x);
}

// ---------------------------------------------------------------------------
// Lambda_G

LambdaGElement LambdaGElement::from_class(const RootDatum &datum, std::span<const std::int64_t> coords)
{
    if (coords.size() != datum.torus_rank()) {
        throw ValidationError("class needs " + std::to_string(datum.torus_rank()) + " coordinates");
    }
    LambdaGElement e{std::vector<std::int64_t>(datum.rank(), 0)};
    std::copy(coords.begin(), coords.end(), e.lift.begin() + static_cast<std::ptrdiff_t>(datum.semisimple_rank()));
    return e;
}

std::vector<std::int64_t> LambdaGElement::class_coords(const RootDatum &datum) const
{
    return {lift.begin() + static_cast<std::ptrdiff_t>(datum.semisimple_rank()), lift.end()};
}

AffineWeylElement section_s(const RootDatum &datum, const LambdaGElement &nu)
{
    if (nu.lift.size() != datum.rank()) {
        throw ValidationError("lift needs " + std::to_string(datum.rank()) + " coordinates");
    }
    return alcove_reduce(datum, AffineWeylElement::translation_by(nu.lift)).x0;
}

WeylElement w_nu(const RootDatum &datum, const LambdaGElement &nu)
{
    auto m = section_s(datum, nu).linear;
    auto word = reduced_word(datum, m);
    return WeylElement{std::move(m), std::move(word)};
}

std::size_t defect(const RootDatum &datum, const LambdaGElement &nu)
{
    RatMatrix d = to_rational(w_nu(datum, nu).matrix);
    for (std::size_t i = 0; i < d.rows(); ++i) {
        d(i, i) -= Rational(1);
    }
    return rank(d);
}

Rational chi(const RootDatum &datum, std::size_t i, const LambdaGElement &nu)
{
    const APoint central = project_levi(datum, APoint(to_rationals(nu.lift)), LeviDescriptor::full(datum.semisimple_rank()));
    return central[i].frac();
}

DefectReport verify_theorem_d_equals_half_defect(const RootDatum &datum, const LambdaGElement &nu)
{
    const auto w = w_nu(datum, nu);
    DefectReport r;
    r.class_coords = nu.class_coords(datum);
    r.w_word = w.word;
    r.defect = defect(datum, nu);
    const APoint central = project_levi(datum, APoint(to_rationals(nu.lift)), LeviDescriptor::full(datum.semisimple_rank()));
    r.d_G = d_G(datum, central);
    for (std::size_t i = 0; i < datum.rank(); ++i) {
        r.chi_sum += chi(datum, i, nu);
    }
    const Rational def(static_cast<std::int64_t>(r.defect));
    r.pass = r.d_G * Rational(2) == def && r.chi_sum * Rational(2) == def;
    return r;
}

std::int64_t matrix_order(const IntMatrix &m, std::int64_t cap)
{
    const auto id = IntMatrix::identity(m.rows());
    IntMatrix p = m;
    for (std::int64_t k = 1; k <= cap; ++k) {
        if (p == id) {
            return k;
        }
        p = p * m;
    }
    throw ResourceLimitError("matrix order exceeds " + std::to_string(cap));
}

CharReport reflection_char_multiset_check(const RootDatum &datum, const LambdaGElement &nu)
{
    const auto w = w_nu(datum, nu);
    CharReport r;
    r.characteristic_polynomial = characteristic_polynomial(w.matrix);
    const auto order = matrix_order(w.matrix);
    IntPoly rest = r.characteristic_polynomial;
    for (std::int64_t d = 1; d <= order; ++d) {
        if (order % d != 0) {
            continue;
        }
        const auto phi = cyclotomic_polynomial(d);
        std::int64_t mult = 0;
        while (auto q = divide_exact(rest, phi)) {
            rest = std::move(*q);
            ++mult;
        }
        if (mult > 0) {
            r.cyclotomic_factors.emplace_back(d, mult);
        }
    }
    if (rest != IntPoly{1}) {
        r.detail = "characteristic polynomial is not a product of cyclotomic factors of the element's order";
        return r;
    }
    for (std::size_t i = 0; i < datum.rank(); ++i) {
        r.chis.push_back(chi(datum, i, nu));
    }
    // Every chi value must belong to some factor's order, and each unit
    // residue k/d must occur once per copy of Phi_d.
    std::size_t matched = 0;
    for (const auto &[d, mult] : r.cyclotomic_factors) {
        for (std::int64_t k = 0; k < d; ++k) {
            if (std::gcd(k, d) != 1) {
                continue;
            }
            const Rational target(k, d);
            const auto count = std::count(r.chis.begin(), r.chis.end(), target);
            if (count != mult) {
                r.detail = "value " + target.str() + " occurs " + std::to_string(count) + " times, expected " +
                           std::to_string(mult);
                return r;
            }
            matched += static_cast<std::size_t>(count);
        }
    }
    if (matched != r.chis.size()) {
        r.detail = "some chi values have denominators with no matching cyclotomic factor";
        return r;
    }
    r.pass = true;
    return r;
}

} // namespace nstrata
