#include <nstrata/root_datum.hpp>

#include <algorithm>
#include <bit>
#include <deque>
#include <set>
#include <sstream>

#include <nstrata/errors.hpp>

#include "cartan_internal.hpp"

namespace nstrata
{

// ---------------------------------------------------------------------------
// Value types

APoint APoint::from_ints(std::span<const std::int64_t> v)
{
    APoint p(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        p[i] = Rational(v[i]);
    }
    return p;
}

bool APoint::is_integral() const
{
    return std::all_of(coords.begin(), coords.end(), [](const Rational &r) { return r.is_integer(); });
}

APoint operator+(const APoint &a, const APoint &b)
{
    APoint r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
    }
    return r;
}

APoint operator-(const APoint &a, const APoint &b)
{
    APoint r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] - b[i];
    }
    return r;
}

ValuationVector::ValuationVector(const APoint &x)
{
    coords.reserve(x.size());
    for (const auto &c : x.coords) {
        coords.emplace_back(c);
    }
}

bool ValuationVector::is_finite() const
{
    return std::all_of(coords.begin(), coords.end(), [](const ExtendedRational &r) { return r.is_finite(); });
}

APoint ValuationVector::finite() const
{
    APoint p(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        p[i] = coords[i].value();
    }
    return p;
}

LeviDescriptor LeviDescriptor::from_indices(std::span<const std::size_t> indices)
{
    std::uint64_t m = 0;
    for (auto j : indices) {
        if (j >= 64) {
            throw ValidationError("Levi index out of range");
        }
        m |= std::uint64_t{1} << j;
    }
    return LeviDescriptor(m);
}

LeviDescriptor LeviDescriptor::full(std::size_t l)
{
    return LeviDescriptor(l >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << l) - 1);
}

std::size_t LeviDescriptor::size() const noexcept
{
    return static_cast<std::size_t>(std::popcount(mask_));
}

std::vector<std::size_t> LeviDescriptor::indices() const
{
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < 64; ++j) {
        if (contains(j)) {
            out.push_back(j);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// RootDatum

RootDatum::RootDatum(IntMatrix alpha, std::size_t semisimple_rank, std::vector<Rational> root_lengths,
                     std::string label, std::optional<std::size_t> gl_degree)
    : n_(alpha.rows()), l_(semisimple_rank), alpha_(std::move(alpha)), lengths_(std::move(root_lengths)),
      label_(std::move(label)), gl_degree_(gl_degree)
{
    validate();
    factors_ = detail::classify_components(alpha_, l_, lengths_);
    build_tables();
}

void RootDatum::validate() const
{
    if (n_ == 0 || n_ > kMaxRank) {
        throw ValidationError("rank must be between 1 and " + std::to_string(kMaxRank));
    }
    if (l_ > n_ || alpha_.cols() != l_) {
        throw ValidationError("semisimple rank inconsistent with the root matrix");
    }
    if (lengths_.size() != l_) {
        throw ValidationError("one root length per simple root is required");
    }
    for (std::size_t i = 0; i < l_; ++i) {
        if (lengths_[i].sign() <= 0) {
            throw ValidationError("root lengths must be positive");
        }
        for (std::size_t j = 0; j < l_; ++j) {
            const auto a = alpha_(i, j);
            if (i == j && a != 2) {
                throw ValidationError("Cartan diagonal must be 2");
            }
            if (i != j) {
                if (a > 0) {
                    throw ValidationError("Cartan off-diagonal entries must be <= 0");
                }
                // alpha(i, j) = 2 (a_i, a_j) / L_i must be symmetrizable by the lengths.
                if (lengths_[i] * Rational(a) != lengths_[j] * Rational(alpha_(j, i))) {
                    throw ValidationError("Cartan block is not symmetrized by the root lengths");
                }
            }
        }
    }
    // Finite type: the symmetrized form must be positive definite.
    for (std::size_t k = 1; k <= l_; ++k) {
        RatMatrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                minor(i, j) = lengths_[i] * Rational(alpha_(i, j));
            }
        }
        // Positive definiteness via pivots of Gaussian elimination.
        for (std::size_t c = 0; c < k; ++c) {
            if (minor(c, c).sign() <= 0) {
                throw ValidationError("Cartan block is not of finite type");
            }
            for (std::size_t r = c + 1; r < k; ++r) {
                const Rational f = minor(r, c) / minor(c, c);
                for (std::size_t j = c; j < k; ++j) {
                    minor(r, j) -= f * minor(c, j);
                }
            }
        }
    }
}

void RootDatum::build_tables()
{
    auto t = std::make_shared<Tables>();
    const auto tor = n_ - l_;

    // Central coordinates: C^T g = -E^T t.
    RatMatrix ct(l_, l_);
    for (std::size_t i = 0; i < l_; ++i) {
        for (std::size_t j = 0; j < l_; ++j) {
            ct(j, i) = Rational(alpha_(i, j));
        }
    }
    const auto ct_inv = l_ > 0 ? *inverse(ct) : RatMatrix();
    t->central_map = RatMatrix(l_, tor);
    for (std::size_t i = 0; i < l_; ++i) {
        for (std::size_t k = 0; k < tor; ++k) {
            Rational acc;
            for (std::size_t j = 0; j < l_; ++j) {
                acc -= ct_inv(i, j) * Rational(alpha_(l_ + k, j));
            }
            t->central_map(i, k) = acc;
        }
    }

    // Form on a: coroot part (a_i^v, a_j^v) = 2 alpha(i, j) / L_j on the
    // coroot coordinates b = x_ss - central_map t, identity on the torus part.
    RatMatrix proj(l_, n_);
    for (std::size_t i = 0; i < l_; ++i) {
        proj(i, i) = Rational(1);
        for (std::size_t k = 0; k < tor; ++k) {
            proj(i, l_ + k) = -t->central_map(i, k);
        }
    }
    RatMatrix coroot_form(l_, l_);
    for (std::size_t i = 0; i < l_; ++i) {
        for (std::size_t j = 0; j < l_; ++j) {
            coroot_form(i, j) = Rational(2 * alpha_(i, j)) / lengths_[j];
        }
    }
    t->gram = proj.transpose() * coroot_form * proj;
    for (std::size_t k = 0; k < tor; ++k) {
        t->gram(l_ + k, l_ + k) += Rational(1);
    }
    auto gram_inv = inverse(t->gram);
    if (!gram_inv) {
        throw InvariantViolation("invariant form is degenerate");
    }
    t->gram_inverse = std::move(*gram_inv);
    const RatMatrix a = to_rational(alpha_);
    t->root_gram = a.transpose() * t->gram_inverse * a;

    if (l_ <= kMaxSubsetRank) {
        const std::size_t count = std::size_t{1} << l_;
        t->cartan_inverse.resize(count);
        t->root_gram_inverse.resize(count);
        for (std::size_t mask = 0; mask < count; ++mask) {
            const auto idx = LeviDescriptor(mask).indices();
            RatMatrix block(idx.size(), idx.size());
            RatMatrix gblock(idx.size(), idx.size());
            for (std::size_t p = 0; p < idx.size(); ++p) {
                for (std::size_t q = 0; q < idx.size(); ++q) {
                    block(p, q) = Rational(alpha_(idx[p], idx[q]));
                    gblock(p, q) = t->root_gram(idx[p], idx[q]);
                }
            }
            t->cartan_inverse[mask] = *inverse(block);
            t->root_gram_inverse[mask] = *inverse(gblock);
        }
    }
    tables_ = std::move(t);
}

Weight RootDatum::simple_root(std::size_t j) const
{
    return Weight(alpha_.column(j));
}

Rational RootDatum::root_pairing(std::size_t j, const APoint &x) const
{
    Rational acc;
    for (std::size_t i = 0; i < n_; ++i) {
        const auto a = alpha_(i, j);
        if (a != 0) {
            acc += Rational(a) * x[i];
        }
    }
    return acc;
}

std::vector<Rational> RootDatum::central_coords(std::span<const Rational> torus) const
{
    std::vector<Rational> g(l_);
    for (std::size_t i = 0; i < l_; ++i) {
        for (std::size_t k = 0; k < torus.size(); ++k) {
            g[i] += tables_->central_map(i, k) * torus[k];
        }
    }
    return g;
}

const RatMatrix *RootDatum::cartan_block_inverse(LeviDescriptor s) const
{
    if (tables_->cartan_inverse.empty()) {
        return nullptr;
    }
    return &tables_->cartan_inverse.at(s.mask());
}

const RatMatrix *RootDatum::root_gram_block_inverse(LeviDescriptor s) const
{
    if (tables_->root_gram_inverse.empty()) {
        return nullptr;
    }
    return &tables_->root_gram_inverse.at(s.mask());
}

std::string RootDatum::describe() const
{
    std::ostringstream os;
    os << (label_.empty() ? "datum" : label_) << ": n=" << n_ << " l=" << l_ << " type=";
    for (std::size_t f = 0; f < factors_.size(); ++f) {
        os << (f ? "x" : "") << factors_[f].label();
    }
    if (n_ > l_) {
        os << (factors_.empty() ? "" : "x") << "T" << (n_ - l_);
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Operations

ExtendedRational pair(const Weight &lambda, const ValuationVector &x)
{
    if (lambda.size() != x.size()) {
        throw std::invalid_argument("pairing of vectors of different length");
    }
    Rational acc;
    bool neg_inf = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (lambda[i] == 0) {
            continue;
        }
        if (x[i].is_neg_inf()) {
            if (lambda[i] < 0) {
                throw PreconditionError("-inf paired with a negative coefficient");
            }
            neg_inf = true;
            continue;
        }
        acc += Rational(lambda[i]) * x[i].value();
    }
    return neg_inf ? ExtendedRational::neg_inf() : ExtendedRational(acc);
}

Rational pair(const Weight &lambda, const APoint &x)
{
    if (lambda.size() != x.size()) {
        throw std::invalid_argument("pairing of vectors of different length");
    }
    Rational acc;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (lambda[i] != 0) {
            acc += Rational(lambda[i]) * x[i];
        }
    }
    return acc;
}

bool is_dominant(const RootDatum &datum, const APoint &x)
{
    for (std::size_t j = 0; j < datum.semisimple_rank(); ++j) {
        if (datum.root_pairing(j, x).sign() < 0) {
            return false;
        }
    }
    return true;
}

bool leq(const RootDatum &datum, const APoint &x, const APoint &y)
{
    const auto l = datum.semisimple_rank();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i < l ? y[i] < x[i] : y[i] != x[i]) {
            return false;
        }
    }
    return true;
}

IntMatrix simple_reflection(const RootDatum &datum, std::size_t j)
{
    // s_j(x) = x - <alpha_j, x> e_j
    const auto n = datum.rank();
    IntMatrix s = IntMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        s(j, k) -= datum.alpha()(k, j);
    }
    return s;
}

WeylElement weyl_identity(std::size_t n)
{
    return WeylElement{IntMatrix::identity(n), {}};
}

WeylElement weyl_from_word(const RootDatum &datum, std::span<const std::size_t> word)
{
    WeylElement w = weyl_identity(datum.rank());
    for (auto j : word) {
        w.matrix = w.matrix * simple_reflection(datum, j);
    }
    w.word.assign(word.begin(), word.end());
    return w;
}

APoint apply(const IntMatrix &m, const APoint &x)
{
    return APoint(m.apply<Rational>(x.coords));
}

APoint apply(const WeylElement &w, const APoint &x)
{
    return apply(w.matrix, x);
}

Weight reflect_weight(const RootDatum &datum, std::size_t j, const Weight &lambda)
{
    // s_j(lambda) = lambda - <lambda, alpha_j^vee> alpha_j, and <lambda, e_j> = lambda_j.
    Weight out = lambda;
    const auto c = lambda[j];
    if (c != 0) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            out.coords[i] -= c * datum.alpha()(i, j);
        }
    }
    return out;
}

DominantRep dominant_rep(const RootDatum &datum, const APoint &x)
{
    APoint y = x;
    std::vector<std::size_t> applied;
    while (true) {
        std::size_t j = 0;
        Rational pairing;
        for (; j < datum.semisimple_rank(); ++j) {
            pairing = datum.root_pairing(j, y);
            if (pairing.sign() < 0) {
                break;
            }
        }
        if (j == datum.semisimple_rank()) {
            break;
        }
        y[j] -= pairing;
        applied.push_back(j);
    }
    std::reverse(applied.begin(), applied.end());
    return DominantRep{std::move(y), weyl_from_word(datum, applied)};
}

std::vector<std::size_t> reduced_word(const RootDatum &datum, const IntMatrix &w)
{
    const auto l = datum.semisimple_rank();
    // A regular dominant point: <alpha_j, p> = 1 for every j, torus part 0.
    APoint p(datum.rank());
    if (l > 0) {
        RatMatrix ct(l, l);
        for (std::size_t i = 0; i < l; ++i) {
            for (std::size_t j = 0; j < l; ++j) {
                ct(j, i) = Rational(datum.alpha()(i, j));
            }
        }
        const auto b = *solve(ct, std::vector<Rational>(l, Rational(1)));
        for (std::size_t i = 0; i < l; ++i) {
            p[i] = b[i];
        }
    }
    const auto straightened = dominant_rep(datum, apply(w, p));
    if (straightened.point != p) {
        throw InvariantViolation("matrix is not a Weyl group element");
    }
    // s_{jk} ... s_{j1} w = 1, so w = s_{j1} ... s_{jk}: the inverse word.
    auto word = straightened.w.word;
    std::reverse(word.begin(), word.end());
    return word;
}

std::vector<Weight> weyl_orbit(const RootDatum &datum, const Weight &lambda, std::size_t guard)
{
    std::set<Weight> seen{lambda};
    std::deque<Weight> queue{lambda};
    while (!queue.empty()) {
        const Weight cur = std::move(queue.front());
        queue.pop_front();
        for (std::size_t j = 0; j < datum.semisimple_rank(); ++j) {
            if (cur[j] == 0) {
                continue;
            }
            auto next = reflect_weight(datum, j, cur);
            if (seen.insert(next).second) {
                if (seen.size() > guard) {
                    throw ResourceLimitError("Weyl orbit exceeds guard of " + std::to_string(guard) + " elements");
                }
                queue.push_back(std::move(next));
            }
        }
    }
    return {seen.begin(), seen.end()};
}

APoint project_levi(const RootDatum &datum, const APoint &x, LeviDescriptor s)
{
    const auto idx = s.indices();
    if (idx.empty()) {
        return x;
    }
    if (idx.back() >= datum.semisimple_rank()) {
        throw ValidationError("Levi index out of range");
    }
    std::vector<Rational> rhs(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
        rhs[a] = datum.root_pairing(idx[a], x);
    }
    // Solve sum_a alpha(S_a, S_b) c_a = <alpha_{S_b}, x>.
    std::vector<Rational> c(idx.size());
    if (const auto *inv = datum.cartan_block_inverse(s)) {
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = 0; b < idx.size(); ++b) {
                c[a] += (*inv)(b, a) * rhs[b];
            }
        }
    } else {
        RatMatrix sys(idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = 0; b < idx.size(); ++b) {
                sys(b, a) = Rational(datum.alpha()(idx[a], idx[b]));
            }
        }
        const auto sol = solve(sys, rhs);
        if (!sol) {
            throw InvariantViolation("singular Cartan sub-block");
        }
        c = *sol;
    }
    APoint y = x;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        y[idx[a]] -= c[a];
    }
    return y;
}

std::vector<std::size_t> levi_permutation(const RootDatum &datum, LeviDescriptor s)
{
    std::vector<std::size_t> perm;
    for (std::size_t j = 0; j < datum.semisimple_rank(); ++j) {
        if (s.contains(j)) {
            perm.push_back(j);
        }
    }
    for (std::size_t j = 0; j < datum.semisimple_rank(); ++j) {
        if (!s.contains(j)) {
            perm.push_back(j);
        }
    }
    for (std::size_t i = datum.semisimple_rank(); i < datum.rank(); ++i) {
        perm.push_back(i);
    }
    return perm;
}

APoint permute(const APoint &x, std::span<const std::size_t> perm)
{
    APoint y(perm.size());
    for (std::size_t p = 0; p < perm.size(); ++p) {
        y[p] = x[perm[p]];
    }
    return y;
}

RootDatum levi(const RootDatum &datum, LeviDescriptor s)
{
    const auto idx = s.indices();
    if (!idx.empty() && idx.back() >= datum.semisimple_rank()) {
        throw ValidationError("Levi index out of range");
    }
    const auto perm = levi_permutation(datum, s);
    IntMatrix a(datum.rank(), idx.size());
    std::vector<Rational> lengths;
    for (std::size_t q = 0; q < idx.size(); ++q) {
        for (std::size_t p = 0; p < perm.size(); ++p) {
            a(p, q) = datum.alpha()(perm[p], idx[q]);
        }
        lengths.push_back(datum.root_lengths()[idx[q]]);
    }
    if (s == LeviDescriptor::full(datum.semisimple_rank())) {
        return datum;
    }
    std::string label = datum.label() + "|M{";
    for (std::size_t q = 0; q < idx.size(); ++q) {
        label += (q ? "," : "") + std::to_string(idx[q] + 1);
    }
    label += "}";
    return RootDatum(std::move(a), idx.size(), std::move(lengths), std::move(label));
}

std::int64_t ComponentGroup::order() const
{
    std::int64_t o = 1;
    for (auto d : invariant_factors) {
        o *= d;
    }
    return o;
}

std::vector<std::int64_t> ComponentGroup::class_of(std::span<const std::int64_t> mu) const
{
    std::vector<std::int64_t> out;
    for (std::size_t f = 0; f < factor_rows.size(); ++f) {
        const auto r = factor_rows[f];
        std::int64_t acc = 0;
        for (std::size_t k = 0; k < mu.size(); ++k) {
            acc += coordinatizer(r, k) * mu[k];
        }
        const auto d = invariant_factors[f];
        out.push_back(((acc % d) + d) % d);
    }
    return out;
}

std::vector<std::vector<std::int64_t>> ComponentGroup::all_classes() const
{
    const auto n = coordinatizer.cols();
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> residues(invariant_factors.size(), 0);
    while (true) {
        std::vector<std::int64_t> lift(n, 0);
        for (std::size_t f = 0; f < residues.size(); ++f) {
            for (std::size_t k = 0; k < n; ++k) {
                lift[k] += residues[f] * generators[f][k];
            }
        }
        out.push_back(std::move(lift));
        std::size_t f = residues.size();
        while (f > 0) {
            --f;
            if (++residues[f] < invariant_factors[f]) {
                break;
            }
            residues[f] = 0;
            if (f == 0) {
                return out;
            }
        }
        if (residues.empty()) {
            return out;
        }
    }
}

ComponentGroup component_group(const RootDatum &datum)
{
    const auto n = datum.rank();
    const auto l = datum.semisimple_rank();
    // X_*(A_G) = integer kernel of x -> (<alpha_j, x>)_j.
    const IntMatrix kernel = integer_kernel(datum.alpha().transpose());
    IntMatrix gens(n, l + kernel.cols());
    for (std::size_t j = 0; j < l; ++j) {
        gens(j, j) = 1;
    }
    for (std::size_t c = 0; c < kernel.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            gens(i, l + c) = kernel(i, c);
        }
    }
    const auto snf = smith_normal_form(gens);
    if (snf.diagonal.size() < n ||
        std::any_of(snf.diagonal.begin(), snf.diagonal.end(), [](std::int64_t d) { return d == 0; })) {
        throw InvariantViolation("X_*(A_G) does not have full rank in Lambda_G");
    }
    ComponentGroup out;
    out.coordinatizer = snf.left;
    for (std::size_t r = 0; r < n; ++r) {
        if (snf.diagonal[r] > 1) {
            out.invariant_factors.push_back(snf.diagonal[r]);
            out.factor_rows.push_back(r);
            out.generators.push_back(snf.left_inverse.column(r));
        }
    }
    return out;
}

RootDatum change_extension(const RootDatum &datum, const IntMatrix &lambda)
{
    const auto n = datum.rank();
    const auto l = datum.semisimple_rank();
    if (lambda.rows() != l || lambda.cols() != n - l) {
        throw ValidationError("extension change must be l x (n - l)");
    }
    IntMatrix a = datum.alpha();
    for (std::size_t k = 0; k < n - l; ++k) {
        for (std::size_t j = 0; j < l; ++j) {
            std::int64_t acc = 0;
            for (std::size_t i = 0; i < l; ++i) {
                acc += lambda(i, k) * datum.alpha()(i, j);
            }
            a(l + k, j) -= acc;
        }
    }
    return RootDatum(std::move(a), l, datum.root_lengths(), datum.label() + "'");
}

APoint change_extension_coords(const RootDatum &datum, const IntMatrix &lambda, const APoint &x)
{
    const auto l = datum.semisimple_rank();
    APoint y = x;
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t k = 0; k < lambda.cols(); ++k) {
            if (lambda(i, k) != 0) {
                y[i] += Rational(lambda(i, k)) * x[l + k];
            }
        }
    }
    return y;
}

std::optional<std::vector<Rational>> gl_slopes(const RootDatum &datum, const APoint &x)
{
    if (!datum.gl_degree()) {
        return std::nullopt;
    }
    std::vector<Rational> s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        s[i] = i == 0 ? x[0] : x[i] - x[i - 1];
    }
    return s;
}

APoint from_gl_slopes(std::span<const Rational> slopes)
{
    APoint x(slopes.size());
    Rational acc;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        acc += slopes[i];
        x[i] = acc;
    }
    return x;
}

} // namespace nstrata
