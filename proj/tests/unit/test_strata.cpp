#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <nstrata/errors.hpp>
#include <nstrata/strata.hpp>

#include "../support/oracles.hpp"

using namespace nstrata;

namespace
{

const auto NI = ExtendedRational::neg_inf();

NewtonPoint gl_point(std::size_t n, std::vector<Rational> slopes)
{
    const auto d = build_group("GL" + std::to_string(n));
    const auto np = is_newton_point(d, from_gl_slopes(slopes));
    REQUIRE(np.has_value());
    return *np;
}

ValuationVector ints(std::initializer_list<std::int64_t> v)
{
    std::vector<ExtendedRational> c;
    for (auto x : v) {
        c.emplace_back(Rational(x));
    }
    return ValuationVector(c);
}

// Every integral vector in [-b, b]^n with -inf allowed in the first l slots.
std::vector<ValuationVector> box(const RootDatum &d, std::int64_t b)
{
    std::vector<ValuationVector> out{ValuationVector()};
    for (std::size_t i = 0; i < d.rank(); ++i) {
        std::vector<ValuationVector> next;
        for (const auto &v : out) {
            for (std::int64_t x = -b; x <= b + (i < d.semisimple_rank() ? 1 : 0); ++x) {
                auto w = v;
                w.coords.push_back(x == b + 1 ? NI : ExtendedRational(Rational(x)));
                next.push_back(std::move(w));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<NewtonPoint> sample_newton_points(const RootDatum &d, std::mt19937_64 &rng, int count, std::int64_t b)
{
    std::uniform_int_distribution<std::int64_t> u(-b, b);
    std::vector<NewtonPoint> out;
    for (int k = 0; k < count; ++k) {
        APoint x(d.rank());
        for (auto &c : x.coords) {
            c = Rational(u(rng));
        }
        out.push_back(*is_newton_point(d, retract(d, x).y));
    }
    return out;
}

} // namespace

TEST_CASE("stratum_of examples")
{
    const auto gl2 = build_group("GL2");
    CHECK(*gl_slopes(gl2, stratum_of(gl2, ints({0, 1})).point) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(*gl_slopes(gl2, stratum_of(gl2, ints({1, 1})).point) == std::vector<Rational>{1, 0});
    const auto gl3 = build_group("GL3");
    CHECK(stratum_of(gl3, ints({3, 5, 6})).point == APoint::from_ints(std::vector<std::int64_t>{3, 5, 6}));
    CHECK_THROWS_AS(stratum_of(gl2, ValuationVector({ExtendedRational(Rational(1, 2)), ExtendedRational(0)})),
                    PreconditionError);
}

TEST_CASE("stratum_conditions examples")
{
    const auto gl2 = build_group("GL2");
    const auto half = stratum_conditions(gl2, gl_point(2, {Rational(1, 2), Rational(1, 2)}), false);
    CHECK(half.i_mu == LeviDescriptor(1));
    REQUIRE(half.conditions.size() == 2);
    CHECK(half.conditions[0].i == 0);
    CHECK(half.conditions[0].rel == Relation::leq);
    CHECK(half.conditions[0].bound == Rational(1, 2));
    CHECK(half.conditions[1].rel == Relation::eq);
    CHECK(half.conditions[1].bound == Rational(1));

    const auto ord = stratum_conditions(gl2, gl_point(2, {1, 0}), false);
    CHECK(ord.i_mu == LeviDescriptor());
    REQUIRE(ord.conditions.size() == 2);
    for (const auto &c : ord.conditions) {
        CHECK(c.rel == Relation::eq);
        CHECK(c.bound == Rational(1));
    }
    const auto ord_closed = stratum_conditions(gl2, gl_point(2, {1, 0}), true);
    CHECK(ord_closed.conditions[0].rel == Relation::leq);
    CHECK(ord_closed.conditions[1].rel == Relation::eq);
}

TEST_CASE("conditions shape")
{
    std::mt19937_64 rng(1);
    for (const char *spec : {"GL3", "B2", "G2", "Gext(D4)", "A2*T1"}) {
        const auto d = build_group(spec);
        for (const auto &mu : sample_newton_points(d, rng, 20, 4)) {
            for (bool closed : {false, true}) {
                const auto sc = stratum_conditions(d, mu, closed);
                CHECK(sc.i_mu == face_of(d, mu.point));
                REQUIRE(sc.conditions.size() == d.rank());
                for (const auto &c : sc.conditions) {
                    CHECK(c.bound == mu.point[c.i]);
                    const bool torus = c.i >= d.semisimple_rank();
                    if (torus) {
                        CHECK(c.rel == Relation::eq);
                    } else if (closed || sc.i_mu.contains(c.i)) {
                        CHECK(c.rel == Relation::leq);
                    } else {
                        CHECK(c.rel == Relation::eq);
                    }
                }
            }
        }
    }
}

TEST_CASE("open strata partition a box and closed systems match the order")
{
    for (const char *spec : {"GL2", "GL3", "B2", "G2"}) {
        const auto d = build_group(spec);
        const auto points = box(d, 2);
        // Candidates: every Newton point below the stratum of the top corner.
        APoint top(d.rank());
        for (auto &c : top.coords) {
            c = Rational(2);
        }
        const auto cap = *is_newton_point(d, retract(d, top).y);
        const auto strata = newton_points_below(d, cap);
        std::vector<StratumConditions> open, closed;
        for (const auto &mu : strata) {
            open.push_back(stratum_conditions(d, mu, false));
            closed.push_back(stratum_conditions(d, mu, true));
        }
        for (const auto &v : points) {
            const auto own = stratum_of(d, v);
            if (!leq(d, own.point, cap.point)) {
                continue;
            }
            int accepted = 0;
            for (std::size_t k = 0; k < strata.size(); ++k) {
                if (open[k].accepts(v)) {
                    ++accepted;
                    CHECK(strata[k].point == own.point);
                }
                CHECK(closed[k].accepts(v) == leq(d, own.point, strata[k].point));
            }
            CHECK(accepted == 1);
        }
    }
}

TEST_CASE("dimension examples")
{
    const auto gl2 = build_group("GL2");
    const auto gl4 = build_group("GL4");
    const auto ord2 = gl_point(2, {1, 0}).point;
    const auto ss2 = gl_point(2, {Rational(1, 2), Rational(1, 2)}).point;
    CHECK(dim_leq(gl2, ord2) == 1);
    CHECK(dim_leq(gl2, ss2) == 0);
    CHECK(dim_leq(gl2, APoint(2)) == 0);
    CHECK(codim(gl2, ss2, ord2) == 1);
    CHECK(codim(gl2, ord2, ord2) == 0);
    CHECK_THROWS_AS(codim(gl2, ord2, ss2), PreconditionError);
    CHECK(codim_chai(gl2, ss2, ord2) == 1);
    CHECK(codim_chai(gl2, ord2, ord2) == 0);

    const auto ord4 = gl_point(4, {1, 0, 0, 0}).point;
    const auto ss4 = gl_point(4, {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}).point;
    CHECK(dim_leq(gl4, ord4) == 3);
    CHECK(dim_leq(gl4, ss4) == 0);
    CHECK(codim(gl4, ss4, ord4) == 3);
    CHECK(codim_chai(gl4, ss4, ord4) == 3);
}

TEST_CASE("d_G examples and Levi reduction")
{
    const auto gl2 = build_group("GL2");
    const auto gl4 = build_group("GL4");
    CHECK(d_G(gl2, gl_point(2, {1, 0}).point) == Rational());
    CHECK(d_G(gl2, gl_point(2, {Rational(1, 2), Rational(1, 2)}).point) == Rational(1, 2));
    CHECK(d_G(gl4, gl_point(4, {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}).point) ==
          Rational(3, 2));

    const auto split = d_levi_check(gl4, gl_point(4, {Rational(1, 2), Rational(1, 2), 0, 0}));
    CHECK(split.pass);
    CHECK(split.d_G == Rational(1, 2));
    CHECK(split.d_M == Rational(1, 2));
    const auto basic = d_levi_check(gl4, gl_point(4, {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)}));
    CHECK(basic.pass);
    const auto integral = d_levi_check(gl4, gl_point(4, {2, 1, 1, 0}));
    CHECK(integral.pass);
    CHECK(integral.d_G == Rational());
    CHECK(integral.d_M == Rational());
}

TEST_CASE("dimension identities over sampled Newton points")
{
    std::mt19937_64 rng(6);
    for (const char *spec : {"GL3", "GL4", "B2", "C3", "G2", "Gext(E6)", "Gext(D5)"}) {
        const auto d = build_group(spec);
        const auto l = d.semisimple_rank();
        for (const auto &mu : sample_newton_points(d, rng, 6, 3)) {
            const auto below = newton_points_below(d, mu);
            for (const auto &nu : below) {
                // dim_leq(nu) = <rho', nu> - d_G(nu), rho' = w_1 + ... + w_l.
                Rational rho;
                for (std::size_t i = 0; i < l; ++i) {
                    rho += nu.point[i];
                }
                CHECK(Rational(dim_leq(d, nu.point)) == rho - d_G(d, nu.point));
                CHECK(d_levi_check(d, nu).pass);
                // mu - nu is a combination of coroots e_j, so <varpi_i, mu - nu>
                // is the i-th coordinate of the difference.
                std::int64_t chai = 0;
                for (std::size_t i = 0; i < l; ++i) {
                    chai += (mu.point[i] - nu.point[i]).ceil();
                }
                const auto c = codim(d, nu.point, mu.point);
                CHECK(c >= 0);
                if (mu.point.is_integral()) {
                    CHECK(codim_chai(d, nu.point, mu.point) == chai);
                    CHECK(c == chai);
                } else {
                    CHECK_THROWS_AS(codim_chai(d, nu.point, mu.point), PreconditionError);
                }
                for (std::size_t k = 0; k < below.size(); k += 1 + below.size() / 40) {
                    const auto &nu2 = below[k];
                    if (leq(d, nu.point, nu2.point)) {
                        CHECK(codim(d, nu.point, mu.point) >= codim(d, nu2.point, mu.point));
                    }
                }
            }
        }
    }
}

TEST_CASE("rational fundamental weights are dual to the coroots and kill the centre")
{
    for (const char *spec : {"GL4", "Gext(E7)", "B2*T2"}) {
        const auto d = build_group(spec);
        for (std::size_t i = 0; i < d.semisimple_rank(); ++i) {
            const auto w = rational_fundamental_weight(d, i);
            REQUIRE(w.size() == d.rank());
            // Value on e_j (coroots) is the j-th coordinate.
            for (std::size_t j = 0; j < d.semisimple_rank(); ++j) {
                CHECK(w[j] == Rational(i == j ? 1 : 0));
            }
            // Vanishes on a_G: pick each torus basis direction.
            for (std::size_t k = d.semisimple_rank(); k < d.rank(); ++k) {
                std::vector<Rational> t(d.torus_rank());
                t[k - d.semisimple_rank()] = Rational(1);
                const auto c = d.central_coords(t);
                Rational v = w[k];
                for (std::size_t j = 0; j < d.semisimple_rank(); ++j) {
                    v += w[j] * c[j];
                }
                CHECK(v == Rational());
            }
        }
    }
}

TEST_CASE("change of extension leaves d_G and codimensions unchanged")
{
    std::mt19937_64 rng(30);
    std::uniform_int_distribution<std::int64_t> e(-3, 3);
    for (const char *spec : {"GL3", "Gext(E6)", "B2*T1"}) {
        const auto d = build_group(spec);
        const auto mus = sample_newton_points(d, rng, 4, 3);
        for (int k = 0; k < 5; ++k) {
            IntMatrix lambda(d.semisimple_rank(), d.torus_rank());
            for (std::size_t i = 0; i < lambda.rows(); ++i) {
                for (std::size_t j = 0; j < lambda.cols(); ++j) {
                    lambda(i, j) = e(rng);
                }
            }
            const auto moved = change_extension(d, lambda);
            for (const auto &mu : mus) {
                const auto mu2 = change_extension_coords(d, lambda, mu.point);
                for (const auto &nu : newton_points_below(d, mu)) {
                    const auto nu2 = change_extension_coords(d, lambda, nu.point);
                    CHECK(d_G(d, nu.point) == d_G(moved, nu2));
                    CHECK(codim(d, nu.point, mu.point) == codim(moved, nu2, mu2));
                    if (mu.point.is_integral()) {
                        CHECK(codim_chai(d, nu.point, mu.point) == codim_chai(moved, nu2, mu2));
                    }
                }
            }
        }
    }
}
