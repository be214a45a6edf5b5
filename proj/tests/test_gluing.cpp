#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ansyz/gluing.hpp"

using namespace ansyz;
using namespace ansyz::gluing;

namespace {
RatFn u() { return RatFn::variable(3, 0); }
RatFn v() { return RatFn::variable(3, 1); }
RatFn w() { return RatFn::variable(3, 2); }
RatFn one() { return RatFn::constant(3, 1); }
} // namespace

TEST_CASE("semi-flat transitions")
{
    CHECK(uncorrected_transition(Side::plus).images[0] == one() / v());
    CHECK(uncorrected_transition(Side::minus).images[0] == w() / v());
    CHECK(uncorrected_transition(Side::plus).images[2] == w());
    CHECK(uncorrected_transition(Side::minus).images[2] == w());
}

TEST_CASE("corrected transitions and their equality")
{
    auto plus = corrected_transition(Side::plus);
    auto minus = corrected_transition(Side::minus);
    CHECK(plus.images[0] == (one() + w()) / v());
    CHECK(minus.images[0] == w() * (one() + one() / w()) / v());
    // the two sides define the same rational map
    CHECK(plus.images[0] == minus.images[0]);
    CHECK(plus.images[2] == w());
}

TEST_CASE("wall monodromy")
{
    auto off = monodromy(Corrections::off);
    CHECK(off.images[0] == u() * w());
    CHECK(off.images[2] == w());

    auto twice = compose(off, off);
    CHECK(twice.images[0] == u() * w() * w());

    auto on = monodromy(Corrections::on);
    CHECK(on.images[0] == u());
    CHECK(on.images[2] == w());
}

TEST_CASE("affine monodromy matrix is unipotent")
{
    MonodromyMatrix M;
    CHECK(M.m[0][0] == 1);
    CHECK(M.m[0][1] == 1);
    CHECK(M.m[1][0] == 0);
    CHECK(M.m[1][1] == 1);
    // (M - I)^2 = 0
    Int a = M.m[0][0] - 1, b = M.m[0][1], c = M.m[1][0], d = M.m[1][1] - 1;
    CHECK(a * a + b * c == 0);
    CHECK(a * b + b * d == 0);
    CHECK(c * a + d * c == 0);
    CHECK(c * b + d * d == 0);
}

TEST_CASE("cover relations")
{
    auto cr1 = glued_cover_relations(1);
    // u_0 v_1 = 1 + w is the wall relation at index 0
    Poly expect = Poly::variable(cr1.nvars, cr1.u_index(0)) * Poly::variable(cr1.nvars, cr1.v_index(1)) -
                  Poly::constant(cr1.nvars, 1) - Poly::variable(cr1.nvars, cr1.w_index());
    CHECK(cr1.wall[0] == expect);

    auto cr2 = glued_cover_relations(2);
    REQUIRE(cr2.overlap.size() == 2);
    // eliminating w: u_{i-1} v_i - u_i v_{i+1} = 0 as polynomials
    for (int i = 1; i <= 2; ++i) {
        Poly derived = cr2.wall[size_t(i - 1)] - cr2.wall[size_t(i)];
        CHECK(derived == cr2.overlap[size_t(i - 1)]);
    }

    CHECK_THROWS_AS(glued_cover_relations(0), invalid_parameter);
}

TEST_CASE("cocycle condition on all triple overlaps")
{
    for (int n = 1; n <= 4; ++n) CHECK(cocycle_holds(n));
}

TEST_CASE("chart transitions divide by 1+w per step")
{
    RatFn t = RatFn::variable(2, 0), wv = RatFn::variable(2, 1);
    RatFn one2 = RatFn::constant(2, 1);
    CHECK(chart_transition_u(1) == t / (one2 + wv));
    CHECK(chart_transition_u(2) == t / ((one2 + wv) * (one2 + wv)));
}

TEST_CASE("the corrected cover is the resolution chart gluing")
{
    for (int n = 1; n <= 3; ++n) {
        auto res = match_resolution_charts(n);
        REQUIRE_MESSAGE(res.matched, res.failure);
        CHECK(res.witness.size() == size_t(2 * n + 3));
        CHECK(res.witness.back().find("w = h - 1") != std::string::npos);
    }
}

TEST_CASE("anticanonical locus goes to w = 0 under the witness substitution")
{
    // w = h - 1 sends h = 1 to w = 0: substituting h -> 1 into the witness
    // image of w gives the zero function.
    RatFn h = RatFn::from_poly(Poly::monomial(2, {0, 1}, 1));
    RatFn wimg = h - RatFn::constant(2, 1);
    RatFn at_one = wimg.substitute({RatFn::variable(2, 0), RatFn::constant(2, 1)});
    CHECK(at_one.num().is_zero());
}
