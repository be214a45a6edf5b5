#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ansyz/paths.hpp"

#include <cmath>
#include <random>

using namespace ansyz;
using namespace ansyz::paths;

namespace {

Punctures two_points()
{
    Punctures p;
    p.a = {Rat(1), Rat(2)};
    return p;
}

PLPath gamma0_12()
{
    PLPath p;
    p.v = {{Rat(-1, 8), Rat(0)}, {Rat(-8), Rat(0)}};
    return p;
}

std::vector<long> winding(const PLPath& p, const Punctures& punct)
{
    return winding_by_crossings(p, punct).w;
}

} // namespace

TEST_CASE("the negative-axis path")
{
    auto punct = two_points();
    auto g0 = gamma0_12();
    CHECK(is_admissible(g0, punct).ok);
    CHECK(is_strongly_admissible(g0));
    CHECK(winding(g0, punct) == std::vector<long>{0});
    CHECK(winding_by_lift(g0, punct).w == std::vector<long>{0});
    auto cls = syz_transform(g0, punct);
    CHECK(cls.deg == std::vector<Int>{Int(0)});
}

TEST_CASE("admissibility rejections")
{
    auto punct = two_points();

    PLPath on_cut;  // vertex at (a_0+a_1)/2 on the cut segment
    on_cut.v = {{Rat(-1, 8), Rat(0)}, {Rat(3, 2), Rat(0)}, {Rat(-8), Rat(0)}};
    auto r1 = is_admissible(on_cut, punct);
    CHECK_FALSE(r1.ok);
    CHECK(r1.violation.find("cut segment") != std::string::npos);

    PLPath short_end;  // last modulus a_n/2
    short_end.v = {{Rat(-1, 8), Rat(0)}, {Rat(-1), Rat(0)}};
    auto r2 = is_admissible(short_end, punct);
    CHECK_FALSE(r2.ok);
    CHECK(r2.violation.find("above a_n") != std::string::npos);

    PLPath big_start;
    big_start.v = {{Rat(-3, 2), Rat(0)}, {Rat(-8), Rat(0)}};
    CHECK_FALSE(is_admissible(big_start, punct).ok);

    PLPath degen;
    degen.v = {{Rat(-1, 8), Rat(0)}, {Rat(-1, 8), Rat(0)}, {Rat(-8), Rat(0)}};
    CHECK_THROWS_AS(is_admissible(degen, punct), invalid_parameter);

    PLPath through_origin;
    through_origin.v = {{Rat(1, 8), Rat(0)}, {Rat(-8), Rat(0)}};
    auto r3 = is_admissible(through_origin, punct);
    CHECK_FALSE(r3.ok);
    CHECK(r3.violation.find("origin") != std::string::npos);

    PLPath through_puncture;  // passes straight through (1, 0)
    through_puncture.v = {{Rat(1, 2), Rat(-1, 2)}, {Rat(3, 2), Rat(1, 2)}, {Rat(-8), Rat(0)}};
    CHECK_FALSE(is_admissible(through_puncture, punct).ok);
}

TEST_CASE("strong admissibility is strict modulus growth")
{
    auto punct = two_points();
    PLPath doubles_back;
    doubles_back.v = {{Rat(-1, 8), Rat(0)}, {Rat(-8), Rat(0)}, {Rat(-5), Rat(3)}};
    CHECK_FALSE(is_strongly_admissible(doubles_back));

    PLPath radial;
    radial.v = {{Rat(-1, 4), Rat(-1, 4)}, {Rat(-4), Rat(-4)}};
    CHECK(is_strongly_admissible(radial));
    CHECK(is_admissible(radial, punct).ok);
}

TEST_CASE("a single upward crossing")
{
    auto punct = two_points();
    PLPath p;
    p.v = {{Rat(-1, 8), Rat(0)}, {Rat(3, 2), Rat(-3)}, {Rat(3, 2), Rat(3)}, {Rat(-20), Rat(0)}};
    REQUIRE(is_admissible(p, punct).ok);
    CHECK(winding(p, punct) == std::vector<long>{1});
    auto cls = syz_transform(p, punct);
    CHECK(cls.deg == std::vector<Int>{Int(-1)});

    // reversing the vertical crossing flips the sign
    PLPath q;
    q.v = {{Rat(-1, 8), Rat(0)}, {Rat(3, 2), Rat(3)}, {Rat(3, 2), Rat(-3)}, {Rat(-20), Rat(0)}};
    REQUIRE(is_admissible(q, punct).ok);
    CHECK(winding(q, punct) == std::vector<long>{-1});

    // orientation flag negates the convention
    CHECK(winding_by_crossings(p, punct, -1).w == std::vector<long>{-1});
}

TEST_CASE("spiral paths realize prescribed windings")
{
    std::vector<std::vector<long>> targets = {{1}, {-1}, {2}, {1, -1}, {0, 2}, {-2, 1}, {1, 0, -1}};
    for (auto& t : targets) {
        Punctures punct;
        punct.a = {Rat(1)};
        for (size_t i = 1; i <= t.size(); ++i) punct.a.push_back(punct.a.back() * 4);
        auto p = spiral_path(punct, t);
        REQUIRE(is_strongly_admissible(p));
        REQUIRE(is_admissible(p, punct).ok);
        CHECK(winding(p, punct) == t);
        CHECK(winding_by_lift(p, punct).w == t);
    }
}

TEST_CASE("transform of the two-sided loop")
{
    Punctures punct;
    punct.a = {Rat(1), Rat(4), Rat(16)};
    auto p = spiral_path(punct, {1, -1});
    auto cls = syz_transform(p, punct);
    CHECK(cls.deg == std::vector<Int>{Int(-1), Int(1)});
}

TEST_CASE("both winding algorithms agree on a random suite")
{
    std::mt19937_64 rng(20260809);
    for (int n = 1; n <= 4; ++n) {
        std::uniform_int_distribution<int> num(1, 8), rnum(13, 24);
        for (int t = 0; t < 50; ++t) {
            Punctures punct;
            Rat a(num(rng), 4);
            for (int i = 0; i <= n; ++i) {
                punct.a.push_back(a);
                a *= Rat(rnum(rng), 4);
            }
            auto p = random_strongly_admissible(punct, rng);
            auto wc = winding_by_crossings(p, punct);
            auto wl = winding_by_lift(p, punct);
            REQUIRE(wc == wl);
            auto cls = syz_transform(p, punct);
            for (int i = 0; i < n; ++i) REQUIRE(cls.deg[size_t(i)] == Int(-wc.w[size_t(i)]));
        }
    }
}

TEST_CASE("normalization preserves winding and hits the anchors")
{
    std::mt19937_64 rng(99);
    for (int n = 1; n <= 3; ++n) {
        Punctures punct;
        punct.a = {Rat(1)};
        for (int i = 1; i <= n; ++i) punct.a.push_back(punct.a.back() * 5);
        for (int t = 0; t < 5; ++t) {
            auto p = random_strongly_admissible(punct, rng);
            auto q = normalize_path(p, punct);
            REQUIRE(is_strongly_admissible(q));
            CHECK(winding(q, punct) == winding(p, punct));
            CHECK(winding_by_lift(q, punct) == winding_by_lift(p, punct));
            for (auto& ai : punct.a) {
                bool hit = false;
                for (auto& vt : q.v)
                    if (vt.y == 0 && vt.x == -ai) hit = true;
                CHECK(hit);
            }
        }
    }
    // the straight path normalizes to a straight path
    auto punct = two_points();
    auto q = normalize_path(gamma0_12(), punct);
    for (auto& vt : q.v) CHECK(vt.y == 0);
    CHECK(winding(q, punct) == std::vector<long>{0});
}

TEST_CASE("null detours never change the winding")
{
    std::mt19937_64 rng(7);
    Punctures punct;
    punct.a = {Rat(1), Rat(8)};
    for (int t = 0; t < 10; ++t) {
        auto p = random_strongly_admissible(punct, rng, 1);
        auto q = insert_null_detour(p, punct, rng);
        REQUIRE(is_admissible(q, punct).ok);
        CHECK(winding(q, punct) == winding(p, punct));
    }
}

TEST_CASE("inserting a loop changes the winding by the loop's own crossings")
{
    Punctures punct;
    punct.a = {Rat(1), Rat(4), Rat(16)};
    auto base = spiral_path(punct, {0, 1});
    auto more = spiral_path(punct, {1, 1});
    auto wb = winding(base, punct), wm = winding(more, punct);
    CHECK(wm[0] - wb[0] == 1);
    CHECK(wm[1] - wb[1] == 0);
}

TEST_CASE("numeric section of the fibration")
{
    Punctures punct;
    punct.a = {Rat(1), Rat(3, 2), Rat(2)};

    // at lambda = 0 the moduli of the two fiber coordinates agree
    auto p0 = section_L0(0.3, 0.0, punct);
    CHECK(std::abs(std::abs(p0.u) - std::abs(p0.v)) < 1e-13);
    CHECK(std::abs(p0.u * p0.u - std::abs(p0.g)) < 1e-12);

    double max_res = 0, max_fib = 0, max_omega = 0;
    double s0 = std::log(1.0) - 1.0, s1 = std::log(2.0) + 1.0;
    for (int i = 0; i < 21; ++i)
        for (int j = 0; j < 21; ++j) {
            double s = s0 + (s1 - s0) * i / 20.0;
            double lam = -3.0 + 6.0 * j / 20.0;
            auto pt = section_L0(s, lam, punct);
            max_res = std::max(max_res, residency_error(pt));
            max_fib = std::max(max_fib, fibration_error(pt));
            max_omega = std::max(max_omega, symplectic_pullback_fd(s, lam, punct));
        }
    CHECK(max_res <= 1e-12);
    CHECK(max_fib <= 1e-12);
    CHECK(max_omega <= 1e-6);

    CHECK_THROWS_AS(section_L0(1e6, 0.0, punct), invalid_parameter);
}
