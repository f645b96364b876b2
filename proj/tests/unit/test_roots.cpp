#include <cstdint>

#include "doctest.h"
#include "jacobi/roots.hpp"

using namespace jacobi;

namespace {

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

}  // namespace

TEST_CASE("linear polynomial with dyadic root isolates to a point") {
    RatPoly p = RatPoly::linear_x_minus(Rat(2));
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].is_point());
    CHECK(roots[0].lo() == 2);
}

TEST_CASE("quadratic with roots 1 and 3 gives two ordered disjoint enclosures") {
    RatPoly p(std::vector<Rat>{Rat(3), Rat(-4), Rat(1)});
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].contains(Rat(1)));
    CHECK(roots[1].contains(Rat(3)));
    CHECK(!roots[0].intersects(roots[1]));
    CHECK(roots[0].hi() < roots[1].lo());
}

TEST_CASE("polynomial with no real roots returns an empty list") {
    RatPoly p(std::vector<Rat>{Rat(1), Rat(0), Rat(1)});  // z^2 + 1
    CHECK(isolate_real_roots(p).empty());
}

TEST_CASE("non-squarefree input is rejected") {
    RatPoly p = RatPoly::linear_x_minus(Rat(1)) * RatPoly::linear_x_minus(Rat(1));
    CHECK_THROWS_AS(isolate_real_roots(p), NonSquarefree);
    CHECK_THROWS_AS(isolate_real_roots(RatPoly()), NonSquarefree);
}

TEST_CASE("non-point enclosures certify a sign change at their endpoints") {
    RatPoly p = RatPoly::linear_x_minus(Rat(1, 3)) * RatPoly::linear_x_minus(Rat(22, 7)) *
                RatPoly::linear_x_minus(Rat(-5, 11));
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 3);
    for (const auto& r : roots) {
        REQUIRE(!r.is_point());
        CHECK(rat_sign(p.eval(r.lo())) * rat_sign(p.eval(r.hi())) < 0);
    }
    CHECK(roots[0].contains(Rat(-5, 11)));
    CHECK(roots[1].contains(Rat(1, 3)));
    CHECK(roots[2].contains(Rat(22, 7)));
}

TEST_CASE("roots at dyadic probe points become point intervals mid-isolation") {
    // Roots 0 and 4: the first bisection probe lands exactly on 0.
    RatPoly p(std::vector<Rat>{Rat(0), Rat(-4), Rat(1)});
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].contains(Rat(0)));
    CHECK(roots[1].contains(Rat(4)));
}

TEST_CASE("widely separated roots typical of lacunary data are all found") {
    RatPoly p = RatPoly::linear_minus_x(Rat(1)) * RatPoly::linear_minus_x(Rat(10000)) *
                RatPoly::linear_minus_x(rat_from_string("1e8"));
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].contains(Rat(1)));
    CHECK(roots[1].contains(Rat(10000)));
    CHECK(roots[2].contains(rat_from_string("1e8")));
}

TEST_CASE("random squarefree cubics with known rational roots isolate correctly") {
    SplitMix64 rng{31337};
    int built = 0;
    while (built < 20) {
        long a = static_cast<long>(rng.next() % 41) - 20;
        long b = static_cast<long>(rng.next() % 41) - 20;
        long c = static_cast<long>(rng.next() % 41) - 20;
        if (a == b || b == c || a == c) continue;
        RatPoly p = RatPoly::linear_x_minus(Rat(a)) * RatPoly::linear_x_minus(Rat(b)) *
                    RatPoly::linear_x_minus(Rat(c));
        auto roots = isolate_real_roots(p);
        REQUIRE(roots.size() == 3);
        std::vector<long> sorted{a, b, c};
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < 3; ++i) CHECK(roots[i].contains(Rat(sorted[i])));
        ++built;
    }
}

TEST_CASE("refine_root reaches the requested relative width") {
    RatPoly p(std::vector<Rat>{Rat(-2), Rat(0), Rat(1)});  // z^2 - 2
    DyadicInterval enc = DyadicInterval::exact(Rat(1), Rat(2));
    DyadicInterval refined = refine_root(p, enc, 10);
    CHECK(enc.contains(refined));
    CHECK(refined.relative_width() <= rat_pow2(-10));
    // still brackets sqrt(2): endpoint signs differ
    CHECK(rat_sign(p.eval(refined.lo())) * rat_sign(p.eval(refined.hi())) < 0);
    CHECK(refined.lo() > Rat(1413, 1000));
    CHECK(refined.hi() < Rat(1416, 1000));
}

TEST_CASE("refine_root returns exact points when bisection hits the root") {
    RatPoly p = RatPoly::linear_x_minus(Rat(2));
    DyadicInterval refined = refine_root(p, DyadicInterval::exact(Rat(0), Rat(8)), 4);
    CHECK(refined.contains(Rat(2)));
    CHECK(refined.width() <= Rat(2) / 16);
}

TEST_CASE("refine_root accepts deep targets on separated quadratics") {
    RatPoly p(std::vector<Rat>{Rat(3), Rat(-4), Rat(1)});
    DyadicInterval refined = refine_root(p, DyadicInterval::exact(Rat(0), Rat(2)), 20);
    CHECK(refined.contains(Rat(1)));
    CHECK(refined.relative_width() <= rat_pow2(-20));
}

TEST_CASE("refine_root rejects brackets without a sign change") {
    RatPoly p(std::vector<Rat>{Rat(3), Rat(-4), Rat(1)});
    CHECK_THROWS_AS(refine_root(p, DyadicInterval::exact(Rat(7, 2), Rat(4)), 10), NoSignChange);
}

TEST_CASE("refine_root keeps monotone containment under increasing bits") {
    RatPoly p(std::vector<Rat>{Rat(-3), Rat(0), Rat(1)});  // z^2 - 3
    DyadicInterval enc = DyadicInterval::exact(Rat(1), Rat(2));
    DyadicInterval r16 = refine_root(p, enc, 16);
    DyadicInterval r48 = refine_root(p, r16, 48);
    CHECK(enc.contains(r16));
    CHECK(r16.contains(r48));
    CHECK(r48.relative_width() <= rat_pow2(-48));
}
