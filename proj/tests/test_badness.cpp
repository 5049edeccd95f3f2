#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twistedbad/badness.hpp"

using namespace tb;

namespace {

const char* kSqrt23 = "quad:(0+1*sqrt(2))/1-1,quad:(0+1*sqrt(3))/1-1";

Rat mid_of(const BadnessProfile& p) { return p.value.eval(64).midpoint(); }

}  // namespace

TEST_CASE("twisted badness trivial cases") {
    auto theta = TargetVector::parse("quad:(-1+1*sqrt(5))/2");
    WeightVector j1({Rat(1)});

    // eta = theta: value 0 at q = 1
    auto prof = twisted_badness(theta, theta, j1, Int(50));
    CHECK(prof.argmin_q == 1);
    CHECK(prof.value.eval(64).hi == 0);
    CHECK(prof.certified);

    // eta = 0 reduces to the classical functional, exactly (same scan)
    auto eta0 = TargetVector::parse("rational:0");
    auto tw = twisted_badness(theta, eta0, j1, Int(1000));
    auto cl = classical_badness(theta, j1, Int(1000));
    CHECK(tw.argmin_q == cl.argmin_q);
    CHECK(tw.value.eval(64).lo == cl.value.eval(64).lo);
    CHECK(tw.value.eval(64).hi == cl.value.eval(64).hi);
}

TEST_CASE("classical badness: rational target hits zero") {
    auto theta = TargetVector::parse("rational:1/2");
    WeightVector j1({Rat(1)});
    auto prof = classical_badness(theta, j1, Int(10));
    CHECK(prof.argmin_q == 2);
    CHECK(prof.value.eval(64).hi == 0);
}

TEST_CASE("classical badness of the golden ratio") {
    auto theta = TargetVector::parse("quad:(-1+1*sqrt(5))/2");
    WeightVector j1({Rat(1)});
    auto prof = classical_badness(theta, j1, Int(100000));
    CHECK(prof.certified);

    // independent oracle (exact in Q(sqrt 5)): the overall minimum is at
    // q = 1 with value ||phi - 1|| = (3 - sqrt 5)/2 = 0.381966...; along
    // Fibonacci q the values q ||q phi|| tend to 1/sqrt(5) = 0.4472...,
    // alternating around it, and never dip below the q = 1 value.
    QuadExpr phi_frac = QuadExpr::quadratic(-1, 1, 5, 2);
    QuadExpr q1_val = phi_frac.dist_to_nearest_int();
    CHECK((q1_val - QuadExpr::quadratic(3, -1, 5, 2)).is_zero());
    CHECK(prof.argmin_q == 1);
    RatInterval enc = q1_val.enclosure(80);
    RatInterval got = prof.value.eval(80);
    CHECK(got.lo <= enc.hi);
    CHECK(got.hi >= enc.lo);
    CHECK(mid_of(prof) > parse_rational("0.38196"));
    CHECK(mid_of(prof) < parse_rational("0.38197"));

    // Fibonacci tail values: exact check that 75025 ||75025 phi|| exceeds
    // the q = 1 minimum and lies within 1e-4 of 1/sqrt(5)
    QuadExpr fib_val = phi_frac.scaled(Rat(75025)).dist_to_nearest_int().scaled(Rat(75025));
    CHECK((fib_val - q1_val).sign() > 0);
    RatInterval fenc = fib_val.enclosure(80);
    CHECK(fenc.lo > parse_rational("0.4471"));
    CHECK(fenc.hi < parse_rational("0.4473"));
}

TEST_CASE("badness profiles are monotone non-increasing in Q") {
    auto theta = TargetVector::parse(kSqrt23);
    WeightVector jeq({Rat(1, 2), Rat(1, 2)});
    Rat prev;
    bool have = false;
    for (long Q : {10L, 100L, 1000L, 10000L}) {
        auto prof = classical_badness(theta, jeq, Int(Q));
        Rat cur = mid_of(prof);
        CHECK(cur > 0);
        if (have) CHECK(cur <= prev + pow2(-40));
        prev = cur;
        have = true;
    }
}

TEST_CASE("twisted badness against a shifted point is positive") {
    auto theta = TargetVector::parse(kSqrt23);
    auto eta = TargetVector::parse("rational:1/2,rational:0");
    WeightVector jeq({Rat(1, 2), Rat(1, 2)});
    auto prof = twisted_badness(theta, eta, jeq, Int(10000));
    CHECK(prof.certified);
    CHECK(prof.value.eval(64).lo > 0);
}

TEST_CASE("coordinate badness") {
    auto half = coordinate_badness(CertifiedReal::from_rational(Rat(1, 2)), Int(10));
    CHECK(half.argmin_q == 2);
    CHECK(half.value.eval(64).hi == 0);

    auto golden = coordinate_badness(TargetVector::parse("quad:(-1+1*sqrt(5))/2")[0], Int(100000));
    CHECK(golden.argmin_q == 1);
    CHECK(mid_of(golden) > parse_rational("0.38196"));
    CHECK(mid_of(golden) < parse_rational("0.38197"));

    // low-precision literal: certification fails once q exceeds the source
    auto coarse = CertifiedReal::decimal_literal(parse_rational("0.707106"), 12);
    CHECK_THROWS_AS(coordinate_badness(coarse, Int(100000)), precision_exhausted);
}

TEST_CASE("dual badness") {
    auto theta = TargetVector::parse(kSqrt23);
    WeightVector jeq({Rat(1, 2), Rat(1, 2)});
    auto seq = enumerate_best_approximations(theta, jeq, Rat(1000));
    REQUIRE(!seq.entries.empty());

    // eta = 0: every residual vanishes
    auto eta0 = TargetVector::parse("rational:0,rational:0");
    auto d0 = dual_badness(eta0, seq);
    CHECK(d0.is_exact_rational());
    CHECK(d0.as_rational() == 0);

    // single entry with m = (1,0): dual badness is ||eta_1||
    BestApproxSequence single{theta, jeq, Rat(1), {}};
    BestApproximation e;
    e.m = IntVec{Int(1), Int(0)};
    e.height = CertifiedReal::from_rational(Rat(1));
    e.residual = dot_residual(e.m, theta);
    e.index = 1;
    single.entries.push_back(e);
    auto eta_half = TargetVector::parse("rational:1/2,rational:7/9");
    auto dh = dual_badness(eta_half, single);
    CHECK(dh.as_rational() == Rat(1, 2));

    // rational points generically stay positive
    auto eta = TargetVector::parse("rational:13/97,rational:55/97");
    auto dv = dual_badness(eta, seq);
    CHECK(dv.eval(64).lo >= 0);
}

TEST_CASE("proposition constants") {
    WeightVector jeq({Rat(1, 2), Rat(1, 2)});
    auto pc = proposition_bound(CertifiedReal::from_rational(Rat(1, 10)), jeq, 2);
    // c = sqrt(1/20), exactly
    REQUIRE(pc.c.exact_value().has_value());
    QuadExpr c2 = *pc.c.exact_value() * *pc.c.exact_value();
    CHECK(c2.is_rational());
    CHECK(c2.as_rational() == Rat(1, 20));
    CHECK(pc.c.eval(64).midpoint() > parse_rational("0.2236"));
    CHECK(pc.c.eval(64).midpoint() < parse_rational("0.2237"));
    CHECK(pc.bound.eval(64).midpoint() > parse_rational("0.005590"));
    CHECK(pc.bound.eval(64).midpoint() < parse_rational("0.005591"));

    WeightVector j1({Rat(1)});
    auto pc1 = proposition_bound(CertifiedReal::from_rational(Rat(1, 2)), j1, 1);
    CHECK(pc1.c.as_rational() == Rat(1, 4));
    CHECK(pc1.bound.as_rational() == Rat(1, 16));

    // bound < gamma/2 for all gamma in (0,1)
    for (int k = 1; k < 10; ++k) {
        Rat g(k, 10);
        auto p = proposition_bound(CertifiedReal::from_rational(g), jeq, 2);
        CHECK(p.bound.eval(96).hi < g / 2);
    }
}

TEST_CASE("proposition verification passes on certified points") {
    auto theta = TargetVector::parse(kSqrt23);
    WeightVector jeq({Rat(1, 2), Rat(1, 2)});
    auto seq = enumerate_best_approximations(theta, jeq, Rat(10000));
    REQUIRE(seq.entries.size() > 3);

    // find a rational point with certified positive dual badness
    std::vector<Rat> pt;
    for (long den : {97L, 89L, 83L}) {
        std::vector<Rat> cand{Rat(13, den), Rat(55, den)};
        std::vector<CertifiedReal> comps{CertifiedReal::from_rational(cand[0]),
                                         CertifiedReal::from_rational(cand[1])};
        TargetVector tv(comps, {"a", "b"});
        auto d = dual_badness(tv, seq);
        if (d.eval(96).lo > 0) {
            pt = cand;
            break;
        }
    }
    REQUIRE(!pt.empty());

    auto reports = verify_proposition_batch(theta, {pt}, jeq, seq);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].q_max > 0);
    CHECK(reports[0].pass());
    CHECK(reports[0].gamma_lo > 0);
    CHECK(reports[0].bound_hi > 0);
    CHECK(reports[0].bound_hi < reports[0].gamma_lo / 2);

    // the single-point wrapper goes through the same path
    std::vector<CertifiedReal> comps{CertifiedReal::from_rational(pt[0]), CertifiedReal::from_rational(pt[1])};
    TargetVector tv(comps, {"a", "b"});
    auto rep = verify_proposition(theta, tv, jeq, seq);
    CHECK(rep.pass());
    CHECK(rep.q_max == reports[0].q_max);
}
