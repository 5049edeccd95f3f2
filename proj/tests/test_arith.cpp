#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twistedbad/arith.hpp"

#include <random>

using namespace tb;

namespace {

CertifiedReal golden_frac() {
    // (sqrt(5)-1)/2
    return CertifiedReal::from_quad(QuadExpr::quadratic(-1, 1, 5, 2));
}

std::mt19937_64 rng(20240811);

Rat random_rat(long max_num, long max_den) {
    long n = static_cast<long>(rng() % (2 * max_num + 1)) - max_num;
    long d = static_cast<long>(rng() % max_den) + 1;
    Rat r(n, d);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("exact rational helpers") {
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-7/2") == Rat(-7, 2));
    CHECK(parse_rational("0.25") == Rat(1, 4));
    CHECK(parse_rational("1e6") == Rat(1000000));
    CHECK(parse_rational("6.25e-2") == Rat(1, 16));
    CHECK(dist_to_int(Rat(1, 4)) == Rat(1, 4));
    CHECK(dist_to_int(Rat(3, 4)) == Rat(1, 4));
    CHECK(dist_to_int(Rat(1, 2)) == Rat(1, 2));
    CHECK(dist_to_int(Rat(-5)) == 0);
    CHECK(nearest_int(Rat(7, 3)) == 2);
    CHECK(rat_to_decimal(Rat(1, 4), 3) == "0.25");
    CHECK(rat_to_decimal(Rat(2), 5) == "2");
    CHECK(rat_to_decimal(Rat(-1, 3), 4) == "-0.3333");
}

TEST_CASE("interval kernels") {
    RatInterval s2 = sqrt_enclosure(2, 100);
    CHECK(s2.width() <= pow2(-100));
    CHECK(s2.lo * s2.lo <= 2);
    CHECK(s2.hi * s2.hi >= 2);

    RatInterval r = root_enclosure(Rat(27), 3, 50);
    CHECK(r.is_point());
    CHECK(r.lo == 3);

    r = root_enclosure(Rat(1, 16), 2, 50);
    CHECK(r.is_point());
    CHECK(r.lo == Rat(1, 4));

    r = root_enclosure(Rat(5), 2, 80);
    CHECK(r.width() <= pow2(-80));
    CHECK(r.lo * r.lo <= 5);
    CHECK(r.hi * r.hi >= 5);

    // ln 2 = 0.693147180559945...
    RatInterval l2 = ln_enclosure(Rat(2), 100);
    CHECK(l2.width() <= pow2(-100));
    CHECK(l2.lo <= parse_rational("0.6931471805599454"));
    CHECK(l2.hi >= parse_rational("0.6931471805599452"));

    // ln(1/3) = -ln 3 = -1.0986122886681098...
    RatInterval l3 = ln_enclosure(Rat(1, 3), 90);
    CHECK(l3.hi <= parse_rational("-1.098612288668109"));
    CHECK(l3.lo >= parse_rational("-1.098612288668110"));

    // image of distance-to-integer over intervals
    RatInterval img = dist_to_int_image({Rat(3, 10), Rat(2, 5)});
    CHECK(img.lo == Rat(3, 10));
    CHECK(img.hi == Rat(2, 5));
    img = dist_to_int_image({Rat(9, 10), Rat(11, 10)});
    CHECK(img.lo == 0);
    CHECK(img.hi == Rat(1, 10));
    img = dist_to_int_image({Rat(2, 5), Rat(3, 5)});
    CHECK(img.hi == Rat(1, 2));
    CHECK(img.lo == Rat(2, 5));
}

TEST_CASE("quadratic expressions are exact") {
    QuadExpr a = QuadExpr::quadratic(-1, 1, 5, 2);  // (sqrt 5 - 1)/2
    QuadExpr b = QuadExpr::quadratic(3, -1, 5, 2);  // (3 - sqrt 5)/2
    QuadExpr s = a + b;
    CHECK(s.is_rational());
    CHECK(s.as_rational() == 1);

    // sqrt(8) normalizes to 2 sqrt(2)
    QuadExpr r8 = QuadExpr::sqrt_of(8);
    QuadExpr r2 = QuadExpr::sqrt_of(2);
    CHECK((r8 - r2.scaled(2)).is_zero());

    // sqrt(2)*sqrt(3) = sqrt(6); sqrt(6)*sqrt(3) = 3 sqrt(2)
    QuadExpr r3 = QuadExpr::sqrt_of(3);
    QuadExpr r6 = QuadExpr::sqrt_of(6);
    CHECK((r2 * r3 - r6).is_zero());
    CHECK((r6 * r3 - r2.scaled(3)).is_zero());

    // golden ratio identity: phi^2 = phi + 1, phi = (1+sqrt 5)/2
    QuadExpr phi = QuadExpr::quadratic(1, 1, 5, 2);
    CHECK((phi * phi - phi - QuadExpr(Rat(1))).is_zero());

    // reciprocal: 1/phi = phi - 1
    CHECK((phi.reciprocal() - phi + QuadExpr(Rat(1))).is_zero());

    // multi-radical reciprocal: x * (1/x) == 1
    QuadExpr x = r2 + r3 + r6 + QuadExpr(Rat(7, 3));
    QuadExpr inv = x.reciprocal();
    QuadExpr prod = x * inv;
    CHECK(prod.is_rational());
    CHECK(prod.as_rational() == 1);

    CHECK(QuadExpr::sqrt_of(2).sign() == 1);
    CHECK((QuadExpr(Rat(3, 2)) - QuadExpr::sqrt_of(2)).sign() == 1);
    CHECK((QuadExpr(Rat(7, 5)) - QuadExpr::sqrt_of(2)).sign() == -1);

    CHECK(QuadExpr::sqrt_of(2).floor() == 1);
    CHECK(QuadExpr::sqrt_of(99).floor() == 9);
    CHECK((-QuadExpr::sqrt_of(2)).floor() == -2);

    // ||sqrt 2|| = sqrt 2 - 1
    QuadExpr d = QuadExpr::sqrt_of(2).dist_to_nearest_int();
    CHECK((d - QuadExpr::quadratic(-1, 1, 2, 1)).is_zero());
}

TEST_CASE("dist_to_nearest_int examples") {
    auto half = dist_to_nearest_int(CertifiedReal::from_rational(Rat(1, 2)));
    CHECK(half.is_exact_rational());
    CHECK(half.as_rational() == Rat(1, 2));

    auto three = dist_to_nearest_int(CertifiedReal::from_rational(Rat(3)));
    CHECK(three.as_rational() == 0);

    auto q = dist_to_nearest_int(CertifiedReal::from_rational(Rat(9, 4)));
    CHECK(q.as_rational() == Rat(1, 4));

    // result is always inside [0, 1/2], under refinement
    CertifiedReal g = dist_to_nearest_int(golden_frac() * CertifiedReal::from_int(13));
    for (long bits : {32L, 64L, 128L}) {
        RatInterval iv = g.eval(bits);
        CHECK(iv.hi >= 0);
        CHECK(iv.lo <= Rat(1, 2));
    }
}

TEST_CASE("weighted height examples") {
    WeightVector j12({Rat(1, 2), Rat(1, 2)});
    auto h = weighted_height({Int(3), Int(-2)}, j12);
    CHECK(h.is_exact_rational());
    CHECK(h.as_rational() == 9);

    h = weighted_height({Int(1), Int(0)}, j12);
    CHECK(h.as_rational() == 1);

    WeightVector j1({Rat(1)});
    h = weighted_height({Int(5)}, j1);
    CHECK(h.as_rational() == 5);

    CHECK_THROWS_AS(weighted_height({Int(0), Int(0)}, j12), std::invalid_argument);

    // sign symmetry
    WeightVector j23({Rat(2, 3), Rat(1, 3)});
    for (int trial = 0; trial < 50; ++trial) {
        IntVec m{Int(static_cast<long>(rng() % 19) - 9), Int(static_cast<long>(rng() % 19) - 9)};
        if (is_zero_vec(m)) continue;
        IntVec neg{-m[0], -m[1]};
        CHECK(height_compare(m, neg, j23) == 0);
    }
}

TEST_CASE("dot residual examples") {
    TargetVector t14({CertifiedReal::from_rational(Rat(1, 4))}, {"rational:1/4"});
    auto r = dot_residual({Int(1)}, t14);
    CHECK(r.as_rational() == Rat(1, 4));

    TargetVector t13(
        {CertifiedReal::from_rational(Rat(1, 3)), CertifiedReal::from_rational(Rat(1, 3))},
        {"rational:1/3", "rational:1/3"});
    r = dot_residual({Int(2), Int(1)}, t13);
    CHECK(r.as_rational() == 0);

    // decimal literal at declared precision
    auto theta = TargetVector::parse("decimal:0.6180339887@60");
    r = dot_residual({Int(1)}, theta);
    RatInterval iv = r.eval(80);
    CHECK(iv.lo <= parse_rational("0.3819660113"));
    CHECK(iv.hi >= parse_rational("0.3819660112"));
    // sign symmetry through the certified path
    auto rn = dot_residual({Int(-1)}, theta);
    CHECK(certified_compare(r, rn, 256) == Cmp::Undecided);  // equal values stay undecided
    CHECK(r.eval(80).lo == rn.eval(80).lo);
}

TEST_CASE("certified_compare outcomes") {
    auto third = CertifiedReal::from_rational(Rat(1, 3));
    auto half = CertifiedReal::from_rational(Rat(1, 2));
    CHECK(certified_compare(third, half) == Cmp::Less);
    CHECK(certified_compare(half, third) == Cmp::Greater);
    CHECK(certified_compare(CertifiedReal::from_rational(Rat(2, 4)), half) == Cmp::EqualExact);

    // opaque value vs itself shifted below resolution: undecided at max_bits
    long max_bits = 128;
    auto x = CertifiedReal::decimal_literal(Rat(355, 113), max_bits);
    auto y = x + CertifiedReal::from_rational(pow2(-max_bits - 5));
    CHECK(certified_compare(x, y, max_bits) == Cmp::Undecided);

    // exact quadratics decide strictly even when intervals would be slow
    auto a = CertifiedReal::from_quad(QuadExpr::sqrt_of(2));
    auto b = CertifiedReal::from_quad(QuadExpr::quadratic(0, 1, 2, 1));
    CHECK(certified_compare(a, b) == Cmp::Undecided);  // equal irrationals: not EqualExact
    auto c = a + CertifiedReal::from_rational(pow2(-200));
    CHECK(certified_compare(a, c, 512) == Cmp::Less);
}

TEST_CASE("monotone refinement never widens") {
    auto theta = TargetVector::parse("quad:(-1+1*sqrt(5))/2");
    CertifiedReal vals[] = {
        dot_residual({Int(13)}, theta),
        weighted_height({Int(3), Int(5)}, WeightVector({Rat(2, 5), Rat(3, 5)})),
        ln_of(CertifiedReal::from_rational(Rat(10, 3))),
        (golden_frac() * golden_frac() - golden_frac()) * CertifiedReal::from_rational(Rat(22, 7)),
    };
    for (const auto& v : vals) {
        RatInterval prev = v.eval(16);
        for (long bits = 32; bits <= 512; bits *= 2) {
            RatInterval cur = v.eval(bits);
            CHECK(cur.lo >= prev.lo);
            CHECK(cur.hi <= prev.hi);
            prev = cur;
        }
    }
}

TEST_CASE("enclosure meets width and reports exhaustion") {
    auto g = golden_frac();
    RatInterval iv = g.enclosure(200);
    CHECK(iv.width() <= pow2(-200));

    auto capped = CertifiedReal::decimal_literal(Rat(1, 7), 40);
    CHECK_THROWS_AS(capped.enclosure(80, 1024), precision_exhausted);

    // random rational arithmetic round-trips exactly through the DAG
    for (int trial = 0; trial < 40; ++trial) {
        Rat a = random_rat(50, 20), b = random_rat(50, 20);
        auto ca = CertifiedReal::from_rational(a), cb = CertifiedReal::from_rational(b);
        auto s = ca * cb + ca - cb;
        CHECK(s.is_exact_rational());
        CHECK(s.as_rational() == a * b + a - b);
    }
}

TEST_CASE("target grammar") {
    auto t = TargetVector::parse("rational:2/7,quad:(0+1*sqrt(2))/1-1,decimal:0.125@30");
    CHECK(t.n() == 3);
    CHECK(t[0].as_rational() == Rat(2, 7));
    // sqrt(2) - 1
    auto expect = QuadExpr::quadratic(-1, 1, 2, 1);
    CHECK((*t[1].exact_value() - expect).is_zero());
    RatInterval iv = t[2].eval(100);
    CHECK(iv.contains(Rat(1, 8)));
    CHECK(iv.width() <= pow2(-29));

    CHECK_THROWS_AS(TargetVector::parse("bogus:1"), std::invalid_argument);
    CHECK_THROWS_AS(WeightVector::parse("1/2,1/3"), std::invalid_argument);
    auto w = WeightVector::parse("2/3,1/3");
    CHECK(w.j_min() == Rat(1, 3));
    CHECK(w.j_max() == Rat(2, 3));
}
