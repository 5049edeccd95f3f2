#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twistedbad/best_approx.hpp"

#include <algorithm>

using namespace tb;

namespace {

TargetVector theta1(const std::string& s) { return TargetVector::parse(s); }

std::vector<long> m_values_1d(const BestApproxSequence& seq) {
    std::vector<long> out;
    for (const auto& e : seq.entries) out.push_back(e.m[0].get_si());
    return out;
}

// Independent re-check of the definition: brute-force re-scan of all
// sign-normalized vectors with height <= bound, compared pairwise with exact
// arithmetic. Slow; use small bounds.
std::vector<IntVec> brute_force_oracle(const TargetVector& theta, const WeightVector& j, const Rat& bound) {
    std::size_t n = theta.n();
    std::vector<IntVec> all;
    std::vector<long> lim(n);
    for (std::size_t i = 0; i < n; ++i) {
        long t = 0;
        while (true) {
            IntVec probe(n, Int(0));
            probe[i] = t + 1;
            if (height_compare_rat(probe, bound, j) > 0) break;
            ++t;
        }
        lim[i] = t;
    }
    std::vector<long> v(n, 0);
    for (std::size_t i = 0; i < n; ++i) v[i] = -lim[i];
    while (true) {
        IntVec cand(n);
        bool zero = true, neg_lead = false;
        for (std::size_t i = 0; i < n; ++i) {
            cand[i] = v[i];
            if (v[i] != 0 && zero) {
                zero = false;
                neg_lead = v[i] < 0;
            }
        }
        if (!zero && !neg_lead && height_compare_rat(cand, bound, j) <= 0) all.push_back(cand);
        std::size_t pos = n;
        bool done = true;
        while (pos > 0) {
            --pos;
            if (v[pos] < lim[pos]) {
                ++v[pos];
                for (std::size_t k = pos + 1; k < n; ++k) v[k] = -lim[k];
                done = false;
                break;
            }
        }
        if (done) break;
    }
    // m is a best approximation iff every other candidate of <= height has a
    // strictly larger residual
    std::vector<IntVec> winners;
    for (const auto& m : all) {
        CertifiedReal rm = dot_residual(m, theta);
        bool best = true;
        for (const auto& v2 : all) {
            if (v2 == m) continue;
            if (height_compare(v2, m, j) <= 0) {
                auto less = certified_less(dot_residual(v2, theta), rm, 1 << 14);
                REQUIRE(less.has_value());
                if (*less) {
                    best = false;
                    break;
                }
            }
        }
        if (best) winners.push_back(m);
    }
    std::sort(winners.begin(), winners.end(),
              [&](const IntVec& a, const IntVec& b) { return height_compare(a, b, j) < 0; });
    return winners;
}

}  // namespace

TEST_CASE("continued fraction oracle") {
    auto golden = theta1("decimal:0.6180339887@60");
    ContinuedFraction cf = continued_fraction_denominators(golden[0], 6);
    std::vector<Int> expect{Int(1), Int(2), Int(3), Int(5), Int(8), Int(13)};
    CHECK(cf.denominators == expect);
    CHECK_FALSE(cf.terminated);

    auto sqrt2m1 = theta1("quad:(0+1*sqrt(2))/1-1");
    cf = continued_fraction_denominators(sqrt2m1[0], 5);
    std::vector<Int> expect2{Int(1), Int(2), Int(5), Int(12), Int(29)};
    CHECK(cf.denominators == expect2);

    auto third = theta1("rational:1/3");
    cf = continued_fraction_denominators(third[0], 8);
    CHECK(cf.terminated);
    CHECK(cf.denominators.size() <= 8);

    // low-precision source: quotient eventually undecidable
    auto coarse = theta1("decimal:0.707106@12");
    CHECK_THROWS_AS(continued_fraction_denominators(coarse[0], 30, 256), precision_exhausted);
}

TEST_CASE("n=1 enumeration matches oracle values") {
    WeightVector j1({Rat(1)});
    auto golden = theta1("decimal:0.6180339887@60");
    auto seq = enumerate_best_approximations(golden, j1, Rat(15));
    CHECK(m_values_1d(seq) == std::vector<long>{1, 2, 3, 5, 8, 13});

    auto sqrt2m1 = theta1("quad:(0+1*sqrt(2))/1-1");
    seq = enumerate_best_approximations(sqrt2m1, j1, Rat(30));
    CHECK(m_values_1d(seq) == std::vector<long>{1, 2, 5, 12, 29});

    // bound below the least possible height: empty
    seq = enumerate_best_approximations(sqrt2m1, j1, Rat(1, 2));
    CHECK(seq.entries.empty());

    // heights strictly increase, residuals strictly decrease
    seq = enumerate_best_approximations(sqrt2m1, j1, Rat(1000));
    for (std::size_t i = 0; i + 1 < seq.entries.size(); ++i) {
        CHECK(height_compare(seq.entries[i].m, seq.entries[i + 1].m, j1) < 0);
        auto dec = certified_less(seq.entries[i + 1].residual, seq.entries[i].residual);
        REQUIRE(dec.has_value());
        CHECK(*dec);
    }
}

TEST_CASE("n=1 sweep agrees with continued-fraction route") {
    WeightVector j1({Rat(1)});
    auto x = theta1("quad:(1+2*sqrt(3))/4");
    EnumerateOptions sweep_opts;
    sweep_opts.cf_switch_bound = Rat(100000000);  // force sweep
    EnumerateOptions cf_opts;
    cf_opts.cf_switch_bound = Rat(1);  // force CF route
    auto a = enumerate_best_approximations(x, j1, Rat(20000), sweep_opts);
    auto b = enumerate_best_approximations(x, j1, Rat(20000), cf_opts);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) CHECK(a.entries[i].m == b.entries[i].m);
}

TEST_CASE("n=2 enumeration satisfies the definition (brute force oracle)") {
    auto theta = TargetVector::parse("quad:(0+1*sqrt(2))/1-1,quad:(0+1*sqrt(3))/1-1");
    for (const auto& jv : {WeightVector({Rat(1, 2), Rat(1, 2)}), WeightVector({Rat(2, 3), Rat(1, 3)})}) {
        auto seq = enumerate_best_approximations(theta, jv, Rat(300));
        auto oracle = brute_force_oracle(theta, jv, Rat(300));
        REQUIRE(seq.entries.size() == oracle.size());
        for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(seq.entries[i].m == oracle[i]);
        // sign normalization: no pair m, -m
        for (const auto& e : seq.entries) {
            IntVec neg = e.m;
            for (auto& c : neg) c = -c;
            for (const auto& f : seq.entries) CHECK(f.m != neg);
        }
    }
}

TEST_CASE("n=2 fast path agrees with generic sweep") {
    auto theta = TargetVector::parse("quad:(0+1*sqrt(2))/1-1,quad:(0+1*sqrt(3))/1-1");
    WeightVector jeq({Rat(1, 2), Rat(1, 2)});
    // bound high enough that the shell sweep engages (smax > 64)
    auto fast = enumerate_best_approximations(theta, jeq, Rat(40000));
    auto oracle = brute_force_oracle(theta, jeq, Rat(2000));
    // compare the common prefix below 2000
    std::size_t k = 0;
    for (; k < fast.entries.size(); ++k)
        if (height_compare_rat(fast.entries[k].m, Rat(2000), jeq) > 0) break;
    REQUIRE(k == oracle.size());
    for (std::size_t i = 0; i < k; ++i) CHECK(fast.entries[i].m == oracle[i]);
}

TEST_CASE("minkowski products certified") {
    WeightVector j1({Rat(1)});
    auto x = theta1("quad:(0+1*sqrt(2))/1-1");
    auto seq = enumerate_best_approximations(x, j1, Rat(100000));
    auto rep = verify_minkowski(seq);
    CHECK(rep.checks.size() == seq.entries.size() - 1);
    CHECK(rep.all_pass());
    for (const auto& c : rep.checks) {
        CHECK(c.value.lo > 0);
        CHECK(c.value.hi <= 1);
    }

    // fabricated entries must fail: zeta = 0.5 against next height 3
    BestApproxSequence fake{x, j1, Rat(10), {}};
    BestApproximation e1;
    e1.m = IntVec{Int(1)};
    e1.height = CertifiedReal::from_rational(Rat(1));
    e1.residual = CertifiedReal::from_rational(Rat(1, 2));
    e1.index = 1;
    BestApproximation e2;
    e2.m = IntVec{Int(3)};
    e2.height = CertifiedReal::from_rational(Rat(3));
    e2.residual = CertifiedReal::from_rational(Rat(1, 5));
    e2.index = 2;
    fake.entries = {e1, e2};
    auto bad = verify_minkowski(fake);
    CHECK(bad.failures() == 1);
}

TEST_CASE("lacunarity certified") {
    WeightVector j1({Rat(1)});
    auto golden = theta1("quad:(-1+1*sqrt(5))/2");
    auto seq = enumerate_best_approximations(golden, j1, Rat(1000000));
    auto rep = verify_lacunarity(seq, 1);
    CHECK(!rep.checks.empty());
    CHECK(rep.all_pass());

    // ratios M_{nu+6} / (2 M_nu) stay >= 1
    for (const auto& c : rep.checks) CHECK(c.value.hi >= 1);

    // sequence shorter than the stride: empty report
    auto tiny = enumerate_best_approximations(golden, j1, Rat(5));
    CHECK(verify_lacunarity(tiny, 1).checks.empty());

    // n=2 sequences pass as well
    auto theta = TargetVector::parse("quad:(0+1*sqrt(2))/1-1,quad:(0+1*sqrt(3))/1-1");
    WeightVector jeq({Rat(1, 2), Rat(1, 2)});
    auto seq2 = enumerate_best_approximations(theta, jeq, Rat(100000));
    auto rep2 = verify_lacunarity(seq2, 2);
    CHECK(rep2.all_pass());
    auto repm = verify_minkowski(seq2);
    CHECK(repm.all_pass());
}

TEST_CASE("integer relation detection") {
    auto t1 = TargetVector::parse("rational:1/2,rational:1/3");
    auto r = check_integer_relation(t1, Int(3));
    REQUIRE(r.kind == RelationResult::Kind::Relation);
    CHECK(r.v == IntVec{Int(2), Int(0)});
    CHECK(r.p == -1);

    auto t2 = TargetVector::parse("quad:(0+1*sqrt(2))/1-1,quad:(0+1*sqrt(3))/1-1");
    r = check_integer_relation(t2, Int(10));
    CHECK(r.kind == RelationResult::Kind::IndependentUpToBound);

    // golden pair: components sum to 1
    auto t3 = TargetVector::parse("quad:(-1+1*sqrt(5))/2,quad:(3-1*sqrt(5))/2");
    r = check_integer_relation(t3, Int(4));
    REQUIRE(r.kind == RelationResult::Kind::Relation);
    CHECK(r.v == IntVec{Int(1), Int(1)});
    CHECK(r.p == -1);

    // enumeration refuses dependent targets
    WeightVector jeq({Rat(1, 2), Rat(1, 2)});
    CHECK_THROWS_AS(enumerate_best_approximations(t3, jeq, Rat(100)), relation_found);
    WeightVector j1({Rat(1)});
    CHECK_THROWS_AS(enumerate_best_approximations(theta1("rational:1/3"), j1, Rat(100)), relation_found);
}
