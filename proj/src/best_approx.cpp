#include "twistedbad/best_approx.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace tb {

namespace {

std::string vec_to_string(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i].get_str();
    }
    os << ")";
    return os.str();
}

// ---- dyadic enclosures of theta at a fixed scale ----

struct ScaledTheta {
    long w = 0;
    Int one;  // 2^w
    std::vector<Int> lo, hi;
};

ScaledTheta scale_theta(const TargetVector& theta, long w) {
    ScaledTheta s;
    s.w = w;
    s.one = 1;
    mpz_mul_2exp(s.one.get_mpz_t(), s.one.get_mpz_t(), static_cast<unsigned long>(w));
    for (std::size_t i = 0; i < theta.n(); ++i) {
        RatInterval iv = theta[i].eval(w + 8);
        s.lo.push_back(floor_rat(iv.lo * Rat(s.one)));
        s.hi.push_back(ceil_rat(iv.hi * Rat(s.one)));
    }
    return s;
}

// Exact image of distance-to-nearest-integer over [lo, hi]/2^w, as a pair
// of integers over the same scale.
void dist_image_scaled(Int lo, Int hi, const Int& one, Int& dlo, Int& dhi) {
    if (hi - lo >= one) {
        dlo = 0;
        mpz_fdiv_q_2exp(dhi.get_mpz_t(), one.get_mpz_t(), 1);
        return;
    }
    Int k;
    mpz_fdiv_q(k.get_mpz_t(), lo.get_mpz_t(), one.get_mpz_t());
    lo -= k * one;
    hi -= k * one;  // now 0 <= lo < one, lo <= hi < 2*one
    Int half;
    mpz_fdiv_q_2exp(half.get_mpz_t(), one.get_mpz_t(), 1);
    Int da = std::min(Int(lo), Int(one - lo));
    Int hm = hi >= one ? Int(hi - one) : hi;
    Int db = std::min(hm, Int(one - hm));
    if (hi >= one && lo > 0)
        dlo = 0;  // an integer sits inside
    else
        dlo = std::min(da, db);
    dhi = std::max(da, db);
    if ((lo <= half && half <= hi) || hi >= one + half) dhi = half;
}

// ---- candidate selection (the definition, verbatim) ----

struct Cand {
    IntVec v;
    Int rlo, rhi;  // residual interval over the shared scale
};

class Selector {
  public:
    Selector(const TargetVector& theta, long max_bits) : theta_(theta), max_bits_(max_bits) {}

    // Consume one group of equal-height candidates; groups arrive in
    // strictly increasing height order. Records every new best
    // approximation: the strict minimum of the residual over all candidates
    // seen so far, including the group being processed.
    void process_group(std::vector<Cand>& group) {
        if (group.empty()) return;
        std::size_t g = 0;
        for (std::size_t i = 1; i < group.size(); ++i)
            if (group[i].rhi < group[g].rhi) g = i;
        // candidates overlapping the apparent minimum need exact treatment
        for (std::size_t i = 0; i < group.size(); ++i) {
            if (i == g) continue;
            if (group[i].rlo < group[g].rhi) {
                if (exact_strict_less(group[i].v, group[g].v)) g = i;
            }
        }
        const Cand& gm = group[g];
        bool wins;
        if (!have_min_)
            wins = true;
        else if (gm.rhi < min_lo_)
            wins = true;
        else if (gm.rlo > min_hi_)
            wins = false;
        else
            wins = exact_strict_less(gm.v, min_vec_);
        if (wins) {
            winners.push_back(gm.v);
            min_vec_ = gm.v;
            min_lo_ = gm.rlo;
            min_hi_ = gm.rhi;
            have_min_ = true;
        }
    }

    std::vector<IntVec> winners;

  private:
    // Certified strict comparison ||u.theta|| < ||v.theta||.
    bool exact_strict_less(const IntVec& u, const IntVec& v) {
        CertifiedReal ru = dot_residual(u, theta_);
        CertifiedReal rv = dot_residual(v, theta_);
        auto r = certified_less(ru, rv, max_bits_);
        if (!r)
            throw precision_exhausted("cannot order residuals of " + vec_to_string(u) + " and " +
                                      vec_to_string(v) + " at max precision");
        return *r;
    }

    const TargetVector& theta_;
    long max_bits_;
    bool have_min_ = false;
    IntVec min_vec_;
    Int min_lo_, min_hi_;
};

// ---- generic sweep (any n, any weights) ----

Int axis_bound(const Rat& bound, const WeightVector& j, std::size_t i) {
    // largest t >= 0 with t^(q_i) <= bound^(p_i)
    if (bound < 1) return 0;
    unsigned long p = j.num(i), q = j.den(i);
    Int np = ipow(bound.get_num(), p), dp = ipow(bound.get_den(), p);
    Int t = iroot_floor_value(Int(np / dp), q);
    while (ipow(t + 1, q) * dp <= np) t += 1;
    while (t > 0 && ipow(t, q) * dp > np) t -= 1;
    return t;
}

void residual_scaled(const IntVec& v, const ScaledTheta& st, Int& rlo, Int& rhi) {
    Int slo(0), shi(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (v[i] > 0) {
            slo += v[i] * st.lo[i];
            shi += v[i] * st.hi[i];
        } else {
            slo += v[i] * st.hi[i];
            shi += v[i] * st.lo[i];
        }
    }
    dist_image_scaled(slo, shi, st.one, rlo, rhi);
}

std::vector<IntVec> sweep_generic(const TargetVector& theta, const WeightVector& j, const Rat& bound,
                                  const EnumerateOptions& opts) {
    std::size_t n = theta.n();
    std::vector<Int> B(n);
    double est = 1;
    for (std::size_t i = 0; i < n; ++i) {
        B[i] = axis_bound(bound, j, i);
        est *= 2 * B[i].get_d() + 1;
    }
    if (est > 6.0e7) throw std::invalid_argument("candidate sweep too large; lower the height bound");

    // residual gaps scale like bound^-2
    long w = 96 + 2 * static_cast<long>(mpz_sizeinbase(bound.get_num().get_mpz_t(), 2));
    ScaledTheta st = scale_theta(theta, w);

    std::vector<IntVec> cands;
    IntVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = -B[i];
    while (true) {
        bool zero = true, neg_lead = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] != 0) {
                neg_lead = v[i] < 0;
                zero = false;
                break;
            }
        }
        if (!zero && !neg_lead && height_compare_rat(v, bound, j) <= 0) cands.push_back(v);
        std::size_t pos = n;
        bool done = true;
        while (pos > 0) {
            --pos;
            if (v[pos] < B[pos]) {
                v[pos] += 1;
                for (std::size_t k = pos + 1; k < n; ++k) v[k] = -B[k];
                done = false;
                break;
            }
        }
        if (done) break;
    }
    std::sort(cands.begin(), cands.end(),
              [&](const IntVec& a, const IntVec& b) { return height_compare(a, b, j) < 0; });

    Selector sel(theta, opts.max_bits);
    std::vector<Cand> group;
    for (std::size_t i = 0; i < cands.size();) {
        std::size_t k = i;
        group.clear();
        while (k < cands.size() && height_compare(cands[i], cands[k], j) == 0) {
            Cand c;
            c.v = cands[k];
            residual_scaled(c.v, st, c.rlo, c.rhi);
            group.push_back(std::move(c));
            ++k;
        }
        sel.process_group(group);
        i = k;
    }
    return std::move(sel.winners);
}

// ---- n = 1 streaming sweep ----

std::vector<IntVec> sweep_n1(const TargetVector& theta, const Rat& bound, const EnumerateOptions& opts) {
    Int B = floor_rat(bound);
    long w = 96 + 2 * static_cast<long>(mpz_sizeinbase(B.get_mpz_t(), 2));
    ScaledTheta st = scale_theta(theta, w);

    Selector sel(theta, opts.max_bits);
    Int slo(0), shi(0), k;
    std::vector<Cand> group(1);
    for (Int v(1); v <= B; ++v) {
        slo += st.lo[0];
        shi += st.hi[0];
        if (slo >= st.one) {
            mpz_fdiv_q(k.get_mpz_t(), slo.get_mpz_t(), st.one.get_mpz_t());
            slo -= k * st.one;
            shi -= k * st.one;
        }
        group[0].v = IntVec{v};
        dist_image_scaled(slo, shi, st.one, group[0].rlo, group[0].rhi);
        sel.process_group(group);
    }
    return std::move(sel.winners);
}

// ---- n = 2, equal weights: fixed-point shell sweep ----
//
// Shell s holds every sign-normalized v with max(|v_1|,|v_2|) = s; all of
// them share the height s^2, so a shell is exactly one height group. The
// sweep walks each shell with incremental 128-bit adds and hands only the
// shell minimum plus its near-ties to the exact selector.

using u128 = unsigned __int128;

u128 to_u128(const Int& x) {
    Int hi_part, lo_part;
    mpz_fdiv_q_2exp(hi_part.get_mpz_t(), x.get_mpz_t(), 64);
    mpz_fdiv_r_2exp(lo_part.get_mpz_t(), x.get_mpz_t(), 64);
    return (static_cast<u128>(mpz_get_ui(hi_part.get_mpz_t())) << 64) | mpz_get_ui(lo_part.get_mpz_t());
}

Int from_u128(u128 x) {
    Int r(static_cast<unsigned long>(x >> 64));
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 64);
    r += static_cast<unsigned long>(x & ~0ULL);
    return r;
}

struct ShellTracker {
    bool have = false;
    long v0 = 0, v1 = 0;
    u128 min_lo = 0, min_hi = 0;
    std::vector<std::array<long, 2>> near;
    std::vector<std::array<u128, 2>> near_iv;

    void offer(long a, long b, u128 lo, u128 hi) {
        if (!have || hi < min_hi) {
            if (have && min_lo < hi) {
                near.push_back({v0, v1});
                near_iv.push_back({min_lo, min_hi});
            }
            v0 = a;
            v1 = b;
            min_lo = lo;
            min_hi = hi;
            have = true;
            std::size_t out = 0;
            for (std::size_t i = 0; i < near.size(); ++i) {
                if (near_iv[i][0] < min_hi) {
                    near[out] = near[i];
                    near_iv[out] = near_iv[i];
                    ++out;
                }
            }
            near.resize(out);
            near_iv.resize(out);
        } else if (lo < min_hi) {
            near.push_back({a, b});
            near_iv.push_back({lo, hi});
        }
    }
};

std::vector<IntVec> sweep_n2_equal(const TargetVector& theta, const Rat& bound, const EnumerateOptions& opts) {
    WeightVector jeq({Rat(1, 2), Rat(1, 2)});
    Int smax_z = axis_bound(bound, jeq, 0);
    if (!smax_z.fits_slong_p()) throw std::invalid_argument("height bound too large");
    long smax = smax_z.get_si();
    if (smax <= 64) return sweep_generic(theta, jeq, bound, opts);

    const long w = 120;
    ScaledTheta st = scale_theta(theta, w);
    for (int i = 0; i < 2; ++i) {
        // the fast path needs tight component enclosures; otherwise widths
        // accumulate and nothing can be decided anyway
        if (st.hi[i] - st.lo[i] > 8) return sweep_generic(theta, jeq, bound, opts);
    }

    const u128 one = to_u128(st.one);
    const u128 half = one >> 1;
    auto reduce_base = [&](Int blo, Int bhi) {
        Int k;
        mpz_fdiv_q(k.get_mpz_t(), blo.get_mpz_t(), st.one.get_mpz_t());
        blo -= k * st.one;
        bhi -= k * st.one;
        return std::make_pair(to_u128(blo), to_u128(bhi));
    };
    // per-step increments for +theta_i (mod 1); the shell runs only ever
    // step upward
    u128 incA[2], incB[2];
    for (int i = 0; i < 2; ++i) {
        Int flo = st.lo[i], fhi = st.hi[i], k;
        mpz_fdiv_q(k.get_mpz_t(), flo.get_mpz_t(), st.one.get_mpz_t());
        flo -= k * st.one;
        fhi -= k * st.one;
        incA[i] = to_u128(flo);
        incB[i] = to_u128(fhi);
    }

    auto dist128 = [&](u128 lo, u128 hi, u128& dlo, u128& dhi) {
        u128 da = lo < one - lo ? lo : one - lo;
        u128 hm = hi >= one ? hi - one : hi;
        u128 db = hm < one - hm ? hm : one - hm;
        if (hi >= one && lo > 0)
            dlo = 0;
        else
            dlo = da < db ? da : db;
        dhi = da > db ? da : db;
        if ((lo <= half && half <= hi) || hi >= one + half) dhi = half;
    };

    Selector sel(theta, opts.max_bits);
    std::vector<Cand> group;
    for (long sh = 1; sh <= smax; ++sh) {
        ShellTracker tr;
        u128 dlo, dhi;
        // v = (0, sh)
        {
            auto [lo, hi] = reduce_base(sh * st.lo[1], sh * st.hi[1]);
            dist128(lo, hi, dlo, dhi);
            tr.offer(0, sh, dlo, dhi);
        }
        // v = (t, +-sh), t = 1..sh-1, incremental in t
        for (int sign = 0; sign < 2 && sh > 1; ++sign) {
            long v1v = sign == 0 ? sh : -sh;
            auto [lo, hi] =
                sign == 0 ? reduce_base(sh * st.lo[1], sh * st.hi[1]) : reduce_base(-sh * st.hi[1], -sh * st.lo[1]);
            for (long t = 1; t <= sh - 1; ++t) {
                lo += incA[0];
                hi += incB[0];
                if (lo >= one) {
                    lo -= one;
                    hi -= one;
                }
                dist128(lo, hi, dlo, dhi);
                tr.offer(t, v1v, dlo, dhi);
            }
        }
        // v = (sh, t), t = -sh..sh, incremental in t
        {
            auto [lo, hi] = reduce_base(sh * st.lo[0] - (sh + 1) * st.hi[1], sh * st.hi[0] - (sh + 1) * st.lo[1]);
            for (long t = -sh; t <= sh; ++t) {
                lo += incA[1];
                hi += incB[1];
                if (lo >= one) {
                    lo -= one;
                    hi -= one;
                }
                dist128(lo, hi, dlo, dhi);
                tr.offer(sh, t, dlo, dhi);
            }
        }
        group.clear();
        Cand c;
        c.v = IntVec{Int(tr.v0), Int(tr.v1)};
        c.rlo = from_u128(tr.min_lo);
        c.rhi = from_u128(tr.min_hi);
        group.push_back(std::move(c));
        for (std::size_t i = 0; i < tr.near.size(); ++i) {
            Cand t;
            t.v = IntVec{Int(tr.near[i][0]), Int(tr.near[i][1])};
            t.rlo = from_u128(tr.near_iv[i][0]);
            t.rhi = from_u128(tr.near_iv[i][1]);
            group.push_back(std::move(t));
        }
        sel.process_group(group);
    }
    return std::move(sel.winners);
}

// ---- assembling sequences ----

std::optional<Int> certified_floor(const CertifiedReal& x, long max_bits) {
    if (x.exact_value()) return x.exact_value()->floor();
    long work = 64;
    while (true) {
        RatInterval iv = x.eval(work);
        Int f_lo = floor_rat(iv.lo), f_hi = floor_rat(iv.hi);
        if (f_lo == f_hi) return f_lo;
        if (work >= max_bits) return std::nullopt;
        work = std::min(max_bits, work * 2);
    }
}

void certify_entry(BestApproximation& e, const TargetVector& theta, long max_bits) {
    if (e.residual.exact_value()) {
        if (e.residual.exact_value()->is_zero()) {
            QuadExpr dot(Rat(0));
            for (std::size_t i = 0; i < e.m.size(); ++i)
                dot += theta[i].exact_value()->scaled(Rat(e.m[i]));
            RelationResult rel;
            rel.kind = RelationResult::Kind::Relation;
            rel.v = e.m;
            rel.p = -nearest_int(dot.as_rational());
            throw relation_found(rel, "integer relation detected at " + vec_to_string(e.m));
        }
        return;
    }
    auto sg = certified_sign(e.residual, max_bits);
    if (!sg || *sg <= 0)
        throw precision_exhausted("cannot certify residual of " + vec_to_string(e.m) + " positive");
}

BestApproxSequence assemble(const TargetVector& theta, const WeightVector& j, const Rat& bound,
                            std::vector<IntVec> winners, long max_bits) {
    BestApproxSequence seq{theta, j, bound, {}};
    seq.entries.reserve(winners.size());
    for (std::size_t i = 0; i < winners.size(); ++i) {
        BestApproximation e;
        e.m = std::move(winners[i]);
        e.height = weighted_height(e.m, j);
        e.residual = dot_residual(e.m, theta);
        e.index = i + 1;
        certify_entry(e, theta, max_bits);
        seq.entries.push_back(std::move(e));
    }
    return seq;
}

}  // namespace

ContinuedFraction continued_fraction_denominators(const CertifiedReal& x, int depth, long max_bits) {
    ContinuedFraction cf;
    if (depth <= 0) return cf;
    Int q_prev(0), q_cur(1);
    cf.denominators.push_back(q_cur);  // q_0 = 1
    CertifiedReal rem = x;
    while (static_cast<int>(cf.denominators.size()) < depth) {
        auto fl = certified_floor(rem, max_bits);
        if (!fl) throw precision_exhausted("partial quotient undecidable at max precision");
        CertifiedReal frac = rem - CertifiedReal::from_int(*fl);
        if (frac.exact_value() && frac.exact_value()->is_zero()) {
            cf.terminated = true;
            return cf;
        }
        rem = CertifiedReal::from_rational(Rat(1)) / frac;
        auto aq = certified_floor(rem, max_bits);
        if (!aq) throw precision_exhausted("partial quotient undecidable at max precision");
        Int q_next = (*aq) * q_cur + q_prev;
        q_prev = q_cur;
        q_cur = q_next;
        if (q_cur != cf.denominators.back()) cf.denominators.push_back(q_cur);
    }
    return cf;
}

BestApproxSequence enumerate_best_approximations(const TargetVector& theta, const WeightVector& j,
                                                 const Rat& height_bound, const EnumerateOptions& opts) {
    if (theta.n() != j.n()) throw std::invalid_argument("target/weight dimension mismatch");
    if (height_bound < 1) return BestApproxSequence{theta, j, height_bound, {}};

    // Independence heuristic over small coefficients; the sweep itself
    // catches exact relations among the scanned vectors.
    RelationResult rel = check_integer_relation(theta, Int(12), opts.max_bits);
    if (rel.kind == RelationResult::Kind::Relation)
        throw relation_found(rel, "target is Z-dependent through " + vec_to_string(rel.v));
    if (rel.kind == RelationResult::Kind::SuspectedRelation)
        throw precision_exhausted("suspected integer relation " + vec_to_string(rel.v) +
                                  " cannot be refuted at max precision");

    std::vector<IntVec> winners;
    if (theta.n() == 1) {
        if (height_bound > opts.cf_switch_bound) {
            // the continued-fraction generator; agrees with the sweep
            Int q_prev(0), q_cur(1);
            winners.push_back(IntVec{q_cur});
            CertifiedReal rem = theta[0];
            while (true) {
                auto fl = certified_floor(rem, opts.max_bits);
                if (!fl) throw precision_exhausted("partial quotient undecidable at max precision");
                CertifiedReal frac = rem - CertifiedReal::from_int(*fl);
                if (frac.exact_value() && frac.exact_value()->is_zero()) {
                    RelationResult r;
                    r.kind = RelationResult::Kind::Relation;
                    r.v = IntVec{theta[0].as_rational().get_den()};
                    r.p = -theta[0].as_rational().get_num();
                    throw relation_found(r, "target component is rational");
                }
                rem = CertifiedReal::from_rational(Rat(1)) / frac;
                auto aq = certified_floor(rem, opts.max_bits);
                if (!aq) throw precision_exhausted("partial quotient undecidable at max precision");
                Int q_next = (*aq) * q_cur + q_prev;
                if (Rat(q_next) > height_bound) break;
                q_prev = q_cur;
                q_cur = q_next;
                if (winners.back()[0] != q_cur) winners.push_back(IntVec{q_cur});
            }
        } else {
            winners = sweep_n1(theta, height_bound, opts);
        }
    } else if (theta.n() == 2 && j.all_equal()) {
        winners = sweep_n2_equal(theta, height_bound, opts);
    } else {
        winners = sweep_generic(theta, j, height_bound, opts);
    }
    return assemble(theta, j, height_bound, std::move(winners), opts.max_bits);
}

PairCheckReport verify_minkowski(const BestApproxSequence& seq, long max_bits) {
    PairCheckReport rep;
    if (seq.entries.size() < 2) return rep;
    CertifiedReal one = CertifiedReal::from_rational(Rat(1));
    for (std::size_t i = 0; i + 1 < seq.entries.size(); ++i) {
        CertifiedReal prod = seq.entries[i].residual * seq.entries[i + 1].height;
        PairCheck c;
        c.nu = i + 1;
        c.value = prod.best_enclosure(60, max_bits);
        switch (certified_compare(prod, one, max_bits)) {
            case Cmp::Less:
            case Cmp::EqualExact:
                c.status = CheckStatus::Pass;
                break;
            case Cmp::Greater:
                c.status = CheckStatus::Fail;
                break;
            case Cmp::Undecided:
                c.status = CheckStatus::Inconclusive;
                break;
        }
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

PairCheckReport verify_lacunarity(const BestApproxSequence& seq, std::size_t n) {
    PairCheckReport rep;
    std::size_t stride = 2;
    for (std::size_t i = 0; i < n; ++i) stride *= 3;
    if (seq.entries.size() <= stride) return rep;
    const WeightVector& j = seq.weights;
    for (std::size_t i = 0; i + stride < seq.entries.size(); ++i) {
        const IntVec& mb = seq.entries[i].m;
        const IntVec& ma = seq.entries[i + stride].m;
        // M_a >= 2 M_b  <=>  |a|^(qa*pb) >= 2^(pa*pb) |b|^(qb*pa), exactly
        std::size_t ia = height_argmax(ma, j), ib = height_argmax(mb, j);
        unsigned long pa = j.num(ia), qa = j.den(ia), pb = j.num(ib), qb = j.den(ib);
        Int lhs = ipow(ma[ia] < 0 ? Int(-ma[ia]) : ma[ia], qa * pb);
        Int rhs = ipow(mb[ib] < 0 ? Int(-mb[ib]) : mb[ib], qb * pa);
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), pa * pb);
        PairCheck c;
        c.nu = i + 1;
        c.status = lhs >= rhs ? CheckStatus::Pass : CheckStatus::Fail;
        CertifiedReal ratio =
            seq.entries[i + stride].height / (CertifiedReal::from_rational(Rat(2)) * seq.entries[i].height);
        c.value = ratio.best_enclosure(40);
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

RelationResult check_integer_relation(const TargetVector& theta, const Int& coeff_bound, long max_bits) {
    if (coeff_bound < 1) throw std::invalid_argument("coefficient bound must be >= 1");
    std::size_t n = theta.n();
    if (!coeff_bound.fits_slong_p()) throw std::invalid_argument("coefficient bound too large");
    long bl = coeff_bound.get_si();
    Int p_bound = Int(static_cast<long>(n)) * coeff_bound;

    // shells of growing max-norm, lexicographic inside a shell
    for (long shell = 1; shell <= bl; ++shell) {
        IntVec v(n, Int(-shell));
        while (true) {
            bool on_shell = false;
            for (const auto& c : v)
                if (c == shell || c == -shell) on_shell = true;
            bool zero = true, neg_lead = false;
            for (const auto& c : v) {
                if (c != 0) {
                    zero = false;
                    neg_lead = c < 0;
                    break;
                }
            }
            if (on_shell && !zero && !neg_lead) {
                CertifiedReal dot = CertifiedReal::from_rational(Rat(0));
                for (std::size_t i = 0; i < n; ++i)
                    if (v[i] != 0) dot = dot + CertifiedReal::from_int(v[i]) * theta[i];
                Int p = -nearest_int(dot.eval(64).midpoint());
                if (abs(p) <= p_bound) {
                    CertifiedReal val = dot + CertifiedReal::from_int(p);
                    if (val.exact_value()) {
                        if (val.exact_value()->is_zero()) return {RelationResult::Kind::Relation, v, p};
                    } else {
                        auto sg = certified_sign(val, max_bits);
                        if (!sg) return {RelationResult::Kind::SuspectedRelation, v, p};
                    }
                }
            }
            std::size_t pos = n;
            bool done = true;
            while (pos > 0) {
                --pos;
                if (v[pos] < shell) {
                    v[pos] += 1;
                    for (std::size_t k = pos + 1; k < n; ++k) v[k] = -shell;
                    done = false;
                    break;
                }
            }
            if (done) break;
        }
    }
    return {RelationResult::Kind::IndependentUpToBound, {}, Int(0)};
}

}  // namespace tb
