#include "twistedbad/badness.hpp"

#include <algorithm>

namespace tb {

namespace {

// Enclosure of q^(p/qq) at scale 2^-wroot, as an integer pair.
void root_bounds(const Int& q, unsigned long p, unsigned long qq, long wroot, Int& rlo, Int& rhi) {
    Int x = ipow(q, p);
    mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(wroot) * qq);
    auto [r, exact] = iroot_floor(x, qq);
    rlo = r;
    rhi = exact ? r : Int(r + 1);
}

// Scaled dist-to-integer image, reused from the sweep logic.
void dist_image(Int lo, Int hi, const Int& one, Int& dlo, Int& dhi) {
    if (hi - lo >= one) {
        dlo = 0;
        mpz_fdiv_q_2exp(dhi.get_mpz_t(), one.get_mpz_t(), 1);
        return;
    }
    Int k;
    mpz_fdiv_q(k.get_mpz_t(), lo.get_mpz_t(), one.get_mpz_t());
    lo -= k * one;
    hi -= k * one;
    Int half;
    mpz_fdiv_q_2exp(half.get_mpz_t(), one.get_mpz_t(), 1);
    Int da = std::min(Int(lo), Int(one - lo));
    Int hm = hi >= one ? Int(hi - one) : hi;
    Int db = std::min(hm, Int(one - hm));
    if (hi >= one && lo > 0)
        dlo = 0;
    else
        dlo = std::min(da, db);
    dhi = std::max(da, db);
    if ((lo <= half && half <= hi) || hi >= one + half) dhi = half;
}

// One functional value as a certified expression, for escalations and for
// the final profile value.
CertifiedReal functional_at(const TargetVector& theta, const std::vector<CertifiedReal>& eta,
                            const WeightVector& j, const Int& q, long max_bits, std::size_t* argmax_out) {
    CertifiedReal best;
    std::size_t arg = 0;
    bool have = false;
    for (std::size_t i = 0; i < theta.n(); ++i) {
        CertifiedReal diff = CertifiedReal::from_int(q) * theta[i] - eta[i];
        CertifiedReal term =
            CertifiedReal::from_int(q).pow(j[i]) * dist_to_nearest_int(diff);
        if (!have) {
            best = term;
            arg = i;
            have = true;
            continue;
        }
        auto less = certified_less(best, term, max_bits);
        if (less.has_value() && *less) {
            best = term;
            arg = i;
        }
        // undecided: the two terms agree within max precision; either is a
        // valid representative of the max
    }
    if (argmax_out) *argmax_out = arg;
    return best;
}

BadnessProfile scan_badness(const std::string& name, const TargetVector& theta,
                            const std::vector<CertifiedReal>& eta, const WeightVector& j, const Int& Q,
                            const BadnessOptions& opts) {
    if (Q < 1) throw std::invalid_argument("scan bound must be >= 1");
    if (!Q.fits_slong_p()) throw std::invalid_argument("scan bound too large");
    std::size_t n = theta.n();
    long qmax = Q.get_si();

    const long w = 96 + static_cast<long>(mpz_sizeinbase(Q.get_mpz_t(), 2));
    const long wroot = 48;
    Int one(1);
    mpz_mul_2exp(one.get_mpz_t(), one.get_mpz_t(), static_cast<unsigned long>(w));

    // state: q*theta_i - eta_i scaled, advanced by theta_i per step
    std::vector<Int> slo(n), shi(n), tlo(n), thi(n);
    for (std::size_t i = 0; i < n; ++i) {
        RatInterval ti = theta[i].eval(w + 8);
        tlo[i] = floor_rat(ti.lo * Rat(one));
        thi[i] = ceil_rat(ti.hi * Rat(one));
        RatInterval ei = eta[i].eval(w + 8);
        slo[i] = -ceil_rat(ei.hi * Rat(one));
        shi[i] = -floor_rat(ei.lo * Rat(one));
    }

    // running enclosure of the minimum: [min over q of lo_q, min over q of hi_q]
    Int min_lo, min_hi;
    Int argmin;
    bool have = false;
    Int dlo, dhi, rlo, rhi, vlo, vhi, xlo, xhi, k;
    for (long q = 1; q <= qmax; ++q) {
        bool first = true;
        for (std::size_t i = 0; i < n; ++i) {
            slo[i] += tlo[i];
            shi[i] += thi[i];
            if (slo[i] >= one || slo[i] < 0) {
                mpz_fdiv_q(k.get_mpz_t(), slo[i].get_mpz_t(), one.get_mpz_t());
                slo[i] -= k * one;
                shi[i] -= k * one;
            }
            dist_image(slo[i], shi[i], one, dlo, dhi);
            root_bounds(Int(q), j.num(i), j.den(i), wroot, rlo, rhi);
            // value over scale 2^(w + wroot)
            Int plo = dlo * rlo, phi = dhi * rhi;
            if (first) {
                xlo = plo;
                xhi = phi;
                first = false;
            } else {
                xlo = std::max(xlo, plo);
                xhi = std::max(xhi, phi);
            }
        }
        if (!have || xhi < min_hi) {
            min_hi = xhi;
            argmin = q;
        }
        if (!have || xlo < min_lo) min_lo = xlo;
        have = true;
        if (min_hi == 0) break;  // exact zero attained, nothing smaller exists
    }

    Rat scale = pow2(-(w + wroot));
    Rat value_lo = Rat(min_lo) * scale;
    Rat value_hi = Rat(min_hi) * scale;
    BadnessProfile prof;
    prof.functional = name;
    prof.scan_bound = Q;
    prof.argmin_q = argmin;

    if (value_hi == 0) {
        prof.value = CertifiedReal::from_rational(Rat(0));
        prof.certified = true;
        return prof;
    }
    if (value_lo > 0 && value_hi - value_lo <= pow2(-opts.value_bits)) {
        // midpoint +- 2^-value_bits encloses [value_lo, value_hi]
        prof.value = CertifiedReal::decimal_literal((value_lo + value_hi) / 2, opts.value_bits);
        prof.certified = true;
        return prof;
    }
    // value_lo == 0 with a positive upper end falls through to the exact
    // pass, which can recognize an exact zero attained mid-scan

    // The coarse scan could not pin the minimum; refine the candidate q's
    // through the certified expression path.
    CertifiedReal best;
    bool have_best = false;
    Int best_q;
    for (long q = 1; q <= qmax; ++q) {
        // recompute coarse value to test candidacy (cheap relative to DAG)
        bool candidate = false;
        {
            bool first = true;
            Int clo, chi;
            for (std::size_t i = 0; i < n; ++i) {
                RatInterval ti = theta[i].eval(w + 8);
                RatInterval ei = eta[i].eval(w + 8);
                Int qlo = floor_rat((ti.lo * q - ei.hi) * Rat(one));
                Int qhi = ceil_rat((ti.hi * q - ei.lo) * Rat(one));
                dist_image(qlo, qhi, one, dlo, dhi);
                root_bounds(Int(q), j.num(i), j.den(i), wroot, rlo, rhi);
                Int plo = dlo * rlo, phi = dhi * rhi;
                if (first) {
                    clo = plo;
                    chi = phi;
                    first = false;
                } else {
                    clo = std::max(clo, plo);
                    chi = std::max(chi, phi);
                }
            }
            candidate = Rat(clo) * scale <= value_hi;
        }
        if (!candidate) continue;
        CertifiedReal val = functional_at(theta, eta, j, Int(q), opts.max_bits, nullptr);
        RatInterval quick = val.eval(64);
        if (quick.lo == 0 && quick.hi == 0) {
            // exact zero attained; nothing can beat it, first hit wins
            best = val;
            best_q = q;
            have_best = true;
            break;
        }
        if (!have_best) {
            best = val;
            best_q = q;
            have_best = true;
            continue;
        }
        auto less = certified_less(val, best, opts.max_bits);
        if (!less)
            throw precision_exhausted("badness scan cannot order candidates at q=" + std::to_string(q) +
                                      " and q=" + best_q.get_str());
        if (*less) {
            best = val;
            best_q = q;
        }
    }
    prof.value = best;
    prof.argmin_q = best_q;
    RatInterval iv = best.best_enclosure(opts.value_bits, opts.max_bits);
    prof.certified = iv.width() <= pow2(-opts.value_bits);
    if (!prof.certified)
        throw precision_exhausted("badness value at q=" + best_q.get_str() +
                                  " cannot be certified to the requested width");
    return prof;
}

std::vector<CertifiedReal> zero_eta(std::size_t n) {
    return std::vector<CertifiedReal>(n, CertifiedReal::from_rational(Rat(0)));
}

}  // namespace

BadnessProfile twisted_badness(const TargetVector& theta, const TargetVector& eta, const WeightVector& j,
                               const Int& Q, const BadnessOptions& opts) {
    if (theta.n() != j.n() || eta.n() != j.n()) throw std::invalid_argument("dimension mismatch");
    return scan_badness("twisted", theta, eta.components(), j, Q, opts);
}

BadnessProfile classical_badness(const TargetVector& theta, const WeightVector& j, const Int& Q,
                                 const BadnessOptions& opts) {
    if (theta.n() != j.n()) throw std::invalid_argument("dimension mismatch");
    return scan_badness("classical", theta, zero_eta(theta.n()), j, Q, opts);
}

BadnessProfile coordinate_badness(const CertifiedReal& eta_i, const Int& Q, const BadnessOptions& opts) {
    TargetVector one_d({eta_i}, {"coordinate"});
    WeightVector j1({Rat(1)});
    return scan_badness("coordinate", one_d, zero_eta(1), j1, Q, opts);
}

CertifiedReal dual_badness(const TargetVector& eta, const BestApproxSequence& seq, long max_bits) {
    if (seq.entries.empty()) throw std::invalid_argument("dual badness needs a nonempty sequence");
    if (eta.n() != seq.weights.n()) throw std::invalid_argument("dimension mismatch");
    CertifiedReal best;
    bool have = false;
    for (const auto& e : seq.entries) {
        CertifiedReal r = dot_residual(e.m, eta);
        if (r.exact_value() && r.exact_value()->is_zero()) return r;  // minimum cannot be beaten
        if (!have) {
            best = r;
            have = true;
            continue;
        }
        auto less = certified_less(r, best, max_bits);
        if (!less) throw precision_exhausted("dual badness: cannot order residual of entry " +
                                             std::to_string(e.index));
        if (*less) best = r;
    }
    return best;
}

PropositionConstants proposition_bound(const CertifiedReal& gamma, const WeightVector& j, std::size_t n) {
    if (n == 0 || j.n() != n) throw std::invalid_argument("dimension mismatch");
    CertifiedReal half_gamma = gamma / CertifiedReal::from_rational(Rat(2));
    CertifiedReal c;
    bool have = false;
    std::vector<Rat> seen;
    for (std::size_t i = 0; i < n; ++i) {
        bool dup = false;
        for (const auto& s : seen) dup = dup || s == j[i];
        if (dup) continue;
        seen.push_back(j[i]);
        CertifiedReal cand = half_gamma.pow(j[i]);
        if (!have) {
            c = cand;
            have = true;
            continue;
        }
        auto less = certified_less(cand, c);
        if (less.has_value() && *less) c = cand;
    }
    PropositionConstants out;
    out.gamma = gamma;
    out.c = c;
    out.bound = gamma * c / CertifiedReal::from_rational(Rat(2 * static_cast<long>(n)));
    return out;
}

namespace {

using u128 = unsigned __int128;

u128 u128_of(const Int& x) {
    Int hi_part, lo_part;
    mpz_fdiv_q_2exp(hi_part.get_mpz_t(), x.get_mpz_t(), 64);
    mpz_fdiv_r_2exp(lo_part.get_mpz_t(), x.get_mpz_t(), 64);
    return (static_cast<u128>(mpz_get_ui(hi_part.get_mpz_t())) << 64) | mpz_get_ui(lo_part.get_mpz_t());
}

}  // namespace

std::vector<PropositionReport> verify_proposition_batch(const TargetVector& theta,
                                                        const std::vector<std::vector<Rat>>& etas,
                                                        const WeightVector& j,
                                                        const BestApproxSequence& seq,
                                                        const BadnessOptions& opts) {
    if (seq.entries.empty()) throw std::invalid_argument("empty sequence");
    std::size_t n = theta.n();
    std::vector<PropositionReport> reports(etas.size());

    // certified upper bound on the deepest residual
    Rat zeta_hi = seq.entries.back().residual.best_enclosure(96, opts.max_bits).hi;
    if (zeta_hi <= 0) throw std::logic_error("residual upper bound not positive");

    // per point: gamma, bound, q_max
    Int q_max_all(0);
    std::vector<TargetVector> eta_targets;
    eta_targets.reserve(etas.size());
    for (std::size_t p = 0; p < etas.size(); ++p) {
        std::vector<CertifiedReal> comps;
        std::vector<std::string> descs;
        for (const auto& c : etas[p]) {
            comps.push_back(CertifiedReal::from_rational(c));
            descs.push_back(rat_to_string(c));
        }
        eta_targets.emplace_back(std::move(comps), std::move(descs));
        CertifiedReal g = dual_badness(eta_targets[p], seq, opts.max_bits);
        Rat glo = g.best_enclosure(96, opts.max_bits).lo;
        if (glo <= 0) throw std::invalid_argument("dual badness not certified positive for point " +
                                                  std::to_string(p));
        PropositionConstants pc = proposition_bound(CertifiedReal::from_rational(glo), j, n);
        reports[p].gamma_lo = glo;
        reports[p].bound_hi = pc.bound.best_enclosure(96, opts.max_bits).hi;
        reports[p].q_max = floor_rat(glo / (2 * zeta_hi));
        q_max_all = std::max(q_max_all, reports[p].q_max);
    }
    if (q_max_all == 0) return reports;
    if (!q_max_all.fits_slong_p()) throw std::invalid_argument("covered q-range too large");
    long qmax = q_max_all.get_si();

    // fixed-point scan: dist at scale 2^-w, roots at scale 2^-wroot
    const long w = 80, wroot = 30;
    Int one_z(1);
    mpz_mul_2exp(one_z.get_mpz_t(), one_z.get_mpz_t(), w);
    const u128 one = u128_of(one_z);

    std::vector<u128> th_lo(n), th_hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        RatInterval ti = theta[i].eval(w + 16);
        Rat flo = ti.lo - Rat(floor_rat(ti.lo));  // fractional shift keeps values positive
        Rat fhi = ti.hi - Rat(floor_rat(ti.lo));
        th_lo[i] = u128_of(floor_rat(flo * Rat(one_z)));
        th_hi[i] = u128_of(ceil_rat(fhi * Rat(one_z)));
        if (th_hi[i] - th_lo[i] > 16)
            throw std::invalid_argument("theta enclosure too coarse for the proposition scan");
    }

    struct PointState {
        std::vector<u128> lo, hi;  // q*theta_i - eta_i, scaled, mod 1
        u128 bound_scaled;         // bound over scale 2^-(w+wroot)
        long q_max;
        std::vector<Int> escalate_q;
    };
    std::vector<PointState> st(etas.size());
    for (std::size_t p = 0; p < etas.size(); ++p) {
        st[p].lo.resize(n);
        st[p].hi.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rat e = etas[p][i];
            Rat fe = e - Rat(floor_rat(e));
            // state starts at -eta_i (mod 1)
            Int lo_z = floor_rat((1 - fe) * Rat(one_z));
            Int hi_z = ceil_rat((1 - fe) * Rat(one_z));
            st[p].lo[i] = u128_of(lo_z);
            st[p].hi[i] = u128_of(hi_z);
        }
        Rat bscaled = reports[p].bound_hi * Rat(one_z) * pow2(wroot);
        st[p].bound_scaled = u128_of(ceil_rat(bscaled));
        st[p].q_max = reports[p].q_max.get_si();
    }

    std::vector<u128> root_lo(n);
    for (long q = 1; q <= qmax; ++q) {
        // roots of q, lower bounds, per distinct weight
        for (std::size_t i = 0; i < n; ++i) {
            bool dup = false;
            for (std::size_t k2 = 0; k2 < i; ++k2)
                if (j[k2] == j[i]) {
                    root_lo[i] = root_lo[k2];
                    dup = true;
                    break;
                }
            if (dup) continue;
            Int rl, rh;
            root_bounds(Int(q), j.num(i), j.den(i), wroot, rl, rh);
            root_lo[i] = u128_of(rl);
        }
        for (std::size_t p = 0; p < etas.size(); ++p) {
            PointState& ps = st[p];
            if (q > ps.q_max) continue;  // state beyond a point's range is never read
            bool ok = false;
            for (std::size_t i = 0; i < n; ++i) {
                ps.lo[i] += th_lo[i];
                ps.hi[i] += th_hi[i];
                if (ps.lo[i] >= one) {
                    ps.lo[i] -= one;
                    ps.hi[i] -= one;
                }
                if (ok) continue;
                // certified lower bound of dist * root
                u128 lo = ps.lo[i], hi = ps.hi[i];
                u128 dlo;
                {
                    u128 da = lo < one - lo ? lo : one - lo;
                    u128 hm = hi >= one ? hi - one : hi;
                    u128 db = hm < one - hm ? hm : one - hm;
                    if (hi >= one && lo > 0)
                        dlo = 0;
                    else
                        dlo = da < db ? da : db;
                }
                if (dlo == 0) continue;
                // dlo < 2^80, root_lo < 2^47: product < 2^127
                if (dlo * root_lo[i] > ps.bound_scaled) ok = true;
            }
            if (!ok) ps.escalate_q.push_back(Int(q));
        }
    }

    // exact escalation of undecided q's
    for (std::size_t p = 0; p < etas.size(); ++p) {
        CertifiedReal bound_cr = CertifiedReal::from_rational(reports[p].bound_hi);
        for (const auto& q : st[p].escalate_q) {
            ++reports[p].escalations;
            bool ok = false;
            for (std::size_t i = 0; i < n && !ok; ++i) {
                CertifiedReal diff = CertifiedReal::from_int(q) * theta[i] - eta_targets[p][i];
                CertifiedReal term = CertifiedReal::from_int(q).pow(j[i]) * dist_to_nearest_int(diff);
                auto gt = certified_less(bound_cr, term, opts.max_bits);
                if (gt.has_value() && *gt) ok = true;
            }
            if (!ok) reports[p].violating_q.push_back(q);
        }
    }
    return reports;
}

PropositionReport verify_proposition(const TargetVector& theta, const TargetVector& eta,
                                     const WeightVector& j, const BestApproxSequence& seq,
                                     const BadnessOptions& opts) {
    // exact rational points go through the batch path; general points are
    // handled by a direct scan at certified precision
    bool rational = true;
    for (std::size_t i = 0; i < eta.n(); ++i) rational = rational && eta[i].is_exact_rational();
    if (rational) {
        std::vector<Rat> pt;
        for (std::size_t i = 0; i < eta.n(); ++i) pt.push_back(eta[i].as_rational());
        return verify_proposition_batch(theta, {pt}, j, seq, opts)[0];
    }

    PropositionReport rep;
    CertifiedReal g = dual_badness(eta, seq, opts.max_bits);
    Rat glo = g.best_enclosure(96, opts.max_bits).lo;
    if (glo <= 0) throw std::invalid_argument("dual badness not certified positive");
    Rat zeta_hi = seq.entries.back().residual.best_enclosure(96, opts.max_bits).hi;
    PropositionConstants pc = proposition_bound(CertifiedReal::from_rational(glo), j, eta.n());
    rep.gamma_lo = glo;
    rep.bound_hi = pc.bound.best_enclosure(96, opts.max_bits).hi;
    rep.q_max = floor_rat(glo / (2 * zeta_hi));
    if (!rep.q_max.fits_slong_p()) throw std::invalid_argument("covered q-range too large");
    CertifiedReal bound_cr = CertifiedReal::from_rational(rep.bound_hi);
    for (long q = 1; q <= rep.q_max.get_si(); ++q) {
        bool ok = false;
        for (std::size_t i = 0; i < eta.n() && !ok; ++i) {
            CertifiedReal diff = CertifiedReal::from_int(Int(q)) * theta[i] - eta[i];
            CertifiedReal term = CertifiedReal::from_int(Int(q)).pow(j[i]) * dist_to_nearest_int(diff);
            auto gt = certified_less(bound_cr, term, opts.max_bits);
            if (gt.has_value() && *gt) ok = true;
        }
        if (!ok) rep.violating_q.push_back(Int(q));
    }
    return rep;
}

}  // namespace tb
