#include "twistedbad/interval.hpp"

namespace tb {

RatInterval dist_to_int_image(const RatInterval& x) {
    if (x.width() >= 1) return {Rat(0), Rat(1, 2)};
    Rat dlo = dist_to_int(x.lo);
    Rat dhi = dist_to_int(x.hi);
    Rat mn = std::min(dlo, dhi);
    Rat mx = std::max(dlo, dhi);
    // Integer inside the interval pulls the minimum to 0.
    if (floor_rat(x.hi) >= ceil_rat(x.lo)) mn = 0;
    // Half-integer inside pushes the maximum to 1/2.
    Rat s_lo = x.lo - Rat(1, 2), s_hi = x.hi - Rat(1, 2);
    if (floor_rat(s_hi) >= ceil_rat(s_lo)) mx = Rat(1, 2);
    return {mn, mx};
}

RatInterval sqrt_enclosure(const Int& d, long bits) {
    if (d < 0) throw std::domain_error("sqrt of negative integer");
    if (bits < 1) bits = 1;
    Int scaled = d;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(2 * bits));
    Int s = isqrt_floor(scaled);
    Rat denom = pow2(bits);
    if (s * s == scaled) return {Rat(s) / denom};
    return {Rat(s) / denom, Rat(s + 1) / denom};
}

RatInterval root_enclosure(const Rat& x, unsigned long k, long bits) {
    if (x < 0) throw std::domain_error("root of negative rational");
    if (k == 0) throw std::domain_error("0th root");
    if (k == 1 || x == 0 || x == 1) return {x};
    if (bits < 1) bits = 1;
    // (n/m)^(1/k) = (n * m^(k-1))^(1/k) / m
    Int n = x.get_num(), m = x.get_den();
    Int a = n * ipow(m, k - 1);
    auto [exact_root, is_exact] = iroot_floor(a, k);
    if (is_exact) return {Rat(exact_root) / Rat(m)};
    Int scaled = a;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(k) * static_cast<unsigned long>(bits));
    Int r = iroot_floor_value(scaled, k);
    Rat denom = Rat(m) * pow2(bits);
    return {Rat(r) / denom, Rat(r + 1) / denom};
}

namespace {

// Enclosure of atanh(z) for rational z in [0, 1/2], via the odd series with
// directed fixed-point rounding at scale 2^-w.
RatInterval atanh_enclosure(const Rat& z, long bits) {
    long w = bits + 16;
    Int scale(1);
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(w));

    const Int& zn = z.get_num();
    const Int& zd = z.get_den();

    // z and z^2 at scale, rounded both ways.
    Int p_lo, p_hi, z2_lo, z2_hi;
    mpz_fdiv_q(p_lo.get_mpz_t(), Int(zn * scale).get_mpz_t(), zd.get_mpz_t());
    mpz_cdiv_q(p_hi.get_mpz_t(), Int(zn * scale).get_mpz_t(), zd.get_mpz_t());
    Int zd2 = zd * zd, zn2s = zn * zn * scale;
    mpz_fdiv_q(z2_lo.get_mpz_t(), zn2s.get_mpz_t(), zd2.get_mpz_t());
    mpz_cdiv_q(z2_hi.get_mpz_t(), zn2s.get_mpz_t(), zd2.get_mpz_t());

    Int acc_lo(0), acc_hi(0);
    unsigned long i = 0;
    while (true) {
        Int t_lo, t_hi;
        mpz_fdiv_q_ui(t_lo.get_mpz_t(), p_lo.get_mpz_t(), 2 * i + 1);
        mpz_cdiv_q_ui(t_hi.get_mpz_t(), p_hi.get_mpz_t(), 2 * i + 1);
        acc_lo += t_lo;
        acc_hi += t_hi;
        // Geometric tail bound: remaining sum <= p*z^2/(1 - z^2) <= p*z2_hi/(scale - z2_hi).
        Int p_next_hi;
        mpz_cdiv_q(p_next_hi.get_mpz_t(), Int(p_hi * z2_hi).get_mpz_t(), scale.get_mpz_t());
        Int tail;
        mpz_cdiv_q(tail.get_mpz_t(), Int(p_next_hi * scale).get_mpz_t(), Int(scale - z2_hi).get_mpz_t());
        // Ceiling rounding keeps tail from ever reaching 0; a few ulps of
        // slack are inside the guard-bit budget.
        if (tail <= 4 && i > 0) {
            acc_hi += tail + 1;
            break;
        }
        Int p2_lo, p2_hi;
        mpz_fdiv_q(p2_lo.get_mpz_t(), Int(p_lo * z2_lo).get_mpz_t(), scale.get_mpz_t());
        p2_hi = p_next_hi;
        p_lo = p2_lo;
        p_hi = p2_hi;
        ++i;
        if (i > 100000) throw std::logic_error("atanh series failed to converge");
    }
    Rat denom = pow2(w);
    return {Rat(acc_lo) / denom, Rat(acc_hi) / denom};
}

// ln of an integer N >= 1.
RatInterval ln_int_enclosure(const Int& N, long bits) {
    if (N <= 0) throw std::domain_error("ln of non-positive integer");
    if (N == 1) return {Rat(0)};
    long extra = 8;
    std::size_t L = mpz_sizeinbase(N.get_mpz_t(), 2);  // 2^(L-1) <= N < 2^L
    // N = 2^(L-1) * t with t in [1, 2); ln N = (L-1) ln2 + 2 atanh((t-1)/(t+1)).
    Rat t = Rat(N) / pow2(static_cast<long>(L) - 1);
    RatInterval ln_t = atanh_enclosure((t - 1) / (t + 1), bits + extra);
    ln_t = ln_t + ln_t;
    if (L == 1) return ln_t;  // N == 1 handled above; L==1 means N==1
    RatInterval ln2 = atanh_enclosure(Rat(1, 3), bits + extra);
    ln2 = ln2 + ln2;
    return ln2.scaled(Rat(static_cast<long>(L) - 1)) + ln_t;
}

}  // namespace

RatInterval ln_enclosure(const Rat& x, long bits) {
    if (x <= 0) throw std::domain_error("ln of non-positive rational");
    if (bits < 1) bits = 1;
    if (x == 1) return {Rat(0)};
    return ln_int_enclosure(x.get_num(), bits + 2) - ln_int_enclosure(x.get_den(), bits + 2);
}

}  // namespace tb
