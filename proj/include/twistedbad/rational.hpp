#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tb {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when an enclosure cannot be narrowed enough to decide a question,
// either because a source has finite declared precision or because the
// configured working-precision cap was reached.
class precision_exhausted : public std::runtime_error {
  public:
    explicit precision_exhausted(const std::string& what) : std::runtime_error(what) {}
};

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Rat r;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), a);
    if (e < 0) {
        if (base == 0) throw std::domain_error("rat_pow: negative power of zero");
        r = Rat(1) / r;
    }
    r.canonicalize();
    return r;
}

// 2^e as an exact rational, e may be negative.
inline Rat pow2(long e) {
    Rat r(1);
    if (e >= 0)
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    else
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den().get_mpz_t(), static_cast<unsigned long>(-e));
    return r;
}

inline Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

// Integer nearest to x; the tie x = k + 1/2 rounds down (either choice
// gives the same distance, callers only use the distance).
inline Int nearest_int(const Rat& x) {
    Rat shifted = x + Rat(1, 2);
    Int n = floor_rat(shifted);
    if (shifted == Rat(n)) n -= 1;   // exact half: pick the lower neighbour
    return n;
}

// Exact distance from a rational to the nearest integer, in [0, 1/2].
inline Rat dist_to_int(const Rat& x) {
    Int n = nearest_int(x);
    Rat d = x - Rat(n);
    if (d < 0) d = -d;
    if (d > Rat(1, 2)) d = 1 - d;
    return d;
}

inline Int isqrt_floor(const Int& x) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

// floor(x^(1/k)); second member true when the root is exact.
inline std::pair<Int, bool> iroot_floor(const Int& x, unsigned long k) {
    Int r;
    int exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
    return {r, exact != 0};
}

// Largest integer t >= 0 with t^k <= x  (x >= 0).
inline Int iroot_floor_value(const Int& x, unsigned long k) { return iroot_floor(x, k).first; }

// Round x down/up to an integer multiple of 2^-bits.
inline Rat round_down_dyadic(const Rat& x, long bits) {
    Rat scaled = x * pow2(bits);
    return Rat(floor_rat(scaled)) * pow2(-bits);
}
inline Rat round_up_dyadic(const Rat& x, long bits) {
    Rat scaled = x * pow2(bits);
    return Rat(ceil_rat(scaled)) * pow2(-bits);
}

// Parse "p/q" or "p" into an exact rational. Also accepts decimal and
// scientific literals ("0.25", "1e6") which are converted exactly.
Rat parse_rational(const std::string& text);

// Decimal rendering of an exact rational with the given number of
// significant digits (round-half-away); deterministic.
std::string rat_to_decimal(const Rat& x, int significant_digits);

// Lossless "p/q" rendering.
inline std::string rat_to_string(const Rat& x) {
    return x.get_den() == 1 ? x.get_num().get_str() : x.get_num().get_str() + "/" + x.get_den().get_str();
}

// FNV-1a, used to stamp output files with a config fingerprint.
inline std::uint64_t fnv1a(const std::string& data, std::uint64_t seed = 0xcbf29ce484222325ULL) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace tb
