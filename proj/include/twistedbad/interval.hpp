#pragma once

#include "twistedbad/rational.hpp"

#include <algorithm>
#include <cassert>

namespace tb {

// Closed interval with exact rational endpoints. All operations return the
// exact image (or a superset for the transcendental kernels, which round
// outward to a requested dyadic precision).
struct RatInterval {
    Rat lo;
    Rat hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat point) : lo(point), hi(point) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) { assert(lo <= hi); }

    Rat width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    Rat midpoint() const { return (lo + hi) / 2; }
    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }

    RatInterval operator-() const { return {-hi, -lo}; }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b) {
        Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return {std::min(std::min(p1, p2), std::min(p3, p4)),
                std::max(std::max(p1, p2), std::max(p3, p4))};
    }

    RatInterval scaled(const Rat& c) const {
        if (c >= 0) return {lo * c, hi * c};
        return {hi * c, lo * c};
    }

    // Division; requires b to be sign-definite (0 strictly outside).
    friend RatInterval operator/(const RatInterval& a, const RatInterval& b) {
        if (b.contains_zero()) throw std::domain_error("interval division by an interval containing 0");
        Rat p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
        return {std::min(std::min(p1, p2), std::min(p3, p4)),
                std::max(std::max(p1, p2), std::max(p3, p4))};
    }

    RatInterval intersect(const RatInterval& other) const {
        Rat l = std::max(lo, other.lo), h = std::min(hi, other.hi);
        if (l > h) {
            // Enclosures of the same value can only disagree through a bug.
            throw std::logic_error("intersection of disjoint enclosures");
        }
        return {l, h};
    }

    RatInterval round_out(long bits) const {
        return {round_down_dyadic(lo, bits), round_up_dyadic(hi, bits)};
    }
};

// Exact image of "distance to the nearest integer" over the interval;
// always a subset of [0, 1/2].
RatInterval dist_to_int_image(const RatInterval& x);

// Enclosure of sqrt(d) for integer d >= 0 with width <= 2^-bits.
RatInterval sqrt_enclosure(const Int& d, long bits);

// Enclosure of x^(1/k) for rational x >= 0; exact point interval when the
// root is rational, otherwise width <= 2^-bits.
RatInterval root_enclosure(const Rat& x, unsigned long k, long bits);

// Enclosure of ln x for rational x > 0 with width <= 2^-bits.
RatInterval ln_enclosure(const Rat& x, long bits);

inline RatInterval ln2_enclosure(long bits) { return ln_enclosure(Rat(2), bits); }

}  // namespace tb
