#pragma once

#include "twistedbad/interval.hpp"

#include <map>
#include <string>

namespace tb {

// Exact element of a real multi-quadratic field: a rational plus a finite
// Q-linear combination of square roots of distinct squarefree integers > 1.
// Distinct squarefree radicals are linearly independent over Q, so the zero
// test is exact; that is what lets integer relations and residual signs be
// decided rather than guessed.
//
// Radicands are normalized at construction (square part extracted). To keep
// the squarefree guarantee rigorous, radicands above 10^12 are rejected:
// below that bound trial division by primes up to 10^6 plus a perfect-square
// check is a complete squarefree factorization.
class QuadExpr {
  public:
    QuadExpr() : rat_(0) {}
    explicit QuadExpr(Rat r) : rat_(std::move(r)) { rat_.canonicalize(); }

    // (a + b*sqrt(d))/c with c != 0, d >= 0.
    static QuadExpr quadratic(const Int& a, const Int& b, const Int& d, const Int& c);

    static QuadExpr sqrt_of(const Int& d) { return quadratic(0, 1, d, 1); }

    bool is_zero() const { return rat_ == 0 && irr_.empty(); }
    bool is_rational() const { return irr_.empty(); }
    const Rat& rational_part() const { return rat_; }

    // Exact rational value; only valid when is_rational().
    const Rat& as_rational() const {
        if (!is_rational()) throw std::logic_error("QuadExpr is irrational");
        return rat_;
    }

    QuadExpr operator-() const;
    QuadExpr& operator+=(const QuadExpr& o);
    QuadExpr& operator-=(const QuadExpr& o);
    friend QuadExpr operator+(QuadExpr a, const QuadExpr& b) { return a += b; }
    friend QuadExpr operator-(QuadExpr a, const QuadExpr& b) { return a -= b; }

    QuadExpr scaled(const Rat& c) const;
    friend QuadExpr operator*(const QuadExpr& a, const QuadExpr& b);

    // Exact reciprocal by iterated conjugation; requires !is_zero().
    QuadExpr reciprocal() const;
    friend QuadExpr operator/(const QuadExpr& a, const QuadExpr& b) { return a * b.reciprocal(); }

    bool operator==(const QuadExpr& o) const { return rat_ == o.rat_ && irr_ == o.irr_; }

    // Enclosure with width <= 2^-bits.
    RatInterval enclosure(long bits) const;

    // Exact sign (-1, 0, +1); total because a nonzero value is eventually
    // separated from 0 by refinement.
    int sign() const;

    Int floor() const;
    // Exact distance to the nearest integer as a QuadExpr.
    QuadExpr dist_to_nearest_int() const;

    std::string to_string() const;

  private:
    Rat rat_;
    std::map<Int, Rat> irr_;  // squarefree radicand d > 1  ->  nonzero coefficient

    void set_coeff(const Int& d, const Rat& c);
};

}  // namespace tb
