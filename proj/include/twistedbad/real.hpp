#pragma once

#include "twistedbad/interval.hpp"
#include "twistedbad/quadexpr.hpp"

#include <memory>
#include <optional>
#include <string>

namespace tb {

// Working-precision cap, overridable through the TWISTEDBAD_MAX_BITS
// environment variable; queried once.
long max_precision_bits();

enum class Cmp { Less, Greater, EqualExact, Undecided };

namespace detail {
struct RealNode;
struct RealAccess;
}

// Immutable handle to a real number represented as an expression over exact
// sources (rationals, quadratic irrationals, finite-precision decimal
// literals). An enclosure of any requested width can be demanded; values
// whose sources carry only finitely many bits stop narrowing and report
// precision exhaustion instead of guessing. Values that are exactly
// representable (rational or multi-quadratic) additionally carry their exact
// form, which makes comparisons against them decidable.
class CertifiedReal {
  public:
    CertifiedReal();  // exact 0

    static CertifiedReal from_rational(const Rat& r);
    static CertifiedReal from_int(const Int& n) { return from_rational(Rat(n)); }
    static CertifiedReal from_quad(const QuadExpr& q);
    // Unknown real within 2^-declared_bits of `value`.
    static CertifiedReal decimal_literal(const Rat& value, long declared_bits);

    friend CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b);
    friend CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b);
    friend CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b);
    friend CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b);
    CertifiedReal operator-() const;

    // x^(1/k); requires the represented value to be >= 0.
    CertifiedReal nth_root(unsigned long k) const;
    // x^(p/q) for x >= 0.
    CertifiedReal pow(const Rat& exponent) const;

    friend CertifiedReal ln_of(const CertifiedReal& x);
    friend CertifiedReal dist_to_nearest_int(const CertifiedReal& x);

    // Enclosure computed at the given working precision; monotone in
    // work_bits (cached intersections never widen).
    RatInterval eval(long work_bits) const;

    // Enclosure with width <= 2^-width_bits, refining work up to
    // max_work_bits; throws precision_exhausted if unattainable.
    RatInterval enclosure(long width_bits, long max_work_bits = max_precision_bits()) const;

    // Best interval attainable within max_work_bits; never throws.
    RatInterval best_enclosure(long width_bits, long max_work_bits = max_precision_bits()) const;

    const std::optional<QuadExpr>& exact_value() const;
    bool is_exact_rational() const;
    Rat as_rational() const;  // requires is_exact_rational()

    double to_double() const;
    // Decimal rendering with the given significant digits; deterministic.
    std::string decimal(int significant_digits) const;

  private:
    friend struct detail::RealAccess;
    explicit CertifiedReal(std::shared_ptr<const detail::RealNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::RealNode> node_;
};

// Three-valued comparison. Less/Greater require certified disjoint
// enclosures within max_bits of work; EqualExact is reported only for two
// exact equal rationals. Everything else is Undecided.
Cmp certified_compare(const CertifiedReal& a, const CertifiedReal& b, long max_bits = max_precision_bits());

// Certified strict a < b: true/false when decidable within max_bits
// (exact representations decide ties), nullopt otherwise.
std::optional<bool> certified_less(const CertifiedReal& a, const CertifiedReal& b,
                                   long max_bits = max_precision_bits());

// Certified sign of x (-1, 0, +1); nullopt when undecidable within max_bits.
std::optional<int> certified_sign(const CertifiedReal& x, long max_bits = max_precision_bits());

}  // namespace tb
