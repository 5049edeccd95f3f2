#include "twistedbad/real.hpp"

#include <cstdlib>
#include <mutex>

namespace tb {

long max_precision_bits() {
    static const long cached = [] {
        const char* env = std::getenv("TWISTEDBAD_MAX_BITS");
        if (env) {
            long v = std::atol(env);
            if (v >= 64) return v;
        }
        return 4096L;
    }();
    return cached;
}

namespace detail {

// Internal signal: the requested working precision was not enough to even
// form the result (e.g. division by an interval straddling 0).
struct need_more_bits {};

struct RealNode {
    enum class Kind { Exact, Decimal, Add, Sub, Mul, Div, Root, Ln, Dist };

    Kind kind;
    std::shared_ptr<const RealNode> a, b;
    std::optional<QuadExpr> exact;  // set for Kind::Exact
    Rat dec_value;
    long dec_bits = 0;
    unsigned long root_k = 0;

    mutable std::mutex mu;
    mutable bool has_cache = false;
    mutable RatInterval cache;
    mutable long cache_bits = 0;

    explicit RealNode(Kind k) : kind(k) {}

    RatInterval eval(long work) const {
        if (work < 8) work = 8;
        {
            std::lock_guard<std::mutex> g(mu);
            if (has_cache && cache_bits >= work) return cache;
        }
        RatInterval r = compute(work);
        std::lock_guard<std::mutex> g(mu);
        if (has_cache) r = r.intersect(cache);
        cache = r;
        cache_bits = work;
        has_cache = true;
        return r;
    }

    RatInterval compute(long work) const {
        switch (kind) {
            case Kind::Exact:
                return exact->enclosure(work);
            case Kind::Decimal: {
                Rat err = pow2(-dec_bits);
                return {dec_value - err, dec_value + err};
            }
            case Kind::Add:
                return a->eval(work + 2) + b->eval(work + 2);
            case Kind::Sub:
                return a->eval(work + 2) - b->eval(work + 2);
            case Kind::Mul:
                return a->eval(work + 4) * b->eval(work + 4);
            case Kind::Div: {
                RatInterval den = b->eval(work + 4);
                if (den.contains_zero()) throw need_more_bits{};
                return a->eval(work + 4) / den;
            }
            case Kind::Root: {
                RatInterval x = a->eval(work + 4);
                Rat lo = x.lo < 0 ? Rat(0) : x.lo;  // value is >= 0 by contract
                Rat hi = x.hi < 0 ? Rat(0) : x.hi;
                return {root_enclosure(lo, root_k, work).lo, root_enclosure(hi, root_k, work).hi};
            }
            case Kind::Ln: {
                RatInterval x = a->eval(work + 4);
                if (x.lo <= 0) throw need_more_bits{};
                return {ln_enclosure(x.lo, work).lo, ln_enclosure(x.hi, work).hi};
            }
            case Kind::Dist:
                return dist_to_int_image(a->eval(work + 2));
        }
        throw std::logic_error("unreachable");
    }
};

using NodePtr = std::shared_ptr<const RealNode>;

NodePtr make_exact(QuadExpr q) {
    auto n = std::make_shared<RealNode>(RealNode::Kind::Exact);
    n->exact = std::move(q);
    return n;
}

struct RealAccess {
    static CertifiedReal wrap(NodePtr n) { return CertifiedReal(std::move(n)); }
    static const NodePtr& node(const CertifiedReal& r) { return r.node_; }
};

}  // namespace detail

using detail::RealNode;

CertifiedReal::CertifiedReal() : node_(detail::make_exact(QuadExpr(Rat(0)))) {}

CertifiedReal CertifiedReal::from_rational(const Rat& r) { return CertifiedReal(detail::make_exact(QuadExpr(r))); }

CertifiedReal CertifiedReal::from_quad(const QuadExpr& q) { return CertifiedReal(detail::make_exact(q)); }

CertifiedReal CertifiedReal::decimal_literal(const Rat& value, long declared_bits) {
    if (declared_bits < 1) throw std::invalid_argument("decimal literal needs at least 1 declared bit");
    auto n = std::make_shared<RealNode>(RealNode::Kind::Decimal);
    n->dec_value = value;
    n->dec_bits = declared_bits;
    return CertifiedReal(std::move(n));
}

const std::optional<QuadExpr>& CertifiedReal::exact_value() const { return node_->exact; }

bool CertifiedReal::is_exact_rational() const { return node_->exact && node_->exact->is_rational(); }

Rat CertifiedReal::as_rational() const {
    if (!is_exact_rational()) throw std::logic_error("value is not an exact rational");
    return node_->exact->as_rational();
}

namespace {

CertifiedReal binary(RealNode::Kind kind, const CertifiedReal& a, const CertifiedReal& b) {
    auto n = std::make_shared<RealNode>(kind);
    n->a = detail::RealAccess::node(a);
    n->b = detail::RealAccess::node(b);
    return detail::RealAccess::wrap(std::move(n));
}

}  // namespace

CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
    if (a.exact_value() && b.exact_value()) return CertifiedReal::from_quad(*a.exact_value() + *b.exact_value());
    return binary(RealNode::Kind::Add, a, b);
}

CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
    if (a.exact_value() && b.exact_value()) return CertifiedReal::from_quad(*a.exact_value() - *b.exact_value());
    return binary(RealNode::Kind::Sub, a, b);
}

CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
    if (a.exact_value() && b.exact_value()) return CertifiedReal::from_quad(*a.exact_value() * *b.exact_value());
    return binary(RealNode::Kind::Mul, a, b);
}

CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
    if (b.exact_value() && b.exact_value()->is_zero()) throw std::domain_error("division by exact zero");
    if (a.exact_value() && b.exact_value()) return CertifiedReal::from_quad(*a.exact_value() / *b.exact_value());
    return binary(RealNode::Kind::Div, a, b);
}

CertifiedReal CertifiedReal::operator-() const { return CertifiedReal::from_rational(Rat(0)) - *this; }

CertifiedReal CertifiedReal::nth_root(unsigned long k) const {
    if (k == 0) throw std::domain_error("0th root");
    if (k == 1) return *this;
    if (exact_value() && exact_value()->is_rational()) {
        Rat x = exact_value()->as_rational();
        if (x < 0) throw std::domain_error("root of negative value");
        RatInterval r = root_enclosure(x, k, 8);
        if (r.is_point()) return from_rational(r.lo);
        if (k == 2) {
            // sqrt(p/q) = sqrt(p*q)/q, exact when p*q is small enough to
            // factor rigorously.
            Int pq = x.get_num() * x.get_den();
            if (pq <= Int("1000000000000")) return from_quad(QuadExpr::quadratic(0, 1, pq, x.get_den()));
        }
    }
    auto n = std::make_shared<RealNode>(RealNode::Kind::Root);
    n->a = node_;
    n->root_k = k;
    return CertifiedReal(std::move(n));
}

CertifiedReal CertifiedReal::pow(const Rat& e) const {
    Int num = e.get_num(), den = e.get_den();
    bool invert = num < 0;
    if (invert) num = -num;
    if (!num.fits_ulong_p() || !den.fits_ulong_p()) throw std::invalid_argument("exponent too large");
    unsigned long p = num.get_ui(), q = den.get_ui();
    CertifiedReal base = *this;
    CertifiedReal powed = CertifiedReal::from_rational(Rat(1));
    if (p != 0) {
        if (base.exact_value()) {
            QuadExpr acc(Rat(1));
            for (unsigned long i = 0; i < p; ++i) acc = acc * *base.exact_value();
            powed = from_quad(acc);
        } else {
            powed = base;
            for (unsigned long i = 1; i < p; ++i) powed = powed * base;
        }
    } else {
        return from_rational(Rat(1));
    }
    CertifiedReal r = powed.nth_root(q);
    if (invert) return CertifiedReal::from_rational(Rat(1)) / r;
    return r;
}

CertifiedReal ln_of(const CertifiedReal& x) {
    if (x.exact_value() && x.exact_value()->is_rational() && x.exact_value()->as_rational() == 1)
        return CertifiedReal::from_rational(Rat(0));
    auto n = std::make_shared<RealNode>(RealNode::Kind::Ln);
    n->a = x.node_;
    return CertifiedReal(std::move(n));
}

CertifiedReal dist_to_nearest_int(const CertifiedReal& x) {
    if (x.exact_value()) return CertifiedReal::from_quad(x.exact_value()->dist_to_nearest_int());
    auto n = std::make_shared<RealNode>(RealNode::Kind::Dist);
    n->a = x.node_;
    return CertifiedReal(std::move(n));
}

RatInterval CertifiedReal::eval(long work_bits) const { return node_->eval(work_bits); }

RatInterval CertifiedReal::enclosure(long width_bits, long max_work_bits) const {
    Rat target = pow2(-width_bits);
    long work = std::max<long>(64, width_bits + 8);
    while (true) {
        bool formed = false;
        RatInterval iv;
        try {
            iv = node_->eval(work);
            formed = true;
        } catch (const detail::need_more_bits&) {
        }
        if (formed && iv.width() <= target) return iv;
        if (work >= max_work_bits)
            throw precision_exhausted("cannot reach width 2^-" + std::to_string(width_bits) +
                                      " within " + std::to_string(max_work_bits) + " working bits");
        work = std::min(max_work_bits, work * 2);
    }
}

RatInterval CertifiedReal::best_enclosure(long width_bits, long max_work_bits) const {
    try {
        return enclosure(width_bits, max_work_bits);
    } catch (const precision_exhausted&) {
        long work = max_work_bits;
        while (true) {
            try {
                return node_->eval(work);
            } catch (const detail::need_more_bits&) {
                work *= 2;
                if (work > 64 * max_work_bits) throw precision_exhausted("enclosure cannot be formed at all");
            }
        }
    }
}

double CertifiedReal::to_double() const {
    try {
        RatInterval iv = best_enclosure(60);
        return iv.midpoint().get_d();
    } catch (const precision_exhausted&) {
        return node_->eval(64).midpoint().get_d();
    }
}

std::string CertifiedReal::decimal(int significant_digits) const {
    if (is_exact_rational()) return rat_to_decimal(as_rational(), significant_digits);
    // Refine until the interval pins down the requested digits, or the
    // precision cap is hit (then render the midpoint of what we have).
    long bits = 64;
    RatInterval iv = best_enclosure(bits);
    while (bits < max_precision_bits()) {
        Rat mag = std::max(abs(iv.lo), abs(iv.hi));
        if (mag == 0) break;
        Rat needed = mag / rat_pow(Rat(10), significant_digits + 2);
        if (iv.width() <= needed) break;
        bits *= 2;
        iv = best_enclosure(bits);
    }
    return rat_to_decimal(iv.midpoint(), significant_digits);
}

Cmp certified_compare(const CertifiedReal& a, const CertifiedReal& b, long max_bits) {
    if (a.is_exact_rational() && b.is_exact_rational()) {
        Rat x = a.as_rational(), y = b.as_rational();
        if (x == y) return Cmp::EqualExact;
        return x < y ? Cmp::Less : Cmp::Greater;
    }
    if (a.exact_value() && b.exact_value()) {
        QuadExpr diff = *a.exact_value() - *b.exact_value();
        if (diff.is_zero()) return Cmp::Undecided;  // equal but not both rational
        return diff.sign() < 0 ? Cmp::Less : Cmp::Greater;
    }
    long work = 64;
    while (true) {
        bool formed = false;
        RatInterval ia, ib;
        try {
            ia = a.eval(work);
            ib = b.eval(work);
            formed = true;
        } catch (const detail::need_more_bits&) {
        }
        if (formed) {
            if (ia.hi < ib.lo) return Cmp::Less;
            if (ib.hi < ia.lo) return Cmp::Greater;
        }
        if (work >= max_bits) return Cmp::Undecided;
        work = std::min(max_bits, work * 2);
    }
}

std::optional<bool> certified_less(const CertifiedReal& a, const CertifiedReal& b, long max_bits) {
    if (a.exact_value() && b.exact_value()) {
        QuadExpr diff = *a.exact_value() - *b.exact_value();
        if (diff.is_zero()) return false;
        return diff.sign() < 0;
    }
    switch (certified_compare(a, b, max_bits)) {
        case Cmp::Less:
            return true;
        case Cmp::Greater:
        case Cmp::EqualExact:
            return false;
        case Cmp::Undecided:
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<int> certified_sign(const CertifiedReal& x, long max_bits) {
    if (x.exact_value()) return x.exact_value()->is_zero() ? 0 : x.exact_value()->sign();
    long work = 64;
    while (true) {
        bool formed = false;
        RatInterval iv;
        try {
            iv = x.eval(work);
            formed = true;
        } catch (const detail::need_more_bits&) {
        }
        if (formed) {
            if (iv.lo > 0) return 1;
            if (iv.hi < 0) return -1;
        }
        if (work >= max_bits) return std::nullopt;
        work = std::min(max_bits, work * 2);
    }
}

}  // namespace tb
