#include "twistedbad/quadexpr.hpp"

#include <sstream>
#include <vector>

namespace tb {

namespace {

constexpr unsigned long kTrialLimit = 1000000;

// d = square * core with core squarefree; complete for d <= 10^12.
void extract_square_part(const Int& d, Int& square_root, Int& core) {
    if (d > Int("1000000000000"))
        throw std::invalid_argument("radicand too large for certified squarefree factorization (max 10^12)");
    square_root = 1;
    core = 1;
    Int rest = d;
    for (unsigned long p = 2; p * p <= kTrialLimit * kTrialLimit; p = (p == 2 ? 3 : p + 2)) {
        if (p > kTrialLimit) break;
        if (rest < Int(p) * Int(p)) break;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        if (e == 0) continue;
        if (e >= 2) square_root *= ipow(Int(p), e / 2);
        if (e % 2) core *= p;
    }
    // rest now has no prime factor <= 10^6, and rest <= 10^12, so rest is
    // 1, a prime, a product of two primes, or a prime square.
    if (rest > 1) {
        Int s = isqrt_floor(rest);
        if (s * s == rest)
            square_root *= s;
        else
            core *= rest;
    }
}

}  // namespace

void QuadExpr::set_coeff(const Int& d, const Rat& c) {
    if (c == 0)
        irr_.erase(d);
    else
        irr_[d] = c;
}

QuadExpr QuadExpr::quadratic(const Int& a, const Int& b, const Int& d, const Int& c) {
    if (c == 0) throw std::invalid_argument("quadratic with zero denominator");
    if (d < 0) throw std::invalid_argument("negative radicand");
    QuadExpr r;
    r.rat_ = Rat(a, c);
    r.rat_.canonicalize();
    if (b != 0 && d != 0) {
        Int sq, core;
        extract_square_part(d, sq, core);
        Rat coeff = Rat(b * sq, c);
        coeff.canonicalize();
        if (core == 1)
            r.rat_ += coeff;
        else if (coeff != 0)
            r.irr_[core] = coeff;
    }
    return r;
}

QuadExpr QuadExpr::operator-() const {
    QuadExpr r;
    r.rat_ = -rat_;
    for (const auto& [d, c] : irr_) r.irr_[d] = -c;
    return r;
}

QuadExpr& QuadExpr::operator+=(const QuadExpr& o) {
    rat_ += o.rat_;
    for (const auto& [d, c] : o.irr_) {
        auto it = irr_.find(d);
        if (it == irr_.end()) {
            irr_[d] = c;
        } else {
            it->second += c;
            if (it->second == 0) irr_.erase(it);
        }
    }
    return *this;
}

QuadExpr& QuadExpr::operator-=(const QuadExpr& o) { return *this += -o; }

QuadExpr QuadExpr::scaled(const Rat& c) const {
    QuadExpr r;
    if (c == 0) return r;
    r.rat_ = rat_ * c;
    for (const auto& [d, coeff] : irr_) r.irr_[d] = coeff * c;
    return r;
}

QuadExpr operator*(const QuadExpr& a, const QuadExpr& b) {
    QuadExpr r = b.scaled(a.rat_);
    for (const auto& [d, c] : a.irr_) {
        // c*sqrt(d) * (b.rat + sum c'*sqrt(d'))
        QuadExpr term;
        term.set_coeff(d, c * b.rat_);
        for (const auto& [d2, c2] : b.irr_) {
            if (d == d2) {
                term.rat_ += c * c2 * Rat(d);
            } else {
                // sqrt(d)*sqrt(d2) = g*sqrt((d/g)*(d2/g)) with g = gcd(d,d2);
                // both factors squarefree and coprime, so the product stays
                // squarefree.
                Int g;
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), d2.get_mpz_t());
                Int core = (d / g) * (d2 / g);
                Rat add = c * c2 * Rat(g);
                auto it = term.irr_.find(core);
                if (it == term.irr_.end())
                    term.irr_[core] = add;
                else {
                    it->second += add;
                    if (it->second == 0) term.irr_.erase(it);
                }
            }
        }
        r += term;
    }
    return r;
}

QuadExpr QuadExpr::reciprocal() const {
    if (is_zero()) throw std::domain_error("reciprocal of zero");
    if (is_rational()) return QuadExpr(Rat(1) / rat_);
    if (irr_.size() == 1) {
        // (r + c*sqrt(d))^-1 = (r - c*sqrt(d)) / (r^2 - c^2 d)
        const auto& [d, c] = *irr_.begin();
        Rat denom = rat_ * rat_ - c * c * Rat(d);
        // denom == 0 would force sqrt(d) rational; impossible for squarefree d > 1.
        QuadExpr conj;
        conj.rat_ = rat_ / denom;
        conj.set_coeff(d, -c / denom);
        return conj;
    }

    // General case: solve x*y = 1 in the finite-dimensional Q-algebra
    // spanned by 1 and the closure of the radicands under the
    // gcd-core product.
    std::vector<Int> basis{Int(1)};
    for (const auto& [d, c] : irr_) basis.push_back(d);
    auto core_product = [](const Int& a, const Int& b) -> Int {
        Int g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return Int((a / g) * (b / g));
    };
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t sz = basis.size();
        for (std::size_t i = 1; i < sz && !grew; ++i)
            for (std::size_t j = i + 1; j < sz && !grew; ++j) {
                Int core = core_product(basis[i], basis[j]);
                bool found = false;
                for (const auto& e : basis)
                    if (e == core) { found = true; break; }
                if (!found) {
                    basis.push_back(core);
                    grew = true;
                }
            }
        if (basis.size() > 64) throw std::invalid_argument("too many independent radicals for exact division");
    }
    std::size_t m = basis.size();
    auto index_of = [&](const Int& d) {
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] == d) return i;
        throw std::logic_error("radical missing from closed basis");
    };
    // Column j of M = coordinates of x * basis[j].
    std::vector<std::vector<Rat>> M(m, std::vector<Rat>(m, Rat(0)));
    for (std::size_t j = 0; j < m; ++j) {
        QuadExpr bj = j == 0 ? QuadExpr(Rat(1)) : sqrt_of(basis[j]);
        QuadExpr prod = (*this) * bj;
        M[0][j] = prod.rat_;
        for (const auto& [d, c] : prod.irr_) M[index_of(d)][j] = c;
    }
    // Solve M * y = e_0 by Gaussian elimination.
    std::vector<Rat> rhs(m, Rat(0));
    rhs[0] = 1;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        while (piv < m && M[piv][col] == 0) ++piv;
        if (piv == m) throw std::logic_error("singular multiplication matrix for nonzero element");
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        Rat inv = Rat(1) / M[col][col];
        for (std::size_t j = col; j < m; ++j) M[col][j] *= inv;
        rhs[col] *= inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col || M[r][col] == 0) continue;
            Rat f = M[r][col];
            for (std::size_t j = col; j < m; ++j) M[r][j] -= f * M[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    QuadExpr y(rhs[0]);
    for (std::size_t i = 1; i < m; ++i) y.set_coeff(basis[i], rhs[i]);
    return y;
}

RatInterval QuadExpr::enclosure(long bits) const {
    long inner = bits + 4 + static_cast<long>(irr_.size());
    RatInterval acc{rat_};
    for (const auto& [d, c] : irr_) {
        // Guard bits so that |c| * width stays below the budget.
        long extra = 0;
        Rat ac = c < 0 ? Rat(-c) : c;
        while (ac > pow2(extra)) ++extra;
        acc = acc + sqrt_enclosure(d, inner + extra).scaled(c);
    }
    return acc;
}

int QuadExpr::sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return rat_ < 0 ? -1 : 1;
    for (long bits = 32;; bits *= 2) {
        RatInterval e = enclosure(bits);
        if (e.lo > 0) return 1;
        if (e.hi < 0) return -1;
        if (bits > 1 << 24) throw std::logic_error("sign refinement runaway");
    }
}

Int QuadExpr::floor() const {
    if (is_rational()) return floor_rat(rat_);
    for (long bits = 32;; bits *= 2) {
        RatInterval e = enclosure(bits);
        Int f_lo = floor_rat(e.lo), f_hi = floor_rat(e.hi);
        if (f_lo == f_hi) return f_lo;
        if (e.width() < pow2(-bits + 8)) {
            // Straddling an integer boundary: decide x - f_hi >= 0 exactly.
            QuadExpr diff = *this;
            diff.rat_ -= Rat(f_hi);
            return diff.sign() >= 0 ? f_hi : f_lo;
        }
    }
}

QuadExpr QuadExpr::dist_to_nearest_int() const {
    QuadExpr frac = *this;
    frac.rat_ -= Rat(floor());  // in [0, 1)
    QuadExpr mirrored = -frac;
    mirrored.rat_ += 1;  // 1 - frac
    QuadExpr diff = frac - mirrored;
    return diff.sign() <= 0 ? frac : mirrored;
}

std::string QuadExpr::to_string() const {
    std::ostringstream os;
    os << rat_.get_str();
    for (const auto& [d, c] : irr_) os << " + (" << c.get_str() << ")*sqrt(" << d.get_str() << ")";
    return os.str();
}

}  // namespace tb
