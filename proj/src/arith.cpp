#include "twistedbad/arith.hpp"

namespace tb {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

bool is_zero_vec(const IntVec& m) {
    for (const auto& c : m)
        if (c != 0) return false;
    return true;
}

bool sign_normalize(IntVec& m) {
    for (const auto& c : m) {
        if (c > 0) return false;
        if (c < 0) {
            for (auto& x : m) x = -x;
            return true;
        }
    }
    return false;
}

std::size_t height_argmax(const IntVec& m, const WeightVector& j) {
    if (m.size() != j.n()) throw std::invalid_argument("vector/weight dimension mismatch");
    std::size_t best = 0;
    bool have = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!have) {
            best = i;
            have = true;
            continue;
        }
        // |m_i|^(1/j_i) > |m_best|^(1/j_best)
        // <=> |m_i|^(q_i p_b) > |m_best|^(q_b p_i)
        Int lhs = ipow(abs_int(m[i]), j.den(i) * j.num(best));
        Int rhs = ipow(abs_int(m[best]), j.den(best) * j.num(i));
        if (lhs > rhs) best = i;
    }
    if (!have) throw std::invalid_argument("weighted height of the zero vector");
    return best;
}

int height_compare(const IntVec& a, const IntVec& b, const WeightVector& j) {
    std::size_t ia = height_argmax(a, j), ib = height_argmax(b, j);
    // |a_ia|^(1/j_ia) <=> |b_ib|^(1/j_ib)
    Int lhs = ipow(abs_int(a[ia]), j.den(ia) * j.num(ib));
    Int rhs = ipow(abs_int(b[ib]), j.den(ib) * j.num(ia));
    return cmp(lhs, rhs);
}

int height_compare_rat(const IntVec& m, const Rat& x, const WeightVector& j) {
    if (x < 0) return 1;  // heights are >= 1
    std::size_t im = height_argmax(m, j);
    // |m|^(q/p) <=> num/den  <=>  |m|^q * den^p <=> num^p
    unsigned long p = j.num(im), q = j.den(im);
    Int lhs = ipow(abs_int(m[im]), q) * ipow(x.get_den(), p);
    Int rhs = ipow(x.get_num(), p);
    return cmp(lhs, rhs);
}

CertifiedReal weighted_height(const IntVec& m, const WeightVector& j) {
    if (is_zero_vec(m)) throw std::invalid_argument("weighted height of the zero vector");
    std::size_t i = height_argmax(m, j);
    // |m_i|^(1/j_i) = (|m_i|^q)^(1/p) for j_i = p/q
    Int base = ipow(abs_int(m[i]), j.den(i));
    return CertifiedReal::from_int(base).nth_root(j.num(i));
}

CertifiedReal dot_residual(const IntVec& m, const TargetVector& theta) {
    if (m.size() != theta.n()) throw std::invalid_argument("vector/target dimension mismatch");
    if (is_zero_vec(m)) throw std::invalid_argument("dot residual of the zero vector");
    CertifiedReal acc = CertifiedReal::from_rational(Rat(0));
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        acc = acc + CertifiedReal::from_rational(Rat(m[i])) * theta[i];
    }
    return dist_to_nearest_int(acc);
}

}  // namespace tb
