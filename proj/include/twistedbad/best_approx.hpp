#pragma once

#include "twistedbad/arith.hpp"

#include <cstdint>
#include <optional>

namespace tb {

struct BestApproximation {
    IntVec m;                // sign-normalized: first nonzero component > 0
    CertifiedReal height;    // M_m = max |m_i|^(1/j_i)
    CertifiedReal residual;  // ||m . theta||, certified positive
    std::size_t index = 0;   // 1-based position in the sequence
};

struct BestApproxSequence {
    TargetVector target;
    WeightVector weights;
    Rat height_bound;  // enumeration is complete below this height
    std::vector<BestApproximation> entries;
};

struct RelationResult {
    enum class Kind { IndependentUpToBound, Relation, SuspectedRelation };
    Kind kind = Kind::IndependentUpToBound;
    IntVec v;  // nonzero coefficients with v . theta + p == 0 (or suspected)
    Int p;
};

// Raised when the enumeration runs into an exact integer relation; the
// sequence is undefined for Z-dependent targets.
class relation_found : public std::runtime_error {
  public:
    relation_found(RelationResult r, const std::string& what) : std::runtime_error(what), relation(std::move(r)) {}
    RelationResult relation;
};

struct EnumerateOptions {
    long max_bits = max_precision_bits();
    int threads = 1;
    // n = 1 switches from the exhaustive sweep to the continued-fraction
    // generator above this bound (the two agree; see the oracle tests).
    Rat cf_switch_bound = Rat(10000000);
};

// All best approximations with height <= height_bound, ordered by height.
BestApproxSequence enumerate_best_approximations(const TargetVector& theta, const WeightVector& j,
                                                 const Rat& height_bound,
                                                 const EnumerateOptions& opts = {});

struct ContinuedFraction {
    std::vector<Int> denominators;  // strictly increasing convergent denominators
    bool terminated = false;        // the expansion ended (rational value)
};

// Convergent denominators of x, at most `depth` of them; the n = 1 oracle.
ContinuedFraction continued_fraction_denominators(const CertifiedReal& x, int depth,
                                                  long max_bits = max_precision_bits());

enum class CheckStatus { Pass, Fail, Inconclusive };

struct PairCheck {
    std::size_t nu = 0;  // 1-based index of the left entry
    CheckStatus status = CheckStatus::Pass;
    RatInterval value;  // certified product (Minkowski) or ratio bound data
};

struct PairCheckReport {
    std::vector<PairCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (c.status != CheckStatus::Pass) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t k = 0;
        for (const auto& c : checks)
            if (c.status == CheckStatus::Fail) ++k;
        return k;
    }
};

// zeta_nu * M_{nu+1} <= 1 for consecutive entries.
PairCheckReport verify_minkowski(const BestApproxSequence& seq, long max_bits = max_precision_bits());

// M_{nu + 2*3^n} >= 2 M_nu; decided exactly (integer cross powers).
PairCheckReport verify_lacunarity(const BestApproxSequence& seq, std::size_t n);

// Exhaustive scan for v . theta + p == 0 with |v_i| <= coeff_bound,
// |p| <= n * coeff_bound.
RelationResult check_integer_relation(const TargetVector& theta, const Int& coeff_bound,
                                      long max_bits = max_precision_bits());

}  // namespace tb
