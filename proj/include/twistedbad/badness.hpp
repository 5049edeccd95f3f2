#pragma once

#include "twistedbad/best_approx.hpp"

namespace tb {

// Result of a finite badness scan: the minimum over 1 <= q <= scan_bound of
// the scanned functional, with the attaining q. Infima over all of N are not
// decidable from finite data; the scan bound is always part of the result.
struct BadnessProfile {
    std::string functional;
    Int scan_bound;
    CertifiedReal value;
    Int argmin_q;
    bool certified;  // enclosure reached the requested width
};

struct BadnessOptions {
    long max_bits = max_precision_bits();
    long value_bits = 48;  // requested enclosure width for the profile value
};

// min_{1<=q<=Q} max_i q^(j_i) ||q theta_i - eta_i||
BadnessProfile twisted_badness(const TargetVector& theta, const TargetVector& eta, const WeightVector& j,
                               const Int& Q, const BadnessOptions& opts = {});

// min_{1<=q<=Q} max_i q^(j_i) ||q theta_i||  (the twist at eta = 0)
BadnessProfile classical_badness(const TargetVector& theta, const WeightVector& j, const Int& Q,
                                 const BadnessOptions& opts = {});

// min_{1<=q<=Q} q ||q eta_i||  (one-dimensional, single coordinate)
BadnessProfile coordinate_badness(const CertifiedReal& eta_i, const Int& Q, const BadnessOptions& opts = {});

// min over the sequence entries of ||m_nu . eta||; the finite-range proxy
// for membership in the dual-defined set.
CertifiedReal dual_badness(const TargetVector& eta, const BestApproxSequence& seq,
                           long max_bits = max_precision_bits());

struct PropositionConstants {
    CertifiedReal gamma;
    CertifiedReal c;      // min_i (gamma/2)^(j_i)
    CertifiedReal bound;  // gamma * c / (2n)
};

PropositionConstants proposition_bound(const CertifiedReal& gamma, const WeightVector& j, std::size_t n);

struct PropositionReport {
    Rat gamma_lo;  // certified rational lower bound on the dual badness
    Rat bound_hi;  // certified rational upper bound on gamma*c/(2n)
    Int q_max;     // covered range: q <= gamma_lo / (2 zeta_N)
    long escalations = 0;
    std::vector<Int> violating_q;
    bool pass() const { return violating_q.empty(); }
};

// Checks max_i q^(j_i) ||q theta_i - eta_i|| > gamma*c/(2n) for every q in
// the range covered by the sequence depth. Requires dual_badness(eta) > 0
// certified; a violation would indicate an implementation bug.
PropositionReport verify_proposition(const TargetVector& theta, const TargetVector& eta,
                                     const WeightVector& j, const BestApproxSequence& seq,
                                     const BadnessOptions& opts = {});

// Same check over many points sharing theta and the sequence; much faster
// than repeated single-point runs.
std::vector<PropositionReport> verify_proposition_batch(const TargetVector& theta,
                                                        const std::vector<std::vector<Rat>>& etas,
                                                        const WeightVector& j,
                                                        const BestApproxSequence& seq,
                                                        const BadnessOptions& opts = {});

}  // namespace tb
