#pragma once

#include "twistedbad/target.hpp"
#include "twistedbad/weights.hpp"

#include <vector>

namespace tb {

using IntVec = std::vector<Int>;

// max_i |m_i|^(1/j_i), the weighted height of a nonzero integer vector.
CertifiedReal weighted_height(const IntVec& m, const WeightVector& j);

// ||m . theta||, distance of the scalar product to the nearest integer.
CertifiedReal dot_residual(const IntVec& m, const TargetVector& theta);

// Exact height comparisons. Heights are k-th roots of integers, so
// cross-powering decides everything with integer arithmetic alone.
//   height_compare(a, b, j)  < 0, 0, > 0  as M_a <=> M_b
int height_compare(const IntVec& a, const IntVec& b, const WeightVector& j);

// M_m <=> x for exact rational x >= 0 (same convention).
int height_compare_rat(const IntVec& m, const Rat& x, const WeightVector& j);

// Index attaining the height maximum (smallest such index).
std::size_t height_argmax(const IntVec& m, const WeightVector& j);

// Sign normalization: the first nonzero component made positive.
// Returns true if the sign was flipped.
bool sign_normalize(IntVec& m);

bool is_zero_vec(const IntVec& m);

}  // namespace tb
