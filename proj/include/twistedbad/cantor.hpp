#pragma once

#include "twistedbad/best_approx.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace tb {

enum class TreeMode { Strict, Exploratory };

// Raised when a strict-mode box yields fewer survivors than the exact count
// the construction promises; indicates a bug or a parameter breach.
class construction_violation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CantorParams {
    WeightVector j;
    Int R;
    Rat epsilon;
    TargetVector theta;
    TreeMode mode = TreeMode::Exploratory;
    std::uint64_t seed = 0;

    std::vector<Int> axis_base;  // b_i = R^(j_i), integral by requirement

    std::size_t n() const { return j.n(); }

    // Checks the parameter constraints and fills axis_base:
    //  - R^(j_i) integral for every i (exact rational geometry);
    //  - epsilon < 1 / (2 R^(2 j_max));
    //  - all modes: R^(j_min) >= 2; strict mode: R^(j_min) > 4,
    //    target_count(R) > 1 and the measure-stage R-condition.
    void validate();

    static Rat default_epsilon(const Int& R, const WeightVector& j);
};

// Axis-aligned box at a level: corner_i = corner[i] / b_i^level,
// side_i = b_i^-level.
struct Hyperrectangle {
    int level = 0;
    std::vector<Int> corner;

    Rat lower_corner(const CantorParams& p, std::size_t i) const {
        return Rat(corner[i]) / Rat(ipow(p.axis_base[i], static_cast<unsigned long>(level)));
    }
    Rat side(const CantorParams& p, std::size_t i) const {
        return Rat(1) / Rat(ipow(p.axis_base[i], static_cast<unsigned long>(level)));
    }
    RatInterval axis_range(const CantorParams& p, std::size_t i) const {
        Rat denom(ipow(p.axis_base[i], static_cast<unsigned long>(level)));
        return {Rat(corner[i]) / denom, Rat(corner[i] + 1) / denom};
    }
    bool operator<(const Hyperrectangle& o) const {
        if (level != o.level) return level < o.level;
        return corner < o.corner;
    }
    bool operator==(const Hyperrectangle& o) const { return level == o.level && corner == o.corner; }
};

struct QRange {
    Int lo{1}, hi{0};
    bool empty() const { return lo > hi; }
    Int count() const { return empty() ? Int(0) : Int(hi - lo + 1); }
};

// Per-level constraint data: the height class of dual vectors and the
// coordinate denominator ranges.
struct LevelData {
    int k = 0;
    std::vector<IntVec> dual_vectors;
    std::vector<QRange> coord_ranges;
};

// ---- counting formulas ----

// floor(R - sum_i R^(1-j_i) - 2^(n+2) 3^n n (1+log2 R) R^(1-j_min)
//       - 4 n R^(1-j_min));  may be negative.
Int target_count(const Int& R, const WeightVector& j, std::size_t n);

// Per-stage survivor lower bound with the 4*i term, stage i in 0..n.
Int survivor_lower_bound(const Int& R, const WeightVector& j, std::size_t n, std::size_t stage);

// Smallest power of two R (with all R^(j_i) integral) satisfying
// target_count > 1 and the measure-stage condition
// sum_i R^(-j_i) + 2^(n+2) 3^n n (1+log2 R) R^(-j_min) + 4n R^(-j_min)
//   + R^(-1) <= 1/2.
Int minimal_strict_R(const WeightVector& j, std::size_t n);

// {q : R^((k-1) j_i / 2) <= q < R^(k j_i / 2)}; empty for k = 0.
QRange coordinate_denominator_range(const Int& R, const WeightVector& j, int k, std::size_t i);

// Heights partitioned by R^(k-1) <= M < R^k; exact. Entry absent for k
// with no vectors. Partition covers k = 1 .. k_max.
std::map<int, std::vector<IntVec>> partition_best_approx(const BestApproxSequence& seq, const Int& R,
                                                         int k_max);

// ---- geometry predicates (exact rational arithmetic) ----

// Does the closed box meet the open slab |m.x + p| < eps for some integer p?
bool intersects_dual_thickening(const Hyperrectangle& H, const CantorParams& params, const IntVec& m,
                                const Rat& eps);

// Integer offsets p for which the slab |m.x + p| < eps meets the box.
std::vector<Int> dual_offsets(const Hyperrectangle& H, const CantorParams& params, const IntVec& m,
                              const Rat& eps);

// Does the closed box meet |x_i - p/q| < eps/q^2 for some integer p?
bool intersects_coord_thickening(const Hyperrectangle& H, const CantorParams& params, std::size_t i,
                                 const Int& q, const Rat& eps);

// ---- rational window queries ----

// Minimal-denominator fraction in the open interval (lo, hi); requires
// lo < hi. Returns (p, q) in lowest terms.
std::pair<Int, Int> simplest_in_open(const Rat& lo, const Rat& hi);

// All reduced fractions p/q with q <= qmax inside the closed interval
// [lo, hi]; intended for tiny windows (the result count is expected to be
// small and is capped).
std::vector<std::pair<Int, Int>> fractions_in_window(const Rat& lo, const Rat& hi, const Int& qmax,
                                                     std::size_t cap = 4096);

// ---- subdivision and filtering ----

std::vector<Hyperrectangle> subdivide(const Hyperrectangle& H, const CantorParams& params);

// Children of H surviving every dual and coordinate condition of level
// data ld, in lexicographic corner order.
std::vector<Hyperrectangle> filter_children(const Hyperrectangle& H, const LevelData& ld,
                                            const CantorParams& params);

// Survivor count without materializing children (column sweep for n <= 2).
Int count_survivors(const Hyperrectangle& H, const LevelData& ld, const CantorParams& params);

// Per-axis cell mask under the coordinate conditions alone; entry t is true
// when cell t survives. Two implementations: the production one uses
// rational window queries, the direct one scans every q (test oracle).
std::vector<bool> coord_axis_mask(const Hyperrectangle& H, const LevelData& ld, const CantorParams& params,
                                  std::size_t axis);
std::vector<bool> coord_axis_mask_direct(const Hyperrectangle& H, const LevelData& ld,
                                         const CantorParams& params, std::size_t axis);

// ---- the lazy tree ----

class CantorTree {
  public:
    struct Node {
        Hyperrectangle box;
        Rat mu;                  // measure weight of the box
        Int survivor_count{-1};  // survivors among children; -1 = not expanded
    };

    // Level data is prepared for levels 0 .. depth-1; the sequence must be
    // complete below R^(depth-1).
    CantorTree(CantorParams params, int depth, BestApproxSequence seq);

    const CantorParams& params() const { return params_; }
    int depth() const { return depth_; }
    const BestApproxSequence& sequence() const { return seq_; }
    const LevelData& level_data(int k) const;
    Int branching() const { return branching_; }  // strict-mode selected count

    Node root() const;

    // Selected children of a node (strict: first target_count survivors in
    // lexicographic order; exploratory: all survivors). Cached; safe for
    // concurrent calls.
    std::shared_ptr<const std::vector<Node>> children(const Node& node);

    // Streaming depth-first walk over the selected tree down to max_level;
    // visit(node) is called for every node, root included. No caching, so
    // arbitrarily large levels can be summed without materialization.
    void walk(int max_level, const std::function<void(const Node&)>& visit) const;

    // Center of the box reached by a child-index path (indices into the
    // selected-children lists).
    std::vector<Rat> sample_point_path(const std::vector<std::size_t>& path);

    // Center of a random depth-`depth` box; the stream is derived from
    // (params.seed, label) so different labels give independent draws.
    std::vector<Rat> sample_point_random(std::uint64_t label, int depth);

    // A random node at the given level (uniform random descent).
    Node sample_node(std::uint64_t label, int level);

  private:
    std::vector<Node> expand(const Node& node) const;

    CantorParams params_;
    int depth_;
    BestApproxSequence seq_;
    std::vector<LevelData> levels_;
    Int branching_;

    std::mutex cache_mu_;
    std::map<Hyperrectangle, std::shared_ptr<const std::vector<Node>>> cache_;
};

// Convenience: enumerate the sequence to R^(depth-1) and build the tree.
CantorTree build_tree(CantorParams params, int depth, const EnumerateOptions& opts = {});

// ---- structural verification ----

struct FactCheckReport {
    int level = 0;
    std::size_t boxes_checked = 0;
    // observed maxima vs their bounds
    Int dual_class_size{0}, dual_class_bound{0};          // #M_k vs 2*3^n (1+log2 R)
    Int offsets_per_vector{0}, offsets_bound{0};          // p's per m vs 2^n n
    Int children_per_dual{0}, children_per_dual_bound{0}; // vs 2 floor(R^(1-j_min))
    Int coord_pairs_per_axis{0}, coord_pairs_bound{0};    // distinct centers vs 2
    Int children_per_coord{0};                            // vs 2 floor(R^(1-j_i)) (per-axis bound)
    bool children_per_coord_ok = true;
    std::size_t violations = 0;
    bool pass() const { return violations == 0; }
};

// Verifies the per-box counting facts at level k over `samples` randomly
// descended boxes (all boxes when the level is small enough to walk).
FactCheckReport verify_fact_counts(CantorTree& tree, int k, std::size_t samples, std::uint64_t label);

}  // namespace tb
