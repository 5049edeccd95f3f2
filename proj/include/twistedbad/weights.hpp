#pragma once

#include "twistedbad/rational.hpp"

#include <string>
#include <vector>

namespace tb {

// The approximation exponents (j_1, ..., j_n): positive rationals summing
// to 1 exactly.
class WeightVector {
  public:
    explicit WeightVector(std::vector<Rat> weights) : weights_(std::move(weights)) {
        if (weights_.empty()) throw std::invalid_argument("empty weight vector");
        Rat sum(0);
        for (const auto& j : weights_) {
            if (j <= 0) throw std::invalid_argument("weights must be positive");
            sum += j;
        }
        if (sum != 1) throw std::invalid_argument("weights must sum to 1 exactly");
        j_min_ = weights_[0];
        j_max_ = weights_[0];
        for (const auto& j : weights_) {
            if (j < j_min_) j_min_ = j;
            if (j > j_max_) j_max_ = j;
        }
    }

    // Parse "1/2,1/2" style comma-separated fractions.
    static WeightVector parse(const std::string& text);

    std::size_t n() const { return weights_.size(); }
    const Rat& operator[](std::size_t i) const { return weights_[i]; }
    const std::vector<Rat>& weights() const { return weights_; }
    const Rat& j_min() const { return j_min_; }
    const Rat& j_max() const { return j_max_; }

    // Numerator/denominator of j_i as machine integers (they are small).
    unsigned long num(std::size_t i) const { return weights_[i].get_num().get_ui(); }
    unsigned long den(std::size_t i) const { return weights_[i].get_den().get_ui(); }

    bool all_equal() const {
        for (const auto& j : weights_)
            if (j != weights_[0]) return false;
        return true;
    }

    std::string to_string() const;

  private:
    std::vector<Rat> weights_;
    Rat j_min_, j_max_;
};

}  // namespace tb
