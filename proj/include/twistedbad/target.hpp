#pragma once

#include "twistedbad/real.hpp"

#include <string>
#include <vector>

namespace tb {

// A fixed point of R^n with certified components. Components are specified
// symbolically so that refinement to any precision is meaningful:
//   rational:p/q
//   quad:(a+b*sqrt(d))/c        optionally followed by +k or -k (integer)
//   decimal:<digits>@<bits>     an unknown real within 2^-bits of the digits
class TargetVector {
  public:
    TargetVector(std::vector<CertifiedReal> components, std::vector<std::string> descriptions)
        : components_(std::move(components)), descriptions_(std::move(descriptions)) {
        if (components_.empty()) throw std::invalid_argument("empty target vector");
        if (components_.size() != descriptions_.size())
            throw std::invalid_argument("component/description length mismatch");
    }

    // Parse a comma-separated list of component sources.
    static TargetVector parse(const std::string& text);
    // Parse a single component source.
    static CertifiedReal parse_component(const std::string& text);

    std::size_t n() const { return components_.size(); }
    const CertifiedReal& operator[](std::size_t i) const { return components_[i]; }
    const std::vector<CertifiedReal>& components() const { return components_; }
    const std::string& description(std::size_t i) const { return descriptions_[i]; }

    std::string to_string() const;

  private:
    std::vector<CertifiedReal> components_;
    std::vector<std::string> descriptions_;
};

}  // namespace tb
