#pragma once

#include <stdexcept>
#include <string>

namespace radial {

// An operation was called outside its documented domain.
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested indices are not covered by the supplied data.
struct range_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// A dense solve was refused because the condition estimate is too large
// for the working precision.
struct ill_conditioned_error : std::runtime_error {
    ill_conditioned_error(const std::string& what, double condition)
        : std::runtime_error(what), condition_estimate(condition) {}
    double condition_estimate;
};

} // namespace radial
