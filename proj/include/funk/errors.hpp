#pragma once

#include <stdexcept>

namespace funk {

// Bad geometric input: dimension mismatch, point outside the domain,
// violated operation precondition.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed body or path document.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace funk
