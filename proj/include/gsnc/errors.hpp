#pragma once

#include <stdexcept>

namespace gsnc {

// Malformed input files / schema violations. CLI exit code 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mathematical inconsistency in otherwise well-formed data (d1^2 != 0,
// failed cross-checks). CLI exit code 1.
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gsnc
