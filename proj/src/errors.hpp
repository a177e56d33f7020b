// Error types thrown by the core; the C API layer maps them to status codes.
#pragma once
#include <stdexcept>

namespace rcms {

// malformed input text (matrix files); message carries the line number
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// request outside supported limits (e.g. oracle above m=5); message says why
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// checkpoint file unusable (version/shape mismatch, truncation)
struct checkpoint_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a mathematical invariant failed: this signals a bug, never bad user input
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace rcms
