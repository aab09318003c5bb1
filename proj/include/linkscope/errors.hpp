#pragma once

#include <stdexcept>
#include <string>

namespace linkscope {

// Error taxonomy. Data errors cover malformed or degenerate inputs;
// computation errors cover solver and generator failures.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad file contents (carries a line number when one is known).
struct parse_error : error {
    parse_error(const std::string& msg, long line = -1)
        : error(line >= 0 ? msg + " at line " + std::to_string(line) : msg), line_number(line) {}
    long line_number;
};

// Input violates a documented invariant (self-loop, negative count, ...).
struct validation_error : error {
    using error::error;
};

// Metric requested on a graph/set where it is mathematically undefined.
struct undefined_input_error : error {
    using error::error;
};

// Not enough samples to run an estimator.
struct insufficient_data_error : error {
    using error::error;
};

// File missing or unreadable.
struct io_error : error {
    using error::error;
};

// Iterative solver failed to converge within its iteration cap.
struct convergence_error : error {
    using error::error;
};

// Synthetic generator could not hit its target bands within the retry cap.
struct generation_error : error {
    using error::error;
};

// Closed-form power-law entropy is singular at alpha = 1.
struct singular_exponent_error : error {
    using error::error;
};

// A "cannot happen" condition; indicates a bug rather than bad input.
struct internal_error : error {
    using error::error;
};

}  // namespace linkscope
