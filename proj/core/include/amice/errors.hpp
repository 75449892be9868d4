#pragma once

#include <stdexcept>
#include <string>

namespace amice {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside an operation's domain (non-unit inverse, composite modulus, ...).
struct domain_error : error {
    using error::error;
};

// Not enough guard digits to run a denominator-bearing computation.
struct guard_error : error {
    using error::error;
};

// Effective precision dropped below one digit.
struct precision_error : error {
    using error::error;
};

// A nonzero coefficient was pushed past the level bound of a sheaf section.
struct clip_error : error {
    using error::error;
};

// Malformed measure description or table input.
struct parse_error : error {
    using error::error;
};

} // namespace amice
