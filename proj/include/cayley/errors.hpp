#pragma once

#include <stdexcept>
#include <string>

namespace cayley {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct field_mismatch : error {
    using error::error;
};
struct division_by_zero : error {
    using error::error;
};
struct not_prime : error {
    using error::error;
};
struct infinite_field : error {
    using error::error;
};
struct parse_error : error {
    using error::error;
};
struct dimension_mismatch : error {
    using error::error;
};
struct ambient_mismatch : error {
    using error::error;
};
struct bad_dimension : error {
    using error::error;
};
struct degenerate_form : error {
    using error::error;
};
/// A structure-constant table that cannot carry a quadratic algebra
/// (basis square outside span{1, b}, non-proportional polarization, ...).
struct malformed_algebra : error {
    using error::error;
};
struct no_grading : error {
    using error::error;
};
struct not_split : error {
    using error::error;
};
struct not_division : error {
    using error::error;
};
struct characteristic_two : error {
    using error::error;
};

} // namespace cayley
