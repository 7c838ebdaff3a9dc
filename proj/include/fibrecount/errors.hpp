#pragma once

#include <stdexcept>

namespace fibrecount {

// Text input (field specs, polynomial strings, CSV/JSON files) that cannot
// be understood.  CLI exit code 2.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed input that violates a mathematical requirement: inseparable
// product, mixed fields, cardinality limit, inv(0).  CLI exit code 3.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant failed; always a bug, never user error.  CLI exit
// code 4.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace fibrecount
