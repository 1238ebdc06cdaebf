#pragma once

#include <stdexcept>
#include <string>

namespace lspectra {

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OutOfWindow : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct EnumerationLimit : std::length_error {
    using std::length_error::length_error;
};

// Raised when an input is well formed but fails a mathematical precondition
// (a singular form, a degenerate linking form, d∘d != 0, ...).
struct Degenerate : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace lspectra
