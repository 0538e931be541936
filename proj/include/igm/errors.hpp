#pragma once

#include <stdexcept>
#include <string>

namespace igm {

// Malformed input or violated precondition; CLI exit code 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Brute-force or enumeration cap exceeded; CLI exit code 3.
struct size_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal invariant; CLI exit code 1.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace igm
