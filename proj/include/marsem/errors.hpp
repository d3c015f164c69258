#pragma once

#include <stdexcept>
#include <string>

namespace marsem {

/// Bad user input: malformed files, unknown vertices, shape mismatches.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation not defined for the given data (e.g. non-binary shape).
class unsupported_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Desk-scale guard tripped (input too large for exhaustive machinery).
class guard_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invariant breach inside the library; always a bug, never user error.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace marsem
