#pragma once

#include <stdexcept>
#include <string>

namespace stockcast {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad inputs the caller can fix: malformed files, invalid configuration,
// missing paths, violated preconditions. The CLI maps these to exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Failures at run time (divergence, transport faults, I/O). Exit code 2.
class RuntimeError : public Error {
public:
    using Error::Error;
};

} // namespace stockcast
