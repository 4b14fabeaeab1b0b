#pragma once

#include <stdexcept>
#include <string>

namespace liemod {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad caller input (degree mismatch, zero vector, malformed shape, ...).
struct ValidationError : Error {
    using Error::Error;
};

// A configured hard cap was hit (dimension bound, point budget, group budget).
struct ResourceLimitError : Error {
    using Error::Error;
};

// Symbolic elimination exceeded its per-entry degree cap.
struct BlowUpError : Error {
    using Error::Error;
};

// Matrix cache file problems; `kind` distinguishes the failure modes.
struct CacheError : Error {
    enum class Kind { bad_magic, bad_version, truncated, mismatch, io };
    Kind kind;
    CacheError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
};

// A cross-check that can only fail through a bug fired.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace liemod
