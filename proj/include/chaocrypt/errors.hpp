#pragma once

#include <stdexcept>

namespace chaocrypt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// argument outside its documented domain (seed ranges, block divisibility, ...)
struct DomainError : Error {
    using Error::Error;
};

// an orbit or computation escaped to non-finite values
struct NumericError : Error {
    using Error::Error;
};

// malformed file contents: bad magic, unknown version, truncation, unparsable fields
struct FormatError : Error {
    using Error::Error;
};

// filesystem-level failure: missing file, unwritable path
struct IoError : Error {
    using Error::Error;
};

} // namespace chaocrypt
