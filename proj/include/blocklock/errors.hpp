#pragma once

#include <stdexcept>
#include <string>

namespace blocklock {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shapes, block sizes or key lengths do not line up.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A value lies outside the operation's domain (cipher input, pair count...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Malformed file contents; message carries the byte offset when known.
class ParseError : public Error {
public:
    using Error::Error;
};

// A loaded or constructed object violates a structural invariant; the
// message names the offending field.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Invalid configuration (empty transform list, bad fractions...).
class ConfigError : public Error {
public:
    using Error::Error;
};

// The requested operation is not defined for this input (e.g. inverting
// a pipeline that contains FFX).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// Training diverged or could not proceed.
class TrainingError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failure (missing file, short write).
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace blocklock
