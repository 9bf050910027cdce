#ifndef RWMARK_ERRORS_HPP
#define RWMARK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rwmark {

// Base for every error this library throws on bad data or bad usage.
// Programming errors (broken invariants) use assert, not exceptions.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Image file I/O.
struct IoFailure : Error {
    using Error::Error;
};
struct UnsupportedFormat : Error {
    using Error::Error;
};
struct CorruptFile : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};

// Payload framing.
struct BadMagic : Error {
    using Error::Error;
};
struct BadVersion : Error {
    using Error::Error;
};
struct Truncated : Error {
    using Error::Error;
};
struct CrcMismatch : Error {
    using Error::Error;
};

// Run-length coding.
struct Malformed : Error {
    using Error::Error;
};

// Bit generation.
struct ZeroSeed : Error {
    using Error::Error;
};

// Embedding and extraction.
struct CapacityExceeded : Error {
    using Error::Error;
};
struct MalformedStream : Error {
    using Error::Error;
};
struct RecordMismatch : Error {
    using Error::Error;
};
struct OutOfRange : Error {
    using Error::Error;
};

// Metrics.
struct TooSmall : Error {
    using Error::Error;
};

} // namespace rwmark

#endif
