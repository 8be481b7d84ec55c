#pragma once

#include <stdexcept>
#include <string>

namespace cenormal {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside an operation's domain (digit >= base, base mismatch, ...).
struct DomainError : Error {
    using Error::Error;
};

// A finite (explicit) sequence has no further members.
struct SequenceExhausted : Error {
    using Error::Error;
};

// Counting query above the configured sieve cap.
struct CapExceeded : Error {
    using Error::Error;
};

// A 64-bit hot-path counter would wrap.
struct OverflowError : Error {
    using Error::Error;
};

// The LIL statistic requires n >= 16 so that ln ln n > 0.
struct UndefinedStatistic : Error {
    using Error::Error;
};

// Malformed spec string, rational, or checkpoint record.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace cenormal
