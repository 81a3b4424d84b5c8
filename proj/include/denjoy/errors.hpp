#pragma once

#include <stdexcept>
#include <string>

namespace denjoy {

// Base class for every failure raised by the library. Each subclass names one
// failure mode so callers (the CLI in particular) can map it to a report line.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A continued-fraction stream ran out of known partial quotients.
class DepthExhaustedError : public Error {
public:
    using Error::Error;
};

// The operation needs a quadratic irrational (periodic tail) but got a stream.
class UnsupportedInputError : public Error {
public:
    using Error::Error;
};

// An enclosure is too wide to decide an order comparison.
class UndecidableComparisonError : public Error {
public:
    using Error::Error;
};

// A base-circle angle may coincide with a blown-up orbit point.
class OrbitHitError : public Error {
public:
    using Error::Error;
};

// Two orbit seeds of a schedule lie on the same rotation orbit.
class OrbitCollisionError : public Error {
public:
    using Error::Error;
};

// A gap index left the explicitly resolved range |n| <= N.
class ResolvedDepthError : public Error {
public:
    ResolvedDepthError(const std::string& what, long long offending_index)
        : Error(what), offending_index_(offending_index) {}

    long long offending_index() const noexcept { return offending_index_; }

private:
    long long offending_index_;
};

// Gluing expression whose boundary components do not pair up.
class BoundaryMismatchError : public Error {
public:
    using Error::Error;
};

// Cell complex or handle record that is not connected.
class DisconnectedError : public Error {
public:
    using Error::Error;
};

// 2-complex whose faces do not collapse onto a graph.
class UnsupportedFacePatternError : public Error {
public:
    using Error::Error;
};

// Malformed text input (continued fractions, rationals, gluing expressions).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace denjoy
