// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace modone {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation requested outside a function's domain (e.g. g at x <= 1).
struct DomainError : Error {
    using Error::Error;
};

/// An enclosure straddles an integer (or is too wide) so the fractional
/// part cannot be certified; the caller must refine upstream precision.
struct AmbiguousBoundary : Error {
    using Error::Error;
};

/// The working-precision cap was reached without certifying the result.
struct PrecisionExhausted : Error {
    using Error::Error;
};

/// A sequence spec violates its invariants (beta <= 1, alpha == 0, ...).
struct InvalidSpec : Error {
    using Error::Error;
};

/// A size bound was exceeded (sieve capacity, ...).
struct CapacityExceeded : Error {
    using Error::Error;
};

/// A scalar argument is outside its allowed range (h == 0, lambda <= 1, ...).
struct ArgumentError : Error {
    using Error::Error;
};

/// Unknown experiment name passed to the harness.
struct UnknownExperiment : Error {
    using Error::Error;
};

/// An operation produced an empty result (difference with h >= N).
struct EmptyResult : Error {
    using Error::Error;
};

/// Malformed input text (expression grammar, exact-real literals, config).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace modone
