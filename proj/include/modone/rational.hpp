// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace modone {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", integer, or decimal ("-0.25", "2.5e3") text into an exact
/// rational. Decimal strings are parsed exactly (no binary rounding).
/// Throws ParseError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Exact floor of a rational as an integer.
Integer rational_floor(const Rational& q);

/// "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& q);

/// Nearest double; fine for display and double-precision pipelines.
double to_double(const Rational& q);

}  // namespace modone
