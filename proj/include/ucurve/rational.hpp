#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ucurve {

// Exact arithmetic for every probability, frequency, and loss in the library.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
    return Rational(BigInt(num), BigInt(den));
}

// Accepts "p/q", an integer "p", or a finite decimal such as "0.042".
// Throws std::invalid_argument on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

// Always "p/q" in lowest terms, e.g. "0/1", "11/25".
std::string to_fraction_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace ucurve
