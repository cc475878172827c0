#ifndef PATROL_RATIONAL_HPP
#define PATROL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace patrol {

// All schedule-side probabilities and frequencies are exact rationals.
// cpp_rational keeps values in lowest terms with a positive denominator.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "a/b" or a plain integer "a". Throws std::invalid_argument on
// malformed input or a non-positive denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

double to_double(const Rational& r);

// True for 2^j with any integer j (so 1/8, 1, 2, ... all qualify).
bool is_power_of_two(const BigInt& n);
bool is_power_of_two(const Rational& r);

}  // namespace patrol

#endif
