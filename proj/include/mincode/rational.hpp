#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mincode {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Expression templates are disabled so that `auto` is safe.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

class RationalFormatError : public std::runtime_error {
 public:
  explicit RationalFormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p", "-p" or "p/q" (q != 0). Whitespace is not accepted.
Rational parse_rational(std::string_view text);

/// "p/q", or just "p" when the value is integral.
std::string to_string(const Rational& value);

bool is_integral(const Rational& value);

/// Floor and ceiling as integers.
Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

/// Least common multiple of the denominators; 1 for an empty range.
Integer denominator_lcm(std::span<const Rational> values);
Integer lcm(const Integer& a, const Integer& b);

}  // namespace mincode
