#include "mincode/rational.hpp"

#include <cctype>

namespace mincode {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) pos = 1;
  if (pos == text.size())
    throw RationalFormatError("malformed rational '" + std::string(whole) + "'");
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw RationalFormatError("malformed rational '" + std::string(whole) + "'");
  }
  std::string digits(text);
  if (digits[0] == '+') digits.erase(0, 1);
  return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const Integer num = parse_integer(text.substr(0, slash), text);
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw RationalFormatError("malformed rational '" + std::string(text) + "'");
  const Integer den = parse_integer(den_text, text);
  if (den == 0) throw RationalFormatError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  if (is_integral(value)) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

bool is_integral(const Rational& value) { return denominator(value) == 1; }

Integer floor_of(const Rational& value) {
  Integer q = numerator(value) / denominator(value);  // truncates toward zero
  if (value < 0 && !is_integral(value)) q -= 1;
  return q;
}

Integer ceil_of(const Rational& value) {
  Integer q = numerator(value) / denominator(value);
  if (value > 0 && !is_integral(value)) q += 1;
  return q;
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

Integer denominator_lcm(std::span<const Rational> values) {
  Integer acc = 1;
  for (const auto& v : values) acc = lcm(acc, denominator(v));
  return acc;
}

}  // namespace mincode
