#include "patrol/rational.hpp"

#include <stdexcept>

namespace patrol {

Rational parse_rational(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("not a rational: '" + std::string(text) + "'");
  };
  if (text.empty()) throw bad();

  const auto parse_int = [&](std::string_view part) -> BigInt {
    if (part.empty()) throw bad();
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) throw bad();
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') throw bad();
    }
    return BigInt(std::string(part));
  };

  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_int(text));
  }
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw std::invalid_argument("denominator must be positive: '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

bool is_power_of_two(const BigInt& n) {
  return n > 0 && (n & (n - 1)) == 0;
}

bool is_power_of_two(const Rational& r) {
  if (r <= 0) return false;
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  return (num == 1 && is_power_of_two(den)) || (den == 1 && is_power_of_two(num));
}

}  // namespace patrol
