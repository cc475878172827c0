#include "patrol/quadirr.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace patrol {

QuadIrr& QuadIrr::operator+=(const QuadIrr& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadIrr& QuadIrr::operator-=(const QuadIrr& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadIrr& QuadIrr::operator+=(const Rational& r) {
  a_ += r;
  return *this;
}

QuadIrr& QuadIrr::operator-=(const Rational& r) {
  a_ -= r;
  return *this;
}

QuadIrr operator*(const QuadIrr& x, const QuadIrr& y) {
  return QuadIrr(x.a_ * y.a_ + 5 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
}

QuadIrr operator*(const QuadIrr& x, const Rational& y) {
  return QuadIrr(x.a_ * y, x.b_ * y);
}

QuadIrr QuadIrr::pow(unsigned k) const {
  QuadIrr result((Rational(1)));
  QuadIrr base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

int QuadIrr::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: a + b*sqrt5 > 0 iff a^2 > 5 b^2 when a > 0, and
  // iff a^2 < 5 b^2 when b > 0.
  const Rational diff = a_ * a_ - 5 * b_ * b_;
  return sa > 0 ? diff.sign() : -diff.sign();
}

double QuadIrr::to_double() const {
  return patrol::to_double(a_) + patrol::to_double(b_) * std::sqrt(5.0);
}

long long fib(int k) {
  if (k < 0 || k > 91) throw std::invalid_argument("fib: index out of [0, 91]");
  long long a = 0, b = 1;
  for (int i = 0; i < k; ++i) {
    const long long next = a + b;
    a = b;
    b = next;
  }
  return a;
}

PhiOrdering compare_phi(const BigInt& numer, const BigInt& denom) {
  if (denom <= 0) throw std::invalid_argument("compare_phi: denominator must be positive");
  if (numer < 0) return PhiOrdering::less;
  // sign(N/D - phi) = sign(N^2 - N D - D^2) for N >= 0 (phi is the positive
  // root of x^2 - x - 1; a zero here would make sqrt5 rational).
  const BigInt s = numer * numer - numer * denom - denom * denom;
  if (s == 0) throw std::logic_error("compare_phi: impossible equality");
  return s < 0 ? PhiOrdering::less : PhiOrdering::greater;
}

}  // namespace patrol
