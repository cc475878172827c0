#ifndef PATROL_QUADIRR_HPP
#define PATROL_QUADIRR_HPP

#include "patrol/rational.hpp"

namespace patrol {

// Element of Q(sqrt(5)): a + b*sqrt(5) with rational a, b. Signs and
// comparisons are exact (rational sign analysis plus squaring), never
// floating point.
class QuadIrr {
 public:
  QuadIrr() = default;
  QuadIrr(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
  explicit QuadIrr(Rational a) : a_(std::move(a)) {}

  static QuadIrr sqrt5() { return QuadIrr(Rational(0), Rational(1)); }
  // phi = (1 + sqrt 5)/2, the positive root of x^2 = x + 1.
  static QuadIrr phi() { return QuadIrr(Rational(1, 2), Rational(1, 2)); }
  // 1/phi = phi - 1.
  static QuadIrr inv_phi() { return QuadIrr(Rational(-1, 2), Rational(1, 2)); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  bool is_rational() const { return b_ == 0; }

  QuadIrr operator-() const { return QuadIrr(-a_, -b_); }
  QuadIrr& operator+=(const QuadIrr& o);
  QuadIrr& operator-=(const QuadIrr& o);
  QuadIrr& operator+=(const Rational& r);
  QuadIrr& operator-=(const Rational& r);

  friend QuadIrr operator+(QuadIrr x, const QuadIrr& y) { return x += y; }
  friend QuadIrr operator-(QuadIrr x, const QuadIrr& y) { return x -= y; }
  friend QuadIrr operator+(QuadIrr x, const Rational& y) { return x += y; }
  friend QuadIrr operator-(QuadIrr x, const Rational& y) { return x -= y; }
  friend QuadIrr operator*(const QuadIrr& x, const QuadIrr& y);
  friend QuadIrr operator*(const QuadIrr& x, const Rational& y);

  QuadIrr pow(unsigned k) const;

  int sign() const;  // -1, 0, +1

  friend bool operator==(const QuadIrr& x, const QuadIrr& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator<(const QuadIrr& x, const QuadIrr& y) { return (x - y).sign() < 0; }
  friend bool operator<=(const QuadIrr& x, const QuadIrr& y) { return (x - y).sign() <= 0; }
  friend bool operator>(const QuadIrr& x, const QuadIrr& y) { return (x - y).sign() > 0; }
  friend bool operator>=(const QuadIrr& x, const QuadIrr& y) { return (x - y).sign() >= 0; }

  double to_double() const;

 private:
  Rational a_;
  Rational b_;
};

// F_0 = 0, F_1 = 1, F_{k+2} = F_k + F_{k+1}. Valid for 0 <= k <= 91.
long long fib(int k);

enum class PhiOrdering { less, greater };

// Exact sign of numer/denom - phi, via the sign of N^2 - N*D - D^2.
// Never "equal": phi is irrational. denom must be positive.
PhiOrdering compare_phi(const BigInt& numer, const BigInt& denom);

}  // namespace patrol

#endif
