#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace nlswap {

/// Raised on division by an exact zero.
class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in Q(sqrt2)") {}
};

/// Exact element `r + s*sqrt(2)` of the real quadratic field Q(sqrt2).
///
/// Both components are GMP rationals kept in lowest terms with positive
/// denominators, so the representation is canonical: two Scalars compare
/// equal iff their components do. Ordering is the ordering of the real value
/// and is decided without floating point.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : rat_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class rat, mpq_class surd);

  static Scalar rational(long num, long den);
  static Scalar sqrt2() { return Scalar(0, 1); }
  /// sqrt(2)/2, i.e. 1/sqrt(2).
  static Scalar inv_sqrt2();
  static Scalar pow2(int exponent);

  const mpq_class& rational_part() const { return rat_; }
  const mpq_class& surd_part() const { return surd_; }

  bool is_zero() const { return sgn(rat_) == 0 && sgn(surd_) == 0; }
  bool is_rational() const { return sgn(surd_) == 0; }
  /// Exact sign of the real value: -1, 0 or +1.
  int sign() const;

  /// Algebraic conjugate r - s*sqrt(2).
  Scalar conjugate() const { return Scalar(rat_, -surd_); }
  /// Field norm r^2 - 2 s^2 (nonzero for every nonzero element).
  mpq_class norm() const;
  Scalar inverse() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  /// *this += a * b without temporaries.
  Scalar& add_product(const Scalar& a, const Scalar& b);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  Scalar operator-() const { return Scalar(-rat_, -surd_); }

  friend bool operator==(const Scalar& lhs, const Scalar& rhs) {
    return lhs.rat_ == rhs.rat_ && lhs.surd_ == rhs.surd_;
  }
  friend std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

  /// Human-readable exact form, e.g. "1/3", "√2", "1/2 + (1/4)√2".
  std::string to_string() const;
  /// Display-only decimal approximation with `digits` significant digits.
  std::string to_decimal(int digits = 12) const;
  /// Display-only double approximation; never used for decisions.
  double approx() const;

 private:
  mpq_class rat_{0};
  mpq_class surd_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& value);

/// Parses the exact forms produced by Scalar::to_string as well as plain
/// rationals ("3/4", "-2") and the shorthand "1/√2" / "1/sqrt2".
Scalar parse_scalar(const std::string& text);

}  // namespace nlswap
