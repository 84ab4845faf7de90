#include "nlswap/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <vector>

namespace nlswap {

namespace {

std::string rational_text(const mpq_class& q) { return q.get_str(10); }

// Sign of a + b*sqrt(2) from the signs of a, b and of a^2 - 2b^2.
int sign_of(const mpq_class& a, const mpq_class& b) {
  const int sa = sgn(a);
  const int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  const mpq_class diff = a * a - 2 * b * b;
  // a dominates when a^2 > 2 b^2.
  return sgn(diff) * sa;
}

}  // namespace

Scalar::Scalar(mpq_class rat, mpq_class surd) : rat_(std::move(rat)), surd_(std::move(surd)) {
  rat_.canonicalize();
  surd_.canonicalize();
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw DivisionByZero();
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q, 0);
}

Scalar Scalar::inv_sqrt2() { return Scalar(0, mpq_class(1, 2)); }

Scalar Scalar::pow2(int exponent) {
  mpz_class p = 1;
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  if (exponent >= 0) return Scalar(mpq_class(p), 0);
  mpq_class q(mpz_class(1), p);
  return Scalar(q, 0);
}

int Scalar::sign() const { return sign_of(rat_, surd_); }

mpq_class Scalar::norm() const { return rat_ * rat_ - 2 * surd_ * surd_; }

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (is_rational()) return Scalar(mpq_class(1) / rat_, 0);
  // (a + b√2)^-1 = (a - b√2) / (a^2 - 2b^2)
  const mpq_class n = norm();
  return Scalar(rat_ / n, -surd_ / n);
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (sgn(rhs.rat_) != 0) rat_ += rhs.rat_;
  if (sgn(rhs.surd_) != 0) surd_ += rhs.surd_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (sgn(rhs.rat_) != 0) rat_ -= rhs.rat_;
  if (sgn(rhs.surd_) != 0) surd_ -= rhs.surd_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (is_rational() && rhs.is_rational()) {
    rat_ *= rhs.rat_;
    return *this;
  }
  mpq_class r = rat_ * rhs.rat_ + 2 * surd_ * rhs.surd_;
  mpq_class s = rat_ * rhs.surd_ + surd_ * rhs.rat_;
  rat_ = std::move(r);
  surd_ = std::move(s);
  return *this;
}

Scalar& Scalar::add_product(const Scalar& a, const Scalar& b) {
  thread_local mpq_class scratch;
  const bool a_rat = sgn(a.surd_) == 0;
  const bool b_rat = sgn(b.surd_) == 0;
  if (sgn(a.rat_) != 0 && sgn(b.rat_) != 0) {
    mpq_mul(scratch.get_mpq_t(), a.rat_.get_mpq_t(), b.rat_.get_mpq_t());
    rat_ += scratch;
  }
  if (!a_rat && !b_rat) {
    mpq_mul(scratch.get_mpq_t(), a.surd_.get_mpq_t(), b.surd_.get_mpq_t());
    rat_ += scratch;
    rat_ += scratch;
  }
  if (!b_rat && sgn(a.rat_) != 0) {
    mpq_mul(scratch.get_mpq_t(), a.rat_.get_mpq_t(), b.surd_.get_mpq_t());
    surd_ += scratch;
  }
  if (!a_rat && sgn(b.rat_) != 0) {
    mpq_mul(scratch.get_mpq_t(), a.surd_.get_mpq_t(), b.rat_.get_mpq_t());
    surd_ += scratch;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_zero()) throw DivisionByZero();
  if (rhs.is_rational()) {
    rat_ /= rhs.rat_;
    surd_ /= rhs.rat_;
    return *this;
  }
  return *this *= rhs.inverse();
}

std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
  const int s = sign_of(lhs.rat_ - rhs.rat_, lhs.surd_ - rhs.surd_);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Scalar::to_string() const {
  const bool has_rat = sgn(rat_) != 0;
  const bool has_surd = sgn(surd_) != 0;
  if (!has_rat && !has_surd) return "0";
  std::string out;
  if (has_rat) out = rational_text(rat_);
  if (has_surd) {
    mpq_class mag = ::abs(surd_);
    std::string term = (mag == 1) ? std::string("√2")
                       : mag.get_den() == 1 ? rational_text(mag) + "√2"
                                            : "(" + rational_text(mag) + ")√2";
    if (has_rat) {
      out += sgn(surd_) < 0 ? " - " : " + ";
      out += term;
    } else {
      out = (sgn(surd_) < 0 ? "-" : "") + term;
    }
  }
  return out;
}

std::string Scalar::to_decimal(int digits) const {
  constexpr mp_bitcnt_t kPrecision = 256;
  mpf_class r(rat_, kPrecision);
  mpf_class s(surd_, kPrecision);
  mpf_class root(2, kPrecision);
  root = sqrt(root);
  mpf_class value(r + s * root, kPrecision);
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, value.get_mpf_t());
  return std::string(buf.data());
}

double Scalar::approx() const {
  static const double kRoot2 = 1.41421356237309504880;
  return rat_.get_d() + surd_.get_d() * kRoot2;
}

std::ostream& operator<<(std::ostream& os, const Scalar& value) { return os << value.to_string(); }

namespace {

std::string strip(std::string text) {
  text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }),
             text.end());
  return text;
}

mpq_class parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: '" + text + "'");
  if (q.get_den() == 0) throw DivisionByZero();
  q.canonicalize();
  return q;
}

// One signed term: "3/4", "√2", "(3/4)√2", "3/4√2", "1/√2".
Scalar parse_term(std::string term) {
  static const std::string kRoot = "√2";
  static const std::string kSqrt = "sqrt2";
  bool negative = false;
  if (!term.empty() && (term[0] == '-' || term[0] == '+')) {
    negative = term[0] == '-';
    term.erase(0, 1);
  }
  Scalar value;
  auto ends_with = [&](const std::string& suffix) {
    return term.size() >= suffix.size() && term.compare(term.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  std::string root;
  if (ends_with(kRoot)) root = kRoot;
  else if (ends_with(kSqrt)) root = kSqrt;
  if (root.empty()) {
    value = Scalar(parse_rational(term), 0);
  } else {
    std::string coeff = term.substr(0, term.size() - root.size());
    if (coeff.size() >= 2 && coeff.front() == '(' && coeff.back() == ')') coeff = coeff.substr(1, coeff.size() - 2);
    if (!coeff.empty() && coeff.back() == '/') {
      // "p/√2" = p/2 √2
      coeff.pop_back();
      value = Scalar(0, parse_rational(coeff.empty() ? "1" : coeff) / 2);
    } else {
      if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
      value = Scalar(0, coeff.empty() ? mpq_class(1) : parse_rational(coeff));
    }
  }
  return negative ? -value : value;
}

}  // namespace

Scalar parse_scalar(const std::string& text) {
  const std::string compact = strip(text);
  if (compact.empty()) throw std::invalid_argument("empty scalar");
  Scalar total;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= compact.size(); ++i) {
    if (i == compact.size() || compact[i] == '+' || compact[i] == '-') {
      // a sign right after '/' or '*' belongs to the coefficient
      if (i < compact.size() && (compact[i - 1] == '/' || compact[i - 1] == '*')) continue;
      total += parse_term(compact.substr(start, i - start));
      start = i;
    }
  }
  return total;
}

}  // namespace nlswap
