#pragma once

#include <string>
#include <variant>

#include "lcg/interval.hpp"
#include "lcg/rational.hpp"

namespace lcg {

// Outcome of comparing values that may be bracketed.
enum class Truth { no, yes, unknown };

// A measure value: exact nonnegative rational, a real bracket [lo, hi], or +inf.
// Arithmetic stays exact while both operands are exact and degrades to
// interval arithmetic otherwise.
class HaarValue {
 public:
  struct Infinite {
    friend bool operator==(Infinite, Infinite) { return true; }
  };

  HaarValue() : v_(Rational(0)) {}
  HaarValue(Rational r) : v_(r) {}  // NOLINT(google-explicit-constructor)
  HaarValue(std::int64_t n) : v_(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  HaarValue(int n) : v_(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  HaarValue(Interval i) : v_(i) {}  // NOLINT(google-explicit-constructor)

  static HaarValue infinity() {
    HaarValue h;
    h.v_ = Infinite{};
    return h;
  }

  bool is_exact() const { return std::holds_alternative<Rational>(v_); }
  bool is_interval() const { return std::holds_alternative<Interval>(v_); }
  bool is_infinite() const { return std::holds_alternative<Infinite>(v_); }

  const Rational& exact() const;
  // Enclosing interval (degenerate for exactly representable rationals).
  Interval bounds() const;
  double lower() const { return bounds().lo; }
  double upper() const { return bounds().hi; }

  friend HaarValue operator+(const HaarValue& a, const HaarValue& b);
  friend HaarValue operator-(const HaarValue& a, const HaarValue& b);
  friend HaarValue operator*(const HaarValue& a, const HaarValue& b);
  friend HaarValue operator/(const HaarValue& a, const HaarValue& b);

  friend bool operator==(const HaarValue& a, const HaarValue& b) { return a.v_ == b.v_; }

  std::string str() const;

 private:
  std::variant<Rational, Interval, Infinite> v_;
};

HaarValue min(const HaarValue& a, const HaarValue& b);
HaarValue max(const HaarValue& a, const HaarValue& b);

// a <= b, decided exactly when possible.
Truth less_equal(const HaarValue& a, const HaarValue& b);
Truth less(const HaarValue& a, const HaarValue& b);

Interval to_interval(const Rational& r);

}  // namespace lcg
