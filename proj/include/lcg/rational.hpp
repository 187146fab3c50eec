#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace lcg {

// Exact rational with 64-bit numerator and positive 64-bit denominator,
// always stored in lowest terms. Intermediate products use 128-bit integers;
// results that do not fit throw ArithmeticOverflow.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational inverse() const;
  Rational abs() const { return num_ < 0 ? -*this : *this; }

  // base^e for any integer e (base must be nonzero when e < 0).
  static Rational pow(const Rational& base, int e);

  // Accepts "n", "n/d" and "n/p^e".
  static Rational parse(std::string_view text);

  // Always "num/den", including integers ("3/1").
  std::string str() const;
  double to_double() const;

 private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Exponent of the prime p in a nonzero integer.
int valuation(std::int64_t n, std::int64_t p);
// Exponent of p in a nonzero rational (may be negative).
int valuation(const Rational& r, std::int64_t p);

bool is_prime(std::int64_t n);

}  // namespace lcg
