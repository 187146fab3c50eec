#include "lcg/haar_value.hpp"

#include <cmath>
#include <limits>

#include "lcg/errors.hpp"

namespace lcg {

Interval to_interval(const Rational& r) {
  double d = r.to_double();
  // Exact when both parts fit in the mantissa and the quotient is dyadic-exact.
  if (r.den() == 1 && std::abs(r.num()) < (std::int64_t{1} << 53)) return Interval(d);
  return Interval(round_down(d), round_up(d));
}

const Rational& HaarValue::exact() const {
  if (!is_exact()) throw ModelError("value is not exact: " + str());
  return std::get<Rational>(v_);
}

Interval HaarValue::bounds() const {
  if (is_exact()) return to_interval(std::get<Rational>(v_));
  if (is_interval()) return std::get<Interval>(v_);
  double inf = std::numeric_limits<double>::infinity();
  return Interval(inf, inf);
}

HaarValue operator+(const HaarValue& a, const HaarValue& b) {
  if (a.is_infinite() || b.is_infinite()) return HaarValue::infinity();
  if (a.is_exact() && b.is_exact()) return a.exact() + b.exact();
  return a.bounds() + b.bounds();
}

HaarValue operator-(const HaarValue& a, const HaarValue& b) {
  if (a.is_infinite() && !b.is_infinite()) return HaarValue::infinity();
  if (a.is_infinite() || b.is_infinite()) throw ModelError("undefined difference with infinity");
  if (a.is_exact() && b.is_exact()) return a.exact() - b.exact();
  return a.bounds() - b.bounds();
}

HaarValue operator*(const HaarValue& a, const HaarValue& b) {
  if (a.is_infinite() || b.is_infinite()) {
    const HaarValue& other = a.is_infinite() ? b : a;
    if (other.is_exact() && other.exact().is_zero()) throw ModelError("0 * inf");
    return HaarValue::infinity();
  }
  if (a.is_exact() && b.is_exact()) return a.exact() * b.exact();
  return a.bounds() * b.bounds();
}

HaarValue operator/(const HaarValue& a, const HaarValue& b) {
  if (b.is_infinite()) {
    if (a.is_infinite()) throw ModelError("inf / inf");
    return Rational(0);
  }
  if (a.is_infinite()) return HaarValue::infinity();
  if (a.is_exact() && b.is_exact()) return a.exact() / b.exact();
  return a.bounds() / b.bounds();
}

std::string HaarValue::str() const {
  if (is_exact()) return exact().str();
  if (is_infinite()) return "inf";
  auto i = bounds();
  return "[" + format_real(i.lo) + ", " + format_real(i.hi) + "]";
}

Truth less_equal(const HaarValue& a, const HaarValue& b) {
  if (b.is_infinite()) return Truth::yes;
  if (a.is_infinite()) return Truth::no;
  if (a.is_exact() && b.is_exact()) return a.exact() <= b.exact() ? Truth::yes : Truth::no;
  auto x = a.bounds();
  auto y = b.bounds();
  if (x.hi <= y.lo) return Truth::yes;
  if (x.lo > y.hi) return Truth::no;
  return Truth::unknown;
}

Truth less(const HaarValue& a, const HaarValue& b) {
  if (a.is_infinite()) return Truth::no;
  if (b.is_infinite()) return Truth::yes;
  if (a.is_exact() && b.is_exact()) return a.exact() < b.exact() ? Truth::yes : Truth::no;
  auto x = a.bounds();
  auto y = b.bounds();
  if (x.hi < y.lo) return Truth::yes;
  if (x.lo >= y.hi) return Truth::no;
  return Truth::unknown;
}

HaarValue min(const HaarValue& a, const HaarValue& b) {
  if (a.is_infinite()) return b;
  if (b.is_infinite()) return a;
  if (a.is_exact() && b.is_exact()) return a.exact() <= b.exact() ? a : b;
  return min(a.bounds(), b.bounds());
}

HaarValue max(const HaarValue& a, const HaarValue& b) {
  if (a.is_infinite() || b.is_infinite()) return HaarValue::infinity();
  if (a.is_exact() && b.is_exact()) return a.exact() >= b.exact() ? a : b;
  auto x = a.bounds();
  auto y = b.bounds();
  return Interval(std::max(x.lo, y.lo), std::max(x.hi, y.hi));
}

}  // namespace lcg
