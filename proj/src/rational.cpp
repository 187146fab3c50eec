#include "lcg/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "lcg/errors.hpp"

namespace lcg {
namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InputError("malformed integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t n) : num_(n), den_(1) {}

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw InputError("rational with zero denominator");
  *this = from_wide(n, d);
}

Rational Rational::from_wide(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kMax || n < -kMax || d > kMax) {
    throw ArithmeticOverflow("rational arithmetic overflow");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  if (r.num_ == 0) r.den_ = 1;
  return r;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    return *this = from_wide(static_cast<__int128>(num_) + o.num_, den_);
  }
  __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  return *this = from_wide(n, d);
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  // Cross-reduce first so that products of powers stay in range.
  __int128 g1 = gcd128(num_, o.den_);
  __int128 g2 = gcd128(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  __int128 n = (num_ / g1) * (o.num_ / g2);
  __int128 d = (den_ / g2) * (o.den_ / g1);
  return *this = from_wide(n, d);
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.inverse(); }

Rational Rational::inverse() const {
  if (num_ == 0) throw ModelError("division by zero rational");
  return from_wide(den_, num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Rational::pow(const Rational& base, int e) {
  Rational b = e < 0 ? base.inverse() : base;
  unsigned k = e < 0 ? static_cast<unsigned>(-e) : static_cast<unsigned>(e);
  Rational r(1);
  while (k != 0) {
    if (k & 1u) r *= b;
    k >>= 1;
    if (k != 0) b *= b;
  }
  return r;
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t n = parse_int(text.substr(0, slash));
  auto den = text.substr(slash + 1);
  auto caret = den.find('^');
  if (caret == std::string_view::npos) return Rational(n, parse_int(den));
  std::int64_t p = parse_int(den.substr(0, caret));
  std::int64_t e = parse_int(den.substr(caret + 1));
  if (p == 0 || e < -62 || e > 62) throw InputError("malformed power '" + std::string(den) + "'");
  return Rational(n) / pow(Rational(p), static_cast<int>(e));
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw ModelError("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& r, std::int64_t p) {
  return valuation(r.num(), p) - valuation(r.den(), p);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace lcg
