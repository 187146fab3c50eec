#include "lcg/padic.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>

#include "lcg/errors.hpp"

namespace lcg {
namespace {

// Exponent e with den = p^e; throws if den is not a power of p.
int denominator_exponent(const Rational& r, std::int64_t p) {
  std::int64_t d = r.den();
  int e = 0;
  while (d % p == 0) {
    d /= p;
    ++e;
  }
  if (d != 1) throw InputError("coordinate " + r.str() + " is not of the form m/p^e for p=" + std::to_string(p));
  return e;
}

std::int64_t checked_pow(std::int64_t p, int e) {
  __int128 r = 1;
  for (int i = 0; i < e; ++i) {
    r *= p;
    if (r > static_cast<__int128>(INT64_MAX)) throw ArithmeticOverflow("p-adic digit window exceeds 64 bits");
  }
  return static_cast<std::int64_t>(r);
}

constexpr std::size_t kMaxRefinedAtoms = 1u << 20;

}  // namespace

PAdicAffine::PAdicAffine(std::int64_t p, int k_min, int k_max, int d_min, int d_max)
    : p_(p), k_min_(k_min), k_max_(k_max), d_min_(d_min), d_max_(d_max) {
  if (!is_prime(p)) throw InputError("p=" + std::to_string(p) + " is not prime");
  if (k_min > k_max) throw InputError("empty scale window");
  if (d_min > d_max) throw InputError("empty depth window");
  if (std::abs(k_min) > 60 || std::abs(k_max) > 60 || std::abs(d_min) > 60 || std::abs(d_max) > 60) {
    throw InputError("p-adic windows are limited to |value| <= 60");
  }
  precision_ = std::max(0, -d_min) + std::max(std::abs(k_min), std::abs(k_max));
}

void PAdicAffine::check_point(const PAdicPoint& x) const {
  if (x.k < k_min_ || x.k > k_max_) {
    throw WindowError("scale k=" + std::to_string(x.k) + " outside window [" + std::to_string(k_min_) + "," +
                      std::to_string(k_max_) + "]");
  }
  int e = denominator_exponent(x.b, p_);
  if (e > precision_) {
    throw WindowError("coordinate b=" + x.b.str() + " exceeds digit window (p^-" + std::to_string(precision_) + ")");
  }
}

PAdicPoint PAdicAffine::make_point(int k, const Rational& b) const {
  PAdicPoint x{k, b};
  check_point(x);
  return x;
}

PAdicPoint PAdicAffine::mul(const PAdicPoint& x, const PAdicPoint& y) const {
  PAdicPoint r{x.k + y.k, x.b + power(x.k) * y.b};
  check_point(r);
  return r;
}

PAdicPoint PAdicAffine::inv(const PAdicPoint& x) const {
  PAdicPoint r{-x.k, -(power(-x.k) * x.b)};
  check_point(r);
  return r;
}

Rational PAdicAffine::canonical_center(const Rational& c, int depth) const {
  if (c.is_zero()) return Rational(0);
  if (valuation(c, p_) >= depth) return Rational(0);
  const int e = denominator_exponent(c, p_);
  // c * p^e is an integer m; the coset is (m mod p^(depth+e)) / p^e.
  const std::int64_t m = (c * Rational::pow(Rational(p_), e)).num();
  const std::int64_t modulus = checked_pow(p_, depth + e);
  std::int64_t r = m % modulus;
  if (r < 0) r += modulus;
  return Rational(r) / Rational::pow(Rational(p_), e);
}

Ball PAdicAffine::make_ball(int k, const Rational& center, int depth) const {
  if (k < k_min_ || k > k_max_) {
    throw WindowError("ball scale k=" + std::to_string(k) + " outside window [" + std::to_string(k_min_) + "," +
                      std::to_string(k_max_) + "]");
  }
  if (depth < d_min_ || depth > d_max_) {
    throw WindowError("ball depth d=" + std::to_string(depth) + " outside window [" + std::to_string(d_min_) + "," +
                      std::to_string(d_max_) + "]");
  }
  denominator_exponent(center, p_);
  return Ball{k, canonical_center(center, depth), depth};
}

std::vector<Ball> PAdicAffine::children(const Ball& b) const {
  std::vector<Ball> out;
  out.reserve(static_cast<std::size_t>(p_));
  const Rational step = power(b.depth);
  for (std::int64_t j = 0; j < p_; ++j) out.push_back(make_ball(b.k, b.center + Rational(j) * step, b.depth + 1));
  return out;
}

bool PAdicAffine::contains(const Ball& outer, const Ball& inner) const {
  if (outer.k != inner.k || outer.depth > inner.depth) return false;
  const Rational diff = inner.center - outer.center;
  return diff.is_zero() || valuation(diff, p_) >= outer.depth;
}

bool PAdicAffine::contains(const Ball& ball, const PAdicPoint& x) const {
  if (ball.k != x.k) return false;
  const Rational diff = x.b - ball.center;
  return diff.is_zero() || valuation(diff, p_) >= ball.depth;
}

bool PAdicAffine::contains(const BallSet& s, const PAdicPoint& x) const {
  return std::any_of(s.balls.begin(), s.balls.end(), [&](const Ball& b) { return contains(b, x); });
}

BallSet PAdicAffine::canonicalize(std::vector<Ball> balls) const {
  std::sort(balls.begin(), balls.end(), [](const Ball& a, const Ball& b) {
    return std::tie(a.depth, a.k, a.center) < std::tie(b.depth, b.k, b.center);
  });
  std::vector<Ball> kept;
  for (const auto& b : balls) {
    bool covered = std::any_of(kept.begin(), kept.end(), [&](const Ball& o) { return contains(o, b); });
    if (!covered) kept.push_back(b);
  }
  bool merged = true;
  while (merged) {
    merged = false;
    std::map<std::tuple<int, int, Rational>, std::vector<std::size_t>> families;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const Ball& b = kept[i];
      if (b.depth - 1 < d_min_) continue;
      families[{b.k, b.depth, canonical_center(b.center, b.depth - 1)}].push_back(i);
    }
    std::vector<bool> drop(kept.size(), false);
    std::vector<Ball> parents;
    for (const auto& [key, members] : families) {
      if (static_cast<std::int64_t>(members.size()) == p_) {
        for (auto i : members) drop[i] = true;
        parents.push_back(Ball{std::get<0>(key), std::get<2>(key), std::get<1>(key) - 1});
        merged = true;
      }
    }
    if (merged) {
      std::vector<Ball> next;
      for (std::size_t i = 0; i < kept.size(); ++i) {
        if (!drop[i]) next.push_back(kept[i]);
      }
      next.insert(next.end(), parents.begin(), parents.end());
      kept = std::move(next);
    }
  }
  std::sort(kept.begin(), kept.end());
  return BallSet{std::move(kept)};
}

BallSet PAdicAffine::unite(const BallSet& a, const BallSet& b) const {
  std::vector<Ball> all = a.balls;
  all.insert(all.end(), b.balls.begin(), b.balls.end());
  return canonicalize(std::move(all));
}

BallSet PAdicAffine::intersect(const BallSet& a, const BallSet& b) const {
  std::vector<Ball> out;
  for (const auto& x : a.balls) {
    for (const auto& y : b.balls) {
      if (contains(x, y)) {
        out.push_back(y);
      } else if (contains(y, x)) {
        out.push_back(x);
      }
    }
  }
  return canonicalize(std::move(out));
}

std::vector<Ball> PAdicAffine::subtract_ball(const Ball& a, const Ball& b) const {
  if (contains(b, a)) return {};
  if (!contains(a, b)) return {a};
  std::vector<Ball> out;
  for (const auto& child : children(a)) {
    auto part = subtract_ball(child, b);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

BallSet PAdicAffine::subtract(const BallSet& a, const BallSet& b) const {
  std::vector<Ball> out;
  for (const auto& x : a.balls) {
    std::vector<Ball> pieces{x};
    for (const auto& y : b.balls) {
      std::vector<Ball> next;
      for (const auto& piece : pieces) {
        auto part = subtract_ball(piece, y);
        next.insert(next.end(), part.begin(), part.end());
      }
      pieces = std::move(next);
      if (pieces.empty()) break;
    }
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return canonicalize(std::move(out));
}

bool PAdicAffine::subset(const BallSet& a, const BallSet& b) const { return subtract(a, b).empty(); }

Rational PAdicAffine::left_measure(const BallSet& s) const {
  Rational total(0);
  for (const auto& b : s.balls) total += left_measure(b);
  return total;
}

Rational PAdicAffine::right_measure(const BallSet& s) const {
  Rational total(0);
  for (const auto& b : s.balls) total += right_measure(b);
  return total;
}

// (k, c + p^d Z_p)(k', c' + p^d' Z_p) = (k + k', c + p^k c' + p^min(d, d'+k) Z_p)
Ball PAdicAffine::product(const Ball& x, const Ball& y) const {
  return make_ball(x.k + y.k, x.center + power(x.k) * y.center, std::min(x.depth, y.depth + x.k));
}

Ball PAdicAffine::left_translate(const PAdicPoint& g, const Ball& b) const {
  return make_ball(g.k + b.k, g.b + power(g.k) * b.center, b.depth + g.k);
}

Ball PAdicAffine::right_translate(const Ball& b, const PAdicPoint& g) const {
  return make_ball(b.k + g.k, b.center + power(b.k) * g.b, b.depth);
}

Ball PAdicAffine::inverse(const Ball& b) const {
  return make_ball(-b.k, -(power(-b.k) * b.center), b.depth - b.k);
}

BallSet PAdicAffine::product(const BallSet& s, const BallSet& t) const {
  std::vector<Ball> out;
  out.reserve(s.balls.size() * t.balls.size());
  for (const auto& x : s.balls) {
    for (const auto& y : t.balls) out.push_back(product(x, y));
  }
  return canonicalize(std::move(out));
}

BallSet PAdicAffine::left_translate(const PAdicPoint& g, const BallSet& s) const {
  std::vector<Ball> out;
  for (const auto& b : s.balls) out.push_back(left_translate(g, b));
  return canonicalize(std::move(out));
}

BallSet PAdicAffine::right_translate(const BallSet& s, const PAdicPoint& g) const {
  std::vector<Ball> out;
  for (const auto& b : s.balls) out.push_back(right_translate(b, g));
  return canonicalize(std::move(out));
}

BallSet PAdicAffine::inverse(const BallSet& s) const {
  std::vector<Ball> out;
  for (const auto& b : s.balls) out.push_back(inverse(b));
  return canonicalize(std::move(out));
}

std::vector<Ball> PAdicAffine::refine(const BallSet& s, int depth) const {
  std::vector<Ball> out;
  for (const auto& b : s.balls) {
    if (b.depth > depth) throw ModelError("cannot refine a ball to a coarser depth");
    std::vector<Ball> level{b};
    for (int d = b.depth; d < depth; ++d) {
      std::vector<Ball> next;
      for (const auto& x : level) {
        auto kids = children(x);
        next.insert(next.end(), kids.begin(), kids.end());
      }
      level = std::move(next);
      if (level.size() + out.size() > kMaxRefinedAtoms) throw ModelError("refinement produces too many atoms");
    }
    out.insert(out.end(), level.begin(), level.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string PAdicAffine::describe(const Ball& b) const {
  return "(k=" + std::to_string(b.k) + ", " + b.center.str() + " + " + std::to_string(p_) + "^" +
         std::to_string(b.depth) + "Z_" + std::to_string(p_) + ")";
}

}  // namespace lcg
