#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "lcg/rational.hpp"

namespace lcg {

// Point (k, b) of Q_p x| Z with law (k, b)(k', b') = (k + k', b + p^k b').
// b is a rational whose denominator is a power of p.
struct PAdicPoint {
  int k = 0;
  Rational b;

  friend bool operator==(const PAdicPoint&, const PAdicPoint&) = default;
  friend std::strong_ordering operator<=>(const PAdicPoint& x, const PAdicPoint& y) {
    if (auto c = x.k <=> y.k; c != 0) return c;
    return x.b <=> y.b;
  }
};

// {(k, b) : v_p(b - center) >= depth}: the coset center + p^depth Z_p in slab k.
// The center is the canonical representative of the coset.
struct Ball {
  int k = 0;
  Rational center;
  int depth = 0;

  friend bool operator==(const Ball&, const Ball&) = default;
  friend std::strong_ordering operator<=>(const Ball& x, const Ball& y) {
    if (auto c = x.k <=> y.k; c != 0) return c;
    if (auto c = x.depth <=> y.depth; c != 0) return c;
    return x.center <=> y.center;
  }
};

// Finite union of pairwise disjoint balls in canonical form: no ball contains
// another and no p siblings remain unmerged (while the parent depth stays
// inside the window). Sorted by (k, depth, center).
struct BallSet {
  std::vector<Ball> balls;

  bool empty() const { return balls.empty(); }
  friend bool operator==(const BallSet&, const BallSet&) = default;
};

// Window-bounded model of the p-adic affine group. Left Haar measure has
// density p^k on slab k (relative to additive Haar measure with Z_p of mass 1),
// right Haar measure is additive Haar measure on every slab, and the modular
// function is (k, b) -> p^k.
class PAdicAffine {
 public:
  PAdicAffine(std::int64_t p, int k_min, int k_max, int d_min, int d_max);

  std::int64_t p() const { return p_; }
  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }
  int d_min() const { return d_min_; }
  int d_max() const { return d_max_; }
  // Largest e allowed in a point coordinate m / p^e.
  int point_precision() const { return precision_; }

  PAdicPoint identity() const { return {0, Rational(0)}; }
  PAdicPoint make_point(int k, const Rational& b) const;
  PAdicPoint mul(const PAdicPoint& x, const PAdicPoint& y) const;
  PAdicPoint inv(const PAdicPoint& x) const;
  Rational modular(const PAdicPoint& x) const { return power(x.k); }
  Rational power(int e) const { return Rational::pow(Rational(p_), e); }

  Rational canonical_center(const Rational& c, int depth) const;
  Ball make_ball(int k, const Rational& center, int depth) const;
  std::vector<Ball> children(const Ball& b) const;

  bool contains(const Ball& outer, const Ball& inner) const;
  bool contains(const Ball& ball, const PAdicPoint& x) const;
  bool contains(const BallSet& s, const PAdicPoint& x) const;

  BallSet canonicalize(std::vector<Ball> balls) const;
  BallSet unite(const BallSet& a, const BallSet& b) const;
  BallSet intersect(const BallSet& a, const BallSet& b) const;
  BallSet subtract(const BallSet& a, const BallSet& b) const;
  bool subset(const BallSet& a, const BallSet& b) const;

  Rational left_measure(const Ball& b) const { return power(b.k - b.depth); }
  Rational right_measure(const Ball& b) const { return power(-b.depth); }
  Rational left_measure(const BallSet& s) const;
  Rational right_measure(const BallSet& s) const;

  Ball product(const Ball& x, const Ball& y) const;
  Ball left_translate(const PAdicPoint& g, const Ball& b) const;
  Ball right_translate(const Ball& b, const PAdicPoint& g) const;
  Ball inverse(const Ball& b) const;

  BallSet product(const BallSet& s, const BallSet& t) const;
  BallSet left_translate(const PAdicPoint& g, const BallSet& s) const;
  BallSet right_translate(const BallSet& s, const PAdicPoint& g) const;
  BallSet inverse(const BallSet& s) const;

  // Splits every ball into its sub-balls of the given depth (>= each ball's depth).
  std::vector<Ball> refine(const BallSet& s, int depth) const;

  std::string describe(const Ball& b) const;

 private:
  void check_point(const PAdicPoint& x) const;
  std::vector<Ball> subtract_ball(const Ball& a, const Ball& b) const;

  std::int64_t p_;
  int k_min_, k_max_, d_min_, d_max_;
  int precision_;
};

}  // namespace lcg
