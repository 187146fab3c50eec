#pragma once

// Brute-force reference computations. They work on plain multiplication
// tables and std::vector<bool> masks, sharing no code with the library's
// bitset kernels, subgroup lattice or branch-and-bound.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace oracle {

using Table = std::vector<std::vector<std::uint32_t>>;
using Mask = std::vector<bool>;

inline Table cyclic_table(std::uint32_t n) {
  Table t(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

inline Mask from_bits(std::uint32_t n, std::uint64_t bits) {
  Mask m(n);
  for (std::uint32_t i = 0; i < n; ++i) m[i] = (bits >> i) & 1U;
  return m;
}

inline std::size_t count(const Mask& m) { return static_cast<std::size_t>(std::count(m.begin(), m.end(), true)); }

inline bool subset(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

inline Mask product(const Table& t, const Mask& x, const Mask& y) {
  const auto n = t.size();
  Mask out(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (!x[a]) continue;
    for (std::size_t b = 0; b < n; ++b)
      if (y[b]) out[t[a][b]] = true;
  }
  return out;
}

inline std::uint32_t identity(const Table& t) {
  for (std::uint32_t e = 0; e < t.size(); ++e) {
    bool ok = true;
    for (std::uint32_t a = 0; a < t.size() && ok; ++a) ok = t[e][a] == a && t[a][e] == a;
    if (ok) return e;
  }
  return 0;
}

// Closed under products; for finite sets this makes a nonempty set a subgroup.
inline bool is_subgroup(const Table& t, const Mask& s) {
  if (count(s) == 0) return false;
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (!s[a]) continue;
    for (std::size_t b = 0; b < t.size(); ++b)
      if (s[b] && !s[t[a][b]]) return false;
  }
  return true;
}

// Every subgroup, found by testing all 2^n subsets (n <= 20).
inline std::vector<Mask> subgroups(const Table& t) {
  const auto n = static_cast<std::uint32_t>(t.size());
  const std::uint32_t e = identity(t);
  std::vector<Mask> out;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    if (!((bits >> e) & 1U)) continue;
    auto m = from_bits(n, bits);
    if (is_subgroup(t, m)) out.push_back(m);
  }
  return out;
}

// Largest proper subgroup of size at most cap.
inline std::size_t subgroup_sup(const std::vector<Mask>& subs, std::size_t n, std::size_t cap) {
  std::size_t best = 0;
  for (const auto& h : subs) {
    auto c = count(h);
    if (c < n && c <= cap) best = std::max(best, c);
  }
  return best;
}

// mu(XY) - min{mu(X) + mu(Y) - s, mu(G)} with E = XY.
inline std::int64_t unimodular_slack(const Table& t, const std::vector<Mask>& subs, const Mask& x, const Mask& y) {
  const auto xy = product(t, x, y);
  const auto n = static_cast<std::int64_t>(t.size());
  const auto s = static_cast<std::int64_t>(subgroup_sup(subs, t.size(), count(xy)));
  const auto bound = std::min<std::int64_t>(static_cast<std::int64_t>(count(x) + count(y)) - s, n);
  return static_cast<std::int64_t>(count(xy)) - bound;
}

struct Kneser {
  std::size_t satisfying = 0;
  std::size_t largest = 0;  // size of the largest satisfying subgroup
  std::size_t stabilizer = 0;
};

inline Kneser kneser(const Table& t, const std::vector<Mask>& subs, const Mask& x, const Mask& y) {
  Kneser k;
  const auto xy = product(t, x, y);
  for (const auto& h : subs) {
    bool stable = product(t, xy, h) == xy;
    if (stable) k.stabilizer = std::max(k.stabilizer, count(h));
    bool big = count(xy) + count(h) >= count(x) + count(y);
    if (stable && big) {
      ++k.satisfying;
      k.largest = std::max(k.largest, count(h));
    }
  }
  return k;
}

// Maximum of the lexicographic objective (|X'| + |Y'|, |X'|) over all pairs
// X', Y' inside the finite set XY* with X'Y' inside XY*. Finite groups have
// Delta = 1, so every element lies in both allowed regions.
struct Maximum {
  std::size_t sum = 0;
  std::size_t x = 0;
};

inline Maximum finite_maximum(const Table& t, const Mask& xystar) {
  std::vector<std::uint32_t> atoms;
  for (std::uint32_t i = 0; i < xystar.size(); ++i)
    if (xystar[i]) atoms.push_back(i);
  const auto k = atoms.size();
  Maximum best;
  for (std::uint64_t xb = 1; xb < (std::uint64_t{1} << k); ++xb) {
    Mask xp(t.size());
    for (std::size_t i = 0; i < k; ++i)
      if ((xb >> i) & 1U) xp[atoms[i]] = true;
    // Largest Y' for this X': all y with X' y inside XY*.
    Mask yp(t.size());
    for (auto yv : atoms) {
      bool ok = true;
      for (std::size_t a = 0; a < t.size() && ok; ++a)
        if (xp[a] && !xystar[t[a][yv]]) ok = false;
      yp[yv] = ok;
    }
    if (count(yp) == 0) continue;
    Maximum m{count(xp) + count(yp), count(xp)};
    if (m.sum > best.sum || (m.sum == best.sum && m.x > best.x)) best = m;
  }
  return best;
}

}  // namespace oracle
