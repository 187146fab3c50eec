#pragma once

#include <initializer_list>
#include <vector>

#include "lcg/group.hpp"
#include "oracles.hpp"

namespace testing_util {

inline lcg::GroupModel cyclic(std::uint32_t n) { return lcg::GroupModel::finite(lcg::FiniteGroup::cyclic(n)); }

inline lcg::GroupSet fset(const lcg::GroupModel& G, std::initializer_list<std::uint32_t> xs) {
  return lcg::ElementSet(G.finite().order(), xs);
}

inline lcg::GroupModel padic3() { return lcg::GroupModel::padic(lcg::PAdicAffine(3, -4, 4, -4, 4)); }

inline lcg::GroupSet balls(const lcg::GroupModel& G, std::vector<lcg::Ball> bs) {
  std::vector<lcg::Ball> canon;
  for (const auto& b : bs) canon.push_back(G.padic().make_ball(b.k, b.center, b.depth));
  return G.padic().canonicalize(canon);
}

inline lcg::Ball ball(int k, lcg::Rational center, int depth) { return lcg::Ball{k, center, depth}; }

inline oracle::Table table_of(const lcg::FiniteGroup& F) {
  oracle::Table t(F.order(), std::vector<std::uint32_t>(F.order()));
  for (std::uint32_t a = 0; a < F.order(); ++a)
    for (std::uint32_t b = 0; b < F.order(); ++b) t[a][b] = F.mul(a, b);
  return t;
}

inline oracle::Mask mask_of(const lcg::ElementSet& s) {
  oracle::Mask m(s.universe());
  s.for_each([&](std::uint32_t x) { m[x] = true; });
  return m;
}

inline lcg::ElementSet set_of(const oracle::Mask& m) {
  lcg::ElementSet s(static_cast<std::uint32_t>(m.size()));
  for (std::uint32_t i = 0; i < m.size(); ++i)
    if (m[i]) s.insert(i);
  return s;
}

inline lcg::Rational q(std::int64_t n, std::int64_t d = 1) { return lcg::Rational(n, d); }

}  // namespace testing_util
