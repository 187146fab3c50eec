#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "lcg/subgroups.hpp"

using namespace lcg;
using namespace testing_util;

namespace {

std::vector<std::size_t> orders(const std::vector<SubgroupWitness>& ws) {
  std::vector<std::size_t> out;
  for (const auto& w : ws) out.push_back(static_cast<std::size_t>(w.mu.exact().num()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("finite subgroup enumeration examples") {
  CHECK(orders(enumerate_subgroups(cyclic(6))) == std::vector<std::size_t>{1, 2, 3, 6});
  CHECK(orders(enumerate_subgroups(GroupModel::finite(FiniteGroup::symmetric(3)))) ==
        std::vector<std::size_t>{1, 2, 2, 2, 3, 6});
  CHECK(orders(enumerate_subgroups(cyclic(1))) == std::vector<std::size_t>{1});
  CHECK(enumerate_subgroups(GroupModel::finite(FiniteGroup::quaternion())).size() == 6);
  CHECK(enumerate_subgroups(GroupModel::finite(FiniteGroup::alternating(4))).size() == 10);
  CHECK(enumerate_subgroups(GroupModel::finite(FiniteGroup::symmetric(4))).size() == 30);
}

TEST_CASE("subgroup lattice matches the brute-force subset oracle") {
  for (const auto& G : builtin_groups(16)) {
    auto t = table_of(G.finite());
    auto brute = oracle::subgroups(t);
    auto got = enumerate_subgroups(G);
    REQUIRE(got.size() == brute.size());
    std::vector<oracle::Mask> got_masks;
    for (const auto& w : got) {
      CHECK(G.finite().is_subgroup(w.carrier.elements()));
      CHECK(w.is_proper == (w.carrier.elements().size() < G.finite().order()));
      got_masks.push_back(mask_of(w.carrier.elements()));
    }
    for (const auto& b : brute) CHECK(std::find(got_masks.begin(), got_masks.end(), b) != got_masks.end());
  }
}

TEST_CASE("p-adic kernel subgroups") {
  auto G = GroupModel::padic(PAdicAffine(3, -2, 2, -2, 2));
  std::vector<Rational> mus;
  for (const auto& w : kernel_subgroups(G)) mus.push_back(w.mu.exact());
  CHECK(mus == std::vector<Rational>{q(9), q(3), q(1), q(1, 3), q(1, 9)});

  auto G2 = GroupModel::padic(PAdicAffine(2, -1, 1, 0, 1));
  mus.clear();
  for (const auto& w : kernel_subgroups(G2)) mus.push_back(w.mu.exact());
  CHECK(mus == std::vector<Rational>{q(1), q(1, 2)});

  auto nul = null_subgroup(G);
  CHECK(nul.null);
  CHECK(nul.mu.exact() == q(0));
}

TEST_CASE("constrained subgroup supremum") {
  auto z6 = cyclic(6);
  auto r = constrained_subgroup_sup(z6, fset(z6, {0, 3}), q(1), q(1));
  CHECK(r.value.exact() == q(2));
  REQUIRE(r.witness);
  CHECK(equal(z6, r.witness->carrier, fset(z6, {0, 3})));

  auto z7 = cyclic(7);
  r = constrained_subgroup_sup(z7, fset(z7, {0, 1, 2, 3, 4, 5}), q(1), q(1));
  CHECK(r.value.exact() == q(1));

  auto G = padic3();
  // mu(E) = 1 + 1/3 = 4/3, nu(E) = 2.
  auto E = balls(G, {ball(0, q(0), 0), ball(-1, q(0), 0)});
  CHECK(measure(G, E, Side::left).exact() == q(4, 3));
  CHECK(measure(G, E, Side::right).exact() == q(2));
  r = constrained_subgroup_sup(G, E, q(1), q(1));
  CHECK(r.value.exact() == q(1));
  REQUIRE(r.witness);
  CHECK(r.witness->carrier.balls().balls == std::vector<Ball>{ball(0, q(0), 0)});
}

TEST_CASE("subgroup supremum is monotone in E") {
  std::mt19937_64 rng(21);
  for (const auto& G : builtin_groups(12)) {
    const auto n = G.finite().order();
    for (int i = 0; i < 30; ++i) {
      auto e = ElementSet::from_word(n, rng() & ((std::uint64_t{1} << n) - 1));
      if (e.empty()) continue;
      auto bigger = e | ElementSet::from_word(n, rng() & ((std::uint64_t{1} << n) - 1));
      auto a = constrained_subgroup_sup(G, e, q(1), q(1)).value.exact();
      auto b = constrained_subgroup_sup(G, bigger, q(1), q(1)).value.exact();
      CHECK(a <= b);
    }
  }
}

TEST_CASE("prime cyclic groups only have the trivial proper subgroup") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    auto G = cyclic(p);
    auto r = constrained_subgroup_sup(G, ElementSet::full(p), q(1), q(1));
    CHECK(r.value.exact() == q(1));
  }
}
