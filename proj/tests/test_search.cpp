#include <doctest.h>

#include "helpers.hpp"
#include "lcg/search.hpp"
#include "lcg/theorems.hpp"

using namespace lcg;
using namespace testing_util;

TEST_CASE("slack examples") {
  auto z7 = cyclic(7);
  CHECK(slack(z7, fset(z7, {0, 1, 2}), fset(z7, {0, 1, 2, 3}), Law::unimodular).exact() == q(0));
  auto z6 = cyclic(6);
  CHECK(slack(z6, fset(z6, {0, 3}), fset(z6, {0, 3}), Law::unimodular).exact() == q(0));
  CHECK(slack(z6, fset(z6, {0}), fset(z6, {1}), Law::unimodular).exact() == q(0));
  CHECK(slack(z7, fset(z7, {0}), fset(z7, {1, 2, 4}), Law::unimodular).exact() == q(0));
  CHECK(slack(z7, fset(z7, {0, 1, 2}), fset(z7, {0, 1, 2, 3}), Law::main).exact() == q(0));
}

TEST_CASE("search with zero budget returns nothing") {
  SearchOptions opt;
  opt.budget = 0;
  auto r = find_near_equality(cyclic(8), opt);
  CHECK(r.witnesses.empty());
  CHECK(r.evaluations == 0);
}

TEST_CASE("search finds coset and progression equality cases") {
  SearchOptions opt;
  opt.budget = 1000;
  opt.seed = 42;
  opt.threshold = q(0);
  auto z8 = cyclic(8);
  auto r = find_near_equality(z8, opt);
  REQUIRE(!r.witnesses.empty());
  CHECK(r.counterexamples.empty());
  bool coset = false;
  for (const auto& w : r.witnesses) {
    CHECK(w.slack.exact() == q(0));
    CHECK(slack(z8, w.X, w.Y, Law::unimodular) == w.slack);
    if (equal(z8, w.X, fset(z8, {0, 4})) && equal(z8, w.Y, fset(z8, {0, 4}))) coset = true;
  }
  CHECK(coset);

  auto z11 = cyclic(11);
  auto r11 = find_near_equality(z11, opt);
  REQUIRE(!r11.witnesses.empty());
  bool progression = false;
  for (const auto& w : r11.witnesses) {
    CHECK(slack(z11, w.X, w.Y, Law::unimodular).exact() == q(0));
    auto x = w.X.elements();
    auto y = w.Y.elements();
    if (x.size() >= 2 && y.size() >= 2 && x.size() + y.size() <= 11) progression = true;
  }
  CHECK(progression);
}

TEST_CASE("search results are sorted, deduplicated and deterministic") {
  SearchOptions opt;
  opt.budget = 300;
  opt.seed = 5;
  opt.threshold = q(2);
  auto G = GroupModel::finite(FiniteGroup::dihedral(4));
  auto a = find_near_equality(G, opt);
  opt.threads = 1;
  auto b = find_near_equality(G, opt);
  opt.threads = 3;
  auto c = find_near_equality(G, opt);
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  REQUIRE(a.witnesses.size() == c.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    CHECK(equal(G, a.witnesses[i].X, b.witnesses[i].X));
    CHECK(equal(G, a.witnesses[i].Y, c.witnesses[i].Y));
    CHECK(a.witnesses[i].slack.exact().sign() >= 0);
    CHECK(a.witnesses[i].slack.exact() <= q(2));
    if (i > 0) CHECK(a.witnesses[i - 1].slack.exact() <= a.witnesses[i].slack.exact());
    for (std::size_t j = 0; j < i; ++j) {
      auto ki = canonical_pair(G.finite(), a.witnesses[i].X.elements(), a.witnesses[i].Y.elements());
      auto kj = canonical_pair(G.finite(), a.witnesses[j].X.elements(), a.witnesses[j].Y.elements());
      CHECK_FALSE(ki == kj);
    }
  }
}

TEST_CASE("conjecture check finds no nonempty exceptional set on small groups") {
  SearchOptions opt;
  opt.budget = 200;
  opt.seed = 9;
  opt.threshold = q(1);
  opt.check_conjecture = true;
  for (const auto& G : builtin_groups(8)) {
    auto r = find_near_equality(G, opt);
    CHECK(r.nonempty_D.empty());
    CHECK(r.conjecture_checked == r.witnesses.size());
  }
}
