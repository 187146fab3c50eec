#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "lcg/errors.hpp"

using namespace lcg;
using namespace testing_util;

TEST_CASE("finite measures, products and inverses") {
  auto z6 = cyclic(6);
  auto S = fset(z6, {0, 3});
  CHECK(measure(z6, S, Side::left).exact() == q(2));
  CHECK(measure(z6, S, Side::right).exact() == q(2));
  CHECK(equal(z6, inverse_set(z6, fset(z6, {1, 2})).outer, fset(z6, {4, 5})));

  auto z7 = cyclic(7);
  auto xy = product_set(z7, fset(z7, {0, 1, 2}), fset(z7, {0, 1, 2, 3}));
  CHECK(equal(z7, xy.outer, fset(z7, {0, 1, 2, 3, 4, 5})));
  CHECK(equal(z7, xy.inner, xy.outer));
}

TEST_CASE("finite products agree with brute-force enumeration") {
  std::mt19937_64 rng(3);
  for (const auto& G : builtin_groups(16)) {
    auto t = table_of(G.finite());
    const auto n = G.finite().order();
    for (int i = 0; i < 50; ++i) {
      auto x = oracle::from_bits(n, rng()), y = oracle::from_bits(n, rng());
      auto got = product_set(G, set_of(x), set_of(y)).outer;
      CHECK(mask_of(got.elements()) == oracle::product(t, x, y));
    }
  }
}

TEST_CASE("p-adic ball measures and products") {
  auto G = padic3();
  auto slab_m1 = balls(G, {ball(-1, q(0), 0)});
  CHECK(measure(G, slab_m1, Side::left).exact() == q(1, 3));
  CHECK(measure(G, slab_m1, Side::right).exact() == q(1));

  auto slab0 = balls(G, {ball(0, q(0), 0)});
  auto sg = translate(G, slab0, Element(PAdicPoint{1, q(0)}), Side::right).outer;
  CHECK(measure(G, sg, Side::left).exact() == q(3));
  CHECK(sg.balls().balls.size() == 1);
  CHECK(sg.balls().balls[0].k == 1);

  auto inv = inverse_set(G, slab_m1).outer;
  REQUIRE(inv.balls().balls.size() == 1);
  CHECK(inv.balls().balls[0].k == 1);
  CHECK(inv.balls().balls[0].depth == 1);
  CHECK(measure(G, inv, Side::left).exact() == measure(G, slab_m1, Side::right).exact());

  auto prod = product_set(G, slab0, slab_m1).outer;
  CHECK(equal(G, prod, slab_m1));

  auto both = balls(G, {ball(0, q(0), 0), ball(-1, q(0), 0)});
  auto d = delta_extrema(G, both);
  CHECK(d.sup.exact() == q(1));
  CHECK(d.inf.exact() == q(1, 3));
}

TEST_CASE("p-adic canonical form merges sibling balls") {
  auto G = padic3();
  auto three = balls(G, {ball(0, q(0), 1), ball(0, q(1), 1), ball(0, q(2), 1)});
  auto whole = balls(G, {ball(0, q(0), 0)});
  CHECK(three.balls() == whole.balls());
  auto two = balls(G, {ball(0, q(0), 1), ball(0, q(1), 1)});
  CHECK(measure(G, two, Side::left).exact() == q(2, 3));
  CHECK(equal(G, unite(G, two, balls(G, {ball(0, q(-1), 1)})), whole));
  CHECK(equal(G, subtract(G, whole, two), balls(G, {ball(0, q(2), 1)})));
}

// Independent measure oracle: refine every ball to a fixed depth and count.
TEST_CASE("p-adic measures agree with counting at a fine depth") {
  auto G = padic3();
  const auto& P = G.padic();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    std::vector<Ball> bs;
    for (int j = 0; j < 3; ++j) {
      int k = static_cast<int>(rng() % 5) - 2;
      int d = static_cast<int>(rng() % 4) - 1;
      bs.push_back(ball(k, q(static_cast<std::int64_t>(rng() % 27), 3), d));
    }
    auto S = balls(G, bs);
    const int fine = 4;
    auto atoms = P.refine(S.balls(), fine);
    Rational left(0), right(0);
    for (const auto& a : atoms) {
      CHECK(a.depth == fine);
      left += Rational::pow(q(3), a.k - fine);
      right += Rational::pow(q(3), -fine);
    }
    CHECK(measure(G, S, Side::left).exact() == left);
    CHECK(measure(G, S, Side::right).exact() == right);
  }
}

TEST_CASE("grid box measures enclose the closed forms") {
  AffineGrid A(-3, 3, -3, 3, 0.02);
  auto G = GroupModel::grid(A);
  GroupSet box = A.box(0, 1, 0, 1);
  auto nu = measure(G, box, Side::right);
  auto mu = measure(G, box, Side::left);
  CHECK(nu.lower() <= 1.0);
  CHECK(nu.upper() >= 1.0);
  CHECK(nu.upper() - nu.lower() < 1e-12);
  CHECK(mu.lower() <= 1.0 - std::exp(-1.0));
  CHECK(mu.upper() >= 1.0 - std::exp(-1.0));
  CHECK(mu.upper() - mu.lower() < 1e-12);

  auto d = delta_extrema(G, box);
  CHECK(d.sup.bounds().contains(1.0));
  CHECK(d.inf.bounds().contains(std::exp(-1.0)));

  auto g = Element(A.snap(1.0, 0.0));
  auto shifted = translate(G, box, g, Side::right);
  double expect = std::exp(-1.0) * (1.0 - std::exp(-1.0));
  CHECK(measure(G, shifted.inner, Side::left).lower() <= expect);
  CHECK(measure(G, shifted.outer, Side::left).upper() >= expect);
}

TEST_CASE("grid brackets tighten under refinement") {
  double prev_outer = 1e300, prev_inner = -1.0;
  for (double h : {0.1, 0.05, 0.025}) {
    AffineGrid A(-3, 3, -4, 6, h);
    auto br = A.product(A.box(0, 1, 0, 1), A.box(0, 1, 0, 1));
    double outer = A.left_measure(br.outer).hi;
    double inner = A.left_measure(br.inner).lo;
    CHECK(inner <= outer);
    CHECK(outer <= prev_outer);
    CHECK(inner >= prev_inner);
    prev_outer = outer;
    prev_inner = inner;
  }
  // [0,1]^2 times itself is {(u, b): u in [0,2], b in [0, 1 + e^{min(u,1)}]}.
  double exact = 0.0;
  const int steps = 200000;
  for (int i = 0; i < steps; ++i) {
    double u = 2.0 * (i + 0.5) / steps;
    exact += std::exp(-u) * (1.0 + std::exp(std::min(u, 1.0))) * (2.0 / steps);
  }
  CHECK(prev_inner <= exact + 1e-6);
  CHECK(prev_outer >= exact - 1e-6);
}

TEST_CASE("grid window overflow is an error") {
  AffineGrid A(-1, 1, -1, 1, 0.1);
  auto big = A.box(0, 1, 0, 1);
  CHECK_THROWS_AS(A.product(big, big), WindowError);
}

TEST_CASE("product monotonicity") {
  auto G = cyclic(9);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    auto s = ElementSet::from_word(9, rng() & 0x1ff);
    auto sp = s | ElementSet::from_word(9, rng() & 0x1ff);
    auto t = ElementSet::from_word(9, rng() & 0x1ff);
    CHECK(subset(G, product_set(G, s, t).outer, product_set(G, sp, t).outer));
  }
}

TEST_CASE("product model sets are boxes of factor sets") {
  auto G = GroupModel::product({padic3(), cyclic(3)});
  BoxUnion X;
  X.boxes.push_back({balls(G.factors()[0], {ball(0, q(0), 0)}), fset(G.factors()[1], {0, 1})});
  CHECK(measure(G, X, Side::left).exact() == q(2));
  BoxUnion Y;
  Y.boxes.push_back({balls(G.factors()[0], {ball(-1, q(0), 0)}), fset(G.factors()[1], {1})});
  auto XY = product_set(G, X, Y).outer;
  CHECK(measure(G, XY, Side::left).exact() == q(2, 3));
  CHECK(measure(G, XY, Side::right).exact() == q(2));
}
