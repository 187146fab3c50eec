#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lcg/errors.hpp"
#include "lcg/minimizer.hpp"
#include "lcg/prop42.hpp"

using namespace lcg;
using namespace testing_util;

TEST_CASE("normalization") {
  auto z6 = cyclic(6);
  auto np = normalize_pair(z6, fset(z6, {2, 3}), fset(z6, {1, 4}), Orientation::corrected);
  CHECK(np.x0.index() == 2);
  CHECK(np.y0.index() == 1);
  CHECK(equal(z6, np.Xstar, fset(z6, {0, 1})));
  CHECK(equal(z6, np.Ystar, fset(z6, {0, 3})));

  auto G = padic3();
  auto X = balls(G, {ball(0, q(0), 0)});
  auto Y = balls(G, {ball(0, q(0), 0), ball(-1, q(0), 0)});
  auto co = normalize_pair(G, X, Y, Orientation::corrected);
  CHECK(co.x0.padic().k == 0);
  CHECK(co.y0.padic().k == 0);
  CHECK(equal(G, co.Xstar, X));
  auto st = normalize_pair(G, X, Y, Orientation::as_stated);
  CHECK(st.y0.padic().k == -1);
  CHECK(measure(G, st.Ystar, Side::left).exact() == q(4));
}

TEST_CASE("feasibility and transforms") {
  auto z6 = cyclic(6);
  auto x = fset(z6, {0, 1});
  auto np = normalize_pair(z6, x, x, Orientation::corrected);
  CHECK(is_feasible(z6, np, np.Xstar, np.Ystar));
  CHECK_FALSE(is_feasible(z6, np, fset(z6, {0, 1, 2}), fset(z6, {0, 1})));
  CHECK(is_feasible(z6, np, fset(z6, {0, 1, 2}), fset(z6, {0})));

  auto [a, b] = transform_step(z6, np, x, x, Element(1u), Direction::expand_x);
  CHECK(equal(z6, a, fset(z6, {0, 1, 2})));
  CHECK(equal(z6, b, fset(z6, {0})));
  auto [c, d] = transform_step(z6, np, x, x, Element(0u), Direction::expand_y);
  CHECK(equal(z6, c, x));
  CHECK(equal(z6, d, x));
  CHECK_THROWS(transform_step(z6, np, x, x, Element(3u), Direction::expand_x));

  auto z4 = cyclic(4);
  auto h = fset(z4, {0, 2});
  auto np4 = normalize_pair(z4, h, h, Orientation::corrected);
  auto [e, f] = transform_step(z4, np4, h, h, Element(2u), Direction::expand_x);
  CHECK(equal(z4, e, h));
  CHECK(equal(z4, f, h));
}

TEST_CASE("maximizers on the worked instances") {
  auto z6 = cyclic(6);
  auto x = fset(z6, {0, 1});
  auto np = normalize_pair(z6, x, x, Orientation::corrected);
  auto heur = maximize_heuristic(z6, np);
  CHECK(equal(z6, heur.X0, fset(z6, {0, 1, 2})));
  CHECK(equal(z6, heur.Y0, fset(z6, {0})));
  CHECK(heur.sum.exact() == q(4));
  CHECK(heur.nu_X0.exact() == q(3));
  auto ex = maximize_exact(z6, np);
  CHECK(equal(z6, ex.X0, heur.X0));
  CHECK(equal(z6, ex.Y0, heur.Y0));
  CHECK(equal(z6, ex.H, fset(z6, {0})));
  auto claims = verify_claims(z6, np, ex);
  CHECK(claims.all_pass());
  CHECK(claims.mu_H.exact() == q(1));
  CHECK(claims.rho_kappa.exact() == q(1));

  auto z7 = cyclic(7);
  auto np7 = normalize_pair(z7, fset(z7, {0, 1, 2}), fset(z7, {0, 1, 2, 3}), Orientation::corrected);
  auto ex7 = maximize_exact(z7, np7);
  CHECK(ex7.sum.exact() == q(7));
  CHECK(equal(z7, ex7.H, fset(z7, {0})));

  auto z4 = cyclic(4);
  auto h = fset(z4, {0, 2});
  auto np4 = normalize_pair(z4, h, h, Orientation::corrected);
  auto ex4 = maximize_exact(z4, np4);
  CHECK(equal(z4, ex4.X0, h));
  CHECK(equal(z4, ex4.Y0, h));
  CHECK(equal(z4, ex4.H, h));
  auto c4 = verify_claims(z4, np4, ex4);
  CHECK(c4.all_pass());
  CHECK(c4.mu_H.exact() == q(2));
  CHECK(c4.rho_kappa.exact() == q(2));
  CHECK(equal(z4, maximize_heuristic(z4, np4).X0, h));
}

TEST_CASE("exact maximizer matches the brute-force pair oracle") {
  std::mt19937_64 rng(17);
  for (const auto& G : builtin_groups(10)) {
    auto t = table_of(G.finite());
    const auto n = G.finite().order();
    for (int i = 0; i < 40; ++i) {
      auto x = ElementSet::from_word(n, rng() & ((std::uint64_t{1} << n) - 1));
      auto y = ElementSet::from_word(n, rng() & ((std::uint64_t{1} << n) - 1));
      if (x.empty() || y.empty()) continue;
      auto np = normalize_pair(G, x, y, Orientation::corrected);
      auto ex = maximize_exact(G, np);
      auto best = oracle::finite_maximum(t, mask_of(np.XYstar.elements()));
      CHECK(ex.sum.exact() == q(static_cast<std::int64_t>(best.sum)));
      CHECK(ex.nu_X0.exact() == q(static_cast<std::int64_t>(best.x)));
      CHECK(is_feasible(G, np, ex.X0, ex.Y0));
      auto heur = maximize_heuristic(G, np);
      CHECK(is_feasible(G, np, heur.X0, heur.Y0));
      CHECK(heur.sum.exact() >= measure(G, np.Xstar, Side::right).exact() + measure(G, np.Ystar, Side::left).exact());
      CHECK(heur.sum.exact() <= ex.sum.exact());
    }
  }
}

TEST_CASE("transforms preserve feasibility on random states") {
  std::mt19937_64 rng(23);
  int applied = 0;
  for (const auto& G : builtin_groups(12)) {
    const auto n = G.finite().order();
    const auto& F = G.finite();
    for (int i = 0; i < 80; ++i) {
      auto x = ElementSet::from_word(n, rng() & ((std::uint64_t{1} << n) - 1));
      auto y = ElementSet::from_word(n, rng() & ((std::uint64_t{1} << n) - 1));
      if (x.empty() || y.empty()) continue;
      auto np = normalize_pair(G, x, y, Orientation::corrected);
      // Random feasible state: a random X' inside XY* with its largest Y'.
      auto xp = np.XYstar.elements() & ElementSet::from_word(n, rng());
      xp.insert(F.identity());
      ElementSet yp(n);
      np.XYstar.elements().for_each([&](std::uint32_t c) {
        if (F.product(xp, F.singleton(c)).subset_of(np.XYstar.elements())) yp.insert(c);
      });
      if (yp.empty() || !is_feasible(G, np, xp, yp)) continue;
      auto both = xp & yp;
      both.for_each([&](std::uint32_t g) {
        for (auto d : {Direction::expand_x, Direction::expand_y}) {
          auto [a, b] = transform_step(G, np, xp, yp, Element(g), d);
          CHECK(is_feasible(G, np, a, b));
          ++applied;
        }
      });
    }
  }
  CHECK(applied > 100);
}

TEST_CASE("p-adic minimizer, claims and exceptional set") {
  auto G = padic3();
  auto X = balls(G, {ball(0, q(0), 0)});
  auto Y = balls(G, {ball(0, q(0), 0), ball(-1, q(0), 0)});
  auto np = normalize_pair(G, X, Y, Orientation::corrected);
  auto ex = maximize_exact(G, np);
  auto claims = verify_claims(G, np, ex);
  CHECK(claims.all_pass());
  CHECK(claims.mu_H.exact() == q(1));
  CHECK(claims.rho.exact() == q(1, 2));
  CHECK(claims.kappa.exact() == q(14, 9));
  CHECK(claims.rho_kappa.exact() == q(7, 9));

  auto p42 = check_prop42(G, np, ex);
  CHECK(is_empty(p42.D));
  CHECK(p42.kappa_prime.exact() == q(14, 9));
  CHECK(p42.bound.exact() == q(2, 9));
  CHECK(p42.bound_ok);
  CHECK(p42.coset_failures == 0);
}

TEST_CASE("exceptional set on finite instances") {
  auto z6 = cyclic(6);
  auto x = fset(z6, {0, 1});
  auto np = normalize_pair(z6, x, x, Orientation::corrected);
  auto p = check_prop42(z6, np, maximize_exact(z6, np));
  CHECK(is_empty(p.D));
  CHECK(p.bound.exact() == q(0));
  CHECK(p.coset_failures == 0);

  auto z4 = cyclic(4);
  auto h = fset(z4, {0, 2});
  auto np4 = normalize_pair(z4, h, h, Orientation::corrected);
  auto p4 = check_prop42(z4, np4, maximize_exact(z4, np4));
  CHECK(is_empty(p4.D));
  CHECK(p4.coset_failures == 0);
  CHECK(p4.witnesses.size() == 2);
}

TEST_CASE("atom bound is enforced") {
  auto G = cyclic(20);
  auto x = ElementSet::full(20);
  auto np = normalize_pair(G, x, x, Orientation::corrected);
  CHECK_THROWS_AS(maximize_exact(G, np, 14), ModelError);
  CHECK_NOTHROW(maximize_heuristic(G, np));
}
