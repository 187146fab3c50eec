// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "helpers.hpp"
#include "lcg/minimizer.hpp"
#include "lcg/prop42.hpp"
#include "lcg/search.hpp"
#include "lcg/subgroups.hpp"
#include "lcg/theorems.hpp"

using namespace lcg;
using namespace testing_util;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_time = secs <= limit_s;
  bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("%s [%d] %s: %s (%.2fs, limit %.0fs%s)\n", ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              limit_s, in_time ? "" : ", over time");
  std::fflush(stdout);
}

std::uint64_t low_bits(std::uint32_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

// 1. Cauchy-Davenport: exhaustive over Z/p, p in {2,3,5,7}.
Outcome cauchy_davenport() {
  std::uint64_t pairs = 0, mismatches = 0, ap_pairs = 0, ap_nonzero = 0;
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    auto G = cyclic(p);
    auto t = oracle::cyclic_table(p);
    for (std::uint64_t xb = 1; xb <= low_bits(p); ++xb) {
      for (std::uint64_t yb = 1; yb <= low_bits(p); ++yb) {
        auto x = oracle::from_bits(p, xb), y = oracle::from_bits(p, yb);
        auto xy = oracle::count(oracle::product(t, x, y));
        auto bound = std::min<std::int64_t>(static_cast<std::int64_t>(oracle::count(x) + oracle::count(y)) - 1, p);
        bool oracle_holds = static_cast<std::int64_t>(xy) >= bound;
        auto r = verify_unimodular(G, ElementSet::from_word(p, xb), ElementSet::from_word(p, yb), std::nullopt);
        bool ok = (r.verdict == Verdict::holds) == oracle_holds && r.slack.exact() == q(static_cast<std::int64_t>(xy) - bound);
        ++pairs;
        if (!ok) ++mismatches;
      }
    }
    // Arithmetic progressions with a common difference.
    for (std::uint32_t d = 1; d < p; ++d) {
      for (std::uint32_t lx = 1; lx <= p; ++lx) {
        for (std::uint32_t ly = 1; lx + ly <= p + 1; ++ly) {
          ElementSet x(p), y(p);
          for (std::uint32_t i = 0; i < lx; ++i) x.insert((i * d) % p);
          for (std::uint32_t i = 0; i < ly; ++i) y.insert((3 + i * d) % p);
          ++ap_pairs;
          if (!verify_unimodular(G, x, y, std::nullopt).slack.exact().is_zero()) ++ap_nonzero;
        }
      }
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%llu pairs, %llu verdict/slack mismatches; %llu progression pairs, %llu with slack != 0",
                static_cast<unsigned long long>(pairs), static_cast<unsigned long long>(mismatches),
                static_cast<unsigned long long>(ap_pairs), static_cast<unsigned long long>(ap_nonzero));
  return {mismatches == 0 && ap_nonzero == 0, buf};
}

// 2. Kemperman's unimodular bound on builtin groups of order <= 16.
Outcome kemperman_unimodular() {
  std::uint64_t pairs = 0, violations = 0, mismatches = 0;
  auto groups = builtin_groups(16);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& G = groups[gi];
    auto t = table_of(G.finite());
    auto subs = oracle::subgroups(t);
    std::mt19937_64 rng(1000 + gi);
    for (int i = 0; i < 10000; ++i) {
      auto x = random_subset(rng, G.finite().order());
      auto y = random_subset(rng, G.finite().order());
      auto r = verify_unimodular(G, x, y, std::nullopt);
      auto expect = oracle::unimodular_slack(t, subs, mask_of(x), mask_of(y));
      ++pairs;
      if (r.slack.exact().sign() < 0 || r.verdict != Verdict::holds) ++violations;
      if (r.slack.exact() != q(expect)) ++mismatches;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu groups, %llu pairs, %llu violations, %llu slack mismatches vs oracle",
                groups.size(), static_cast<unsigned long long>(pairs), static_cast<unsigned long long>(violations),
                static_cast<unsigned long long>(mismatches));
  return {violations == 0 && mismatches == 0, buf};
}

// 3. Exact maximizer claims on every pair over groups of order <= 8.
Outcome minimizer_claims() {
  std::uint64_t instances = 0, claim_fail = 0, oracle_fail = 0;
  for (const auto& G : builtin_groups(8)) {
    const auto n = G.finite().order();
    auto t = table_of(G.finite());
    std::map<std::uint64_t, oracle::Maximum> best_cache;
    for (std::uint64_t xb = 1; xb <= low_bits(n); ++xb) {
      for (std::uint64_t yb = 1; yb <= low_bits(n); ++yb) {
        auto X = ElementSet::from_word(n, xb), Y = ElementSet::from_word(n, yb);
        auto np = normalize_pair(G, X, Y, Orientation::corrected);
        auto pair = maximize_exact(G, np);
        auto claims = verify_claims(G, np, pair);
        ++instances;
        if (!claims.all_pass()) ++claim_fail;

        // Independent recheck with plain tables.
        auto key = np.XYstar.elements().word0();
        auto it = best_cache.find(key);
        if (it == best_cache.end()) it = best_cache.emplace(key, oracle::finite_maximum(t, mask_of(np.XYstar.elements()))).first;
        auto x0 = mask_of(pair.X0.elements()), y0 = mask_of(pair.Y0.elements()), h = mask_of(pair.H.elements());
        auto xy = oracle::count(oracle::product(t, mask_of(X), mask_of(Y)));
        auto hsz = static_cast<std::int64_t>(oracle::count(h));
        bool ok = pair.sum.exact() == q(static_cast<std::int64_t>(it->second.sum)) &&
                  pair.nu_X0.exact() == q(static_cast<std::int64_t>(it->second.x)) && oracle::is_subgroup(t, h) &&
                  oracle::product(t, x0, h) == x0 && oracle::product(t, h, y0) == y0 &&
                  hsz >= static_cast<std::int64_t>(X.size() + Y.size()) - static_cast<std::int64_t>(xy) &&
                  hsz <= static_cast<std::int64_t>(xy);
        if (!ok) ++oracle_fail;
      }
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%llu instances, %llu claim failures, %llu oracle disagreements",
                static_cast<unsigned long long>(instances), static_cast<unsigned long long>(claim_fail),
                static_cast<unsigned long long>(oracle_fail));
  return {claim_fail == 0 && oracle_fail == 0, buf};
}

// 4. Worked instance Z/6, X = Y = {0, 1}.
Outcome worked_instance() {
  auto G = cyclic(6);
  auto X = fset(G, {0, 1});
  auto np = normalize_pair(G, X, X, Orientation::corrected);
  auto pair = maximize_exact(G, np);
  auto claims = verify_claims(G, np, pair);
  auto p42 = check_prop42(G, np, pair);
  auto brute = oracle::finite_maximum(oracle::cyclic_table(6), mask_of(np.XYstar.elements()));
  std::string d;
  bool ok = true;
  auto want = [&](bool c, const char* what) {
    if (!c) {
      ok = false;
      d += std::string(" ") + what;
    }
  };
  want(rho(G, X, X).exact() == q(1, 3), "rho");
  want(kappa(G, np.Xstar, np.Ystar).exact() == q(3), "kappa");
  want(equal(G, pair.X0, fset(G, {0, 1, 2})) && equal(G, pair.Y0, fset(G, {0})), "maximizer");
  want(brute.sum == 4 && brute.x == 3 && pair.sum.exact() == q(4) && pair.nu_X0.exact() == q(3), "exhaustive");
  want(claims.mu_H.exact() == q(1) && claims.rho_kappa.exact() == q(1) && claims.all_pass(), "mu(H)");
  want(is_empty(p42.D) && p42.coset_failures == 0, "D");
  return {ok, ok ? "rho=1/3 kappa=3 maximizer ({0,1,2},{0}) mu(H)=1=rho*kappa D=empty" : "mismatch:" + d};
}

// 5. p-adic orientation regression.
Outcome orientation_regression() {
  auto e = build_example41(3, 1, {ball(0, q(0), 0)}, {ball(0, q(0), 0)});
  auto st = verify_main(e.G, e.X, e.Y, std::nullopt, Orientation::as_stated);
  auto co = verify_main(e.G, e.X, e.Y, std::nullopt, Orientation::corrected);
  bool ok = e.sum.is_exact() && e.sum.exact() == q(3, 2) && st.branch1.exact() == q(6, 5) &&
            st.verdict == Verdict::violated && co.branch1.exact() == q(6, 7) && co.verdict == Verdict::holds;
  std::string d = "sum=" + e.sum.str() + " as_stated branch1=" + st.branch1.str() + " " + to_string(st.verdict) +
                  ", corrected branch1=" + co.branch1.str() + " " + to_string(co.verdict);
  return {ok, d};
}

// 6. Haar and modular invariants, 1000 random checks per model.
struct InvariantCounter {
  std::uint64_t checks = 0, bad = 0;
  void operator()(bool ok) {
    ++checks;
    if (!ok) ++bad;
  }
};

bool rel_close(const HaarValue& got, const HaarValue& want, double tol) {
  if (got.is_exact() && want.is_exact()) return got.exact() == want.exact();
  double g = got.bounds().mid(), w = want.bounds().mid();
  return std::abs(g - w) <= tol * std::abs(w);
}

Outcome haar_invariants() {
  std::string d;
  bool all_ok = true;
  auto report = [&](const char* model, const InvariantCounter& c) {
    d += std::string(model) + " " + std::to_string(c.bad) + "/" + std::to_string(c.checks) + " bad; ";
    if (c.bad != 0 || c.checks < 4000) all_ok = false;
  };
  std::mt19937_64 rng(606);
  auto ri = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };

  auto check = [&](const GroupModel& G, const GroupSet& S, const Element& g, const Element& x, double tol,
                   InvariantCounter& c) {
    auto dg = modular(G, g);
    auto mu = measure(G, S, Side::left), nu = measure(G, S, Side::right);
    auto sg = translate(G, S, g, Side::right);
    auto gs = translate(G, S, g, Side::left);
    auto inv = inverse_set(G, S);
    auto mid = [&](const SetBracket& b, Side side) {
      auto in = measure(G, b.inner, side), out = measure(G, b.outer, side);
      if (G.is_exact()) return out;
      return HaarValue(Interval(0.5 * (in.lower() + out.upper())));
    };
    c(rel_close(mid(sg, Side::left), dg * mu, tol));
    c(rel_close(mid(gs, Side::right), nu / dg, tol));
    c(rel_close(mid(inv, Side::left), nu, tol));
    c(rel_close(modular(G, group_law(G, x, g)), modular(G, x) * dg, tol));
  };

  {
    InvariantCounter c;
    auto groups = builtin_groups(16);
    for (int i = 0; i < 1000; ++i) {
      const auto& G = groups[rng() % groups.size()];
      auto n = G.finite().order();
      auto S = random_subset(rng, n);
      check(G, S, Element(static_cast<std::uint32_t>(rng() % n)), Element(static_cast<std::uint32_t>(rng() % n)), 0.0, c);
    }
    report("finite", c);
  }
  {
    InvariantCounter c;
    auto G = GroupModel::padic(PAdicAffine(3, -5, 5, -5, 6));
    for (int i = 0; i < 1000; ++i) {
      std::vector<Ball> bs;
      for (int j = 0, m = ri(1, 3); j < m; ++j) bs.push_back(ball(ri(-2, 2), q(ri(-13, 13), 3), ri(-1, 2)));
      auto S = balls(G, bs);
      Element g = G.padic().make_point(ri(-1, 1), q(ri(-8, 8), 3));
      Element x = G.padic().make_point(ri(-2, 2), q(ri(-8, 8), 9));
      check(G, S, g, x, 0.0, c);
    }
    report("p-adic", c);
  }
  {
    InvariantCounter c;
    const double h = 0.02;
    AffineGrid A(-3, 3, -5, 5, h);
    auto G = GroupModel::grid(A);
    for (int i = 0; i < 1000; ++i) {
      int u0 = ri(-50, 0), b0 = ri(-50, 0);
      GroupSet S = A.box(u0 * h, (u0 + ri(25, 50)) * h, b0 * h, (b0 + ri(25, 50)) * h);
      Element g = A.make_point(ri(-50, 50), ri(-50, 50));
      Element x = A.make_point(ri(-50, 50), ri(-50, 50));
      check(G, S, g, x, 4 * h, c);
    }
    report("grid h=0.02", c);
  }
  {
    InvariantCounter c;
    auto P = GroupModel::padic(PAdicAffine(2, -4, 4, -4, 5));
    auto G = GroupModel::product({P, GroupModel::finite(FiniteGroup::dihedral(3))});
    for (int i = 0; i < 1000; ++i) {
      BoxUnion S;
      S.boxes.push_back({balls(P, {ball(ri(-1, 1), q(ri(-5, 5), 2), ri(0, 2))}), random_subset(rng, 6)});
      Element g = std::vector<Element>{P.padic().make_point(ri(-1, 1), q(ri(-3, 3), 2)),
                                       Element(static_cast<std::uint32_t>(rng() % 6))};
      Element x = std::vector<Element>{P.padic().make_point(ri(-1, 1), q(ri(-3, 3))),
                                       Element(static_cast<std::uint32_t>(rng() % 6))};
      check(G, S, g, x, 0.0, c);
    }
    report("product", c);
  }
  return {all_ok, d};
}

// 7. Connected-group inequality on random grid box unions.
Outcome connected_grid() {
  const double h = 0.1;
  std::mt19937_64 rng(707);
  auto ri = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  AffineGrid coarse(-2.5, 2.5, -4, 4, h), fine(-2.5, 2.5, -4, 4, h / 2);
  auto Gc = GroupModel::grid(coarse), Gf = GroupModel::grid(fine);
  std::uint64_t over = 0, not_shrunk = 0, violated = 0;
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    struct Box {
      int u0, u1, b0, b1;
    };
    auto random_union = [&] {
      std::vector<Box> v;
      for (int j = 0, m = ri(1, 3); j < m; ++j) {
        int u0 = ri(-10, 8), b0 = ri(-10, 8);
        v.push_back({u0, std::min(10, u0 + ri(2, 8)), b0, std::min(10, b0 + ri(2, 8))});
      }
      return v;
    };
    auto build = [&](const AffineGrid& A, const std::vector<Box>& v) {
      CellSet s;
      for (const auto& b : v) s = A.unite(s, A.box(b.u0 * h, b.u1 * h, b.b0 * h, b.b1 * h));
      return GroupSet(s);
    };
    auto xs = random_union(), ys = random_union();
    auto rc = verify_kemperman_connected(Gc, build(coarse, xs), build(coarse, ys));
    auto rf = verify_kemperman_connected(Gf, build(fine, xs), build(fine, ys));
    for (const auto* r : {&rc, &rf}) {
      worst = std::max(worst, r->branch1_outer.upper());
      if (r->branch1_outer.upper() > 1.0 + 10 * h) ++over;
      if (r->verdict == Verdict::violated) ++violated;
    }
    auto width = [](const HaarValue& v) { return v.upper() - v.lower(); };
    bool shrunk = width(rf.mu_XY) < width(rc.mu_XY) && width(rf.nu_XY) < width(rc.nu_XY) &&
                  width(rf.branch1) < width(rc.branch1);
    if (!shrunk) ++not_shrunk;
  }
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "100 pairs at h=0.1 and 0.05: %llu above 1+10h (max outer branch1 %.4f), %llu violated, %llu brackets not shrunk",
                static_cast<unsigned long long>(over), worst, static_cast<unsigned long long>(violated),
                static_cast<unsigned long long>(not_shrunk));
  return {over == 0 && violated == 0 && not_shrunk == 0, buf};
}

// 8. Kneser's theorem on Z/n, n <= 10, exhaustive.
Outcome kneser() {
  std::uint64_t pairs = 0, missing = 0, mismatches = 0;
  for (std::uint32_t n = 1; n <= 10; ++n) {
    auto G = cyclic(n);
    auto t = oracle::cyclic_table(n);
    auto subs = oracle::subgroups(t);
    for (std::uint64_t xb = 1; xb <= low_bits(n); ++xb) {
      for (std::uint64_t yb = 1; yb <= low_bits(n); ++yb) {
        auto r = verify_kneser_abelian(G, ElementSet::from_word(n, xb), ElementSet::from_word(n, yb));
        auto o = oracle::kneser(t, subs, oracle::from_bits(n, xb), oracle::from_bits(n, yb));
        ++pairs;
        if (!r.H || r.verdict != Verdict::holds || o.satisfying == 0) ++missing;
        bool same = r.satisfying_count == o.satisfying && r.stabilizer.size() == o.stabilizer &&
                    (r.H ? r.H->size() : 0) == o.largest;
        if (!same) ++mismatches;
      }
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%llu pairs, %llu without a satisfying subgroup, %llu oracle mismatches",
                static_cast<unsigned long long>(pairs), static_cast<unsigned long long>(missing),
                static_cast<unsigned long long>(mismatches));
  return {missing == 0 && mismatches == 0, buf};
}

}  // namespace

int main() {
  criterion(1, "Cauchy-Davenport exactness", 10, cauchy_davenport);
  criterion(2, "unimodular Kemperman bound", 60, kemperman_unimodular);
  criterion(3, "minimizer claims", 600, minimizer_claims);
  criterion(4, "worked Z/6 instance", 10, worked_instance);
  criterion(5, "p-adic orientation regression", 1, orientation_regression);
  criterion(6, "Haar and modular invariants", 30, haar_invariants);
  criterion(7, "connected-group inequality on the grid", 120, connected_grid);
  criterion(8, "Kneser abelian check", 60, kneser);
  std::printf("%s: %d of 8 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
