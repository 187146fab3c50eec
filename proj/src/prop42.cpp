#include "lcg/prop42.hpp"

#include <algorithm>
#include <optional>

#include "lcg/errors.hpp"

namespace lcg {
namespace {

std::string describe(const GroupModel& G, const Element& e) {
  if (G.kind() == GroupModel::Kind::finite) return std::to_string(e.index());
  const auto& p = e.padic();
  return "(" + std::to_string(p.k) + "," + p.b.str() + ")";
}

// g z H z^{-1} inside XY (finite model).
bool conjugate_fits(const FiniteGroup& F, std::uint32_t g, std::uint32_t z, const ElementSet& H, const ElementSet& XY) {
  const std::uint32_t gz = F.mul(g, z), zi = F.inv(z);
  bool ok = true;
  H.for_each([&](std::uint32_t h) {
    if (ok && !XY.contains(F.mul(F.mul(gz, h), zi))) ok = false;
  });
  return ok;
}

}  // namespace

Prop42Report check_prop42(const GroupModel& G, const NormalizedPair& ctx, const MinimizerPair& pair) {
  if (G.kind() != GroupModel::Kind::finite && G.kind() != GroupModel::Kind::padic) {
    throw ModelError("the exceptional-set check needs a finite or p-adic model");
  }
  if (!pair.feasible) throw InputError("minimizer pair is not feasible");
  Prop42Report r;
  r.orientation = ctx.orientation;
  auto ab = alpha_beta(G, ctx.X, ctx.Y, ctx.orientation);
  r.alpha = ab.alpha;
  r.beta = ab.beta;
  r.XY = exact_set(product_set(G, ctx.X, ctx.Y));
  const GroupSet core = exact_set(translate(
      G, exact_set(translate(G, exact_set(product_set(G, pair.X0, pair.Y0)), ctx.x0, Side::left)), ctx.y0, Side::right));
  r.D = subtract(G, r.XY, core);
  r.notes.push_back("open and compact subgroups coincide in this model");

  const HaarValue nu_x = measure(G, ctx.X, Side::right), mu_y = measure(G, ctx.Y, Side::left);
  const HaarValue nu_xy = measure(G, r.XY, Side::right), mu_xy = measure(G, r.XY, Side::left);
  r.rho = nu_x / nu_xy + mu_y / mu_xy - HaarValue(1);
  r.kappa_prime = ((r.alpha * nu_x + mu_y / r.beta) * nu_xy * mu_xy) / (nu_x * mu_xy + mu_y * nu_xy);
  r.mu_H = is_empty(pair.H) ? HaarValue(0) : measure(G, pair.H, Side::left);
  r.bound = r.mu_H - r.rho * r.kappa_prime;
  if (is_empty(r.D)) {
    r.D_size = HaarValue(0);
  } else {
    r.D_size = min(measure(G, r.D, Side::left) / r.beta, r.alpha * measure(G, r.D, Side::right));
  }
  r.bound_ok = less_equal(r.D_size, r.bound) == Truth::yes;

  if (G.kind() == GroupModel::Kind::finite) {
    const auto& F = G.finite();
    const auto& xy = r.XY.elements();
    const auto& H = pair.H.elements();
    const auto& X0 = pair.X0.elements();
    const std::uint32_t x0 = ctx.x0.index(), y0 = ctx.y0.index();
    (xy - r.D.elements()).for_each([&](std::uint32_t g) {
      ++r.coset_checks;
      CosetWitness w;
      w.g = std::to_string(g);
      // g = (x0 a')(b' y0) with a' in X0, b' in Y0; then z = (b' y0)^{-1}.
      std::optional<std::uint32_t> found;
      pair.Y0.elements().for_each([&](std::uint32_t b) {
        if (found) return;
        std::uint32_t a = F.mul(F.mul(F.inv(x0), g), F.inv(F.mul(b, y0)));
        if (!X0.contains(a)) return;
        std::uint32_t z = F.inv(F.mul(b, y0));
        if (conjugate_fits(F, g, z, H, xy)) found = z;
      });
      for (std::uint32_t z = 0; !found && z < F.order(); ++z) {
        if (conjugate_fits(F, g, z, H, xy)) found = z;
      }
      w.ok = found.has_value();
      w.z = found ? std::to_string(*found) : "";
      if (!w.ok) ++r.coset_failures;
      r.witnesses.push_back(std::move(w));
    });
  } else {
    // Every g in x0 X0 Y0 y0 lies in some x0 A B y0 for atoms A of X0 and B of
    // Y0, and x0 A H B y0 inside XY covers all of them at once.
    const auto& P = G.padic();
    int depth = P.d_min();
    for (const auto* s : {&pair.X0, &pair.Y0}) {
      for (const auto& b : s->balls().balls) depth = std::max(depth, b.depth);
    }
    auto xa = P.refine(pair.X0.balls(), depth);
    auto yb = P.refine(pair.Y0.balls(), depth);
    for (const auto& a : xa) {
      for (const auto& b : yb) {
        ++r.coset_checks;
        BallSet piece = P.product(P.product(BallSet{{a}}, pair.H.balls()), BallSet{{b}});
        piece = P.right_translate(P.left_translate(ctx.x0.padic(), piece), ctx.y0.padic());
        CosetWitness w;
        w.g = "x0 " + P.describe(a) + " " + P.describe(b) + " y0";
        w.z = describe(G, Element(P.inv(P.mul(PAdicPoint{b.k, b.center}, ctx.y0.padic()))));
        w.ok = P.subset(piece, r.XY.balls());
        if (!w.ok) ++r.coset_failures;
        r.witnesses.push_back(std::move(w));
      }
    }
  }
  r.verdict = r.bound_ok && r.coset_failures == 0 ? Verdict::holds : Verdict::violated;
  return r;
}

Example41 build_example41(std::int64_t p, int t, const std::vector<Ball>& X_balls, const std::vector<Ball>& W_balls) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (t < 1) throw InputError("t must be at least 1");
  if (X_balls.empty()) throw InputError("X must be nonempty");
  if (W_balls.empty()) throw InputError("W must be nonempty");
  int d_lo = 0, d_hi = 0;
  for (const auto* list : {&X_balls, &W_balls}) {
    for (const auto& b : *list) {
      if (b.k != 0) throw InputError("X and W balls must lie in slab 0");
      d_lo = std::min(d_lo, b.depth);
      d_hi = std::max(d_hi, b.depth);
    }
  }
  Example41 e{GroupModel::padic(PAdicAffine(p, -2 * t - 2, 2 * t + 2, d_lo - 1, d_hi + 1)), {}, {}, {}, {}, {}, {},
              {}, {}, {}, {}, {}, {}, false, false, {}};
  const auto& P = e.G.padic();
  std::vector<Ball> xs, ws;
  for (const auto& b : X_balls) xs.push_back(P.make_ball(0, b.center, b.depth));
  for (const auto& b : W_balls) ws.push_back(P.make_ball(0, b.center, b.depth));
  BallSet H = P.canonicalize({P.make_ball(0, Rational(0), 0)});
  BallSet X = P.canonicalize(xs);
  BallSet W = P.canonicalize(ws);
  if (!P.subset(X, H)) throw InputError("X must lie inside H = Z_p in slab 0");
  PAdicPoint x = P.make_point(-t, Rational(0));
  BallSet Wx = P.right_translate(W, x);
  if (!P.intersect(H, Wx).empty()) e.flags.push_back("H and Wx intersect");
  BallSet Y = P.unite(H, Wx);
  BallSet XY = P.product(X, Y);
  if (P.product(X, H) != H) e.flags.push_back("XH != H");

  e.X = X;
  e.Y = Y;
  e.H = H;
  e.W = W;
  e.XY = XY;
  e.x = Element(x);
  e.nu_X = P.right_measure(X);
  e.mu_Y = P.left_measure(Y);
  e.nu_XY = P.right_measure(XY);
  e.mu_XY = P.left_measure(XY);
  e.sum = e.nu_X / e.nu_XY + e.mu_Y / e.mu_XY;
  e.exceeds_one = less(HaarValue(1), e.sum) == Truth::yes;

  BallSet XW = P.product(X, W);
  Rational dx = P.modular(x);
  e.display_sum = HaarValue(P.right_measure(X) / (P.right_measure(H) + P.right_measure(XW)) +
                            (P.left_measure(H) + P.left_measure(W) * dx) / (P.left_measure(H) + P.left_measure(XW) * dx));
  e.display_matches = e.display_sum == e.sum;
  if (!e.display_matches) e.flags.push_back("slab decomposition does not reproduce the sum");
  return e;
}

}  // namespace lcg
