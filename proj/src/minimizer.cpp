#include "lcg/minimizer.hpp"

#include <algorithm>
#include <cmath>

#include "lcg/errors.hpp"

namespace lcg {
namespace {

// Finite universe of disjoint pieces of X*Y*: its elements (finite model) or
// its sub-balls at the finest depth occurring in X*, Y*, X*Y* (p-adic model).
struct AtomUniverse {
  std::vector<Ball> balls;              // p-adic only
  std::vector<std::uint32_t> elements;  // finite only
  std::vector<std::int64_t> nu, mu;     // weights, scaled by a common factor
  Rational scale;                       // true measure = weight / scale
  std::uint64_t allowed_x = 0, allowed_y = 0;
  std::vector<std::uint64_t> compat;    // compat[i]: atoms j with a_i a_j inside X*Y*
  std::uint64_t xstar = 0, ystar = 0;

  std::size_t size() const { return nu.size(); }
};

int max_depth(const BallSet& s, int d) {
  for (const auto& b : s.balls) d = std::max(d, b.depth);
  return d;
}

AtomUniverse build_atoms(const GroupModel& G, const NormalizedPair& ctx, std::size_t bound) {
  AtomUniverse u;
  if (G.kind() == GroupModel::Kind::finite) {
    const auto& F = G.finite();
    u.elements = ctx.XYstar.elements().elements();
    const std::size_t n = u.elements.size();
    if (n > bound || n > 64) {
      throw ModelError("atom universe has " + std::to_string(n) + " atoms, above the exact bound " +
                       std::to_string(bound));
    }
    u.nu.assign(n, 1);
    u.mu.assign(n, 1);
    u.scale = Rational(1);
    u.compat.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      u.allowed_x |= bit;
      u.allowed_y |= bit;
      if (ctx.Xstar.elements().contains(u.elements[i])) u.xstar |= bit;
      if (ctx.Ystar.elements().contains(u.elements[i])) u.ystar |= bit;
      for (std::size_t j = 0; j < n; ++j) {
        if (ctx.XYstar.elements().contains(F.mul(u.elements[i], u.elements[j]))) u.compat[i] |= std::uint64_t{1} << j;
      }
    }
    return u;
  }
  if (G.kind() != GroupModel::Kind::padic) {
    throw ModelError("exact maximization supports finite and p-adic models only");
  }
  const auto& P = G.padic();
  const auto& xy = ctx.XYstar.balls();
  int depth = max_depth(xy, max_depth(ctx.Xstar.balls(), max_depth(ctx.Ystar.balls(), P.d_min())));
  std::size_t count = 0;
  for (const auto& b : xy.balls) {
    double c = std::pow(static_cast<double>(P.p()), depth - b.depth);
    if (c > static_cast<double>(bound) || (count += static_cast<std::size_t>(c)) > bound) {
      throw ModelError("atom universe at depth " + std::to_string(depth) + " exceeds the exact bound " +
                       std::to_string(bound));
    }
  }
  u.balls = P.refine(xy, depth);
  std::sort(u.balls.begin(), u.balls.end());
  const std::size_t n = u.balls.size();
  int k_min = 0;
  for (const auto& b : u.balls) k_min = std::min(k_min, b.k);
  // Scale by p^{depth - k_min} so both weights are positive integers.
  u.scale = P.power(depth - k_min);
  u.compat.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = u.balls[i];
    const std::uint64_t bit = std::uint64_t{1} << i;
    u.nu.push_back((P.right_measure(a) * u.scale).num());
    u.mu.push_back((P.left_measure(a) * u.scale).num());
    Region r = a.k < 0 ? Region::below : (a.k > 0 ? Region::above : Region::on);
    if (allowed_x(G, ctx, r)) u.allowed_x |= bit;
    if (allowed_y(G, ctx, r)) u.allowed_y |= bit;
    BallSet one{{a}};
    if (P.subset(one, ctx.Xstar.balls())) u.xstar |= bit;
    if (P.subset(one, ctx.Ystar.balls())) u.ystar |= bit;
    for (std::size_t j = 0; j < n; ++j) {
      BallSet prod{{P.product(a, u.balls[j])}};
      if (P.subset(prod, xy)) u.compat[i] |= std::uint64_t{1} << j;
    }
  }
  return u;
}

GroupSet mask_to_set(const GroupModel& G, const AtomUniverse& u, std::uint64_t mask) {
  if (G.kind() == GroupModel::Kind::finite) {
    ElementSet s = G.finite().empty_set();
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (mask >> i & 1) s.insert(u.elements[i]);
    }
    return s;
  }
  std::vector<Ball> balls;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (mask >> i & 1) balls.push_back(u.balls[i]);
  }
  return G.padic().canonicalize(std::move(balls));
}

std::int64_t weight(const std::vector<std::int64_t>& w, std::uint64_t mask) {
  std::int64_t s = 0;
  while (mask != 0) {
    s += w[static_cast<std::size_t>(__builtin_ctzll(mask))];
    mask &= mask - 1;
  }
  return s;
}

// Canonical order of atom subsets: ascending index lists compared lexicographically.
bool mask_less(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  int bit = __builtin_ctzll(a ^ b);
  std::uint64_t above = bit == 63 ? 0 : ~((std::uint64_t{2} << bit) - 1);
  bool a_has = (a >> bit) & 1;
  const std::uint64_t other = a_has ? b : a;
  // The set lacking the bit is smaller unless its list ends there.
  bool other_ends = (other & above) == 0;
  return a_has ? other_ends == false : other_ends;
}

struct Search {
  const AtomUniverse& u;
  std::vector<std::size_t> order;       // X-candidate atoms
  std::vector<std::int64_t> suffix_nu;  // nu mass of order[i..]
  std::uint64_t nodes = 0;
  bool have = false;
  std::int64_t best_sum = 0, best_nu = 0;
  std::uint64_t best_x = 0, best_y = 0;

  void offer(std::uint64_t x, std::uint64_t y, std::int64_t nu_x) {
    std::int64_t sum = nu_x + weight(u.mu, y);
    if (!have || sum > best_sum || (sum == best_sum && (nu_x > best_nu || (nu_x == best_nu && mask_less(x, best_x))))) {
      have = true;
      best_sum = sum;
      best_nu = nu_x;
      best_x = x;
      best_y = y;
    }
  }

  void dfs(std::size_t i, std::uint64_t x, std::uint64_t y, std::int64_t nu_x) {
    ++nodes;
    if (i == order.size()) {
      offer(x, y, nu_x);
      return;
    }
    // Y only shrinks as X grows, so this bounds every completion.
    std::int64_t nu_ub = nu_x + suffix_nu[i];
    std::int64_t sum_ub = nu_ub + weight(u.mu, y);
    if (have && (sum_ub < best_sum || (sum_ub == best_sum && nu_ub < best_nu))) return;
    const std::size_t a = order[i];
    dfs(i + 1, x | (std::uint64_t{1} << a), y & u.compat[a], nu_x + u.nu[a]);
    dfs(i + 1, x, y, nu_x);
  }
};

HaarValue region_safe_measure(const GroupModel& G, const GroupSet& s, Side side) {
  return is_empty(s) ? HaarValue(0) : measure(G, s, side);
}

}  // namespace

const char* to_string(Provenance p) { return p == Provenance::exact ? "exact" : "heuristic"; }

NormalizedPair normalize_pair(const GroupModel& G, const GroupSet& X, const GroupSet& Y, Orientation o) {
  if (!G.is_exact()) throw ModelError("normalization needs an exact model");
  if (is_empty(X) || is_empty(Y)) throw InputError("X and Y must be nonempty");
  NormalizedPair n;
  n.orientation = o;
  n.X = X;
  n.Y = Y;
  auto ab = alpha_beta(G, X, Y, o);
  n.x0 = ab.x_witness;
  n.y0 = ab.y_witness;
  n.Xstar = exact_set(translate(G, X, invert(G, n.x0), Side::left));
  n.Ystar = exact_set(translate(G, Y, invert(G, n.y0), Side::right));
  n.XYstar = exact_set(product_set(G, n.Xstar, n.Ystar));
  return n;
}

bool allowed_x(const GroupModel&, const NormalizedPair& ctx, Region r) {
  if (r == Region::on) return true;
  return ctx.orientation == Orientation::corrected ? r == Region::above : r == Region::below;
}

bool allowed_y(const GroupModel&, const NormalizedPair& ctx, Region r) {
  if (r == Region::on) return true;
  return ctx.orientation == Orientation::corrected ? r == Region::below : r == Region::above;
}

namespace {

bool within_region(const GroupModel& G, const NormalizedPair& ctx, const GroupSet& s, bool x_side) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return true;
    case GroupModel::Kind::padic:
      for (const auto& b : s.balls().balls) {
        Region r = b.k < 0 ? Region::below : (b.k > 0 ? Region::above : Region::on);
        if (!(x_side ? allowed_x(G, ctx, r) : allowed_y(G, ctx, r))) return false;
      }
      return true;
    default: throw ModelError("feasibility is only decided exactly in finite and p-adic models");
  }
}

}  // namespace

bool is_feasible(const GroupModel& G, const NormalizedPair& ctx, const GroupSet& Xp, const GroupSet& Yp) {
  if (!subset(G, Xp, ctx.XYstar) || !subset(G, Yp, ctx.XYstar)) return false;
  if (!within_region(G, ctx, Xp, true) || !within_region(G, ctx, Yp, false)) return false;
  if (is_empty(Xp) || is_empty(Yp)) return true;
  return subset(G, exact_set(product_set(G, Xp, Yp)), ctx.XYstar);
}

std::pair<GroupSet, GroupSet> transform_step(const GroupModel& G, const NormalizedPair& ctx, const GroupSet& Xp,
                                             const GroupSet& Yp, const Element& g, Direction d) {
  if (!contains(G, Xp, g) || !contains(G, Yp, g)) throw InputError("transform element must lie in X' and Y'");
  const Element gi = invert(G, g);
  std::pair<GroupSet, GroupSet> out;
  if (d == Direction::expand_x) {
    out.first = unite(G, Xp, exact_set(translate(G, Xp, g, Side::right)));
    out.second = intersect(G, Yp, exact_set(translate(G, Yp, gi, Side::left)));
  } else {
    out.first = intersect(G, Xp, exact_set(translate(G, Xp, gi, Side::right)));
    out.second = unite(G, Yp, exact_set(translate(G, Yp, g, Side::left)));
  }
  if (!is_feasible(G, ctx, out.first, out.second)) throw ModelError("transform produced an infeasible pair");
  return out;
}

MinimizerPair maximize_heuristic(const GroupModel& G, const NormalizedPair& ctx) {
  if (G.kind() != GroupModel::Kind::finite && G.kind() != GroupModel::Kind::padic) {
    throw ModelError("the minimizer supports finite and p-adic models only");
  }
  GroupSet x = ctx.Xstar, y = ctx.Ystar;
  auto objective = [&](const GroupSet& a, const GroupSet& b) {
    HaarValue nu = region_safe_measure(G, a, Side::right);
    return std::pair{nu + region_safe_measure(G, b, Side::left), nu};
  };
  auto better = [](const std::pair<HaarValue, HaarValue>& a, const std::pair<HaarValue, HaarValue>& b) {
    if (less(b.first, a.first) == Truth::yes) return true;
    return a.first == b.first && less(b.second, a.second) == Truth::yes;
  };
  int depth = 0;
  if (G.kind() == GroupModel::Kind::padic) {
    depth = max_depth(ctx.XYstar.balls(), max_depth(ctx.Xstar.balls(), max_depth(ctx.Ystar.balls(), G.padic().d_min())));
  }
  std::uint64_t steps = 0;
  bool moved = true;
  while (moved) {
    moved = false;
    auto cur = objective(x, y);
    GroupSet both = intersect(G, x, y);
    std::vector<Element> candidates;
    if (G.kind() == GroupModel::Kind::finite) {
      for (auto e : both.elements().elements()) candidates.emplace_back(e);
    } else {
      auto atoms = G.padic().refine(both.balls(), depth);
      std::sort(atoms.begin(), atoms.end());
      for (const auto& a : atoms) candidates.emplace_back(PAdicPoint{a.k, a.center});
    }
    for (const auto& g : candidates) {
      for (Direction d : {Direction::expand_x, Direction::expand_y}) {
        auto next = transform_step(G, ctx, x, y, g, d);
        if (better(objective(next.first, next.second), cur)) {
          x = std::move(next.first);
          y = std::move(next.second);
          moved = true;
          ++steps;
          break;
        }
      }
      if (moved) break;
    }
  }
  MinimizerPair r;
  r.X0 = x;
  r.Y0 = y;
  r.H = intersect(G, x, y);
  auto obj = objective(x, y);
  r.sum = obj.first;
  r.nu_X0 = obj.second;
  r.feasible = is_feasible(G, ctx, x, y);
  r.provenance = Provenance::heuristic;
  r.nodes = steps;
  return r;
}

MinimizerPair maximize_exact(const GroupModel& G, const NormalizedPair& ctx, std::size_t atom_bound) {
  if (atom_bound > 64) throw InputError("atom bound may not exceed 64");
  AtomUniverse u = build_atoms(G, ctx, atom_bound);
  Search s{u, {}, {}};
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.allowed_x >> i & 1) s.order.push_back(i);
  }
  s.suffix_nu.assign(s.order.size() + 1, 0);
  for (std::size_t i = s.order.size(); i-- > 0;) s.suffix_nu[i] = s.suffix_nu[i + 1] + u.nu[s.order[i]];
  s.dfs(0, 0, u.allowed_y, 0);
  MinimizerPair r;
  r.X0 = mask_to_set(G, u, s.best_x);
  r.Y0 = mask_to_set(G, u, s.best_y);
  r.H = intersect(G, r.X0, r.Y0);
  r.sum = HaarValue(Rational(s.best_sum) / u.scale);
  r.nu_X0 = HaarValue(Rational(s.best_nu) / u.scale);
  r.feasible = is_feasible(G, ctx, r.X0, r.Y0);
  r.provenance = Provenance::exact;
  r.atoms = u.size();
  r.nodes = s.nodes;
  return r;
}

ClaimsReport verify_claims(const GroupModel& G, const NormalizedPair& ctx, const MinimizerPair& pair) {
  ClaimsReport c;
  c.advisory = pair.provenance == Provenance::heuristic;
  const GroupSet& H = pair.H;
  c.mu_H = region_safe_measure(G, H, Side::left);

  if (is_empty(H)) {
    c.failures.push_back("H is empty");
  } else {
    c.stabilizer = equal(G, exact_set(product_set(G, pair.X0, H)), pair.X0) &&
                   equal(G, exact_set(product_set(G, H, pair.Y0)), pair.Y0);
    if (!c.stabilizer) c.failures.push_back("X0 H != X0 or H Y0 != Y0");
    bool has_id = contains(G, H, identity(G));
    bool closed = subset(G, exact_set(product_set(G, H, H)), H);
    bool inverses = subset(G, exact_set(inverse_set(G, H)), H);
    c.group = has_id && closed && inverses;
    if (!has_id) c.failures.push_back("identity not in H");
    if (!closed) c.failures.push_back("H not closed under products");
    if (!inverses) c.failures.push_back("H not closed under inverses");
  }

  c.rho = rho(G, ctx.X, ctx.Y);
  c.kappa = kappa(G, ctx.Xstar, ctx.Ystar);
  c.rho_kappa = c.rho * c.kappa;
  c.size = less_equal(c.rho_kappa, c.mu_H) == Truth::yes;
  if (!c.size) c.failures.push_back("mu(H) = " + c.mu_H.str() + " < rho kappa = " + c.rho_kappa.str());

  const GroupSet XY = exact_set(product_set(G, ctx.X, ctx.Y));
  c.cap_value = min(measure(G, XY, Side::left) / modular(G, ctx.y0), modular(G, ctx.x0) * measure(G, XY, Side::right));
  c.cap = less_equal(c.mu_H, c.cap_value) == Truth::yes;
  if (!c.cap) c.failures.push_back("mu(H) = " + c.mu_H.str() + " exceeds the cap " + c.cap_value.str());

  HaarValue start = measure(G, ctx.Xstar, Side::right) + measure(G, ctx.Ystar, Side::left);
  c.sum_lower_bound = less_equal(start, pair.sum) == Truth::yes;
  return c;
}

}  // namespace lcg
