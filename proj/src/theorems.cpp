#include "lcg/theorems.hpp"

#include <cmath>
#include <limits>

#include "lcg/errors.hpp"

namespace lcg {
namespace {

// Verdict for "value <= 1" from a possibly bracketed value.
Verdict at_most_one(const HaarValue& v) {
  switch (less_equal(v, HaarValue(1))) {
    case Truth::yes: return Verdict::holds;
    case Truth::no: return Verdict::violated;
    case Truth::unknown: return Verdict::inconclusive;
  }
  return Verdict::inconclusive;
}

Verdict nonnegative(const HaarValue& v) {
  switch (less_equal(HaarValue(0), v)) {
    case Truth::yes: return Verdict::holds;
    case Truth::no: return Verdict::violated;
    case Truth::unknown: return Verdict::inconclusive;
  }
  return Verdict::inconclusive;
}

// Hull of the measure of a bracketed set: [m(inner).lo, m(outer).hi].
HaarValue bracket_measure(const GroupModel& G, const SetBracket& b, Side side) {
  HaarValue out = measure(G, b.outer, side);
  if (out.is_exact()) return out;
  double lo = is_empty(b.inner) ? 0.0 : measure(G, b.inner, side).lower();
  return HaarValue(Interval(lo, out.upper()));
}

HaarValue ratio_sum(const HaarValue& nu_x, const HaarValue& nu_xy, const HaarValue& mu_y, const HaarValue& mu_xy) {
  return nu_x / nu_xy + mu_y / mu_xy;
}

struct Measures {
  HaarValue nu_X, mu_X, nu_Y, mu_Y;
  SetBracket XY;
  HaarValue nu_out, mu_out;  // outer product set
  HaarValue nu_in, mu_in;    // inner product set
};

Measures measures(const GroupModel& G, const GroupSet& X, const GroupSet& Y) {
  if (is_empty(X) || is_empty(Y)) throw InputError("X and Y must be nonempty");
  Measures m;
  m.nu_X = measure(G, X, Side::right);
  m.mu_X = measure(G, X, Side::left);
  m.nu_Y = measure(G, Y, Side::right);
  m.mu_Y = measure(G, Y, Side::left);
  m.XY = product_set(G, X, Y);
  m.nu_out = measure(G, m.XY.outer, Side::right);
  m.mu_out = measure(G, m.XY.outer, Side::left);
  if (G.is_exact()) {
    m.nu_in = m.nu_out;
    m.mu_in = m.mu_out;
  } else {
    m.nu_in = is_empty(m.XY.inner) ? HaarValue(0) : measure(G, m.XY.inner, Side::right);
    m.mu_in = is_empty(m.XY.inner) ? HaarValue(0) : measure(G, m.XY.inner, Side::left);
  }
  return m;
}

// Evaluates f at the outer and inner denominators and returns the hull, with
// +inf upper end when the inner product set has zero measure.
template <class F>
HaarValue bracketed(const Measures& m, F&& f) {
  HaarValue lo = f(m.nu_out, m.mu_out);
  if (lo.is_exact() || lo.is_infinite()) return lo;
  if (m.nu_in.upper() <= 0.0 || m.mu_in.upper() <= 0.0) {
    return HaarValue(Interval(lo.lower(), std::numeric_limits<double>::infinity()));
  }
  HaarValue hi = f(m.nu_in, m.mu_in);
  return HaarValue(Interval(std::min(lo.lower(), hi.lower()), std::max(lo.upper(), hi.upper())));
}

void fill_common(InequalityReport& r, const GroupModel& G, const Measures& m) {
  r.nu_X = m.nu_X;
  r.mu_X = m.mu_X;
  r.nu_Y = m.nu_Y;
  r.mu_Y = m.mu_Y;
  r.nu_XY = bracket_measure(G, m.XY, Side::right);
  r.mu_XY = bracket_measure(G, m.XY, Side::left);
  r.mu_G = total_measure(G);
  r.XY = m.XY;
  r.kemperman_sum = bracketed(m, [&](const HaarValue& nu, const HaarValue& mu) {
    return ratio_sum(m.nu_X, nu, m.mu_Y, mu);
  });
}

}  // namespace

const char* to_string(Orientation o) { return o == Orientation::as_stated ? "as_stated" : "corrected"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive-bracket";
  }
  return "?";
}

Orientation parse_orientation(const std::string& s) {
  if (s == "as_stated") return Orientation::as_stated;
  if (s == "corrected") return Orientation::corrected;
  throw InputError("orientation must be as_stated or corrected, got '" + s + "'");
}

AlphaBeta alpha_beta(const GroupModel& G, const GroupSet& X, const GroupSet& Y, Orientation o) {
  auto dx = delta_extrema(G, X);
  auto dy = delta_extrema(G, Y);
  if (o == Orientation::as_stated) return {dx.sup, dy.inf, dx.argmax, dy.argmin};
  return {dx.inf, dy.sup, dx.argmin, dy.argmax};
}

HaarValue rho(const GroupModel& G, const GroupSet& X, const GroupSet& Y) {
  Measures m = measures(G, X, Y);
  return bracketed(m, [&](const HaarValue& nu, const HaarValue& mu) { return ratio_sum(m.nu_X, nu, m.mu_Y, mu); }) -
         HaarValue(1);
}

HaarValue kappa_from(const HaarValue& nu_x, const HaarValue& mu_y, const HaarValue& nu_xy, const HaarValue& mu_xy) {
  HaarValue k = ((nu_x + mu_y) * nu_xy * mu_xy) / (nu_x * mu_xy + mu_y * nu_xy);
  HaarValue lo = min(nu_xy, mu_xy), hi = max(nu_xy, mu_xy);
  if (less_equal(lo, k) == Truth::no || less_equal(k, hi) == Truth::no) {
    throw ModelError("kappa sandwich fails: " + k.str() + " not in [" + lo.str() + ", " + hi.str() + "]");
  }
  return k;
}

HaarValue kappa(const GroupModel& G, const GroupSet& Xs, const GroupSet& Ys) {
  Measures m = measures(G, Xs, Ys);
  return kappa_from(m.nu_X, m.mu_Y, bracket_measure(G, m.XY, Side::right), bracket_measure(G, m.XY, Side::left));
}

InequalityReport verify_main(const GroupModel& G, const GroupSet& X, const GroupSet& Y,
                             const std::optional<GroupSet>& E, Orientation o) {
  Measures m = measures(G, X, Y);
  InequalityReport r;
  r.law = "main";
  r.orientation = o;
  fill_common(r, G, m);
  auto ab = alpha_beta(G, X, Y, o);
  r.alpha = ab.alpha;
  r.beta = ab.beta;
  const GroupSet& e = E ? *E : m.XY.outer;
  if (E && !subset(G, m.XY.outer, *E)) r.notes.push_back("E does not contain the computed product set");
  r.mu_E = measure(G, e, Side::left);
  r.nu_E = measure(G, e, Side::right);
  auto sup = constrained_subgroup_sup(G, e, r.alpha, r.beta);
  r.s = sup.value;
  r.cap = sup.cap;
  r.witness = sup.witness;
  r.product_restricted = sup.product_restricted;
  if (sup.product_restricted) r.notes.push_back("subgroup search limited to products of factor subgroups");
  HaarValue factor = HaarValue(1) - r.s / (r.alpha * m.nu_X + m.mu_Y / r.beta);
  r.branch1 = bracketed(m, [&](const HaarValue& nu, const HaarValue& mu) {
    return ratio_sum(m.nu_X, nu, m.mu_Y, mu) * factor;
  });
  r.branch1_outer = ratio_sum(m.nu_X, m.nu_out, m.mu_Y, m.mu_out) * factor;
  r.branch2 = r.mu_G.is_infinite() ? HaarValue::infinity() : bracketed(m, [&](const HaarValue&, const HaarValue& mu) {
    return r.mu_G / mu;
  });
  HaarValue least = min(r.branch1, r.branch2);
  r.slack = HaarValue(1) - least;
  r.verdict = at_most_one(least);
  if (r.verdict == Verdict::inconclusive) r.notes.push_back("bracket too wide to decide; refine h -> h/2");
  return r;
}

InequalityReport verify_unimodular(const GroupModel& G, const GroupSet& X, const GroupSet& Y,
                                   const std::optional<GroupSet>& E) {
  if (!G.is_unimodular()) throw ModelError("unimodular law needs a unimodular model");
  Measures m = measures(G, X, Y);
  InequalityReport r;
  r.law = "unimodular";
  r.orientation = Orientation::corrected;
  fill_common(r, G, m);
  r.alpha = HaarValue(1);
  r.beta = HaarValue(1);
  const GroupSet& e = E ? *E : m.XY.outer;
  if (E && !subset(G, m.XY.outer, *E)) r.notes.push_back("E does not contain the computed product set");
  r.mu_E = measure(G, e, Side::left);
  r.nu_E = measure(G, e, Side::right);
  auto sup = constrained_subgroup_sup(G, e, r.alpha, r.beta);
  r.s = sup.value;
  r.cap = sup.cap;
  r.witness = sup.witness;
  r.product_restricted = sup.product_restricted;
  r.bound = min(m.mu_X + m.mu_Y - r.s, r.mu_G);
  r.slack = r.mu_XY - r.bound;
  r.verdict = nonnegative(r.slack);
  HaarValue factor = HaarValue(1) - r.s / (m.nu_X + m.mu_Y);
  r.branch1 = r.kemperman_sum * factor;
  r.branch1_outer = r.branch1;
  r.branch2 = r.mu_G.is_infinite() ? HaarValue::infinity() : r.mu_G / r.mu_XY;
  return r;
}

InequalityReport verify_kemperman_connected(const GroupModel& G, const GroupSet& X, const GroupSet& Y) {
  if (G.kind() != GroupModel::Kind::grid) throw ModelError("the connected-group law needs an affine grid model");
  Measures m = measures(G, X, Y);
  InequalityReport r;
  r.law = "kemperman";
  r.orientation = Orientation::corrected;
  fill_common(r, G, m);
  auto ab = alpha_beta(G, X, Y, Orientation::corrected);
  r.alpha = ab.alpha;
  r.beta = ab.beta;
  r.s = HaarValue(0);
  r.cap = HaarValue(0);
  r.mu_E = measure(G, m.XY.outer, Side::left);
  r.nu_E = measure(G, m.XY.outer, Side::right);
  r.branch1 = r.kemperman_sum;
  r.branch1_outer = ratio_sum(m.nu_X, m.nu_out, m.mu_Y, m.mu_out);
  r.branch2 = HaarValue::infinity();
  r.slack = HaarValue(1) - r.branch1;
  r.verdict = at_most_one(r.branch1);
  if (r.verdict == Verdict::inconclusive) r.notes.push_back("bracket too wide to decide; refine h -> h/2");
  return r;
}

KneserReport verify_kneser_abelian(const GroupModel& G, const GroupSet& X, const GroupSet& Y) {
  if (G.kind() != GroupModel::Kind::finite || !G.finite().is_abelian()) {
    throw ModelError("Kneser's theorem needs a finite abelian model");
  }
  const auto& F = G.finite();
  const auto& x = X.elements();
  const auto& y = Y.elements();
  if (x.empty() || y.empty()) throw InputError("X and Y must be nonempty");
  KneserReport r;
  r.XY = F.product(x, y);
  r.stabilizer = F.empty_set();
  const std::size_t xy = r.XY.size();
  for (const auto& h : F.subgroup_lattice()) {
    bool stabilizes = F.product(r.XY, h) == r.XY;
    if (stabilizes && h.size() > r.stabilizer.size()) r.stabilizer = h;
    if (!stabilizes || xy + h.size() < x.size() + y.size()) continue;
    ++r.satisfying_count;
    // The lattice is sorted by size, so the last hit is the largest; keep the
    // first among equals.
    if (!r.H || r.H->size() < h.size()) r.H = h;
  }
  r.verdict = r.H ? Verdict::holds : Verdict::violated;
  return r;
}

}  // namespace lcg
