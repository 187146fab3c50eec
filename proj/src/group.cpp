#include "lcg/group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lcg/errors.hpp"

namespace lcg {
namespace {

using Box = std::vector<GroupSet>;

bool box_empty(const Box& b) {
  return std::any_of(b.begin(), b.end(), [](const GroupSet& s) { return is_empty(s); });
}

std::vector<Box> box_subtract(const GroupModel& G, const Box& a, const Box& b) {
  const auto& f = G.factors();
  Box meet(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) meet[i] = intersect(f[i], a[i], b[i]);
  if (box_empty(meet)) return {a};
  // Peel off one factor at a time: the pieces are pairwise disjoint.
  std::vector<Box> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Box piece(a.size());
    for (std::size_t j = 0; j < i; ++j) piece[j] = meet[j];
    piece[i] = subtract(f[i], a[i], b[i]);
    for (std::size_t j = i + 1; j < a.size(); ++j) piece[j] = a[j];
    if (!box_empty(piece)) out.push_back(std::move(piece));
  }
  return out;
}

BoxUnion boxes_subtract(const GroupModel& G, const BoxUnion& u, const BoxUnion& v) {
  std::vector<Box> cur = u.boxes;
  for (const auto& cut : v.boxes) {
    std::vector<Box> next;
    for (const auto& b : cur) {
      auto parts = box_subtract(G, b, cut);
      next.insert(next.end(), std::make_move_iterator(parts.begin()), std::make_move_iterator(parts.end()));
    }
    cur = std::move(next);
  }
  return {std::move(cur)};
}

BoxUnion boxes_unite(const GroupModel& G, const BoxUnion& u, const BoxUnion& v) {
  BoxUnion out = u;
  auto extra = boxes_subtract(G, v, u);
  for (auto& b : extra.boxes) out.boxes.push_back(std::move(b));
  return out;
}

BoxUnion boxes_from(const GroupModel& G, std::vector<Box> boxes) {
  BoxUnion acc;
  for (auto& b : boxes) {
    if (box_empty(b)) continue;
    acc = boxes_unite(G, acc, BoxUnion{{std::move(b)}});
  }
  return acc;
}

// Applies a factorwise bracket-valued map to each box of a union.
template <class F>
SetBracket map_boxes(const GroupModel& G, const BoxUnion& u, F&& fn) {
  std::vector<Box> inner, outer;
  for (const auto& box : u.boxes) {
    Box bi(box.size()), bo(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
      SetBracket r = fn(i, box[i]);
      bi[i] = std::move(r.inner);
      bo[i] = std::move(r.outer);
    }
    inner.push_back(std::move(bi));
    outer.push_back(std::move(bo));
  }
  return {boxes_from(G, std::move(inner)), boxes_from(G, std::move(outer))};
}

SetBracket tight(GroupSet s) {
  SetBracket b{s, s};
  return b;
}

[[noreturn]] void mismatch() { throw InputError("set or element does not belong to this model"); }

}  // namespace

const char* to_string(Region r) {
  switch (r) {
    case Region::below: return "below";
    case Region::on: return "on";
    case Region::above: return "above";
  }
  return "?";
}

GroupModel GroupModel::finite(FiniteGroup g, std::vector<std::uint32_t> factor_orders) {
  GroupModel m;
  m.kind_ = Kind::finite;
  m.name_ = g.name();
  m.finite_ = std::make_shared<const FiniteGroup>(std::move(g));
  m.factor_orders_ = std::move(factor_orders);
  return m;
}

GroupModel GroupModel::grid(AffineGrid g) {
  GroupModel m;
  m.kind_ = Kind::grid;
  m.name_ = "affine_grid(h=" + format_real(g.h()) + ")";
  m.grid_ = std::make_shared<const AffineGrid>(std::move(g));
  return m;
}

GroupModel GroupModel::padic(PAdicAffine g) {
  GroupModel m;
  m.kind_ = Kind::padic;
  m.name_ = "padic_affine(p=" + std::to_string(g.p()) + ")";
  m.padic_ = std::make_shared<const PAdicAffine>(std::move(g));
  return m;
}

GroupModel GroupModel::product(std::vector<GroupModel> factors) {
  if (factors.empty()) throw InputError("product needs at least one factor");
  if (factors.size() == 1) return factors.front();
  bool all_finite = std::all_of(factors.begin(), factors.end(), [](const GroupModel& f) {
    return f.kind() == Kind::finite && f.finite_factor_orders().empty();
  });
  if (all_finite) {
    std::vector<std::uint32_t> orders;
    FiniteGroup acc = FiniteGroup::direct_product(factors[0].finite(), factors[1].finite());
    for (std::size_t i = 2; i < factors.size(); ++i) acc = FiniteGroup::direct_product(acc, factors[i].finite());
    for (const auto& f : factors) orders.push_back(f.finite().order());
    return finite(std::move(acc), std::move(orders));
  }
  GroupModel m;
  m.kind_ = Kind::product;
  m.name_ = "product(";
  for (std::size_t i = 0; i < factors.size(); ++i) m.name_ += (i ? "," : "") + factors[i].name();
  m.name_ += ")";
  m.factors_ = std::make_shared<const std::vector<GroupModel>>(std::move(factors));
  return m;
}

bool GroupModel::is_exact() const {
  switch (kind_) {
    case Kind::finite:
    case Kind::padic: return true;
    case Kind::grid: return false;
    case Kind::product:
      return std::all_of(factors_->begin(), factors_->end(), [](const GroupModel& f) { return f.is_exact(); });
  }
  return false;
}

bool GroupModel::is_unimodular() const {
  if (kind_ == Kind::finite) return true;
  if (kind_ == Kind::product) {
    return std::all_of(factors_->begin(), factors_->end(), [](const GroupModel& f) { return f.is_unimodular(); });
  }
  return false;
}

bool GroupModel::is_compact() const { return is_unimodular(); }

Element identity(const GroupModel& G) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return Element(G.finite().identity());
    case GroupModel::Kind::grid: return Element(G.grid().identity());
    case GroupModel::Kind::padic: return Element(G.padic().identity());
    case GroupModel::Kind::product: {
      std::vector<Element> t;
      for (const auto& f : G.factors()) t.push_back(identity(f));
      return Element(std::move(t));
    }
  }
  mismatch();
}

bool in_carrier(const GroupModel& G, const Element& x) {
  try {
    switch (G.kind()) {
      case GroupModel::Kind::finite:
        return std::holds_alternative<std::uint32_t>(x.v) && x.index() < G.finite().order();
      case GroupModel::Kind::grid:
        if (!std::holds_alternative<GridPoint>(x.v)) return false;
        G.grid().make_point(x.grid().n, x.grid().m);
        return true;
      case GroupModel::Kind::padic:
        if (!std::holds_alternative<PAdicPoint>(x.v)) return false;
        G.padic().make_point(x.padic().k, x.padic().b);
        return true;
      case GroupModel::Kind::product: {
        if (!std::holds_alternative<std::vector<Element>>(x.v)) return false;
        const auto& t = x.tuple();
        if (t.size() != G.factors().size()) return false;
        for (std::size_t i = 0; i < t.size(); ++i) {
          if (!in_carrier(G.factors()[i], t[i])) return false;
        }
        return true;
      }
    }
  } catch (const ModelError&) {
    return false;
  }
  return false;
}

Element group_law(const GroupModel& G, const Element& x, const Element& y) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: {
      auto n = G.finite().order();
      if (x.index() >= n || y.index() >= n) mismatch();
      return Element(G.finite().mul(x.index(), y.index()));
    }
    case GroupModel::Kind::grid: return Element(G.grid().mul(x.grid(), y.grid()));
    case GroupModel::Kind::padic: return Element(G.padic().mul(x.padic(), y.padic()));
    case GroupModel::Kind::product: {
      std::vector<Element> t;
      const auto& f = G.factors();
      if (x.tuple().size() != f.size() || y.tuple().size() != f.size()) mismatch();
      for (std::size_t i = 0; i < f.size(); ++i) t.push_back(group_law(f[i], x.tuple()[i], y.tuple()[i]));
      return Element(std::move(t));
    }
  }
  mismatch();
}

Element invert(const GroupModel& G, const Element& x) {
  switch (G.kind()) {
    case GroupModel::Kind::finite:
      if (x.index() >= G.finite().order()) mismatch();
      return Element(G.finite().inv(x.index()));
    case GroupModel::Kind::grid: return Element(G.grid().inv(x.grid()));
    case GroupModel::Kind::padic: return Element(G.padic().inv(x.padic()));
    case GroupModel::Kind::product: {
      std::vector<Element> t;
      const auto& f = G.factors();
      if (x.tuple().size() != f.size()) mismatch();
      for (std::size_t i = 0; i < f.size(); ++i) t.push_back(invert(f[i], x.tuple()[i]));
      return Element(std::move(t));
    }
  }
  mismatch();
}

HaarValue modular(const GroupModel& G, const Element& x) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return HaarValue(1);
    case GroupModel::Kind::grid: return HaarValue(G.grid().modular(x.grid()));
    case GroupModel::Kind::padic: return HaarValue(G.padic().modular(x.padic()));
    case GroupModel::Kind::product: {
      HaarValue acc(1);
      const auto& f = G.factors();
      for (std::size_t i = 0; i < f.size(); ++i) acc = acc * modular(f[i], x.tuple()[i]);
      return acc;
    }
  }
  mismatch();
}

Region classify_region(const GroupModel& G, const Element& x) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return Region::on;
    case GroupModel::Kind::grid: {
      int r = G.grid().region(x.grid());
      return r < 0 ? Region::below : (r > 0 ? Region::above : Region::on);
    }
    case GroupModel::Kind::padic: {
      int k = x.padic().k;
      return k < 0 ? Region::below : (k > 0 ? Region::above : Region::on);
    }
    case GroupModel::Kind::product: {
      HaarValue d = modular(G, x);
      if (d.is_exact()) {
        int c = d.exact() <=> Rational(1) == 0 ? 0 : (d.exact() < Rational(1) ? -1 : 1);
        return c < 0 ? Region::below : (c > 0 ? Region::above : Region::on);
      }
      // A grid factor is present: classify by the product of factor bands.
      Interval b = d.bounds();
      double band = 0.0;
      for (const auto& f : G.factors()) {
        if (f.kind() == GroupModel::Kind::grid) band += f.grid().h();
      }
      if (b.hi < std::exp(-band)) return Region::below;
      if (b.lo > std::exp(band)) return Region::above;
      return Region::on;
    }
  }
  mismatch();
}

HaarValue total_measure(const GroupModel& G) {
  if (G.kind() == GroupModel::Kind::finite) return HaarValue(static_cast<std::int64_t>(G.finite().order()));
  if (G.kind() == GroupModel::Kind::product && G.is_compact()) {
    HaarValue acc(1);
    for (const auto& f : G.factors()) acc = acc * total_measure(f);
    return acc;
  }
  return HaarValue::infinity();
}

GroupSet empty_set(const GroupModel& G) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return G.finite().empty_set();
    case GroupModel::Kind::grid: return CellSet{};
    case GroupModel::Kind::padic: return BallSet{};
    case GroupModel::Kind::product: return BoxUnion{};
  }
  mismatch();
}

GroupSet singleton(const GroupModel& G, const Element& x) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return G.finite().singleton(x.index());
    case GroupModel::Kind::grid: return G.grid().from_cells({{x.grid().n, x.grid().m}});
    case GroupModel::Kind::padic:
      // Points are null sets; the smallest ball in the window stands in for them.
      return G.padic().canonicalize({G.padic().make_ball(x.padic().k, x.padic().b, G.padic().d_max())});
    case GroupModel::Kind::product: {
      Box b;
      for (std::size_t i = 0; i < G.factors().size(); ++i) b.push_back(singleton(G.factors()[i], x.tuple()[i]));
      return BoxUnion{{std::move(b)}};
    }
  }
  mismatch();
}

bool is_empty(const GroupSet& s) {
  return std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoxUnion>) {
          return x.boxes.empty();
        } else {
          return x.empty();
        }
      },
      s.v);
}

bool contains(const GroupModel& G, const GroupSet& s, const Element& x) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return s.elements().contains(x.index());
    case GroupModel::Kind::grid: return G.grid().contains(s.cells(), x.grid());
    case GroupModel::Kind::padic: return G.padic().contains(s.balls(), x.padic());
    case GroupModel::Kind::product:
      for (const auto& box : s.boxes().boxes) {
        bool all = true;
        for (std::size_t i = 0; i < box.size() && all; ++i) all = contains(G.factors()[i], box[i], x.tuple()[i]);
        if (all) return true;
      }
      return false;
  }
  mismatch();
}

HaarValue measure(const GroupModel& G, const GroupSet& s, Side side) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return HaarValue(static_cast<std::int64_t>(s.elements().size()));
    case GroupModel::Kind::grid:
      return HaarValue(side == Side::left ? G.grid().left_measure(s.cells()) : G.grid().right_measure(s.cells()));
    case GroupModel::Kind::padic:
      return HaarValue(side == Side::left ? G.padic().left_measure(s.balls()) : G.padic().right_measure(s.balls()));
    case GroupModel::Kind::product: {
      HaarValue total(0);
      for (const auto& box : s.boxes().boxes) {
        HaarValue m(1);
        for (std::size_t i = 0; i < box.size(); ++i) m = m * measure(G.factors()[i], box[i], side);
        total = total + m;
      }
      return total;
    }
  }
  mismatch();
}

SetBracket translate(const GroupModel& G, const GroupSet& s, const Element& g, Side side) {
  switch (G.kind()) {
    case GroupModel::Kind::finite:
      return tight(side == Side::left ? G.finite().left_translate(g.index(), s.elements())
                                      : G.finite().right_translate(s.elements(), g.index()));
    case GroupModel::Kind::grid: {
      CellBracket b = side == Side::left ? G.grid().left_translate(g.grid(), s.cells())
                                         : G.grid().right_translate(s.cells(), g.grid());
      return {std::move(b.inner), std::move(b.outer)};
    }
    case GroupModel::Kind::padic:
      return tight(side == Side::left ? G.padic().left_translate(g.padic(), s.balls())
                                      : G.padic().right_translate(s.balls(), g.padic()));
    case GroupModel::Kind::product:
      return map_boxes(G, s.boxes(), [&](std::size_t i, const GroupSet& f) {
        return translate(G.factors()[i], f, g.tuple()[i], side);
      });
  }
  mismatch();
}

SetBracket inverse_set(const GroupModel& G, const GroupSet& s) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return tight(G.finite().inverse(s.elements()));
    case GroupModel::Kind::grid: {
      CellBracket b = G.grid().inverse(s.cells());
      return {std::move(b.inner), std::move(b.outer)};
    }
    case GroupModel::Kind::padic: return tight(G.padic().inverse(s.balls()));
    case GroupModel::Kind::product:
      return map_boxes(G, s.boxes(), [&](std::size_t i, const GroupSet& f) { return inverse_set(G.factors()[i], f); });
  }
  mismatch();
}

SetBracket product_set(const GroupModel& G, const GroupSet& s, const GroupSet& t) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return tight(G.finite().product(s.elements(), t.elements()));
    case GroupModel::Kind::grid: {
      CellBracket b = G.grid().product(s.cells(), t.cells());
      return {std::move(b.inner), std::move(b.outer)};
    }
    case GroupModel::Kind::padic: return tight(G.padic().product(s.balls(), t.balls()));
    case GroupModel::Kind::product: {
      std::vector<Box> inner, outer;
      const auto& f = G.factors();
      for (const auto& a : s.boxes().boxes) {
        for (const auto& b : t.boxes().boxes) {
          Box bi(f.size()), bo(f.size());
          for (std::size_t i = 0; i < f.size(); ++i) {
            SetBracket r = product_set(f[i], a[i], b[i]);
            bi[i] = std::move(r.inner);
            bo[i] = std::move(r.outer);
          }
          inner.push_back(std::move(bi));
          outer.push_back(std::move(bo));
        }
      }
      return {boxes_from(G, std::move(inner)), boxes_from(G, std::move(outer))};
    }
  }
  mismatch();
}

GroupSet unite(const GroupModel& G, const GroupSet& a, const GroupSet& b) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return a.elements() | b.elements();
    case GroupModel::Kind::grid: return G.grid().unite(a.cells(), b.cells());
    case GroupModel::Kind::padic: return G.padic().unite(a.balls(), b.balls());
    case GroupModel::Kind::product: return boxes_unite(G, a.boxes(), b.boxes());
  }
  mismatch();
}

GroupSet intersect(const GroupModel& G, const GroupSet& a, const GroupSet& b) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return a.elements() & b.elements();
    case GroupModel::Kind::grid: return G.grid().intersect(a.cells(), b.cells());
    case GroupModel::Kind::padic: return G.padic().intersect(a.balls(), b.balls());
    case GroupModel::Kind::product: {
      std::vector<Box> out;
      for (const auto& x : a.boxes().boxes) {
        for (const auto& y : b.boxes().boxes) {
          Box m(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) m[i] = intersect(G.factors()[i], x[i], y[i]);
          if (!box_empty(m)) out.push_back(std::move(m));
        }
      }
      // Pieces of disjoint boxes are already disjoint.
      return BoxUnion{std::move(out)};
    }
  }
  mismatch();
}

GroupSet subtract(const GroupModel& G, const GroupSet& a, const GroupSet& b) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return a.elements() - b.elements();
    case GroupModel::Kind::grid: return G.grid().subtract(a.cells(), b.cells());
    case GroupModel::Kind::padic: return G.padic().subtract(a.balls(), b.balls());
    case GroupModel::Kind::product: return boxes_subtract(G, a.boxes(), b.boxes());
  }
  mismatch();
}

bool subset(const GroupModel& G, const GroupSet& a, const GroupSet& b) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return a.elements().subset_of(b.elements());
    case GroupModel::Kind::grid: return G.grid().subset(a.cells(), b.cells());
    case GroupModel::Kind::padic: return G.padic().subset(a.balls(), b.balls());
    case GroupModel::Kind::product: return is_empty(subtract(G, a, b));
  }
  mismatch();
}

bool equal(const GroupModel& G, const GroupSet& a, const GroupSet& b) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return a.elements() == b.elements();
    case GroupModel::Kind::grid: return a.cells() == b.cells();
    case GroupModel::Kind::padic: return a.balls() == b.balls();
    case GroupModel::Kind::product: return subset(G, a, b) && subset(G, b, a);
  }
  mismatch();
}

DeltaExtrema delta_extrema(const GroupModel& G, const GroupSet& s) {
  if (is_empty(s)) throw ModelError("delta extrema of an empty set");
  switch (G.kind()) {
    case GroupModel::Kind::finite: {
      Element x(s.elements().first());
      return {HaarValue(1), HaarValue(1), x, x};
    }
    case GroupModel::Kind::grid: {
      auto d = G.grid().delta_extrema(s.cells());
      return {HaarValue(d.sup), HaarValue(d.inf), Element(d.argmax), Element(d.argmin)};
    }
    case GroupModel::Kind::padic: {
      const auto& balls = s.balls().balls;
      const Ball& lo = balls.front();
      int k_hi = balls.back().k;
      auto hi = std::find_if(balls.begin(), balls.end(), [&](const Ball& b) { return b.k == k_hi; });
      const auto& P = G.padic();
      return {HaarValue(P.power(k_hi)), HaarValue(P.power(lo.k)), Element(PAdicPoint{k_hi, hi->center}),
              Element(PAdicPoint{lo.k, lo.center})};
    }
    case GroupModel::Kind::product: {
      const auto& f = G.factors();
      bool first = true;
      DeltaExtrema best;
      for (const auto& box : s.boxes().boxes) {
        HaarValue sup(1), inf(1);
        std::vector<Element> amax, amin;
        for (std::size_t i = 0; i < box.size(); ++i) {
          auto d = delta_extrema(f[i], box[i]);
          sup = sup * d.sup;
          inf = inf * d.inf;
          amax.push_back(d.argmax);
          amin.push_back(d.argmin);
        }
        if (first || less(best.sup, sup) == Truth::yes) {
          best.sup = sup;
          best.argmax = Element(amax);
        }
        if (first || less(inf, best.inf) == Truth::yes) {
          best.inf = inf;
          best.argmin = Element(amin);
        }
        first = false;
      }
      return best;
    }
  }
  mismatch();
}

const GroupSet& exact_set(const SetBracket& b) { return b.outer; }

std::vector<GroupModel> builtin_groups(std::uint32_t max_order) {
  std::vector<GroupModel> out;
  auto add = [&](FiniteGroup g) {
    if (g.order() <= max_order) out.push_back(GroupModel::finite(std::move(g)));
  };
  for (std::uint32_t n = 1; n <= std::min<std::uint32_t>(max_order, 8); ++n) {
    add(FiniteGroup::cyclic(n));
    if (n == 4) add(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
    if (n == 6) add(FiniteGroup::dihedral(3));
    if (n == 8) {
      add(FiniteGroup::direct_product(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2)));
      add(FiniteGroup::direct_product(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)),
                                      FiniteGroup::cyclic(2)));
      add(FiniteGroup::dihedral(4));
      add(FiniteGroup::quaternion());
    }
  }
  for (std::uint32_t n = 9; n <= max_order; ++n) {
    add(FiniteGroup::cyclic(n));
    if (n % 2 == 0) add(FiniteGroup::dihedral(n / 2));
    if (n == 12) add(FiniteGroup::alternating(4));
  }
  return out;
}

}  // namespace lcg
