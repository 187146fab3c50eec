#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "lcg/affine_grid.hpp"
#include "lcg/element_set.hpp"
#include "lcg/finite_group.hpp"
#include "lcg/haar_value.hpp"
#include "lcg/padic.hpp"

namespace lcg {

enum class Side { left, right };
enum class Region { below, on, above };

const char* to_string(Region r);

class GroupModel;

// An element of some model: finite index, grid lattice point, p-adic point, or
// a tuple for product models.
struct Element {
  std::variant<std::uint32_t, GridPoint, PAdicPoint, std::vector<Element>> v;

  Element() = default;
  Element(std::uint32_t x) : v(x) {}  // NOLINT(google-explicit-constructor)
  Element(GridPoint x) : v(x) {}  // NOLINT(google-explicit-constructor)
  Element(PAdicPoint x) : v(std::move(x)) {}  // NOLINT(google-explicit-constructor)
  Element(std::vector<Element> x) : v(std::move(x)) {}  // NOLINT(google-explicit-constructor)

  std::uint32_t index() const { return std::get<std::uint32_t>(v); }
  const GridPoint& grid() const { return std::get<GridPoint>(v); }
  const PAdicPoint& padic() const { return std::get<PAdicPoint>(v); }
  const std::vector<Element>& tuple() const { return std::get<std::vector<Element>>(v); }

  friend bool operator==(const Element& a, const Element& b) { return a.v == b.v; }
};

struct GroupSet;

// Union of pairwise disjoint boxes; box i is the product of boxes[i][f] over factors f.
struct BoxUnion {
  std::vector<std::vector<GroupSet>> boxes;
};

// A compact set: bitset (finite), cell union (grid), canonical balls (p-adic)
// or a disjoint box union (product).
struct GroupSet {
  std::variant<ElementSet, CellSet, BallSet, BoxUnion> v;

  GroupSet() = default;
  GroupSet(ElementSet s) : v(std::move(s)) {}  // NOLINT(google-explicit-constructor)
  GroupSet(CellSet s) : v(std::move(s)) {}  // NOLINT(google-explicit-constructor)
  GroupSet(BallSet s) : v(std::move(s)) {}  // NOLINT(google-explicit-constructor)
  GroupSet(BoxUnion s) : v(std::move(s)) {}  // NOLINT(google-explicit-constructor)

  const ElementSet& elements() const { return std::get<ElementSet>(v); }
  const CellSet& cells() const { return std::get<CellSet>(v); }
  const BallSet& balls() const { return std::get<BallSet>(v); }
  const BoxUnion& boxes() const { return std::get<BoxUnion>(v); }
};

// inner is contained in the true set and the true set in outer; the two
// coincide in exact models.
struct SetBracket {
  GroupSet inner;
  GroupSet outer;
};

class GroupModel {
 public:
  enum class Kind { finite, grid, padic, product };

  static GroupModel finite(FiniteGroup g, std::vector<std::uint32_t> factor_orders = {});
  static GroupModel grid(AffineGrid g);
  static GroupModel padic(PAdicAffine g);
  // All-finite factor lists are flattened into one table.
  static GroupModel product(std::vector<GroupModel> factors);

  Kind kind() const { return kind_; }
  const FiniteGroup& finite() const { return *finite_; }
  const AffineGrid& grid() const { return *grid_; }
  const PAdicAffine& padic() const { return *padic_; }
  const std::vector<GroupModel>& factors() const { return *factors_; }
  // For a flattened product of finite groups: the factor orders, else empty.
  const std::vector<std::uint32_t>& finite_factor_orders() const { return factor_orders_; }

  // Every measure is an exact rational (no grid anywhere).
  bool is_exact() const;
  bool is_unimodular() const;
  bool is_compact() const;
  const std::string& name() const { return name_; }

 private:
  Kind kind_ = Kind::finite;
  std::shared_ptr<const FiniteGroup> finite_;
  std::shared_ptr<const AffineGrid> grid_;
  std::shared_ptr<const PAdicAffine> padic_;
  std::shared_ptr<const std::vector<GroupModel>> factors_;
  std::vector<std::uint32_t> factor_orders_;
  std::string name_;
};

Element identity(const GroupModel& G);
Element group_law(const GroupModel& G, const Element& x, const Element& y);
Element invert(const GroupModel& G, const Element& x);
HaarValue modular(const GroupModel& G, const Element& x);
Region classify_region(const GroupModel& G, const Element& x);
bool in_carrier(const GroupModel& G, const Element& x);

// mu(G): the group order for finite models, +inf otherwise.
HaarValue total_measure(const GroupModel& G);

GroupSet empty_set(const GroupModel& G);
GroupSet singleton(const GroupModel& G, const Element& x);
bool is_empty(const GroupSet& s);
bool contains(const GroupModel& G, const GroupSet& s, const Element& x);

HaarValue measure(const GroupModel& G, const GroupSet& s, Side side);
SetBracket translate(const GroupModel& G, const GroupSet& s, const Element& g, Side side);
SetBracket inverse_set(const GroupModel& G, const GroupSet& s);
SetBracket product_set(const GroupModel& G, const GroupSet& s, const GroupSet& t);

GroupSet unite(const GroupModel& G, const GroupSet& a, const GroupSet& b);
GroupSet intersect(const GroupModel& G, const GroupSet& a, const GroupSet& b);
GroupSet subtract(const GroupModel& G, const GroupSet& a, const GroupSet& b);
bool subset(const GroupModel& G, const GroupSet& a, const GroupSet& b);
bool equal(const GroupModel& G, const GroupSet& a, const GroupSet& b);

struct DeltaExtrema {
  HaarValue sup;
  HaarValue inf;
  Element argmax;
  Element argmin;
};
DeltaExtrema delta_extrema(const GroupModel& G, const GroupSet& s);

// Convenience for exact models: the bracket must be tight.
const GroupSet& exact_set(const SetBracket& b);

// Builtin finite groups: all 14 groups of order <= 8, then cyclic and
// dihedral groups and A4 up to max_order.
std::vector<GroupModel> builtin_groups(std::uint32_t max_order);

}  // namespace lcg
