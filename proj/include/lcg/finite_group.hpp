#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lcg/element_set.hpp"

namespace lcg {

// Finite group given by its multiplication table, with counting measure.
// The group axioms are verified exhaustively at construction.
class FiniteGroup {
 public:
  static constexpr std::uint32_t kMaxOrder = 1024;

  // rows[x][y] = x*y. Throws AxiomError naming the failing axiom.
  static FiniteGroup from_table(const std::vector<std::vector<std::int64_t>>& rows,
                                std::string name = "table");
  static FiniteGroup cyclic(std::uint32_t n);
  // Symmetries of the regular n-gon, order 2n; r^i s^j has index i + n*j.
  static FiniteGroup dihedral(std::uint32_t n);
  // Order 8: indices 0..7 are 1, -1, i, -i, j, -j, k, -k.
  static FiniteGroup quaternion();
  // Permutation groups on n <= 5 points, permutations listed lexicographically.
  static FiniteGroup symmetric(std::uint32_t n);
  static FiniteGroup alternating(std::uint32_t n);
  // Index of (a, b) is a * |H| + b.
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

  FiniteGroup(FiniteGroup&&) noexcept = default;
  FiniteGroup& operator=(FiniteGroup&&) noexcept = default;

  std::uint32_t order() const { return n_; }
  std::uint32_t identity() const { return identity_; }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const { return table_[static_cast<std::size_t>(x) * n_ + y]; }
  std::uint32_t inv(std::uint32_t x) const { return inverse_[x]; }
  bool is_abelian() const { return abelian_; }
  const std::string& name() const { return name_; }

  ElementSet empty_set() const { return ElementSet(n_); }
  ElementSet full_set() const { return ElementSet::full(n_); }
  ElementSet singleton(std::uint32_t x) const { return ElementSet(n_, {x}); }

  ElementSet left_translate(std::uint32_t g, const ElementSet& s) const;
  ElementSet right_translate(const ElementSet& s, std::uint32_t g) const;
  ElementSet product(const ElementSet& s, const ElementSet& t) const;
  ElementSet inverse(const ElementSet& s) const;

  // Smallest subgroup containing s.
  ElementSet closure(const ElementSet& s) const;
  bool is_subgroup(const ElementSet& s) const;

  // Every subgroup, sorted by size then canonical order. Computed once.
  const std::vector<ElementSet>& subgroup_lattice() const;

 private:
  FiniteGroup() = default;
  void finish(bool validate);

  struct Cache {
    std::once_flag once;
    std::vector<ElementSet> subgroups;
  };

  std::uint32_t n_ = 0;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  bool abelian_ = false;
  std::string name_;
  // For order <= 64: mask of x * {8c + i : bit i of v} at (x * chunks + c) * 256 + v.
  std::vector<std::uint64_t> left_bytes_;
  std::unique_ptr<Cache> cache_;
};

}  // namespace lcg
