#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lcg/group.hpp"

namespace lcg {

struct SubgroupWitness {
  GroupSet carrier;
  HaarValue mu;
  bool is_proper = true;
  bool in_kernel = true;
  // Measure-zero subgroup (the identity in a non-discrete model); carrier is empty.
  bool null = false;
};

// Every subgroup of a finite model, sorted by order then canonical order.
std::vector<SubgroupWitness> enumerate_subgroups(const GroupModel& G, std::uint32_t max_order = 64);

// Compact subgroups of ker Delta representable in the model: all subgroups of a
// finite model, the balls p^d Z_p in slab 0 for the p-adic model (d ascending),
// nothing for the grid. Product models combine factor subgroups.
std::vector<SubgroupWitness> kernel_subgroups(const GroupModel& G);

SubgroupWitness null_subgroup(const GroupModel& G);

struct SubgroupSup {
  HaarValue value;
  std::optional<SubgroupWitness> witness;
  HaarValue cap;
  // Product models only search products of factor subgroups.
  bool product_restricted = false;
};

// sup mu(H) over proper compact subgroups H of ker Delta with
// mu(H) <= min{beta^{-1} mu(E), alpha nu(E)}; 0 without witness if none has
// positive measure.
SubgroupSup constrained_subgroup_sup(const GroupModel& G, const GroupSet& E, const HaarValue& alpha,
                                     const HaarValue& beta);

}  // namespace lcg
