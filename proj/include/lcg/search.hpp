#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lcg/group.hpp"
#include "lcg/subgroups.hpp"
#include "lcg/theorems.hpp"

namespace lcg {

enum class Law { unimodular, main };

const char* to_string(Law l);
Law parse_law(const std::string& s);

// unimodular: mu(XY) - min{mu(X) + mu(Y) - s, mu(G)};
// main: 1 - min(branch1, branch2). Zero means equality; negative means the
// law fails on this pair.
HaarValue slack(const GroupModel& G, const GroupSet& X, const GroupSet& Y, Law law,
                Orientation o = Orientation::corrected);

struct ExtremalWitness {
  GroupSet X, Y;
  HaarValue slack;
  Law law = Law::unimodular;
  std::optional<SubgroupWitness> subgroup;
};

struct SearchOptions {
  Law law = Law::unimodular;
  Orientation orientation = Orientation::corrected;
  std::uint64_t budget = 1000;
  std::uint64_t seed = 0;
  Rational threshold = Rational(1);
  unsigned threads = 0;  // 0: hardware concurrency
  // Run the exact minimizer on every witness and record pairs with D != empty.
  bool check_conjecture = false;
};

struct SearchResult {
  std::vector<ExtremalWitness> witnesses;
  std::vector<ExtremalWitness> counterexamples;
  std::vector<ExtremalWitness> nonempty_D;
  std::uint64_t evaluations = 0;
  std::uint64_t conjecture_checked = 0;
};

// Canonical representative of (X, Y) up to X -> gX and Y -> Yh.
std::pair<ElementSet, ElementSet> canonical_pair(const FiniteGroup& F, const ElementSet& X, const ElementSet& Y);

// Nonempty random subset of {0..n-1} with a randomly drawn density.
ElementSet random_subset(std::mt19937_64& rng, std::uint32_t n);

SearchResult find_near_equality(const GroupModel& G, const SearchOptions& opt);

}  // namespace lcg
