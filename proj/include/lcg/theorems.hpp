#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcg/group.hpp"
#include "lcg/subgroups.hpp"

namespace lcg {

// as_stated: alpha = sup_X Delta, beta = inf_Y Delta (the printed theorem).
// corrected: alpha = inf_X Delta, beta = sup_Y Delta (the direction the
// proof's region displays actually use).
enum class Orientation { as_stated, corrected };
enum class Verdict { holds, violated, inconclusive };

const char* to_string(Orientation o);
const char* to_string(Verdict v);
Orientation parse_orientation(const std::string& s);

struct AlphaBeta {
  HaarValue alpha;
  HaarValue beta;
  Element x_witness;
  Element y_witness;
};
AlphaBeta alpha_beta(const GroupModel& G, const GroupSet& X, const GroupSet& Y, Orientation o);

struct InequalityReport {
  std::string law;
  Orientation orientation = Orientation::corrected;
  HaarValue alpha, beta;
  HaarValue nu_X, mu_X, nu_Y, mu_Y;
  // Exact in exact models; in the grid the hull [inner.lo, outer.hi].
  HaarValue nu_XY, mu_XY;
  HaarValue mu_G;
  HaarValue mu_E, nu_E;
  HaarValue s;  // constrained subgroup supremum
  HaarValue cap;
  std::optional<SubgroupWitness> witness;
  bool product_restricted = false;
  // nu(X)/nu(XY) + mu(Y)/mu(XY)
  HaarValue kemperman_sum;
  HaarValue branch1;
  // branch1 evaluated with the outer product set in the denominators.
  HaarValue branch1_outer;
  HaarValue branch2;
  // Unimodular law: min{mu(X) + mu(Y) - s, mu(G)}.
  HaarValue bound;
  HaarValue slack;
  Verdict verdict = Verdict::holds;
  SetBracket XY;
  std::vector<std::string> notes;
};

// rho = nu(X)/nu(XY) + mu(Y)/mu(XY) - 1
HaarValue rho(const GroupModel& G, const GroupSet& X, const GroupSet& Y);
// Weighted harmonic mean of nu(X*Y*) and mu(X*Y*); throws ModelError if the
// sandwich min <= kappa <= max fails.
HaarValue kappa(const GroupModel& G, const GroupSet& Xs, const GroupSet& Ys);
HaarValue kappa_from(const HaarValue& nu_x, const HaarValue& mu_y, const HaarValue& nu_xy, const HaarValue& mu_xy);

// E defaults to the (outer) product set.
InequalityReport verify_main(const GroupModel& G, const GroupSet& X, const GroupSet& Y,
                             const std::optional<GroupSet>& E, Orientation o);
InequalityReport verify_unimodular(const GroupModel& G, const GroupSet& X, const GroupSet& Y,
                                   const std::optional<GroupSet>& E);
InequalityReport verify_kemperman_connected(const GroupModel& G, const GroupSet& X, const GroupSet& Y);

struct KneserReport {
  ElementSet XY;
  // Largest subgroup satisfying both conditions (ties: canonical order).
  std::optional<ElementSet> H;
  ElementSet stabilizer;
  std::size_t satisfying_count = 0;
  Verdict verdict = Verdict::holds;
};
// (i) |XY| >= |X| + |Y| - |H| and (ii) XY H = XY.
KneserReport verify_kneser_abelian(const GroupModel& G, const GroupSet& X, const GroupSet& Y);

}  // namespace lcg
