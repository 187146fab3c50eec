#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lcg/group.hpp"
#include "lcg/theorems.hpp"

namespace lcg {

// X* = x0^{-1} X and Y* = Y y0^{-1} with x0, y0 the Delta-extremal points
// picked by the orientation.
struct NormalizedPair {
  Orientation orientation = Orientation::corrected;
  Element x0, y0;
  GroupSet X, Y;
  GroupSet Xstar, Ystar;
  GroupSet XYstar;
};

enum class Provenance { exact, heuristic };
enum class Direction { expand_x, expand_y };

const char* to_string(Provenance p);

struct MinimizerPair {
  GroupSet X0, Y0, H;
  // Lexicographic objective (nu(X0) + mu(Y0), nu(X0)).
  HaarValue sum;
  HaarValue nu_X0;
  bool feasible = false;
  Provenance provenance = Provenance::exact;
  std::size_t atoms = 0;
  std::uint64_t nodes = 0;
};

struct ClaimsReport {
  bool stabilizer = false;   // X0 H = X0 and H Y0 = Y0
  bool group = false;        // H contains the identity, closed under products and inverses
  bool size = false;         // mu(H) >= rho kappa
  bool cap = false;          // mu(H) <= min{Delta(y0)^{-1} mu(XY), Delta(x0) nu(XY)}
  bool sum_lower_bound = false;  // nu(X0) + mu(Y0) >= nu(X*) + mu(Y*)
  bool advisory = false;
  HaarValue mu_H, rho, kappa, rho_kappa, cap_value;
  std::vector<std::string> failures;

  bool all_pass() const { return stabilizer && group && size && cap; }
};

NormalizedPair normalize_pair(const GroupModel& G, const GroupSet& X, const GroupSet& Y, Orientation o);

// Region constraint of Omega_0 for the X-side and the Y-side.
bool allowed_x(const GroupModel& G, const NormalizedPair& ctx, Region r);
bool allowed_y(const GroupModel& G, const NormalizedPair& ctx, Region r);

bool is_feasible(const GroupModel& G, const NormalizedPair& ctx, const GroupSet& Xp, const GroupSet& Yp);

std::pair<GroupSet, GroupSet> transform_step(const GroupModel& G, const NormalizedPair& ctx, const GroupSet& Xp,
                                             const GroupSet& Yp, const Element& g, Direction d);

MinimizerPair maximize_heuristic(const GroupModel& G, const NormalizedPair& ctx);

constexpr std::size_t kDefaultAtomBound = 14;
// Throws ModelError when the atom universe exceeds the bound (use the heuristic).
MinimizerPair maximize_exact(const GroupModel& G, const NormalizedPair& ctx,
                             std::size_t atom_bound = kDefaultAtomBound);

ClaimsReport verify_claims(const GroupModel& G, const NormalizedPair& ctx, const MinimizerPair& pair);

}  // namespace lcg
