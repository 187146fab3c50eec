#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcg/minimizer.hpp"

namespace lcg {

struct CosetWitness {
  // Finite models: g and z with g z H z^{-1} inside XY.
  // p-adic models: g and z describe the atom pair (x0 a H b y0 inside XY, z = (b y0)^{-1}).
  std::string g;
  std::string z;
  bool ok = false;
};

struct Prop42Report {
  Orientation orientation = Orientation::corrected;
  GroupSet XY;
  GroupSet D;
  HaarValue alpha, beta;
  HaarValue rho, kappa_prime, mu_H;
  HaarValue D_size;  // min{beta^{-1} mu(D), alpha nu(D)}
  HaarValue bound;   // mu(H) - rho kappa'
  bool bound_ok = false;
  std::vector<CosetWitness> witnesses;
  std::size_t coset_checks = 0;
  std::size_t coset_failures = 0;
  Verdict verdict = Verdict::holds;
  std::vector<std::string> notes;
};

Prop42Report check_prop42(const GroupModel& G, const NormalizedPair& ctx, const MinimizerPair& pair);

struct Example41 {
  GroupModel G;
  GroupSet X, Y, H, W, XY;
  Element x;
  HaarValue nu_X, mu_Y, nu_XY, mu_XY;
  HaarValue sum;          // nu(X)/nu(XY) + mu(Y)/mu(XY)
  HaarValue display_sum;  // the same quantity through the slab decomposition
  bool exceeds_one = false;
  bool display_matches = false;
  std::vector<std::string> flags;
};

// H = Z_p in slab 0, X a union of balls inside H, W a union of balls in slab 0,
// x = (-t, 0) and Y = H u Wx.
Example41 build_example41(std::int64_t p, int t, const std::vector<Ball>& X_balls, const std::vector<Ball>& W_balls);

}  // namespace lcg
