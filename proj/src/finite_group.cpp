#include "lcg/finite_group.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "lcg/errors.hpp"

namespace lcg {
namespace {

std::string triple(std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
}

std::vector<std::vector<std::uint32_t>> permutations(std::uint32_t n, bool even_only) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::vector<std::vector<std::uint32_t>> out;
  do {
    if (even_only) {
      int inversions = 0;
      for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) inversions += p[i] > p[j];
      }
      if (inversions % 2 != 0) continue;
    }
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

FiniteGroup permutation_group(std::uint32_t n, bool even_only, std::string name) {
  if (n < 1 || n > 5) throw InputError("permutation groups are offered for 1 <= n <= 5");
  auto perms = permutations(n, even_only);
  std::vector<std::vector<std::int64_t>> rows(perms.size(), std::vector<std::int64_t>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = 0; b < perms.size(); ++b) {
      // (a*b)(i) = a(b(i))
      std::vector<std::uint32_t> c(n);
      for (std::uint32_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      rows[a][b] = std::find(perms.begin(), perms.end(), c) - perms.begin();
    }
  }
  return FiniteGroup::from_table(rows, std::move(name));
}

}  // namespace

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<std::int64_t>>& rows, std::string name) {
  const std::size_t n = rows.size();
  if (n == 0) throw InputError("empty multiplication table");
  if (n > kMaxOrder) throw InputError("table order exceeds " + std::to_string(kMaxOrder));
  FiniteGroup g;
  g.n_ = static_cast<std::uint32_t>(n);
  g.name_ = std::move(name);
  g.table_.resize(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (rows[x].size() != n) throw InputError("table row " + std::to_string(x) + " has wrong length");
    for (std::size_t y = 0; y < n; ++y) {
      std::int64_t v = rows[x][y];
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw AxiomError("closure axiom fails at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      }
      g.table_[x * n + y] = static_cast<std::uint32_t>(v);
    }
  }
  g.finish(true);
  return g;
}

void FiniteGroup::finish(bool validate) {
  const std::uint32_t n = n_;
  cache_ = std::make_unique<Cache>();
  bool found = false;
  for (std::uint32_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < n && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw AxiomError("identity axiom fails");
  inverse_.assign(n, n);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (mul(x, y) == identity_ && mul(y, x) == identity_) {
        inverse_[x] = y;
        break;
      }
    }
    if (inverse_[x] == n) throw AxiomError("inverse axiom fails for element " + std::to_string(x));
  }
  if (validate) {
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t y = 0; y < n; ++y) {
        const std::uint32_t xy = mul(x, y);
        for (std::uint32_t z = 0; z < n; ++z) {
          if (mul(xy, z) != mul(x, mul(y, z))) throw AxiomError("associativity fails at " + triple(x, y, z));
        }
      }
    }
  }
  abelian_ = true;
  for (std::uint32_t x = 0; x < n && abelian_; ++x) {
    for (std::uint32_t y = x + 1; y < n && abelian_; ++y) abelian_ = mul(x, y) == mul(y, x);
  }
  if (n <= 64) {
    const std::uint32_t chunks = (n + 7) / 8;
    left_bytes_.assign(static_cast<std::size_t>(n) * chunks * 256, 0);
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t c = 0; c < chunks; ++c) {
        std::uint64_t* row = &left_bytes_[(static_cast<std::size_t>(x) * chunks + c) * 256];
        for (std::uint32_t v = 1; v < 256; ++v) {
          std::uint32_t bit = static_cast<std::uint32_t>(__builtin_ctz(v));
          std::uint32_t y = 8 * c + bit;
          std::uint64_t single = y < n ? std::uint64_t{1} << mul(x, y) : 0;
          row[v] = row[v & (v - 1)] | single;
        }
      }
    }
  }
}

FiniteGroup FiniteGroup::cyclic(std::uint32_t n) {
  if (n < 1 || n > kMaxOrder) throw InputError("cyclic order out of range");
  FiniteGroup g;
  g.n_ = n;
  g.name_ = "Z/" + std::to_string(n);
  g.table_.resize(static_cast<std::size_t>(n) * n);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) g.table_[static_cast<std::size_t>(x) * n + y] = (x + y) % n;
  }
  g.finish(n <= 64);
  return g;
}

FiniteGroup FiniteGroup::dihedral(std::uint32_t n) {
  if (n < 1 || 2 * n > kMaxOrder) throw InputError("dihedral parameter out of range");
  FiniteGroup g;
  g.n_ = 2 * n;
  g.name_ = "D" + std::to_string(n);
  g.table_.resize(static_cast<std::size_t>(g.n_) * g.n_);
  for (std::uint32_t x = 0; x < g.n_; ++x) {
    for (std::uint32_t y = 0; y < g.n_; ++y) {
      std::uint32_t i = x % n, a = x / n, k = y % n, b = y / n;
      // r^i s^a r^k s^b = r^(i + (-1)^a k) s^(a+b)
      std::uint32_t rot = a == 0 ? (i + k) % n : (i + n - k) % n;
      g.table_[static_cast<std::size_t>(x) * g.n_ + y] = rot + n * ((a + b) % 2);
    }
  }
  g.finish(g.n_ <= 64);
  return g;
}

FiniteGroup FiniteGroup::quaternion() {
  // Basis index (1, i, j, k) -> 0..3; element 2*b + s means sign (-1)^s times basis b.
  static const std::array<std::array<int, 4>, 4> basis_mul{{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}};
  static const std::array<std::array<int, 4>, 4> basis_sign{{{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}}};
  std::vector<std::vector<std::int64_t>> rows(8, std::vector<std::int64_t>(8));
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      int bx = x / 2, sx = x % 2, by = y / 2, sy = y % 2;
      int b = basis_mul[bx][by];
      int s = (sx + sy + basis_sign[bx][by]) % 2;
      rows[x][y] = 2 * b + s;
    }
  }
  return from_table(rows, "Q8");
}

FiniteGroup FiniteGroup::symmetric(std::uint32_t n) {
  return permutation_group(n, false, "S" + std::to_string(n));
}

FiniteGroup FiniteGroup::alternating(std::uint32_t n) {
  return permutation_group(n, true, "A" + std::to_string(n));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::uint64_t order = static_cast<std::uint64_t>(g.n_) * h.n_;
  if (order > kMaxOrder) throw InputError("direct product order exceeds " + std::to_string(kMaxOrder));
  FiniteGroup p;
  p.n_ = static_cast<std::uint32_t>(order);
  p.name_ = g.name_ + "x" + h.name_;
  p.table_.resize(order * order);
  for (std::uint32_t x = 0; x < p.n_; ++x) {
    for (std::uint32_t y = 0; y < p.n_; ++y) {
      std::uint32_t a = g.mul(x / h.n_, y / h.n_);
      std::uint32_t b = h.mul(x % h.n_, y % h.n_);
      p.table_[static_cast<std::size_t>(x) * p.n_ + y] = a * h.n_ + b;
    }
  }
  p.finish(p.n_ <= 64);
  return p;
}

ElementSet FiniteGroup::left_translate(std::uint32_t g, const ElementSet& s) const {
  ElementSet out(n_);
  s.for_each([&](std::uint32_t x) { out.insert(mul(g, x)); });
  return out;
}

ElementSet FiniteGroup::right_translate(const ElementSet& s, std::uint32_t g) const {
  ElementSet out(n_);
  s.for_each([&](std::uint32_t x) { out.insert(mul(x, g)); });
  return out;
}

ElementSet FiniteGroup::product(const ElementSet& s, const ElementSet& t) const {
  if (s.universe() != n_ || t.universe() != n_) throw ModelError("set does not belong to this group");
  if (!left_bytes_.empty()) {
    const std::uint32_t chunks = (n_ + 7) / 8;
    const std::uint64_t tw = t.word0();
    std::uint64_t acc = 0;
    s.for_each([&](std::uint32_t x) {
      const std::uint64_t* base = &left_bytes_[static_cast<std::size_t>(x) * chunks * 256];
      for (std::uint32_t c = 0; c < chunks; ++c) acc |= base[c * 256 + ((tw >> (8 * c)) & 0xffu)];
    });
    return ElementSet::from_word(n_, acc);
  }
  ElementSet out(n_);
  const auto ts = t.elements();
  s.for_each([&](std::uint32_t x) {
    for (auto y : ts) out.insert(mul(x, y));
  });
  return out;
}

ElementSet FiniteGroup::inverse(const ElementSet& s) const {
  ElementSet out(n_);
  s.for_each([&](std::uint32_t x) { out.insert(inv(x)); });
  return out;
}

ElementSet FiniteGroup::closure(const ElementSet& s) const {
  ElementSet h = singleton(identity_);
  h |= s;
  std::vector<std::uint32_t> frontier = h.elements();
  const auto gens = s.elements();
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
    for (auto x : frontier) {
      for (auto g : gens) {
        std::uint32_t y = mul(x, g);
        if (!h.contains(y)) {
          h.insert(y);
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return h;
}

bool FiniteGroup::is_subgroup(const ElementSet& s) const {
  if (!s.contains(identity_)) return false;
  bool ok = true;
  s.for_each([&](std::uint32_t x) {
    if (!ok) return;
    if (!s.contains(inv(x))) ok = false;
    s.for_each([&](std::uint32_t y) {
      if (ok && !s.contains(mul(x, y))) ok = false;
    });
  });
  return ok;
}

}  // namespace lcg
