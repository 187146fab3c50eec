#include "lcg/subgroups.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "lcg/errors.hpp"

namespace lcg {

const std::vector<ElementSet>& FiniteGroup::subgroup_lattice() const {
  std::call_once(cache_->once, [this] {
    // Every subgroup is reached from the trivial one by adjoining one element
    // at a time and closing.
    std::unordered_set<ElementSet, ElementSetHash> seen;
    std::deque<ElementSet> queue;
    ElementSet trivial = singleton(identity_);
    seen.insert(trivial);
    queue.push_back(trivial);
    while (!queue.empty()) {
      ElementSet s = std::move(queue.front());
      queue.pop_front();
      for (std::uint32_t g = 0; g < n_; ++g) {
        if (s.contains(g)) continue;
        ElementSet with_g = s;
        with_g.insert(g);
        ElementSet c = closure(with_g);
        if (seen.insert(c).second) queue.push_back(std::move(c));
      }
    }
    std::vector<ElementSet> all(seen.begin(), seen.end());
    std::sort(all.begin(), all.end(), [](const ElementSet& a, const ElementSet& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return canonical_less(a, b);
    });
    cache_->subgroups = std::move(all);
  });
  return cache_->subgroups;
}

std::vector<SubgroupWitness> enumerate_subgroups(const GroupModel& G, std::uint32_t max_order) {
  if (G.kind() != GroupModel::Kind::finite) throw ModelError("subgroup enumeration needs a finite model");
  const auto& F = G.finite();
  if (F.order() > max_order) {
    throw InputError("group order " + std::to_string(F.order()) + " exceeds the enumeration bound " +
                     std::to_string(max_order));
  }
  std::vector<SubgroupWitness> out;
  for (const auto& s : F.subgroup_lattice()) {
    SubgroupWitness w;
    w.carrier = s;
    w.mu = HaarValue(static_cast<std::int64_t>(s.size()));
    w.is_proper = s.size() < F.order();
    out.push_back(std::move(w));
  }
  return out;
}

SubgroupWitness null_subgroup(const GroupModel& G) {
  SubgroupWitness w;
  w.carrier = empty_set(G);
  w.mu = HaarValue(0);
  w.null = true;
  return w;
}

std::vector<SubgroupWitness> kernel_subgroups(const GroupModel& G) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return enumerate_subgroups(G, FiniteGroup::kMaxOrder);
    case GroupModel::Kind::grid: return {};
    case GroupModel::Kind::padic: {
      const auto& P = G.padic();
      std::vector<SubgroupWitness> out;
      for (int d = P.d_min(); d <= P.d_max(); ++d) {
        SubgroupWitness w;
        w.carrier = BallSet{{P.make_ball(0, Rational(0), d)}};
        w.mu = HaarValue(P.power(-d));
        out.push_back(std::move(w));
      }
      return out;
    }
    case GroupModel::Kind::product: {
      // Products of factor subgroups; a null factor makes the product null.
      std::vector<std::vector<SubgroupWitness>> per;
      for (const auto& f : G.factors()) {
        auto list = kernel_subgroups(f);
        if (list.empty()) return {};
        per.push_back(std::move(list));
      }
      std::vector<SubgroupWitness> out;
      std::vector<std::size_t> idx(per.size(), 0);
      while (true) {
        std::vector<GroupSet> box;
        HaarValue mu(1);
        bool proper = false;
        for (std::size_t i = 0; i < per.size(); ++i) {
          const auto& w = per[i][idx[i]];
          box.push_back(w.carrier);
          mu = mu * w.mu;
          proper = proper || w.is_proper || G.factors()[i].kind() != GroupModel::Kind::finite;
        }
        SubgroupWitness w;
        w.carrier = BoxUnion{{std::move(box)}};
        w.mu = mu;
        w.is_proper = proper;
        out.push_back(std::move(w));
        std::size_t i = 0;
        while (i < per.size() && ++idx[i] == per[i].size()) idx[i++] = 0;
        if (i == per.size()) break;
      }
      return out;
    }
  }
  return {};
}

SubgroupSup constrained_subgroup_sup(const GroupModel& G, const GroupSet& E, const HaarValue& alpha,
                                     const HaarValue& beta) {
  if (is_empty(E)) throw InputError("E must be nonempty");
  SubgroupSup r;
  r.cap = min(measure(G, E, Side::left) / beta, alpha * measure(G, E, Side::right));
  r.value = HaarValue(0);
  r.product_restricted = G.kind() == GroupModel::Kind::product;
  for (const auto& w : kernel_subgroups(G)) {
    if (!w.is_proper || w.null) continue;
    if (less_equal(w.mu, r.cap) != Truth::yes) continue;
    if (!r.witness || less(r.value, w.mu) == Truth::yes) {
      r.value = w.mu;
      r.witness = w;
    }
  }
  return r;
}

}  // namespace lcg
