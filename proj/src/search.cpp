#include "lcg/search.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <thread>

#include "lcg/errors.hpp"
#include "lcg/minimizer.hpp"
#include "lcg/prop42.hpp"

namespace lcg {
namespace {

struct Trial {
  std::vector<ExtremalWitness> found;
  std::vector<ExtremalWitness> bad;
  std::uint64_t evaluations = 0;
};

std::uint32_t below(std::mt19937_64& rng, std::uint32_t n) { return static_cast<std::uint32_t>(rng() % n); }

}  // namespace

ElementSet random_subset(std::mt19937_64& rng, std::uint32_t n) {
  ElementSet s(n);
  // Density drawn per set so that both sparse and dense regions get visited.
  std::uint32_t density = 1 + below(rng, 100);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (below(rng, 100) < density) s.insert(i);
  }
  if (s.empty()) s.insert(below(rng, n));
  return s;
}

namespace {

ExtremalWitness make_witness(const GroupModel& G, const ElementSet& x, const ElementSet& y, const SearchOptions& opt) {
  const auto& F = G.finite();
  auto [cx, cy] = canonical_pair(F, x, y);
  ExtremalWitness w;
  w.X = cx;
  w.Y = cy;
  w.law = opt.law;
  w.slack = slack(G, w.X, w.Y, opt.law, opt.orientation);
  auto r = opt.law == Law::unimodular ? verify_unimodular(G, w.X, w.Y, std::nullopt)
                                      : verify_main(G, w.X, w.Y, std::nullopt, opt.orientation);
  w.subgroup = r.witness;
  return w;
}

Trial run_trial(const GroupModel& G, const SearchOptions& opt, std::uint64_t index) {
  const std::uint32_t n = G.finite().order();
  std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  Trial t;
  ElementSet x = random_subset(rng, n), y = random_subset(rng, n);
  auto eval = [&](const ElementSet& a, const ElementSet& b) {
    ++t.evaluations;
    Rational s = slack(G, a, b, opt.law, opt.orientation).exact();
    if (s.sign() < 0) t.bad.push_back(make_witness(G, a, b, opt));
    return s;
  };
  Rational cur = eval(x, y);
  // Steepest descent over single-element toggles of X or Y.
  while (true) {
    std::optional<Rational> best;
    ElementSet bx, by;
    for (int side = 0; side < 2; ++side) {
      for (std::uint32_t e = 0; e < n; ++e) {
        ElementSet a = x, b = y;
        (side == 0 ? a : b).toggle(e);
        if (a.empty() || b.empty()) continue;
        Rational s = eval(a, b);
        if (s < cur && (!best || s < *best)) {
          best = s;
          bx = std::move(a);
          by = std::move(b);
        }
      }
    }
    if (!best) break;
    cur = *best;
    x = std::move(bx);
    y = std::move(by);
  }
  if (cur >= Rational(0) && cur <= opt.threshold) t.found.push_back(make_witness(G, x, y, opt));
  return t;
}

using Key = std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>;

Key key_of(const ExtremalWitness& w) { return {w.X.elements().elements(), w.Y.elements().elements()}; }

std::vector<ExtremalWitness> dedup_sorted(std::vector<ExtremalWitness> in) {
  std::map<Key, ExtremalWitness> uniq;
  for (auto& w : in) uniq.emplace(key_of(w), std::move(w));
  std::vector<ExtremalWitness> out;
  for (auto& [k, w] : uniq) out.push_back(std::move(w));
  std::stable_sort(out.begin(), out.end(), [](const ExtremalWitness& a, const ExtremalWitness& b) {
    return a.slack.exact() < b.slack.exact();
  });
  return out;
}

}  // namespace

const char* to_string(Law l) { return l == Law::unimodular ? "unimodular" : "main"; }

Law parse_law(const std::string& s) {
  if (s == "unimodular") return Law::unimodular;
  if (s == "main") return Law::main;
  throw InputError("search law must be unimodular or main, got '" + s + "'");
}

HaarValue slack(const GroupModel& G, const GroupSet& X, const GroupSet& Y, Law law, Orientation o) {
  if (law == Law::unimodular) return verify_unimodular(G, X, Y, std::nullopt).slack;
  return verify_main(G, X, Y, std::nullopt, o).slack;
}

std::pair<ElementSet, ElementSet> canonical_pair(const FiniteGroup& F, const ElementSet& X, const ElementSet& Y) {
  ElementSet bx = X, by = Y;
  for (std::uint32_t g = 0; g < F.order(); ++g) {
    ElementSet gx = F.left_translate(g, X);
    if (canonical_less(gx, bx)) bx = std::move(gx);
    ElementSet yg = F.right_translate(Y, g);
    if (canonical_less(yg, by)) by = std::move(yg);
  }
  return {bx, by};
}

SearchResult find_near_equality(const GroupModel& G, const SearchOptions& opt) {
  if (G.kind() != GroupModel::Kind::finite) throw ModelError("search runs on finite models only");
  if (opt.law == Law::unimodular && !G.is_unimodular()) throw ModelError("unimodular law needs a unimodular model");
  SearchResult res;
  if (opt.budget == 0) return res;
  G.finite().subgroup_lattice();  // populate the cache before the workers start

  std::vector<Trial> trials(opt.budget);
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, opt.budget));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < opt.budget; i += threads) trials[i] = run_trial(G, opt, i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<ExtremalWitness> found, bad;
  for (auto& t : trials) {
    res.evaluations += t.evaluations;
    for (auto& w : t.found) found.push_back(std::move(w));
    for (auto& w : t.bad) bad.push_back(std::move(w));
  }
  res.witnesses = dedup_sorted(std::move(found));
  res.counterexamples = dedup_sorted(std::move(bad));

  if (opt.check_conjecture) {
    for (const auto& w : res.witnesses) {
      NormalizedPair ctx = normalize_pair(G, w.X, w.Y, opt.orientation);
      if (ctx.XYstar.elements().size() > kDefaultAtomBound) continue;
      ++res.conjecture_checked;
      auto pair = maximize_exact(G, ctx);
      auto p42 = check_prop42(G, ctx, pair);
      if (!is_empty(p42.D)) res.nonempty_D.push_back(w);
    }
  }
  return res;
}

}  // namespace lcg
