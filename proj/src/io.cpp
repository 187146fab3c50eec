#include "lcg/io.hpp"

#include <fstream>
#include <sstream>

#include "lcg/errors.hpp"

namespace lcg {
namespace {

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

std::pair<double, double> real_pair(const json& j, const char* key) {
  auto v = get<std::vector<double>>(j, key);
  if (v.size() != 2) throw InputError(std::string("field '") + key + "' must be [lo, hi]");
  return {v[0], v[1]};
}

std::pair<int, int> int_pair(const json& j, const char* key) {
  auto v = get<std::vector<int>>(j, key);
  if (v.size() != 2) throw InputError(std::string("field '") + key + "' must be [lo, hi]");
  return {v[0], v[1]};
}

Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const ArithmeticOverflow&) {
      throw;
    } catch (const std::exception& e) {
      throw InputError(std::string("bad rational: ") + e.what());
    }
  }
  throw InputError("rational must be an integer or a string 'm/d' or 'm/p^e'");
}

std::uint32_t flat_index(const GroupModel& G, const json& tuple) {
  const auto& orders = G.finite_factor_orders();
  if (!tuple.is_array() || tuple.size() != orders.size()) throw InputError("tuple arity does not match the product");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    auto c = tuple[i].get<std::int64_t>();
    if (c < 0 || c >= orders[i]) throw InputError("tuple component out of range");
    idx = idx * orders[i] + static_cast<std::uint64_t>(c);
  }
  return static_cast<std::uint32_t>(idx);
}

GroupSet parse_finite_set(const GroupModel& G, const json& spec) {
  const auto& F = G.finite();
  ElementSet s = F.empty_set();
  if (spec.contains("elements")) {
    for (const auto& e : spec.at("elements")) s.insert(parse_element(G, e).index());
    return s;
  }
  const auto& orders = G.finite_factor_orders();
  if (spec.contains("tuple_sets") && !orders.empty()) {
    for (const auto& box : spec.at("tuple_sets")) {
      if (!box.is_array() || box.size() != orders.size()) throw InputError("tuple_sets box arity mismatch");
      std::vector<std::vector<std::int64_t>> comps;
      for (const auto& f : box) comps.push_back(get<std::vector<std::int64_t>>(f, "elements"));
      std::vector<std::size_t> pos(comps.size(), 0);
      if (std::any_of(comps.begin(), comps.end(), [](const auto& c) { return c.empty(); })) continue;
      while (true) {
        json t = json::array();
        for (std::size_t i = 0; i < comps.size(); ++i) t.push_back(comps[i][pos[i]]);
        s.insert(flat_index(G, t));
        std::size_t i = comps.size();
        while (i-- > 0) {
          if (++pos[i] < comps[i].size()) break;
          pos[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
      }
    }
    return s;
  }
  throw InputError("finite set spec needs 'elements'");
}

GroupSet parse_grid_set(const GroupModel& G, const json& spec) {
  const auto& A = G.grid();
  if (spec.contains("cells")) {
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    for (const auto& c : spec.at("cells")) {
      auto v = c.get<std::vector<std::int64_t>>();
      if (v.size() != 2) throw InputError("cells entries must be [i, j]");
      cells.emplace_back(v[0], v[1]);
    }
    return A.from_cells(cells);
  }
  if (spec.contains("columns")) {
    CellSet s;
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    for (const auto& col : spec.at("columns")) {
      auto n = get<std::int64_t>(col, "n");
      for (const auto& r : col.at("runs")) {
        auto v = r.get<std::vector<std::int64_t>>();
        if (v.size() != 2 || v[0] >= v[1]) throw InputError("runs entries must be [lo, hi) with lo < hi");
        for (auto m = v[0]; m < v[1]; ++m) cells.emplace_back(n, m);
      }
    }
    return A.from_cells(cells);
  }
  auto one_box = [&](const json& b) {
    auto [u0, u1] = real_pair(b, "u");
    auto [b0, b1] = real_pair(b, "b");
    return A.box(u0, u1, b0, b1);
  };
  if (spec.contains("box")) return one_box(spec.at("box"));
  if (spec.contains("boxes")) {
    CellSet acc;
    for (const auto& b : spec.at("boxes")) acc = A.unite(acc, one_box(b));
    return acc;
  }
  throw InputError("grid set spec needs 'cells', 'columns', 'box' or 'boxes'");
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_json(const std::string& path_or_inline) {
  std::string text = path_or_inline;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || (text[first] != '{' && text[first] != '[')) text = read_text(path_or_inline);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

GroupModel build_group(const json& spec) {
  if (!spec.is_object()) throw InputError("group spec must be a JSON object");
  const auto kind = get<std::string>(spec, "kind");
  auto order = [&](const char* key) {
    auto n = get<std::int64_t>(spec, key);
    if (n < 1 || n > FiniteGroup::kMaxOrder) throw InputError(std::string("'") + key + "' out of range");
    return static_cast<std::uint32_t>(n);
  };
  if (kind == "cyclic") return GroupModel::finite(FiniteGroup::cyclic(order("n")));
  if (kind == "dihedral") {
    auto n = order("n");
    if (n < 2 || 2 * n > FiniteGroup::kMaxOrder) throw InputError("dihedral n must be in [2, 512]");
    return GroupModel::finite(FiniteGroup::dihedral(n));
  }
  if (kind == "quaternion") return GroupModel::finite(FiniteGroup::quaternion());
  if (kind == "symmetric") return GroupModel::finite(FiniteGroup::symmetric(order("n")));
  if (kind == "alternating") return GroupModel::finite(FiniteGroup::alternating(order("n")));
  if (kind == "table") {
    auto rows = get<std::vector<std::vector<std::int64_t>>>(spec, "table");
    std::string name = spec.contains("name") ? get<std::string>(spec, "name") : "table";
    return GroupModel::finite(FiniteGroup::from_table(rows, name));
  }
  if (kind == "affine_grid") {
    auto [u0, u1] = real_pair(spec, "u");
    auto [b0, b1] = real_pair(spec, "b");
    return GroupModel::grid(AffineGrid(u0, u1, b0, b1, get<double>(spec, "h")));
  }
  if (kind == "padic_affine") {
    auto [k0, k1] = int_pair(spec, "k");
    auto [d0, d1] = int_pair(spec, "d");
    return GroupModel::padic(PAdicAffine(get<std::int64_t>(spec, "p"), k0, k1, d0, d1));
  }
  if (kind == "product") {
    std::vector<GroupModel> factors;
    if (!spec.contains("factors") || !spec.at("factors").is_array()) throw InputError("product needs 'factors'");
    for (const auto& f : spec.at("factors")) factors.push_back(build_group(f));
    return GroupModel::product(std::move(factors));
  }
  throw InputError("unknown group kind '" + kind + "'");
}

Ball parse_ball(const json& spec) {
  Ball b;
  b.k = get<int>(spec, "k");
  b.center = spec.contains("center") ? parse_rational(spec.at("center")) : Rational(0);
  b.depth = get<int>(spec, "d");
  return b;
}

Element parse_element(const GroupModel& G, const json& spec) {
  try {
    switch (G.kind()) {
      case GroupModel::Kind::finite: {
        std::uint32_t x;
        if (spec.is_array() && !G.finite_factor_orders().empty()) {
          x = flat_index(G, spec);
        } else {
          auto v = spec.get<std::int64_t>();
          if (v < 0 || v >= G.finite().order()) throw InputError("element " + std::to_string(v) + " out of range");
          x = static_cast<std::uint32_t>(v);
        }
        return Element(x);
      }
      case GroupModel::Kind::grid: {
        if (spec.contains("cell")) {
          auto v = spec.at("cell").get<std::vector<std::int64_t>>();
          if (v.size() != 2) throw InputError("cell must be [i, j]");
          return Element(G.grid().make_point(v[0], v[1]));
        }
        return Element(G.grid().snap(get<double>(spec, "u"), get<double>(spec, "b")));
      }
      case GroupModel::Kind::padic:
        return Element(G.padic().make_point(get<int>(spec, "k"), parse_rational(spec.at("b"))));
      case GroupModel::Kind::product: {
        if (!spec.is_array() || spec.size() != G.factors().size()) throw InputError("product element arity mismatch");
        std::vector<Element> t;
        for (std::size_t i = 0; i < spec.size(); ++i) t.push_back(parse_element(G.factors()[i], spec[i]));
        return Element(std::move(t));
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bad element: ") + e.what());
  }
  throw InputError("bad element");
}

GroupSet parse_set(const GroupModel& G, const json& spec) {
  if (!spec.is_object()) throw InputError("set spec must be a JSON object");
  try {
    switch (G.kind()) {
      case GroupModel::Kind::finite: return parse_finite_set(G, spec);
      case GroupModel::Kind::grid: return parse_grid_set(G, spec);
      case GroupModel::Kind::padic: {
        const auto& P = G.padic();
        std::vector<Ball> balls;
        if (!spec.contains("balls")) throw InputError("p-adic set spec needs 'balls'");
        for (const auto& b : spec.at("balls")) {
          Ball x = parse_ball(b);
          balls.push_back(P.make_ball(x.k, x.center, x.depth));
        }
        return P.canonicalize(std::move(balls));
      }
      case GroupModel::Kind::product: {
        if (!spec.contains("tuple_sets")) throw InputError("product set spec needs 'tuple_sets'");
        GroupSet acc = BoxUnion{};
        for (const auto& box : spec.at("tuple_sets")) {
          if (!box.is_array() || box.size() != G.factors().size()) throw InputError("tuple_sets box arity mismatch");
          std::vector<GroupSet> b;
          for (std::size_t i = 0; i < box.size(); ++i) b.push_back(parse_set(G.factors()[i], box[i]));
          acc = unite(G, acc, BoxUnion{{std::move(b)}});
        }
        return acc;
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bad set: ") + e.what());
  }
  throw InputError("bad set");
}

json to_json(const HaarValue& v) {
  if (v.is_infinite()) return "inf";
  if (v.is_exact()) return v.exact().str();
  auto b = v.bounds();
  return json::array({format_real(b.lo), format_real(b.hi)});
}

json to_json(const GroupModel& G, const Element& x) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return x.index();
    case GroupModel::Kind::grid:
      return {{"cell", {x.grid().n, x.grid().m}}, {"u", format_real(G.grid().u_of(x.grid()))},
              {"b", format_real(G.grid().b_of(x.grid()))}};
    case GroupModel::Kind::padic: return {{"k", x.padic().k}, {"b", x.padic().b.str()}};
    case GroupModel::Kind::product: {
      json a = json::array();
      for (std::size_t i = 0; i < G.factors().size(); ++i) a.push_back(to_json(G.factors()[i], x.tuple()[i]));
      return a;
    }
  }
  return nullptr;
}

json to_json(const GroupModel& G, const GroupSet& s) {
  switch (G.kind()) {
    case GroupModel::Kind::finite: return {{"elements", s.elements().elements()}};
    case GroupModel::Kind::grid: {
      json cols = json::array();
      for (const auto& [n, runs] : s.cells().columns) {
        json r = json::array();
        for (const auto& run : runs) r.push_back({run.lo, run.hi});
        cols.push_back({{"n", n}, {"runs", r}});
      }
      return {{"columns", cols}, {"cell_count", s.cells().cell_count()}};
    }
    case GroupModel::Kind::padic: {
      json balls = json::array();
      for (const auto& b : s.balls().balls) balls.push_back({{"k", b.k}, {"center", b.center.str()}, {"d", b.depth}});
      return {{"balls", balls}};
    }
    case GroupModel::Kind::product: {
      json boxes = json::array();
      for (const auto& box : s.boxes().boxes) {
        json b = json::array();
        for (std::size_t i = 0; i < box.size(); ++i) b.push_back(to_json(G.factors()[i], box[i]));
        boxes.push_back(b);
      }
      return {{"tuple_sets", boxes}};
    }
  }
  return nullptr;
}

json to_json(const GroupModel& G, const SetBracket& b) {
  if (G.is_exact()) return {{"exact", true}, {"set", to_json(G, b.outer)}};
  return {{"exact", false}, {"inner", to_json(G, b.inner)}, {"outer", to_json(G, b.outer)}};
}

json to_json(const GroupModel& G, const SubgroupWitness& w) {
  json j = {{"mu", to_json(w.mu)}, {"is_proper", w.is_proper}, {"in_kernel", w.in_kernel}, {"null", w.null}};
  if (!w.null) j["carrier"] = to_json(G, w.carrier);
  return j;
}

json to_json(const GroupModel& G, const InequalityReport& r) {
  json j = {
      {"law", r.law},
      {"orientation", to_string(r.orientation)},
      {"alpha", to_json(r.alpha)},
      {"beta", to_json(r.beta)},
      {"nu_X", to_json(r.nu_X)},
      {"mu_X", to_json(r.mu_X)},
      {"nu_Y", to_json(r.nu_Y)},
      {"mu_Y", to_json(r.mu_Y)},
      {"nu_XY", to_json(r.nu_XY)},
      {"mu_XY", to_json(r.mu_XY)},
      {"mu_G", to_json(r.mu_G)},
      {"mu_E", to_json(r.mu_E)},
      {"nu_E", to_json(r.nu_E)},
      {"subgroup_sup", to_json(r.s)},
      {"subgroup_cap", to_json(r.cap)},
      {"subgroup_witness", r.witness ? to_json(G, *r.witness) : json(nullptr)},
      {"product_restricted", r.product_restricted},
      {"kemperman_sum", to_json(r.kemperman_sum)},
      {"branch1", to_json(r.branch1)},
      {"branch1_outer", to_json(r.branch1_outer)},
      {"branch2", to_json(r.branch2)},
      {"slack", to_json(r.slack)},
      {"verdict", to_string(r.verdict)},
      {"XY", to_json(G, r.XY)},
      {"notes", r.notes},
  };
  if (r.law == "unimodular") j["bound"] = to_json(r.bound);
  return j;
}

json to_json(const GroupModel& G, const KneserReport& r) {
  return {{"law", "kneser"},
          {"XY", to_json(G, GroupSet(r.XY))},
          {"H", r.H ? to_json(G, GroupSet(*r.H)) : json(nullptr)},
          {"stabilizer", to_json(G, GroupSet(r.stabilizer))},
          {"satisfying_subgroups", r.satisfying_count},
          {"verdict", to_string(r.verdict)}};
}

json to_json(const GroupModel& G, const NormalizedPair& p) {
  return {{"orientation", to_string(p.orientation)}, {"x0", to_json(G, p.x0)},       {"y0", to_json(G, p.y0)},
          {"Xstar", to_json(G, p.Xstar)},           {"Ystar", to_json(G, p.Ystar)}, {"XYstar", to_json(G, p.XYstar)}};
}

json to_json(const GroupModel& G, const MinimizerPair& p) {
  return {{"X0", to_json(G, p.X0)},
          {"Y0", to_json(G, p.Y0)},
          {"H", to_json(G, p.H)},
          {"objective", {to_json(p.sum), to_json(p.nu_X0)}},
          {"feasible", p.feasible},
          {"provenance", to_string(p.provenance)},
          {"atoms", p.atoms},
          {"nodes", p.nodes}};
}

json to_json(const ClaimsReport& c) {
  return {{"claim2_stabilizer", c.stabilizer},
          {"claim3_group", c.group},
          {"claim4_size", c.size},
          {"final_cap", c.cap},
          {"sum_lower_bound", c.sum_lower_bound},
          {"advisory", c.advisory},
          {"mu_H", to_json(c.mu_H)},
          {"rho", to_json(c.rho)},
          {"kappa", to_json(c.kappa)},
          {"rho_kappa", to_json(c.rho_kappa)},
          {"cap", to_json(c.cap_value)},
          {"failures", c.failures}};
}

json to_json(const GroupModel& G, const Prop42Report& r) {
  json w = json::array();
  for (const auto& c : r.witnesses) w.push_back({{"g", c.g}, {"z", c.z}, {"ok", c.ok}});
  return {{"orientation", to_string(r.orientation)},
          {"XY", to_json(G, r.XY)},
          {"D", to_json(G, r.D)},
          {"D_empty", is_empty(r.D)},
          {"alpha", to_json(r.alpha)},
          {"beta", to_json(r.beta)},
          {"rho", to_json(r.rho)},
          {"kappa_prime", to_json(r.kappa_prime)},
          {"mu_H", to_json(r.mu_H)},
          {"D_size", to_json(r.D_size)},
          {"bound", to_json(r.bound)},
          {"bound_ok", r.bound_ok},
          {"coset_checks", r.coset_checks},
          {"coset_failures", r.coset_failures},
          {"witnesses", w},
          {"verdict", to_string(r.verdict)},
          {"notes", r.notes}};
}

json to_json(const GroupModel& G, const ExtremalWitness& w) {
  return {{"X", to_json(G, w.X)},
          {"Y", to_json(G, w.Y)},
          {"slack", to_json(w.slack)},
          {"law", to_string(w.law)},
          {"subgroup", w.subgroup ? to_json(G, *w.subgroup) : json(nullptr)}};
}

json to_json(const Example41& e) {
  return {{"group", describe_group(e.G)},
          {"X", to_json(e.G, e.X)},
          {"Y", to_json(e.G, e.Y)},
          {"H", to_json(e.G, e.H)},
          {"W", to_json(e.G, e.W)},
          {"x", to_json(e.G, e.x)},
          {"XY", to_json(e.G, e.XY)},
          {"nu_X", to_json(e.nu_X)},
          {"mu_Y", to_json(e.mu_Y)},
          {"nu_XY", to_json(e.nu_XY)},
          {"mu_XY", to_json(e.mu_XY)},
          {"kemperman_sum", to_json(e.sum)},
          {"display_sum", to_json(e.display_sum)},
          {"exceeds_one", e.exceeds_one},
          {"display_matches", e.display_matches},
          {"flags", e.flags}};
}

json describe_group(const GroupModel& G) {
  static const char* kinds[] = {"finite", "affine_grid", "padic_affine", "product"};
  json j = {{"kind", kinds[static_cast<int>(G.kind())]},
            {"name", G.name()},
            {"exact", G.is_exact()},
            {"unimodular", G.is_unimodular()},
            {"mu_G", to_json(total_measure(G))},
            {"identity", to_json(G, identity(G))}};
  switch (G.kind()) {
    case GroupModel::Kind::finite:
      j["order"] = G.finite().order();
      j["abelian"] = G.finite().is_abelian();
      if (!G.finite_factor_orders().empty()) j["factor_orders"] = G.finite_factor_orders();
      break;
    case GroupModel::Kind::grid:
      j["h"] = format_real(G.grid().h());
      j["u_cells"] = {G.grid().n_lo(), G.grid().n_hi()};
      j["b_cells"] = {G.grid().m_lo(), G.grid().m_hi()};
      break;
    case GroupModel::Kind::padic:
      j["p"] = G.padic().p();
      j["k"] = {G.padic().k_min(), G.padic().k_max()};
      j["d"] = {G.padic().d_min(), G.padic().d_max()};
      break;
    case GroupModel::Kind::product: {
      json f = json::array();
      for (const auto& x : G.factors()) f.push_back(describe_group(x));
      j["factors"] = f;
      break;
    }
  }
  return j;
}

}  // namespace lcg
