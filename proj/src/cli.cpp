#include "lcg/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "lcg/errors.hpp"
#include "lcg/io.hpp"
#include "lcg/kernels.hpp"

namespace lcg {
namespace {

struct Common {
  std::string out;
  std::string log;
};

struct Context {
  std::vector<std::string> args;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::optional<std::uint64_t> seed;
  std::vector<std::string> verdicts;
};

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json load_input(Context& ctx, const std::string& arg) {
  std::string text = arg;
  auto first = text.find_first_not_of(" \t\r\n");
  bool inline_json = first != std::string::npos && (text[first] == '{' || text[first] == '[');
  if (!inline_json) text = read_text(arg);
  ctx.inputs.emplace_back(inline_json ? "<inline>" : arg, fnv1a(text));
  return load_json(text);
}

void emit(const json& report, const Common& c, std::ostream& out) {
  std::string text = report.dump(2) + "\n";
  if (c.out.empty() || c.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + c.out);
  f << text;
}

json header(const std::string& command) { return {{"schema", kSchema}, {"command", command}}; }

void append_log(const Context& ctx, const Common& c, double wall_ms, int status) {
  std::string path = c.log;
  if (path.empty()) {
    const char* dir = std::getenv("LCG_LOG_DIR");
    if (dir == nullptr || *dir == '\0') return;
    path = std::string(dir) + "/runs.jsonl";
  }
  json inputs = json::array();
  for (const auto& [p, d] : ctx.inputs) inputs.push_back({{"path", p}, {"digest", d}});
  json rec = {{"argv", ctx.args},           {"inputs", inputs},      {"seed", ctx.seed ? json(*ctx.seed) : json(nullptr)},
              {"version", kVersion},        {"verdicts", ctx.verdicts}, {"exit", status},
              {"wall_ms", wall_ms},         {"kernels", kernels::active().name}};
  std::ofstream f(path, std::ios::app | std::ios::binary);
  if (!f) throw InputError("cannot append to run log " + path);
  f << rec.dump() << "\n";
}

GroupSet set_arg(Context& ctx, const GroupModel& G, const std::string& arg) { return parse_set(G, load_input(ctx, arg)); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Haar measure and product-set growth toolkit", "lcg"};
  app.require_subcommand(1);
  Common common;
  Context ctx;
  ctx.args = args;
  std::string group_path, x_path, y_path, e_path, set_path, orientation = "corrected", law = "main";
  std::string x_elem, y_elem, mode;
  bool kernel_only = false, exact = false, heuristic = false, check_conjecture = false;
  std::size_t atom_bound = kDefaultAtomBound;
  std::uint64_t trials = 1000, seed = 0, pairs = 1000;
  std::uint32_t max_order = 12;
  unsigned threads = 0;
  std::string threshold = "1";
  std::int64_t p = 3;
  int t = 1, x_depth = 0;
  std::vector<std::string> w_centers;
  int w_depth = 0;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--out", common.out, "Report path (default stdout)");
    s->add_option("--log", common.log, "Append a run record to this JSON-lines file");
  };
  auto add_group = [&](CLI::App* s) { s->add_option("--group", group_path, "Group spec (file or inline JSON)")->required(); };

  auto* c_group = app.add_subcommand("group", "Describe a model; optionally multiply, invert, classify elements");
  add_group(c_group);
  c_group->add_option("--x", x_elem, "Element (inline JSON)");
  c_group->add_option("--y", y_elem, "Second element (inline JSON)");
  add_common(c_group);

  auto* c_measure = app.add_subcommand("measure", "Left and right Haar measure, inverse and Delta extrema of a set");
  add_group(c_measure);
  c_measure->add_option("--set", set_path, "Set spec")->required();
  add_common(c_measure);

  auto* c_product = app.add_subcommand("product", "Product set XY with measures");
  add_group(c_product);
  c_product->add_option("--x", x_path)->required();
  c_product->add_option("--y", y_path)->required();
  add_common(c_product);

  auto* c_sub = app.add_subcommand("subgroups", "Enumerate (kernel) subgroups");
  add_group(c_sub);
  c_sub->add_flag("--kernel-only", kernel_only, "Only compact subgroups of ker Delta");
  add_common(c_sub);

  auto* c_verify = app.add_subcommand("verify", "Check an inequality on (X, Y)");
  add_group(c_verify);
  c_verify->add_option("--x", x_path)->required();
  c_verify->add_option("--y", y_path)->required();
  c_verify->add_option("--e", e_path, "Optional E containing XY");
  c_verify->add_option("--orientation", orientation)->check(CLI::IsMember({"as_stated", "corrected"}));
  c_verify->add_option("--law", law)->check(CLI::IsMember({"main", "unimodular", "kemperman", "kneser"}));
  add_common(c_verify);

  auto* c_min = app.add_subcommand("minimizer", "Normalized pair, maximizer (X0, Y0, H) and claim checks");
  add_group(c_min);
  c_min->add_option("--x", x_path)->required();
  c_min->add_option("--y", y_path)->required();
  c_min->add_flag("--exact", exact, "Branch and bound (default)");
  c_min->add_flag("--heuristic", heuristic, "Transform hill-climbing");
  c_min->add_option("--orientation", orientation)->check(CLI::IsMember({"as_stated", "corrected"}));
  c_min->add_option("--atom-bound", atom_bound)->check(CLI::Range(1, 64));
  add_common(c_min);

  auto* c_p42 = app.add_subcommand("prop42", "Exceptional set D and conjugate coset witnesses");
  add_group(c_p42);
  c_p42->add_option("--x", x_path)->required();
  c_p42->add_option("--y", y_path)->required();
  c_p42->add_flag("--heuristic", heuristic, "Use the heuristic maximizer");
  c_p42->add_option("--orientation", orientation)->check(CLI::IsMember({"as_stated", "corrected"}));
  c_p42->add_option("--atom-bound", atom_bound)->check(CLI::Range(1, 64));
  add_common(c_p42);

  auto* c_ex = app.add_subcommand("example41", "p-adic slab example under both orientations");
  c_ex->add_option("--p", p, "Prime")->required();
  c_ex->add_option("--t", t, "Scale offset of x = (-t, 0)")->required();
  c_ex->add_option("--x-depth", x_depth, "X = p^d Z_p in slab 0");
  c_ex->add_option("--w-depth", w_depth, "Depth of the W balls");
  c_ex->add_option("--w-center", w_centers, "Centers of the W balls (default 0)");
  add_common(c_ex);

  auto* c_search = app.add_subcommand("search", "Seeded search for near-equality pairs");
  add_group(c_search);
  c_search->add_option("--law", law)->check(CLI::IsMember({"main", "unimodular"}));
  c_search->add_option("--trials", trials);
  c_search->add_option("--seed", seed);
  c_search->add_option("--threshold", threshold);
  c_search->add_option("--threads", threads);
  c_search->add_flag("--check-conjecture", check_conjecture, "Record witnesses whose minimizer leaves D nonempty");
  add_common(c_search);

  auto* c_sweep = app.add_subcommand("sweep", "Random pairs over the builtin finite groups");
  c_sweep->add_option("--max-order", max_order);
  c_sweep->add_option("--pairs", pairs);
  c_sweep->add_option("--seed", seed);
  c_sweep->add_option("--threads", threads);
  add_common(c_sweep);

  const auto start = std::chrono::steady_clock::now();
  int status = 0;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    auto load_group = [&] { return build_group(load_input(ctx, group_path)); };
    auto orient = parse_orientation(orientation);

    if (c_group->parsed()) {
      GroupModel G = load_group();
      json r = header("group");
      r["group"] = describe_group(G);
      if (!x_elem.empty()) {
        Element x = parse_element(G, load_json(x_elem));
        r["x"] = {{"element", to_json(G, x)},
                  {"inverse", to_json(G, invert(G, x))},
                  {"modular", to_json(modular(G, x))},
                  {"region", to_string(classify_region(G, x))}};
        if (!y_elem.empty()) {
          Element y = parse_element(G, load_json(y_elem));
          r["y"] = {{"element", to_json(G, y)}, {"modular", to_json(modular(G, y))}};
          r["xy"] = {{"element", to_json(G, group_law(G, x, y))}, {"modular", to_json(modular(G, group_law(G, x, y)))}};
        }
      }
      emit(r, common, out);
    } else if (c_measure->parsed()) {
      GroupModel G = load_group();
      GroupSet s = set_arg(ctx, G, set_path);
      json r = header("measure");
      r["set"] = to_json(G, s);
      r["mu"] = to_json(measure(G, s, Side::left));
      r["nu"] = to_json(measure(G, s, Side::right));
      if (!is_empty(s)) {
        auto inv = inverse_set(G, s);
        r["inverse"] = to_json(G, inv);
        r["mu_inverse"] = to_json(measure(G, inv.outer, Side::left));
        auto d = delta_extrema(G, s);
        r["delta_sup"] = to_json(d.sup);
        r["delta_inf"] = to_json(d.inf);
        r["argmax"] = to_json(G, d.argmax);
        r["argmin"] = to_json(G, d.argmin);
      }
      emit(r, common, out);
    } else if (c_product->parsed()) {
      GroupModel G = load_group();
      GroupSet x = set_arg(ctx, G, x_path), y = set_arg(ctx, G, y_path);
      auto xy = product_set(G, x, y);
      json r = header("product");
      r["XY"] = to_json(G, xy);
      r["mu_outer"] = to_json(measure(G, xy.outer, Side::left));
      r["nu_outer"] = to_json(measure(G, xy.outer, Side::right));
      if (!G.is_exact()) {
        r["mu_inner"] = to_json(is_empty(xy.inner) ? HaarValue(0) : measure(G, xy.inner, Side::left));
        r["nu_inner"] = to_json(is_empty(xy.inner) ? HaarValue(0) : measure(G, xy.inner, Side::right));
      }
      emit(r, common, out);
    } else if (c_sub->parsed()) {
      GroupModel G = load_group();
      json list = json::array();
      auto subs = kernel_only || G.kind() != GroupModel::Kind::finite ? kernel_subgroups(G) : enumerate_subgroups(G);
      for (const auto& w : subs) list.push_back(to_json(G, w));
      if (G.kind() != GroupModel::Kind::finite) list.push_back(to_json(G, null_subgroup(G)));
      emit(list, common, out);
    } else if (c_verify->parsed()) {
      GroupModel G = load_group();
      GroupSet x = set_arg(ctx, G, x_path), y = set_arg(ctx, G, y_path);
      std::optional<GroupSet> e;
      if (!e_path.empty()) e = set_arg(ctx, G, e_path);
      json r = header("verify");
      if (law == "kneser") {
        auto k = verify_kneser_abelian(G, x, y);
        ctx.verdicts.push_back(to_string(k.verdict));
        r["report"] = to_json(G, k);
      } else {
        InequalityReport rep = law == "main"         ? verify_main(G, x, y, e, orient)
                               : law == "unimodular" ? verify_unimodular(G, x, y, e)
                                                     : verify_kemperman_connected(G, x, y);
        ctx.verdicts.push_back(to_string(rep.verdict));
        r["report"] = to_json(G, rep);
      }
      emit(r, common, out);
    } else if (c_min->parsed() || c_p42->parsed()) {
      GroupModel G = load_group();
      GroupSet x = set_arg(ctx, G, x_path), y = set_arg(ctx, G, y_path);
      NormalizedPair np = normalize_pair(G, x, y, orient);
      MinimizerPair pair = heuristic && !exact ? maximize_heuristic(G, np) : maximize_exact(G, np, atom_bound);
      json r = header(c_min->parsed() ? "minimizer" : "prop42");
      r["normalized"] = to_json(G, np);
      r["pair"] = to_json(G, pair);
      if (c_min->parsed()) {
        auto claims = verify_claims(G, np, pair);
        ctx.verdicts.push_back(claims.all_pass() ? "claims pass" : "claims fail");
        r["claims"] = to_json(claims);
      } else {
        auto p42 = check_prop42(G, np, pair);
        ctx.verdicts.push_back(to_string(p42.verdict));
        r["prop42"] = to_json(G, p42);
      }
      emit(r, common, out);
    } else if (c_ex->parsed()) {
      std::vector<Ball> xb{Ball{0, Rational(0), x_depth}};
      std::vector<Ball> wb;
      if (w_centers.empty()) w_centers.push_back("0");
      for (const auto& c : w_centers) wb.push_back(Ball{0, Rational::parse(c), w_depth});
      auto e = build_example41(p, t, xb, wb);
      json r = header("example41");
      r["example"] = to_json(e);
      for (auto o : {Orientation::as_stated, Orientation::corrected}) {
        auto rep = verify_main(e.G, e.X, e.Y, std::nullopt, o);
        ctx.verdicts.push_back(std::string(to_string(o)) + ":" + to_string(rep.verdict));
        r[to_string(o)] = to_json(e.G, rep);
      }
      emit(r, common, out);
    } else if (c_search->parsed()) {
      GroupModel G = load_group();
      SearchOptions opt;
      opt.law = parse_law(law);
      opt.orientation = orient;
      opt.budget = trials;
      opt.seed = seed;
      opt.threshold = Rational::parse(threshold);
      opt.threads = threads;
      opt.check_conjecture = check_conjecture;
      ctx.seed = seed;
      auto res = find_near_equality(G, opt);
      json r = header("search");
      r["group"] = describe_group(G);
      r["law"] = to_string(opt.law);
      r["trials"] = trials;
      r["seed"] = seed;
      r["threshold"] = opt.threshold.str();
      r["evaluations"] = res.evaluations;
      json w = json::array(), bad = json::array(), nd = json::array();
      for (const auto& x : res.witnesses) w.push_back(to_json(G, x));
      for (const auto& x : res.counterexamples) bad.push_back(to_json(G, x));
      for (const auto& x : res.nonempty_D) nd.push_back(to_json(G, x));
      r["witnesses"] = w;
      r["counterexamples"] = bad;
      if (check_conjecture) {
        r["conjecture_checked"] = res.conjecture_checked;
        r["nonempty_D"] = nd;
      }
      ctx.verdicts.push_back(res.counterexamples.empty() ? "no counterexamples" : "counterexamples found");
      emit(r, common, out);
    } else if (c_sweep->parsed()) {
      ctx.seed = seed;
      auto groups = builtin_groups(max_order);
      std::vector<json> rows(groups.size());
      std::vector<std::uint64_t> violations(groups.size(), 0);
      unsigned n_threads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(n_threads);
      for (unsigned w = 0; w < n_threads; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t gi = w; gi < groups.size(); gi += n_threads) {
              const auto& G = groups[gi];
              std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (gi + 1)));
              std::uint64_t equal = 0, bad = 0;
              Rational min_slack(0);
              bool first = true;
              for (std::uint64_t i = 0; i < pairs; ++i) {
                GroupSet x = random_subset(rng, G.finite().order());
                GroupSet y = random_subset(rng, G.finite().order());
                Rational s = verify_unimodular(G, x, y, std::nullopt).slack.exact();
                if (s.sign() < 0) ++bad;
                if (s.is_zero()) ++equal;
                if (first || s < min_slack) min_slack = s;
                first = false;
              }
              violations[gi] = bad;
              rows[gi] = {{"group", G.name()},    {"order", G.finite().order()}, {"pairs", pairs},
                          {"violations", bad},     {"equality_pairs", equal},      {"min_slack", min_slack.str()}};
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
      std::uint64_t total = 0;
      for (auto v : violations) total += v;
      json r = header("sweep");
      r["law"] = "unimodular";
      r["max_order"] = max_order;
      r["seed"] = seed;
      r["groups"] = rows;
      r["violations"] = total;
      ctx.verdicts.push_back(total == 0 ? "holds" : "violated");
      emit(r, common, out);
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    status = 2;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << "\n";
    status = 3;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << "\n";
    status = 2;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    status = 2;
  }
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  try {
    append_log(ctx, common, wall_ms, status);
  } catch (const InputError& e) {
    err << "log error: " << e.what() << "\n";
    if (status == 0) status = 2;
  }
  return status;
}

}  // namespace lcg
