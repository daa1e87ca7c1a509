// nwb: command-line front end for the barrier library.
//
// exit status: 0 ok/pass, 1 fail or not found, 2 usage, 3 fuel or window exhausted

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <nwb/nwb.hpp>

using namespace nwb;
using io::json;

namespace {

struct Config {
  int bound = 12;
  int depth = 0;
  int fuel = 0;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::string out;
};

struct Report {
  std::string command;
  bool uses_seed = false;
  std::optional<bool> pass;  // set by checks
  json result = json::object();
  std::vector<std::string> lines;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "@path", an existing path, or the inline text
std::string input(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return slurp(arg.substr(1));
  std::error_code ec;
  if (arg.find_first_of("({[") == std::string::npos && std::filesystem::is_regular_file(arg, ec)) return slurp(arg);
  return arg;
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

bool looks_json(const std::string& s) { return !s.empty() && (s[0] == '{' || s[0] == '[' || s[0] == '"'); }

json as_json(const std::string& arg) {
  std::string t = trim(input(arg));
  try {
    return json::parse(t);
  } catch (const json::exception& e) {
    throw UsageError("bad JSON in " + arg + ": " + e.what());
  }
}

Code read_code(const std::string& arg) {
  std::string t = trim(input(arg));
  if (looks_json(t)) return io::code_from_json(json::parse(t));
  return parse_code(t);
}

SetDescriptor read_desc(const std::string& arg) {
  std::string t = trim(input(arg));
  if (!t.empty() && t[0] == '{') return io::desc_from_json(json::parse(t));
  return parse_desc(t);
}

FinSet read_set(const std::string& arg) {
  std::string t = trim(input(arg));
  if (!t.empty() && t[0] == '[') return json::parse(t).get<FinSet>();
  return parse_set(t);
}

Coloring read_coloring(const std::string& arg, int arity) {
  std::string t = trim(input(arg));
  if (looks_json(t)) return io::coloring_from_json(json::parse(t));
  if (t.find(';') != std::string::npos) return Coloring::from_csv(t, arity);
  return Coloring::parse(t);
}

Window window(const Config& c) {
  Window w{c.bound, c.depth ? c.depth : c.bound};
  if (w.depth < 1 || w.bound < w.depth) throw UsageError("need bound >= depth >= 1");
  return w;
}

int fuel(const Config& c) {
  int f = c.fuel ? c.fuel : 10 * c.bound;
  if (f < 1) throw UsageError("fuel must be positive");
  return f;
}

void check(Report& r, bool ok, const std::string& line) {
  r.pass = ok;
  r.result["pass"] = ok;
  r.lines.push_back(std::string(ok ? "Pass" : "Fail") + (line.empty() ? "" : ": " + line));
}

void emit(const Report& r, const Config& c) {
  std::ostringstream os;
  if (c.format == "json") {
    json j = {{"command", r.command}, {"seed", c.seed}, {"bound", c.bound}, {"depth", c.depth ? c.depth : c.bound},
              {"status", r.pass ? (*r.pass ? "pass" : "fail") : "ok"}, {"result", r.result}};
    os << j.dump(2) << "\n";
  } else {
    if (r.uses_seed) os << "# seed " << c.seed << "\n";
    for (const auto& l : r.lines) os << l << "\n";
  }
  if (c.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(c.out);
    if (!f) throw UsageError("cannot write " + c.out);
    f << os.str();
  }
}

std::string sets_str(const std::vector<FinSet>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + set_str(x);
  return s;
}

// ---- barrier ----

void barrier_cmd(CLI::App& app, Config& cfg, Report& rep, std::function<void()>& run) {
  auto* g = app.add_subcommand("barrier", "ranks, membership and structure checks")->require_subcommand(1);
  static std::string code, set, a, b, desc;
  auto add = [&](const std::string& name, const std::string& help, bool needs_set, std::function<void()> body) {
    auto* s = g->add_subcommand(name, help);
    s->add_option("--code", code, "barrier code, inline or file")->required();
    if (needs_set) s->add_option("--set", set, "finite increasing set, e.g. {1,3}")->required();
    s->callback([&, name, body] {
      rep.command = "barrier " + name;
      run = body;
    });
    return s;
  };
  add("rank", "rank of the barrier", false, [&] {
    auto r = rank(read_code(code));
    rep.result["rank"] = r.str();
    rep.result["rank_json"] = io::to_json(r);
    rep.lines.push_back(r.str());
  });
  add("node-rank", "rank of a node of the tree, -1 off the tree", true, [&] {
    auto r = rank_or_below(read_code(code), read_set(set));
    rep.result["rank"] = r.str();
    rep.lines.push_back(r.str());
  });
  add("contains", "membership in the barrier", true, [&] {
    bool v = contains(read_code(code), read_set(set));
    rep.result["contains"] = v;
    rep.lines.push_back(v ? "true" : "false");
  });
  add("tree-contains", "membership in the tree of initial segments", true, [&] {
    bool v = tree_contains(read_code(code), read_set(set));
    rep.result["contains"] = v;
    rep.lines.push_back(v ? "true" : "false");
  });
  add("sub-barrier", "code of the barrier above a node", true, [&] {
    auto c = sub_barrier(read_code(code), read_set(set));
    rep.result["code"] = c.str();
    rep.result["code_json"] = io::to_json(c);
    rep.lines.push_back(c.str());
  });
  auto* fs = add("first-segment", "initial segment of a set that lies in the barrier", false, [&] {
    auto s = first_segment(read_code(code), read_desc(desc), fuel(cfg));
    rep.result["segment"] = s;
    rep.lines.push_back(set_str(s));
  });
  fs->add_option("--desc", desc, "infinite set descriptor")->required();
  add("verify-sperner", "no element of the window is a proper subset of another", false, [&] {
    auto r = verify_sperner(read_code(code), window(cfg));
    rep.result["smaller"] = r.smaller;
    rep.result["larger"] = r.larger;
    check(rep, r.pass, r.pass ? "" : set_str(r.smaller) + " is inside " + set_str(r.larger));
  });
  add("verify-cover", "every sequence in the window meets the barrier or the tree", false, [&] {
    auto r = verify_cover(read_code(code), window(cfg));
    rep.result["stuck"] = r.stuck;
    check(rep, r.pass, r.pass ? "" : "stuck at " + set_str(r.stuck));
  });
  add("uniformize", "uniform restriction of a rank-w barrier", false, [&] {
    auto d = uniformize_rank_omega(read_code(code), window(cfg), fuel(cfg));
    rep.result["base"] = io::to_json(d);
    rep.lines.push_back(d.str());
  });
  add("uniformity", "uniformity of the barrier", false, [&] {
    auto u = is_uniform(read_code(code));
    rep.result["strict"] = u.strict;
    rep.result["reason"] = u.reason;
    check(rep, u.uniform, u.reason);
  });
  auto* er = g->add_subcommand("end-replace", "replace the last |b| points of a by b");
  er->add_option("--a", a, "longer set")->required();
  er->add_option("--b", b, "shorter set")->required();
  er->callback([&] {
    rep.command = "barrier end-replace";
    run = [&] {
      auto s = end_replace(read_set(a), read_set(b));
      rep.result["set"] = s;
      rep.lines.push_back(set_str(s));
    };
  });
}

// ---- ramsey ----

void ramsey_cmd(CLI::App& app, Config& cfg, Report& rep, std::function<void()>& run) {
  auto* g = app.add_subcommand("ramsey", "monochromatic set searches")->require_subcommand(1);
  static std::string code, strategy = "pruned", witness;
  static std::vector<std::string> colorings;
  static int target = 3, arity = 2, want = -1;
  auto common = [&](CLI::App* s, bool many) {
    s->add_option("--code", code, "barrier code")->required();
    auto* o = s->add_option("--coloring", colorings, "rule, CSV file or JSON table")->required();
    if (!many) o->expected(1);
    s->add_option("--arity", arity, "number of colors for CSV input");
  };
  auto cols = [&] {
    std::vector<Coloring> out;
    for (const auto& c : colorings) out.push_back(read_coloring(c, arity));
    return out;
  };
  auto* se = g->add_subcommand("search", "least monochromatic set of the target size, then extended");
  common(se, false);
  se->add_option("--target", target, "size of the set");
  se->add_option("--strategy", strategy, "pruned or exhaustive")->check(CLI::IsMember({"pruned", "exhaustive"}));
  se->add_option("--color", want, "require this color");
  se->callback([&] {
    rep.command = "ramsey search";
    run = [&] {
      auto st = strategy == "exhaustive" ? SearchStrategy::Exhaustive : SearchStrategy::Pruned;
      auto w = nash_williams_search(read_code(code), cols()[0], window(cfg), target, st, nullptr, want);
      rep.result = io::to_json(w);
      rep.lines.push_back("set " + set_str(w.set) + " color " + std::to_string(w.color));
    };
  });
  auto* al = g->add_subcommand("almost", "one set, monochromatic for each coloring after a prefix");
  common(al, true);
  al->add_option("--target", target, "size of the set");
  al->callback([&] {
    rep.command = "ramsey almost";
    run = [&] {
      auto w = almost_monochromatic_search(read_code(code), cols(), window(cfg), target);
      rep.result = io::to_json(w);
      rep.lines.push_back("set " + set_str(w.set));
      for (const auto& m : w.per_coloring)
        rep.lines.push_back("color " + std::to_string(m.color) + " after " + std::to_string(m.discarded_prefix));
    };
  });
  auto* dg = g->add_subcommand("diagonal", "diagonal construction for a family of colorings");
  common(dg, true);
  dg->callback([&] {
    rep.command = "ramsey diagonal";
    run = [&] {
      auto r = diagonal_monochromatic(read_code(code), cols(), window(cfg));
      rep.result = io::to_json(r);
      rep.lines.push_back("set " + set_str(r.set));
      for (const auto& m : r.per_coloring)
        rep.lines.push_back("color " + std::to_string(m.color) + " after " + std::to_string(m.discarded_prefix));
    };
  });
  auto* ve = g->add_subcommand("verify", "re-check a monochromatic witness");
  common(ve, false);
  ve->add_option("--witness", witness, "witness JSON")->required();
  ve->callback([&] {
    rep.command = "ramsey verify";
    run = [&] {
      json j = as_json(witness);
      auto w = io::mono_from_json(j.contains("result") ? j.at("result") : j);
      auto bad = monochrome_counterexample(read_code(code), cols()[0], w);
      if (bad) rep.result["counterexample"] = *bad;
      check(rep, !bad, bad ? set_str(*bad) + " has another color" : "");
    };
  });
}

// ---- embed ----

void embed_cmd(CLI::App& app, Config& cfg, Report& rep, std::function<void()>& run) {
  auto* g = app.add_subcommand("embed", "embeddings and double-arrow witnesses")->require_subcommand(1);
  static std::string bs, cs, witness;
  static int steps = 8, horizon = 0, samples = 0;
  static bool rank_omega = false;
  auto pair = [&](CLI::App* s) {
    s->add_option("--B", bs, "source barrier")->required();
    s->add_option("--C", cs, "target barrier")->required();
  };
  auto* cm = g->add_subcommand("compare", "which barrier sits inside the other's tree");
  pair(cm);
  cm->callback([&] {
    rep.command = "embed compare";
    run = [&] {
      auto r = compare_embedding(read_code(bs), read_code(cs), window(cfg));
      rep.result = {{"relation", relation_name(r.relation)}, {"witness", r.witness}};
      rep.lines.push_back(std::string(relation_name(r.relation)) + " " + set_str(r.witness));
      if (r.relation == Relation::Undecided) rep.pass = false;
    };
  });
  auto* sy = g->add_subcommand("synthesize", "build a double-arrow witness");
  pair(sy);
  sy->add_option("--steps", steps, "alternation steps");
  sy->add_flag("--rank-omega", rank_omega, "use the rank-w threshold construction");
  sy->add_option("--horizon", horizon, "threshold horizon (default: bound)");
  sy->callback([&] {
    rep.command = "embed synthesize";
    run = [&] {
      Code b = read_code(bs), c = read_code(cs);
      DoubleArrowWitness wt = rank_omega ? double_arrow_witness_rank_omega(b, horizon ? horizon : cfg.bound)
                                         : double_arrow_witness(b, c, steps, fuel(cfg));
      rep.result = io::to_json(wt);
      std::string bp;
      for (int x : wt.breakpoints) bp += (bp.empty() ? "" : " ") + std::to_string(x);
      rep.lines.push_back(std::string("mode ") + mode_name(wt.mode));
      rep.lines.push_back("breakpoints " + bp);
      rep.lines.push_back("phase log entries " + std::to_string(wt.phase_log.size()));
    };
  });
  auto* ve = g->add_subcommand("verify", "check a witness on thinned sets");
  pair(ve);
  ve->add_option("--witness", witness, "witness JSON (a synthesize report works too)")->required();
  ve->add_option("--samples", samples, "random thinned sets; 0 checks all admissible sets");
  ve->callback([&] {
    rep.command = "embed verify";
    rep.uses_seed = samples > 0;
    run = [&] {
      json j = as_json(witness);
      auto wt = io::arrow_from_json(j.contains("result") ? j.at("result") : j);
      Code b = read_code(bs), c = read_code(cs);
      auto v = verify_double_arrow(wt, b, c, window(cfg), samples, cfg.seed);
      auto bad_log = recheck_phase_log(wt, b, c);
      rep.result["checked"] = v.checked;
      if (!v.pass) rep.result["element"] = v.b, rep.result["image"] = v.image;
      if (bad_log) rep.result["bad_phase_entry"] = *bad_log;
      bool ok = v.pass && !bad_log;
      std::string why = !v.pass ? "image of " + set_str(v.b) + " is " + set_str(v.image) + ", no prefix in C"
                        : bad_log ? "phase log entry " + std::to_string(*bad_log) + " does not hold"
                                  : std::to_string(v.checked) + " elements checked";
      check(rep, ok, why);
    };
  });
}

// ---- ideals ----

MapTable random_map(const Code& b, const Code& c, int bound, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto targets = elements_below(c, bound);
  if (targets.empty()) throw UsageError("C has no elements in the window");
  MapTable f;
  for (const auto& e : elements_below(b, bound)) f[e] = targets[rng() % targets.size()];
  return f;
}

ShrinkCertificate read_cert(const std::string& arg) {
  json j = as_json(arg);
  return io::shrink_from_json(j.contains("result") ? j.at("result") : j);
}

void ideals_cmd(CLI::App& app, Config& cfg, Report& rep, std::function<void()>& run) {
  auto* g = app.add_subcommand("ideals", "Hechler trees, FIN ideals and stage construction")->require_subcommand(1);
  static std::string code, fin, bs, cs, map, cert, e, family, prior, current;
  static std::vector<std::string> trees, images, grid;
  static bool brute = false;
  static int target = 3;

  auto* av = g->add_subcommand("avoid", "Hechler tree missing a set in the ideal");
  av->add_option("--code", code, "barrier code")->required();
  av->add_option("--fin", fin, "FIN descriptor JSON")->required();
  av->callback([&] {
    rep.command = "ideals avoid";
    run = [&] {
      Code c = read_code(code);
      FinDesc d = io::findesc_from_json(as_json(fin));
      auto t = hechler_avoiding(c, d, window(cfg));
      auto bad = avoiding_violation(c, d, t, window(cfg));
      rep.result["tree"] = io::to_json(t);
      rep.lines.push_back(io::to_json(t).dump());
      check(rep, !bad, bad ? set_str(*bad) + " is on the tree" : "disjoint in the window");
    };
  });

  auto* dm = g->add_subcommand("dominate", "tree above finitely many trees");
  dm->add_option("--code", code, "barrier code")->required();
  dm->add_option("--tree", trees, "tree JSON, repeatable")->required();
  dm->callback([&] {
    rep.command = "ideals dominate";
    run = [&] {
      std::vector<HechlerTree> ts;
      for (const auto& t : trees) {
        json j = as_json(t);
        ts.push_back(io::tree_from_json(j.contains("result") ? j.at("result").at("tree") : j));
      }
      auto d = hechler_dominating(ts, read_code(code), window(cfg));
      rep.result = {{"tree", io::to_json(d.tree)}, {"bounds", d.column_bound}};
      rep.lines.push_back(io::to_json(d.tree).dump());
      std::string b;
      for (int x : d.column_bound) b += (b.empty() ? "" : " ") + std::to_string(x);
      rep.lines.push_back("column bounds " + b);
    };
  });

  auto map_of = [&](const Code& b, const Code& c) {
    if (map == "random") return random_map(b, c, cfg.bound, cfg.seed);
    return io::map_from_json(as_json(map));
  };

  auto* sh = g->add_subcommand("shrink", "shrink a map from B to C onto a certificate");
  sh->add_option("--B", bs, "source barrier")->required();
  sh->add_option("--C", cs, "target barrier")->required();
  sh->add_option("--map", map, "map JSON [[b, c], ...] or \"random\" (seeded)")->required();
  sh->add_flag("--bruteforce", brute, "search subsets directly");
  sh->add_option("--target", target, "subset size for --bruteforce");
  sh->callback([&] {
    rep.command = "ideals shrink";
    rep.uses_seed = map == "random";
    run = [&] {
      Code b = read_code(bs), c = read_code(cs);
      MapTable f = map_of(b, c);
      auto ct = brute ? katetov_shrink_bruteforce(b, c, f, window(cfg), target)
                      : katetov_shrink_recursive(b, c, f, window(cfg));
      auto chk = check_certificate(b, c, f, ct);
      rep.result = io::to_json(ct);
      rep.lines.push_back(std::string(kind_label(ct.kind)) + " x " + set_str(ct.x) + " via " + ct.branch);
      check(rep, chk.valid, chk.valid ? "" : chk.reason + " at " + set_str(chk.element));
      rep.result["pass"] = chk.valid;
    };
  });

  auto* st = g->add_subcommand("stage", "one stage of the almost disjoint construction");
  st->add_option("--code", code, "barrier C")->required();
  st->add_option("--e", e, "set descriptor E")->required();
  st->add_option("--prior", prior, "JSON array of earlier families");
  st->add_option("--image", images, "earlier shrink certificates, repeatable");
  st->add_option("--current", current, "shrink certificate of this stage");
  st->callback([&] {
    rep.command = "ideals stage";
    run = [&] {
      std::vector<std::vector<FinSet>> pa;
      if (!prior.empty()) pa = as_json(prior).get<std::vector<std::vector<FinSet>>>();
      std::vector<ShrinkCertificate> pi;
      for (const auto& i : images) pi.push_back(read_cert(i));
      std::optional<ShrinkCertificate> cur;
      if (!current.empty()) cur = read_cert(current);
      auto s = ad_stage(read_code(code), pa, pi, read_desc(e), window(cfg), cur ? &*cur : nullptr);
      rep.result = io::to_json(s);
      rep.lines.push_back("A " + sets_str(s.a_new));
      for (const auto& cl : s.checks)
        rep.lines.push_back("clause " + std::to_string(cl.id) + (cl.pass ? " ok: " : " FAILS: ") + cl.detail);
      check(rep, s.pass(), "");
    };
  });

  auto* ve = g->add_subcommand("verify", "check a shrink certificate, or a family against a grid");
  ve->add_option("--B", bs, "source barrier (certificate mode)");
  ve->add_option("--C", cs, "target barrier");
  ve->add_option("--map", map, "map JSON or \"random\" (certificate mode)");
  ve->add_option("--cert", cert, "shrink certificate");
  ve->add_option("--family", family, "JSON array of families (grid mode)");
  ve->add_option("--grid", grid, "set descriptors E (grid mode)");
  ve->callback([&] {
    rep.command = "ideals verify";
    run = [&] {
      if (!cert.empty()) {
        if (bs.empty() || cs.empty() || map.empty()) throw UsageError("certificate mode needs --B, --C and --map");
        rep.uses_seed = map == "random";
        Code b = read_code(bs), c = read_code(cs);
        auto chk = check_certificate(b, c, map_of(b, c), read_cert(cert));
        if (!chk.valid) rep.result["element"] = chk.element;
        check(rep, chk.valid, chk.reason);
        return;
      }
      if (family.empty() || cs.empty()) throw UsageError("grid mode needs --C, --family and --grid");
      std::vector<SetDescriptor> gd;
      for (const auto& d : grid) gd.push_back(read_desc(d));
      auto fam = as_json(family).get<std::vector<std::vector<FinSet>>>();
      auto r = verify_noCseq_hypotheses(read_code(cs), fam, gd, window(cfg));
      check(rep, r.pass, r.reason);
    };
  });

  auto* br = g->add_subcommand("branch", "greedy set whose subsets are all nodes of a tree");
  br->add_option("--tree", trees, "tree JSON")->required()->expected(1);
  br->callback([&] {
    rep.command = "ideals branch";
    run = [&] {
      auto a = selective_branch_set(io::tree_from_json(as_json(trees[0])), window(cfg));
      rep.result["set"] = a;
      rep.lines.push_back(set_str(a));
    };
  });
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotFoundInWindow:
    case ErrorKind::EmptyResult: return 1;
    case ErrorKind::FuelExhausted:
    case ErrorKind::WindowExhausted:
    case ErrorKind::Exhausted: return 3;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nash-Williams barriers: ranks, Ramsey searches, double arrows and ideals"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--bound", cfg.bound, "window bound")->check(CLI::PositiveNumber);
  app.add_option("--depth", cfg.depth, "window depth (default: bound)")->check(CLI::PositiveNumber);
  app.add_option("--fuel", cfg.fuel, "search fuel (default: 10 * bound)")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed, "seed for sampled checks and random maps");
  app.add_option("--out", cfg.out, "write the report here instead of stdout");
  app.fallthrough();

  Report rep;
  std::function<void()> run;
  barrier_cmd(app, cfg, rep, run);
  ramsey_cmd(app, cfg, rep, run);
  embed_cmd(app, cfg, rep, run);
  ideals_cmd(app, cfg, rep, run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (!run) throw UsageError("no command given");
    window(cfg);
    run();
    emit(rep, cfg);
    return rep.pass && !*rep.pass ? 1 : 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    int code = exit_for(e.kind());
    if (code == 1) {
      // a search that came back empty still gets a report
      rep.pass = false;
      rep.result = {{"pass", false}, {"error", kind_name(e.kind())}, {"message", e.what()}};
      rep.lines = {std::string("Fail: ") + e.what()};
      try {
        emit(rep, cfg);
      } catch (const UsageError& u) {
        std::cerr << "usage error: " << u.what() << "\n";
        return 2;
      }
    }
    return code;
  } catch (const json::exception& e) {
    std::cerr << "usage error: bad JSON input: " << e.what() << "\n";
    return 2;
  }
}
