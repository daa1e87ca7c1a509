#pragma once

// JSON forms of the library's values and certificates.

#include <json.hpp>

#include "embed.hpp"
#include "ideals.hpp"

namespace nwb::io {

using json = nlohmann::json;

// ---- ordinals: -1, or [[exponent, coefficient], ...] ----

inline json to_json(const Ordinal& o) {
  if (o.is_below_zero()) return -1;
  json a = json::array();
  for (const auto& t : o.terms()) a.push_back(json::array({to_json(t.exponent), t.coeff}));
  return a;
}

inline Ordinal ordinal_from_json(const json& j) {
  if (j.is_number_integer() && j.get<long long>() == -1) return Ordinal::below_zero();
  if (!j.is_array()) fail(ErrorKind::Parse, "ordinal JSON must be -1 or an array of pairs");
  std::vector<OrdTerm> ts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[1].is_number_unsigned())
      fail(ErrorKind::Parse, "ordinal term must be [exponent, positive coefficient]");
    ts.push_back(OrdTerm{ordinal_from_json(p[0]), p[1].get<std::uint64_t>()});
  }
  Ordinal o = Ordinal::from_terms(ts);
  if (to_json(o) != j) fail(ErrorKind::Parse, "ordinal JSON is not in Cantor normal form");
  return o;
}

// ---- descriptors ----

inline json to_json(const SetDescriptor& d) {
  json tail;
  switch (d.tail) {
    case SetDescriptor::Tail::Cofinite: tail = {{"kind", "cofinite"}, {"start", d.start}}; break;
    case SetDescriptor::Tail::Arithmetic: tail = {{"kind", "arithmetic"}, {"start", d.start}, {"step", d.step}}; break;
    case SetDescriptor::Tail::Empty: tail = {{"kind", "empty"}}; break;
  }
  return {{"prefix", d.prefix}, {"tail", tail}};
}

inline SetDescriptor desc_from_json(const json& j) {
  if (j.is_string()) return parse_desc(j.get<std::string>());
  try {
    FinSet pre = j.at("prefix").get<FinSet>();
    const json& t = j.at("tail");
    std::string k = t.at("kind").get<std::string>();
    if (k == "cofinite") return SetDescriptor::cofinite(t.at("start").get<int>(), pre);
    if (k == "arithmetic") return SetDescriptor::arith(t.at("start").get<int>(), t.at("step").get<int>(), pre);
    if (k == "empty") return SetDescriptor::finite(pre);
    fail(ErrorKind::Parse, "unknown tail kind " + k);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("descriptor JSON: ") + e.what());
  }
}

// ---- barrier codes, tagged by "type" ----

inline json to_json(const ParamRule& r) {
  if (auto* u = std::get_if<UniformAffine>(&r)) return {{"type", "uniformAff"}, {"a", u->a}, {"b", u->b}};
  return {{"type", "schreierAff"}, {"c", std::get<SchreierAffine>(r).c}};
}

inline json to_json(const Code& c) {
  const auto& v = c.node().v;
  if (auto* x = std::get_if<UniformK>(&v)) return {{"type", "uniform"}, {"k", x->k}};
  if (auto* x = std::get_if<SchreierShift>(&v)) return {{"type", "schreier"}, {"k", x->k}};
  if (auto* x = std::get_if<Restrict>(&v)) return {{"type", "restrict"}, {"inner", to_json(x->inner)}, {"base", to_json(x->base)}};
  if (auto* x = std::get_if<Shift>(&v)) return {{"type", "shift"}, {"inner", to_json(x->inner)}, {"offset", x->offset}};
  if (auto* x = std::get_if<Cons>(&v)) return {{"type", "cons"}, {"root", x->root}, {"inner", to_json(x->inner)}};
  const auto& g = std::get<Glue>(v);
  json cols = json::array();
  for (const auto& k : g.cols) cols.push_back(to_json(k));
  json tail;
  if (auto* u = std::get_if<UniformAffine>(&g.tail)) {
    tail = to_json(ParamRule{*u});
  } else if (auto* k = std::get_if<ConstCode>(&g.tail)) {
    tail = {{"type", "const"}, {"code", to_json(k->code)}};
  } else {
    const auto& cs = std::get<Cases>(g.tail);
    json rules = json::array();
    for (const auto& r : cs.rules) rules.push_back(to_json(r));
    tail = {{"type", "cases"}, {"modulus", cs.modulus}, {"rules", rules}};
  }
  return {{"type", "glue"}, {"cols", cols}, {"tail", tail}};
}

inline Code code_from_json(const json& j);

inline ParamRule rule_from_json(const json& j) {
  std::string t = j.at("type").get<std::string>();
  if (t == "uniformAff") return UniformAffine{j.at("a").get<int>(), j.at("b").get<int>()};
  if (t == "schreierAff") return SchreierAffine{j.at("c").get<int>()};
  fail(ErrorKind::Parse, "unknown column rule " + t);
}

inline Code code_from_json(const json& j) {
  if (j.is_string()) return parse_code(j.get<std::string>());
  try {
    std::string t = j.at("type").get<std::string>();
    if (t == "uniform") return uniform(j.at("k").get<int>());
    if (t == "schreier") return schreier(j.at("k").get<int>());
    if (t == "restrict") return restrict(code_from_json(j.at("inner")), desc_from_json(j.at("base")));
    if (t == "shift") return shift(code_from_json(j.at("inner")), j.at("offset").get<int>());
    if (t == "cons") return cons(j.at("root").get<int>(), code_from_json(j.at("inner")));
    if (t == "omega1") return omega_plus_one_example();
    if (t != "glue") fail(ErrorKind::Parse, "unknown code type " + t);
    std::vector<Code> cols;
    for (const auto& k : j.at("cols")) cols.push_back(code_from_json(k));
    const json& tl = j.at("tail");
    std::string tt = tl.at("type").get<std::string>();
    if (tt == "uniformAff") return glue(cols, std::get<UniformAffine>(rule_from_json(tl)));
    if (tt == "const") return glue(cols, ConstCode{code_from_json(tl.at("code"))});
    if (tt != "cases") fail(ErrorKind::Parse, "unknown glue tail " + tt);
    Cases cs{tl.at("modulus").get<int>(), {}};
    for (const auto& r : tl.at("rules")) cs.rules.push_back(rule_from_json(r));
    return glue(cols, cs);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("code JSON: ") + e.what());
  }
}

// ---- colorings ----

inline json to_json(const Coloring& c) {
  if (!c.table_data()) return {{"rule", c.str()}, {"arity", c.arity()}};
  json t = json::array();
  for (const auto& [s, v] : *c.table_data()) t.push_back(json::array({s, v}));
  return {{"arity", c.arity()}, {"table", t}};
}

inline Coloring coloring_from_json(const json& j) {
  if (j.is_string()) return Coloring::parse(j.get<std::string>());
  if (j.contains("rule")) return Coloring::parse(j.at("rule").get<std::string>());
  std::map<FinSet, int> t;
  for (const auto& p : j.at("table")) t[p.at(0).get<FinSet>()] = p.at(1).get<int>();
  return Coloring::table(j.at("arity").get<int>(), std::move(t));
}

// ---- ramsey certificates ----

inline json to_json(const MonochromeWitness& w) {
  return {{"set", w.set}, {"color", w.color}, {"discarded_prefix", w.discarded_prefix}};
}

inline MonochromeWitness mono_from_json(const json& j) {
  return {j.at("set").get<FinSet>(), j.at("color").get<int>(), j.value("discarded_prefix", 0)};
}

inline json to_json(const AlmostWitness& w) {
  json per = json::array();
  for (const auto& m : w.per_coloring) per.push_back(to_json(m));
  return {{"set", w.set}, {"per_coloring", per}};
}

inline json to_json(const DiagonalResult& r) {
  json per = json::array(), spine = json::array();
  for (const auto& m : r.per_coloring) per.push_back(to_json(m));
  for (const auto& s : r.spine) spine.push_back({{"n", s.n}, {"colors", s.colors}, {"threshold", s.threshold}});
  return {{"set", r.set}, {"per_coloring", per}, {"spine", spine}};
}

// ---- double-arrow witnesses ----

inline json to_json(const PhaseEntry& p) {
  return {{"phase", std::string(1, p.phase)}, {"step", p.step}, {"kind", p.kind}, {"lhs", p.lhs}, {"rhs", p.rhs},
          {"lhs_rank", p.lhs_rank.str()}, {"rhs_rank", p.rhs_rank.str()}};
}

inline PhaseEntry phase_from_json(const json& j) {
  PhaseEntry p;
  std::string ph = j.at("phase").get<std::string>();
  if (ph.size() != 1) fail(ErrorKind::Parse, "phase must be one character");
  p.phase = ph[0];
  p.step = j.at("step").get<int>();
  p.kind = j.at("kind").get<std::string>();
  p.lhs = j.at("lhs").get<FinSet>();
  p.rhs = j.at("rhs").get<FinSet>();
  p.lhs_rank = Ordinal::parse(j.at("lhs_rank").get<std::string>());
  p.rhs_rank = Ordinal::parse(j.at("rhs_rank").get<std::string>());
  return p;
}

inline json to_json(const DoubleArrowWitness& w) {
  json log = json::array(), parts = json::array();
  for (const auto& p : w.phase_log) log.push_back(to_json(p));
  for (const auto& p : w.parts) parts.push_back(to_json(p));
  json j = {{"mode", mode_name(w.mode)}, {"breakpoints", w.breakpoints}, {"values", w.values},
            {"below", w.below},          {"phase_log", log},           {"parts", parts}};
  if (w.via) j["via"] = w.via->str();
  return j;
}

inline DoubleArrowWitness arrow_from_json(const json& j) {
  DoubleArrowWitness w;
  try {
    std::string m = j.value("mode", "alternating");
    if (m == "alternating")
      w.mode = DoubleArrowWitness::Mode::Alternating;
    else if (m == "rank-omega")
      w.mode = DoubleArrowWitness::Mode::RankOmega;
    else if (m == "composite")
      w.mode = DoubleArrowWitness::Mode::Composite;
    else
      fail(ErrorKind::Parse, "unknown witness mode " + m);
    w.breakpoints = j.at("breakpoints").get<std::vector<int>>();
    w.values = j.value("values", std::vector<int>{});
    w.below = j.value("below", 0);
    if (j.contains("phase_log"))
      for (const auto& p : j.at("phase_log")) w.phase_log.push_back(phase_from_json(p));
    if (j.contains("parts"))
      for (const auto& p : j.at("parts")) w.parts.push_back(arrow_from_json(p));
    if (j.contains("via")) w.via = code_from_json(j.at("via"));
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("witness JSON: ") + e.what());
  }
  require_increasing(w.breakpoints, "breakpoints");
  return w;
}

// ---- Hechler trees, FIN^B descriptors, certificates ----

inline json to_json(const HechlerTree& t) {
  json th = json::array();
  for (const auto& [k, v] : t.thresholds) th.push_back(json::array({k, v}));
  return {{"base", to_json(t.base)}, {"thresholds", th}, {"default", t.dflt}};
}

inline HechlerTree tree_from_json(const json& j) {
  HechlerTree t;
  if (j.contains("base")) t.base = desc_from_json(j.at("base"));
  for (const auto& p : j.at("thresholds")) {
    FinSet k = p.at(0).get<FinSet>();
    require_increasing(k, "tree node");
    t.thresholds[k] = p.at(1).get<int>();
  }
  t.dflt = j.value("default", 0);
  return t;
}

inline json to_json(const FinDesc& d) {
  if (d.all) return "all";
  json j = json::object();
  if (!d.elems.empty()) j["elems"] = d.elems;
  if (!d.cols.empty()) {
    json c = json::object();
    for (const auto& [n, s] : d.cols) c[std::to_string(n)] = to_json(s);
    j["cols"] = c;
  }
  if (d.every) j["every"] = to_json(*d.every);
  return j;
}

inline FinDesc findesc_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "all") fail(ErrorKind::Parse, "FIN descriptor string must be \"all\"");
    return FinDesc::whole();
  }
  FinDesc d;
  if (j.contains("elems"))
    for (const auto& e : j.at("elems")) {
      FinSet s = e.get<FinSet>();
      require_increasing(s, "FIN descriptor element");
      d.elems.push_back(s);
    }
  if (j.contains("cols"))
    for (const auto& [k, v] : j.at("cols").items()) d.cols[std::stoi(k)] = findesc_from_json(v);
  if (j.contains("every")) d.every = std::make_shared<FinDesc>(findesc_from_json(j.at("every")));
  return d;
}

inline json to_json(const Window& w) { return {{"bound", w.bound}, {"depth", w.depth}}; }

inline Window window_from_json(const json& j) {
  Window w{j.at("bound").get<int>(), j.at("depth").get<int>()};
  w.validate();
  return w;
}

inline json to_json(const ShrinkCertificate& c) {
  json j = {{"x", c.x},         {"kind", kind_label(c.kind)}, {"image", c.image},
            {"branch", c.branch}, {"checked_window", to_json(c.checked_window)}};
  if (c.kind == ShrinkCertificate::Kind::ColumnBounded)
    j["column"] = c.column;
  else
    j["tree"] = to_json(c.tree);
  return j;
}

inline ShrinkCertificate shrink_from_json(const json& j) {
  ShrinkCertificate c;
  c.x = j.at("x").get<FinSet>();
  std::string k = j.at("kind").get<std::string>();
  if (k == "ColumnBounded") {
    c.kind = ShrinkCertificate::Kind::ColumnBounded;
    c.column = j.at("column").get<int>();
  } else if (k == "HechlerDisjoint") {
    c.tree = tree_from_json(j.at("tree"));
  } else {
    fail(ErrorKind::Parse, "unknown certificate kind " + k);
  }
  c.image = j.value("image", std::vector<FinSet>{});
  c.branch = j.value("branch", "");
  c.checked_window = window_from_json(j.at("checked_window"));
  return c;
}

inline json to_json(const AdStageCertificate& s) {
  json checks = json::array();
  for (const auto& c : s.checks) checks.push_back({{"clause", c.id}, {"pass", c.pass}, {"detail", c.detail}});
  json j = {{"a_new", s.a_new}, {"checks", checks}, {"tree", to_json(s.tree)}, {"bounds", s.bounds}};
  j["x_new"] = s.x_new ? json(*s.x_new) : json(nullptr);
  return j;
}

inline json map_to_json(const MapTable& f) {
  json a = json::array();
  for (const auto& [k, v] : f) a.push_back(json::array({k, v}));
  return a;
}

inline MapTable map_from_json(const json& j) {
  MapTable f;
  for (const auto& p : j) f[p.at(0).get<FinSet>()] = p.at(1).get<FinSet>();
  return f;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace nwb::io
