#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "code.hpp"
#include "ordinal.hpp"
#include "sets.hpp"

namespace nwb {

namespace detail {

inline int schreier_size(int min, int k) { return std::max(min + k, 1); }

// a suffix of a set, read in the coordinates of a shifted code
struct View {
  const int* p;
  std::size_t n;
  int off;
  int at(std::size_t i) const { return p[i] - off; }
  View drop(std::size_t k) const { return {p + k, n - k, off}; }
  View shifted(int o) const { return {p, n, off + o}; }
  int last() const { return at(n - 1); }
};

inline View view(const FinSet& s) { return {s.data(), s.size(), 0}; }

inline bool all_in(const View& v, const Base& base) {
  for (std::size_t i = 0; i < v.n; ++i)
    if (!base.contains(v.at(i))) return false;
  return true;
}

inline int tail_modulus(const Glue& g) {
  if (auto* c = std::get_if<Cases>(&g.tail)) return c->modulus;
  return 1;
}

// columns of a glue past this point repeat their behaviour class by class
inline int glue_scan_limit(const Glue& g, const Base& base) {
  int m = static_cast<int>(g.cols.size());
  int per = std::lcm(base.period(), tail_modulus(g));
  return std::max(m, base.threshold()) + 2 * per + 1;
}

// base members below the scan limit, plus the tail classes (mod q) that
// contain infinitely many base members past the explicit columns
struct GlueScan {
  std::vector<int> members;
  std::vector<int> infinite_classes;
};

inline GlueScan glue_scan(const Glue& g, const Base& base) {
  GlueScan out;
  int lim = glue_scan_limit(g, base);
  for (auto x = base.next(0); x && *x < lim; x = base.next(*x + 1)) out.members.push_back(*x);
  if (base.infinite()) {
    int q = tail_modulus(g);
    int from = std::max<int>(g.cols.size(), base.threshold());
    int per = std::lcm(base.period(), q);
    std::vector<bool> seen(q, false);
    for (int y = from; y < from + per; ++y)
      if (base.contains(y)) seen[y % q] = true;
    for (int r = 0; r < q; ++r)
      if (seen[r]) out.infinite_classes.push_back(r);
  }
  return out;
}

inline const ParamRule* class_rule(const Glue& g, int r) {
  if (auto* c = std::get_if<Cases>(&g.tail)) return &c->rules[r];
  return nullptr;
}

bool member(const Code& c, const View& v, const Base& base);
bool extendable(const Code& c, const View& v, const Base& base);

inline bool member(const Code& c, const View& v, const Base& base) {
  const auto& nv = c.node().v;
  if (auto* x = std::get_if<UniformK>(&nv)) return static_cast<int>(v.n) == x->k && all_in(v, base);
  if (auto* x = std::get_if<SchreierShift>(&nv))
    return v.n >= 1 && static_cast<int>(v.n) == schreier_size(v.at(0), x->k) && all_in(v, base);
  if (auto* x = std::get_if<Glue>(&nv)) {
    if (v.n == 0 || !base.contains(v.at(0))) return false;
    int h = v.at(0);
    return member(glue_column(*x, h), v.drop(1), base.above(h));
  }
  if (auto* x = std::get_if<Restrict>(&nv)) return member(x->inner, v, base.with(x->base));
  if (auto* x = std::get_if<Shift>(&nv)) {
    if (v.n && v.at(0) < x->offset) return false;
    return member(x->inner, v.shifted(x->offset), base.down(x->offset));
  }
  const auto& x = std::get<Cons>(nv);
  if (v.n == 0 || v.at(0) != x.root || !base.contains(x.root)) return false;
  return member(x.inner, v.drop(1), base.above(x.root));
}

// is there an element of the family end-extending v?
inline bool extendable(const Code& c, const View& v, const Base& base) {
  const auto& nv = c.node().v;
  if (!all_in(v, base)) return false;
  if (auto* x = std::get_if<UniformK>(&nv)) {
    int need = x->k - static_cast<int>(v.n);
    if (need < 0) return false;
    int from = v.n ? v.last() + 1 : 0;
    return base.count_from(from, need) >= need;
  }
  if (auto* x = std::get_if<SchreierShift>(&nv)) {
    if (v.n) {
      int need = schreier_size(v.at(0), x->k) - static_cast<int>(v.n);
      return need >= 0 && base.count_from(v.last() + 1, need) >= need;
    }
    if (base.infinite()) return !base.empty();
    for (auto h = base.next(0); h; h = base.next(*h + 1)) {
      int need = schreier_size(*h, x->k) - 1;
      if (base.count_from(*h + 1, need) >= need) return true;
    }
    return false;
  }
  if (auto* x = std::get_if<Glue>(&nv)) {
    if (v.n) {
      int h = v.at(0);
      return extendable(glue_column(*x, h), v.drop(1), base.above(h));
    }
    for (int h : glue_scan(*x, base).members)
      if (extendable(glue_column(*x, h), v, base.above(h))) return true;
    return false;
  }
  if (auto* x = std::get_if<Restrict>(&nv)) return extendable(x->inner, v, base.with(x->base));
  if (auto* x = std::get_if<Shift>(&nv)) {
    if (v.n && v.at(0) < x->offset) return false;
    return extendable(x->inner, v.shifted(x->offset), base.down(x->offset));
  }
  const auto& x = std::get<Cons>(nv);
  if (!base.contains(x.root)) return false;
  if (v.n && v.at(0) != x.root) return false;
  return extendable(x.inner, v.n ? v.drop(1) : v, base.above(x.root));
}

inline Ordinal root_rank(const Code& c, const Base& base);

// rank of column h of a glue, as a node {h}
inline Ordinal column_rank(const Glue& g, int h, const Base& base) {
  return root_rank(glue_column(g, h), base.above(h));
}

inline Ordinal root_rank(const Code& c, const Base& base) {
  if (!extendable(c, View{nullptr, 0, 0}, base)) fail(ErrorKind::NotInTree, "empty family has no rank");
  const auto& nv = c.node().v;
  if (auto* x = std::get_if<UniformK>(&nv)) return Ordinal::nat(x->k);
  if (auto* x = std::get_if<SchreierShift>(&nv)) {
    if (base.infinite()) return Ordinal::omega();
    int best = 0;
    for (auto h = base.next(0); h; h = base.next(*h + 1)) {
      int sz = schreier_size(*h, x->k);
      if (base.count_from(*h + 1, sz - 1) >= sz - 1) best = std::max(best, sz);
    }
    return Ordinal::nat(best);
  }
  if (auto* x = std::get_if<Glue>(&nv)) {
    GlueScan sc = glue_scan(*x, base);
    Ordinal best = Ordinal::below_zero();
    for (int h : sc.members) {
      Code col = glue_column(*x, h);
      if (!extendable(col, View{nullptr, 0, 0}, base.above(h))) continue;
      best = max(best, root_rank(col, base.above(h)).succ());
    }
    for (int r : sc.infinite_classes) {
      const UniformAffine* ua = nullptr;
      if (auto* u = std::get_if<UniformAffine>(&x->tail)) ua = u;
      if (auto* pr = class_rule(*x, r)) ua = std::get_if<UniformAffine>(pr);
      if (ua && ua->a > 0) best = max(best, Ordinal::omega());
    }
    return best;
  }
  if (auto* x = std::get_if<Restrict>(&nv)) return root_rank(x->inner, base.with(x->base));
  if (auto* x = std::get_if<Shift>(&nv)) return root_rank(x->inner, base.down(x->offset));
  const auto& x = std::get<Cons>(nv);
  return root_rank(x.inner, base.above(x.root)).succ();
}

inline Ordinal node_rank(const Code& c, const View& v, const Base& base) {
  if (v.n == 0) return root_rank(c, base);
  const auto& nv = c.node().v;
  if (auto* x = std::get_if<UniformK>(&nv)) return Ordinal::nat(x->k - v.n);
  if (auto* x = std::get_if<SchreierShift>(&nv)) return Ordinal::nat(schreier_size(v.at(0), x->k) - v.n);
  if (auto* x = std::get_if<Glue>(&nv)) {
    int h = v.at(0);
    return node_rank(glue_column(*x, h), v.drop(1), base.above(h));
  }
  if (auto* x = std::get_if<Restrict>(&nv)) return node_rank(x->inner, v, base.with(x->base));
  if (auto* x = std::get_if<Shift>(&nv)) return node_rank(x->inner, v.shifted(x->offset), base.down(x->offset));
  const auto& x = std::get<Cons>(nv);
  return node_rank(x.inner, v.drop(1), base.above(x.root));
}

// base that contains every element of the family, ignoring restrictions
inline bool ambient_contains(const Code& c, int x) {
  if (x < 0) return false;
  const auto& nv = c.node().v;
  if (auto* r = std::get_if<Restrict>(&nv)) return ambient_contains(r->inner, x);
  if (auto* s = std::get_if<Shift>(&nv)) return x >= s->offset && ambient_contains(s->inner, x - s->offset);
  if (auto* k = std::get_if<Cons>(&nv)) return x == k->root || (x > k->root && ambient_contains(k->inner, x));
  return true;
}

// same, but honouring restrictions met before any branching
inline bool top_base_contains(const Code& c, int x) {
  if (x < 0) return false;
  const auto& nv = c.node().v;
  if (auto* r = std::get_if<Restrict>(&nv)) return r->base.contains(x) && top_base_contains(r->inner, x);
  if (auto* s = std::get_if<Shift>(&nv)) return x >= s->offset && top_base_contains(s->inner, x - s->offset);
  if (auto* k = std::get_if<Cons>(&nv)) return x == k->root || (x > k->root && top_base_contains(k->inner, x));
  return true;
}

inline void check_ambient(const Code& c, const FinSet& s) {
  require_increasing(s, "set");
  for (int x : s)
    if (!ambient_contains(c, x)) fail(ErrorKind::OffBase, set_str(s) + " is not inside the base of " + c.str());
}

}  // namespace detail

inline bool contains(const Code& c, const FinSet& s) {
  detail::check_ambient(c, s);
  return detail::member(c, detail::view(s), Base{});
}

inline bool tree_contains(const Code& c, const FinSet& s) {
  detail::check_ambient(c, s);
  return detail::extendable(c, detail::view(s), Base{});
}

struct Uniformity {
  bool uniform = true;
  bool strict = true;  // successor ranks strictly increasing wherever the rank is a limit
  std::string reason;
};

namespace detail {

inline Uniformity uniformity(const Code& c, const Base& base);

inline void merge_into(Uniformity& u, const Uniformity& v) {
  if (!v.uniform && u.uniform) {
    u.uniform = false;
    u.reason = v.reason;
  }
  if (!v.strict) u.strict = false;
}

inline Uniformity uniformity(const Code& c, const Base& base) {
  Uniformity u;
  if (!extendable(c, View{nullptr, 0, 0}, base)) return u;
  const auto& nv = c.node().v;
  if (std::holds_alternative<UniformK>(nv)) return u;
  if (auto* x = std::get_if<SchreierShift>(&nv)) {
    if (x->k == 0) {
      auto a = base.next(0);
      auto b = a ? base.next(*a + 1) : std::nullopt;
      if (a && b && schreier_size(*a, 0) == schreier_size(*b, 0)) u.strict = false;
    }
    return u;
  }
  if (auto* x = std::get_if<Restrict>(&nv)) return uniformity(x->inner, base.with(x->base));
  if (auto* x = std::get_if<Shift>(&nv)) return uniformity(x->inner, base.down(x->offset));
  if (auto* x = std::get_if<Cons>(&nv)) return uniformity(x->inner, base.above(x->root));
  const auto& g = std::get<Glue>(nv);
  Ordinal alpha = root_rank(c, base);
  GlueScan sc = glue_scan(g, base);
  std::vector<std::pair<int, Ordinal>> ranks;
  for (int h : sc.members) {
    Code col = glue_column(g, h);
    if (!extendable(col, View{nullptr, 0, 0}, base.above(h))) continue;
    ranks.push_back({h, root_rank(col, base.above(h))});
    merge_into(u, uniformity(col, base.above(h)));
  }
  // slopes of infinite affine classes must agree, and cannot mix with schreier classes
  std::optional<int> slope;
  bool has_limit_class = false, mixed = false;
  for (int r : sc.infinite_classes) {
    const ParamRule* pr = class_rule(g, r);
    const UniformAffine* ua = std::get_if<UniformAffine>(&g.tail);
    if (pr) ua = std::get_if<UniformAffine>(pr);
    if (pr && std::holds_alternative<SchreierAffine>(*pr)) {
      has_limit_class = true;
      continue;
    }
    if (!ua) continue;
    if (slope && *slope != ua->a) mixed = true;
    slope = ua->a;
  }
  if (mixed || (has_limit_class && slope)) {
    u.uniform = false;
    u.reason = "column ranks of " + c.str() + " are not eventually monotone";
    return u;
  }
  if (alpha.is_successor()) {
    std::vector<OrdTerm> pt = alpha.terms();
    if (--pt.back().coeff == 0) pt.pop_back();
    Ordinal beta = Ordinal::from_terms(pt);
    for (auto& [h, r] : ranks)
      if (r != beta) {
        u.uniform = false;
        u.reason = "column " + std::to_string(h) + " of " + c.str() + " has rank " + r.str() + ", expected " + beta.str();
        return u;
      }
    return u;
  }
  for (std::size_t i = 1; i < ranks.size(); ++i) {
    if (ranks[i].second < ranks[i - 1].second) {
      u.uniform = false;
      u.reason = "column ranks of " + c.str() + " drop at " + std::to_string(ranks[i].first);
      return u;
    }
    if (ranks[i].second == ranks[i - 1].second) u.strict = false;
  }
  return u;
}

// does the family on this (infinite) base equal [base]^r exactly?
inline bool is_full(const Code& c, int r, const Base& base) {
  const auto& nv = c.node().v;
  if (auto* x = std::get_if<UniformK>(&nv)) return x->k == r;
  if (std::holds_alternative<SchreierShift>(nv)) return false;
  if (std::holds_alternative<Cons>(nv)) return false;
  if (auto* x = std::get_if<Restrict>(&nv)) return is_full(x->inner, r, base.with(x->base));
  if (auto* x = std::get_if<Shift>(&nv)) return is_full(x->inner, r, base.down(x->offset));
  const auto& g = std::get<Glue>(nv);
  if (r == 0) return false;
  GlueScan sc = glue_scan(g, base);
  for (int h : sc.members)
    if (!is_full(glue_column(g, h), r - 1, base.above(h))) return false;
  for (int cls : sc.infinite_classes) {
    const ParamRule* pr = class_rule(g, cls);
    if (pr && std::holds_alternative<SchreierAffine>(*pr)) return false;
    const UniformAffine* ua = pr ? std::get_if<UniformAffine>(pr) : std::get_if<UniformAffine>(&g.tail);
    if (ua && !(ua->a == 0 && ua->b == r - 1)) return false;
  }
  return true;
}

}  // namespace detail

// least k with family restricted to [k, inf) equal to [k, inf)^r, searched up to limit
inline std::optional<int> stabilization(const Code& c, int r, int limit = 256) {
  for (int k = 0; k <= limit; ++k) {
    Base b;
    b.lo = k;
    if (detail::is_full(c, r, b)) return k;
  }
  return std::nullopt;
}

inline Uniformity is_uniform(const Code& c) { return detail::uniformity(c, Base{}); }

namespace detail {

inline void check_restrictions(const Code& c) {
  const auto& nv = c.node().v;
  if (auto* x = std::get_if<Restrict>(&nv)) {
    if (!x->base.is_final_segment() && !uniformity(x->inner, Base{}).uniform)
      fail(ErrorKind::UnsupportedRestriction, "rank of " + c.str() + " is not determined symbolically");
    check_restrictions(x->inner);
  } else if (auto* x = std::get_if<Shift>(&nv)) {
    check_restrictions(x->inner);
  } else if (auto* x = std::get_if<Cons>(&nv)) {
    check_restrictions(x->inner);
  } else if (auto* x = std::get_if<Glue>(&nv)) {
    for (const auto& col : x->cols) check_restrictions(col);
    if (auto* cc = std::get_if<ConstCode>(&x->tail)) check_restrictions(cc->code);
  }
}

}  // namespace detail

inline Ordinal node_rank(const Code& c, const FinSet& s) {
  detail::check_ambient(c, s);
  detail::check_restrictions(c);
  if (!detail::extendable(c, detail::view(s), Base{}))
    fail(ErrorKind::NotInTree, set_str(s) + " is not in the tree of " + c.str());
  return detail::node_rank(c, detail::view(s), Base{});
}

inline Ordinal rank(const Code& c) { return node_rank(c, {}); }

// rank with -1 for sets outside the tree
inline Ordinal rank_or_below(const Code& c, const FinSet& s) {
  if (!tree_contains(c, s)) return Ordinal::below_zero();
  return node_rank(c, s);
}

namespace detail {

inline Base without_floor(const Base& b) {
  Base out = b;
  out.lo = 0;
  return out;
}

// column code c lives above h; add an explicit floor when it matters
inline Code place_above(const Code& c, int h, const Base& base) {
  Base real = base.above(h);
  Base loose = without_floor(base);
  bool e1 = extendable(c, View{nullptr, 0, 0}, real);
  bool e2 = extendable(c, View{nullptr, 0, 0}, loose);
  if (e1 == e2 && (!e1 || root_rank(c, real) == root_rank(c, loose))) return c;
  return restrict(c, SetDescriptor::cofinite(h + 1));
}

inline Code sub(const Code& c, const View& v, const Base& base) {
  if (v.n == 0) return c;
  const auto& nv = c.node().v;
  if (auto* x = std::get_if<UniformK>(&nv)) return uniform(x->k - static_cast<int>(v.n));
  if (auto* x = std::get_if<SchreierShift>(&nv)) return uniform(schreier_size(v.at(0), x->k) - static_cast<int>(v.n));
  if (auto* x = std::get_if<Glue>(&nv)) {
    int h = v.at(0);
    Code col = glue_column(*x, h);
    if (v.n == 1) return place_above(col, h, base);
    return sub(col, v.drop(1), base.above(h));
  }
  if (auto* x = std::get_if<Restrict>(&nv)) return restrict(sub(x->inner, v, base.with(x->base)), x->base);
  if (auto* x = std::get_if<Shift>(&nv))
    return shift(sub(x->inner, v.shifted(x->offset), base.down(x->offset)), x->offset);
  const auto& x = std::get<Cons>(nv);
  if (v.n == 1) return place_above(x.inner, x.root, base);
  return sub(x.inner, v.drop(1), base.above(x.root));
}

}  // namespace detail

// code for {t \ s : t in B, s initial segment of t}, used above max(s)
inline Code sub_barrier(const Code& c, const FinSet& s) {
  detail::check_ambient(c, s);
  if (!detail::extendable(c, detail::view(s), Base{}))
    fail(ErrorKind::NotInTree, set_str(s) + " is not in the tree of " + c.str());
  if (detail::member(c, detail::view(s), Base{}))
    fail(ErrorKind::TerminalNode, set_str(s) + " is an element of " + c.str());
  return detail::sub(c, detail::view(s), Base{});
}

// replace the last |b| elements of a by b
inline FinSet end_replace(const FinSet& a, const FinSet& b) {
  require_increasing(a, "a");
  require_increasing(b, "b");
  if (b.size() >= a.size()) fail(ErrorKind::SizeViolation, "|b| must be smaller than |a|");
  FinSet out(a.begin(), a.end() - b.size());
  out.insert(out.end(), b.begin(), b.end());
  if (!is_increasing(out)) fail(ErrorKind::NotIncreasing, set_str(a) + " * " + set_str(b) + " is not increasing");
  return out;
}

inline FinSet first_segment(const Code& c, const SetDescriptor& m, int fuel) {
  m.validate();
  if (!m.infinite()) fail(ErrorKind::Invalid, "first_segment needs an infinite set");
  FinSet s;
  std::optional<int> x = m.next(0);
  for (int i = 0; i <= fuel && x; ++i) {
    if (detail::member(c, detail::view(s), Base{})) return s;
    if (i == fuel) break;
    if (!detail::ambient_contains(c, *x)) fail(ErrorKind::OffBase, std::to_string(*x) + " is outside the base of " + c.str());
    s.push_back(*x);
    x = m.next(*x + 1);
  }
  fail(ErrorKind::FuelExhausted, "no initial segment of the first " + std::to_string(fuel) + " elements lies in " + c.str());
}

// every element of the family with support in [0, bound), in lexicographic order
inline std::vector<FinSet> elements_below(const Code& c, int bound) {
  std::vector<FinSet> out;
  FinSet s;
  std::function<void()> dfs = [&]() {
    if (detail::member(c, detail::view(s), Base{})) out.push_back(s);
    int from = s.empty() ? 0 : s.back() + 1;
    for (int x = from; x < bound; ++x) {
      s.push_back(x);
      if (detail::extendable(c, detail::view(s), Base{})) dfs();
      s.pop_back();
    }
  };
  if (detail::extendable(c, detail::view(s), Base{})) dfs();
  return out;
}

// elements of the family that are subsets of pool (pool increasing)
inline std::vector<FinSet> elements_within(const Code& c, const FinSet& pool) {
  std::vector<FinSet> out;
  FinSet s;
  std::function<void(std::size_t)> dfs = [&](std::size_t from) {
    if (detail::member(c, detail::view(s), Base{})) out.push_back(s);
    for (std::size_t i = from; i < pool.size(); ++i) {
      s.push_back(pool[i]);
      if (detail::extendable(c, detail::view(s), Base{})) dfs(i + 1);
      s.pop_back();
    }
  };
  if (detail::extendable(c, detail::view(s), Base{})) dfs(0);
  return out;
}

struct SpernerResult {
  bool pass = true;
  FinSet smaller, larger;
};

inline std::vector<std::pair<FinSet, FinSet>> sperner_violations(const Code& c, const Window& w) {
  w.validate();
  auto els = elements_below(c, w.bound);
  std::vector<std::pair<FinSet, FinSet>> out;
  for (const auto& t : els)
    for (const auto& s : els)
      if (s.size() < t.size() && is_subset(s, t)) out.push_back({s, t});
  return out;
}

inline SpernerResult verify_sperner(const Code& c, const Window& w) {
  w.validate();
  auto els = elements_below(c, w.bound);
  for (const auto& t : els)
    for (const auto& s : els)
      if (s.size() < t.size() && is_subset(s, t)) return {false, s, t};
  return {};
}

struct CoverResult {
  bool pass = true;
  FinSet stuck;
};

// every increasing sequence of length <= depth inside the base and the window
// either has an initial segment in B or lies in T(B)
inline CoverResult verify_cover(const Code& c, const Window& w) {
  w.validate();
  FinSet s;
  if (detail::member(c, detail::view(s), Base{})) return {};
  if (!detail::extendable(c, detail::view(s), Base{})) return {false, s};
  std::optional<FinSet> bad;
  std::function<void()> dfs = [&]() {
    int from = s.empty() ? 0 : s.back() + 1;
    for (int x = from; x < w.bound && !bad; ++x) {
      if (!detail::top_base_contains(c, x)) continue;
      s.push_back(x);
      if (!detail::member(c, detail::view(s), Base{})) {
        if (!detail::extendable(c, detail::view(s), Base{}))
          bad = s;
        else if (static_cast<int>(s.size()) < w.depth)
          dfs();
      }
      s.pop_back();
    }
  };
  dfs();
  if (bad) return {false, *bad};
  return {};
}

// Picks m_0 < m_1 < ... with ranks of {m_i} nondecreasing and at least i,
// each m_{i+1} past the point where B[m_i] becomes a plain uniform family.
inline SetDescriptor uniformize_rank_omega(const Code& c, const Window& w, int fuel) {
  w.validate();
  if (rank(c) != Ordinal::omega()) fail(ErrorKind::RankMismatch, c.str() + " does not have rank w");
  FinSet picks;
  int lower = 0;
  std::uint64_t prev = 0;
  int spent = 0;
  for (std::uint64_t i = 0;; ++i) {
    std::uint64_t need = std::max(i, prev);
    std::optional<int> found;
    for (int m = lower; m < w.bound; ++m) {
      if (!detail::top_base_contains(c, m) || !tree_contains(c, {m})) continue;
      if (++spent > fuel) fail(ErrorKind::FuelExhausted, "uniformize ran out of fuel");
      if (node_rank(c, {m}).finite_value() >= need) {
        found = m;
        break;
      }
    }
    if (!found) break;
    int m = *found;
    picks.push_back(m);
    prev = node_rank(c, {m}).finite_value();
    int k = m + 1;
    if (!contains(c, {m})) {
      Code col = sub_barrier(c, {m});
      if (auto st = stabilization(col, static_cast<int>(prev))) k = std::max(k, *st);
    }
    lower = k;
  }
  if (picks.empty()) fail(ErrorKind::NotFoundInWindow, "no column in the window");
  // describe the picks: trailing constant-gap run becomes the tail
  std::size_t run = picks.size() - 1;
  int gap = 1;
  if (picks.size() >= 2) {
    gap = picks.back() - picks[picks.size() - 2];
    while (run > 0 && picks[run] - picks[run - 1] == gap) --run;
  }
  FinSet pre(picks.begin(), picks.begin() + run);
  if (gap == 1) return SetDescriptor::cofinite(picks[run], pre);
  return SetDescriptor::arith(picks[run], gap, pre);
}

// an upper estimate of the least rank among restrictions to a few periodic sets
inline Ordinal floor_rank_estimate(const Code& c) {
  std::vector<SetDescriptor> grid = {SetDescriptor::omega(), SetDescriptor::evens(), SetDescriptor::odds()};
  for (int q = 3; q <= 4; ++q)
    for (int r = 0; r < q; ++r) grid.push_back(SetDescriptor::arith(r, q));
  Ordinal best = detail::root_rank(c, Base{});
  for (const auto& d : grid) {
    Base b = Base{}.with(d);
    if (!detail::extendable(c, detail::View{nullptr, 0, 0}, b)) continue;
    best = std::min(best, detail::root_rank(c, b));
  }
  return best;
}

}  // namespace nwb
