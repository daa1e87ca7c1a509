#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ramsey.hpp"

namespace nwb {

// ---- canonical enumeration of all finite sequences of naturals ----
//
// Sequences are ordered by weight max(max+1, length), then max, then length,
// then lexicographically. Each weight class is finite, and the order extends
// both "proper initial segment" and "same parent, smaller last entry".

using Seq = std::vector<int>;
using u128 = unsigned __int128;

constexpr int kMaxWeight = 24;

namespace detail {

inline u128 pw(u128 b, int e) {
  u128 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline int seq_weight(const Seq& s) {
  int m = -1;
  for (int x : s) m = std::max(m, x);
  return std::max(m + 1, static_cast<int>(s.size()));
}

inline u128 count_weight(int w) {
  if (w == 0) return 1;
  u128 a = 0, b = 0;
  for (int l = 0; l <= w; ++l) a += pw(w, l);
  for (int l = 0; l < w; ++l) b += pw(w - 1, l);
  return a - b;
}

// sequences of length l over [0, m] that use m
inline u128 count_block(int m, int l) { return pw(m + 1, l) - pw(m, l); }

inline u128 completions(int m, int rest, bool has_m) { return has_m ? pw(m + 1, rest) : count_block(m, rest); }

}  // namespace detail

inline std::optional<u128> seq_index(const Seq& s) {
  for (int x : s)
    if (x < 0) fail(ErrorKind::Invalid, "sequences have natural entries");
  if (s.empty()) return 0;
  int w = detail::seq_weight(s);
  if (w > kMaxWeight) return std::nullopt;
  int m = *std::max_element(s.begin(), s.end());
  int l = static_cast<int>(s.size());
  u128 idx = 0;
  for (int v = 0; v < w; ++v) idx += detail::count_weight(v);
  for (int mm = 0; mm < m; ++mm) idx += detail::count_block(mm, w);
  if (m == w - 1)
    for (int ll = 1; ll < l; ++ll) idx += detail::count_block(m, ll);
  bool has_m = false;
  for (int j = 0; j < l; ++j) {
    for (int d = 0; d < s[j]; ++d) idx += detail::completions(m, l - j - 1, has_m || d == m);
    has_m |= s[j] == m;
  }
  return idx;
}

inline Seq seq_at(u128 i) {
  int w = 0;
  while (true) {
    if (w > kMaxWeight) fail(ErrorKind::Invalid, "index beyond the supported enumeration range");
    u128 c = detail::count_weight(w);
    if (i < c) break;
    i -= c;
    ++w;
  }
  if (w == 0) return {};
  int m = 0, l = w;
  for (;; ++m) {
    if (m < w - 1) {
      u128 c = detail::count_block(m, w);
      if (i < c) break;
      i -= c;
    } else {
      for (l = 1;; ++l) {
        u128 c = detail::count_block(m, l);
        if (i < c) break;
        i -= c;
      }
      break;
    }
  }
  Seq s;
  bool has_m = false;
  for (int j = 0; j < l; ++j) {
    for (int d = 0; d <= m; ++d) {
      u128 c = detail::completions(m, l - j - 1, has_m || d == m);
      if (i < c) {
        s.push_back(d);
        has_m |= d == m;
        break;
      }
      i -= c;
    }
  }
  return s;
}

inline std::vector<Seq> canonical_enumeration(int count) {
  std::vector<Seq> out;
  for (int i = 0; i < count; ++i) out.push_back(seq_at(static_cast<u128>(i)));
  return out;
}

inline std::string u128_str(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s += static_cast<char>('0' + static_cast<int>(v % 10));
    v /= 10;
  }
  return std::string(s.rbegin(), s.rend());
}

// ---- function tables and Hechler trees ----

struct FnTable {
  std::vector<int> values;
  int dflt = 0;
  int at(std::size_t i) const { return i < values.size() ? values[i] : dflt; }
  friend bool operator==(const FnTable&, const FnTable&) = default;
};

// Nodes are increasing sequences in the base; the successors of s are the
// base points above max(s) and at least the threshold of s.
struct HechlerTree {
  SetDescriptor base = SetDescriptor::omega();
  std::map<FinSet, int> thresholds;
  int dflt = 0;

  int threshold(const FinSet& s) const {
    auto it = thresholds.find(s);
    return it == thresholds.end() ? dflt : it->second;
  }

  bool contains(const FinSet& s) const {
    FinSet p;
    for (int x : s) {
      if (!base.contains(x) || (!p.empty() && x <= p.back()) || x < threshold(p)) return false;
      p.push_back(x);
    }
    return true;
  }

  void raise(const FinSet& s, int k) {
    auto it = thresholds.find(s);
    int cur = it == thresholds.end() ? dflt : it->second;
    if (k > cur || it == thresholds.end()) thresholds[s] = std::max(cur, k);
  }

  friend bool operator==(const HechlerTree&, const HechlerTree&) = default;
};

inline HechlerTree full_tree() { return {}; }

inline bool is_increasing_seq(const Seq& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] >= s[i]) return false;
  return true;
}

// T_f over the first values.size() indices; later nodes use the default
inline HechlerTree tree_from_fn(const FnTable& f) {
  HechlerTree t;
  t.dflt = f.dflt;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    Seq s = seq_at(static_cast<u128>(i));
    if (!is_increasing_seq(s)) continue;
    // prefixes come earlier, so their thresholds are already in place
    if (t.contains(s)) t.thresholds[s] = f.values[i];
  }
  return t;
}

// f_T on the first count indices, 0 off the tree
inline FnTable fn_from_tree(const HechlerTree& t, int count) {
  FnTable f;
  f.dflt = t.dflt;
  for (int i = 0; i < count; ++i) {
    Seq s = seq_at(static_cast<u128>(i));
    f.values.push_back(is_increasing_seq(s) && t.contains(s) ? t.threshold(s) : 0);
  }
  return f;
}

// ---- FIN^B presentations ----

// explicit elements, plus per-column sections, plus one rule for every
// other column; `all` is the whole family
struct FinDesc {
  bool all = false;
  std::vector<FinSet> elems;
  std::map<int, FinDesc> cols;
  std::shared_ptr<FinDesc> every;

  static FinDesc whole() {
    FinDesc d;
    d.all = true;
    return d;
  }
  static FinDesc columns(const std::vector<int>& full) {
    FinDesc d;
    for (int n : full) d.cols[n] = whole();
    return d;
  }
  static FinDesc elements(std::vector<FinSet> e) {
    FinDesc d;
    d.elems = std::move(e);
    return d;
  }

  bool empty() const { return !all && elems.empty() && cols.empty() && !every; }

  // section at column n: {s \ {n} : s in this set, min s = n}
  FinDesc section(int n) const {
    if (all) return whole();
    FinDesc d;
    auto it = cols.find(n);
    if (it != cols.end())
      d = it->second;
    else if (every)
      d = *every;
    for (const auto& e : elems)
      if (!e.empty() && e[0] == n) d.elems.push_back(FinSet(e.begin() + 1, e.end()));
    return d;
  }

  bool contains(const FinSet& s) const {
    if (all) return true;
    for (const auto& e : elems)
      if (e == s) return true;
    if (s.empty()) return false;
    auto it = cols.find(s[0]);
    const FinDesc* sec = it != cols.end() ? &it->second : every.get();
    return sec && sec->contains(FinSet(s.begin() + 1, s.end()));
  }
};

namespace detail {

inline bool has_empty(const FinDesc& d) {
  if (d.all) return true;
  for (const auto& e : d.elems)
    if (e.empty()) return true;
  return false;
}

inline Code column_code(const Code& c, int n) {
  if (member(c, view(FinSet{n}), Base{})) return uniform(0);
  return sub_barrier(c, {n});
}

inline bool is_column(const Code& c, const FinSet& prefix, int n) {
  if (!prefix.empty() && n <= prefix.back()) return false;
  return ambient_contains(c, n) && extendable(c, view(FinSet{n}), Base{});
}

// thresholds of a tree avoiding d inside c, written under `prefix`
inline void avoid_rec(const Code& c, const FinDesc& d, const FinSet& prefix, const Window& w,
                      std::map<FinSet, int>& out) {
  if (member(c, view(FinSet{}), Base{})) {
    if (has_empty(d)) fail(ErrorKind::NotInIdeal, "the only element " + set_str(prefix) + " is in the set");
    return;
  }
  if (d.all) fail(ErrorKind::NotInIdeal, "a whole family below " + set_str(prefix) + " is in the set");
  if (d.empty()) return;
  int lo = prefix.empty() ? 0 : prefix.back() + 1;
  std::map<int, std::map<FinSet, int>> kept;
  int bad_max = -1;
  for (int n = lo; n < w.bound; ++n) {
    if (!is_column(c, prefix, n)) continue;
    FinDesc sec = d.section(n);
    if (sec.empty()) continue;
    bool bad = false;
    if (member(c, view(FinSet{n}), Base{})) {
      bad = has_empty(sec);
    } else {
      std::map<FinSet, int> sub;
      FinSet p = prefix;
      p.push_back(n);
      try {
        avoid_rec(sub_barrier(c, {n}), sec, p, w, sub);
        kept[n] = std::move(sub);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotInIdeal) throw;
        bad = true;
      }
    }
    if (bad) {
      if (d.every && n == w.bound - 1 && !d.cols.count(n))
        fail(ErrorKind::NotInIdeal, "the rule for every column below " + set_str(prefix) + " leaves the ideal");
      bad_max = n;
    }
  }
  if (bad_max >= 0 || prefix.empty()) out[prefix] = bad_max + 1;
  for (auto& [n, sub] : kept)
    if (n > bad_max) out.insert(sub.begin(), sub.end());
}

}  // namespace detail

// Lemma recursion: clear the finitely many bad columns at the root, then
// glue trees built column by column.
inline HechlerTree hechler_avoiding(const Code& b, const FinDesc& x, const Window& w) {
  w.validate();
  HechlerTree t;
  detail::avoid_rec(b, x, {}, w, t.thresholds);
  return t;
}

// every element of B in the window that is in x is off the tree
inline std::optional<FinSet> avoiding_violation(const Code& b, const FinDesc& x, const HechlerTree& t, const Window& w) {
  for (const auto& e : elements_below(b, w.bound))
    if (x.contains(e) && t.contains(e)) return e;
  return std::nullopt;
}

struct Domination {
  HechlerTree tree;
  std::vector<int> column_bound;
};

// pointwise maximum plus one over the f_T values, on every node any tree lists
inline Domination hechler_dominating(const std::vector<HechlerTree>& trees, const Code& b, const Window& w) {
  w.validate();
  Domination out;
  int d = 0;
  for (const auto& t : trees) d = std::max(d, t.dflt);
  out.tree.dflt = trees.empty() ? 0 : d + 1;
  std::set<FinSet> keys;
  for (const auto& t : trees)
    for (const auto& kv : t.thresholds) keys.insert(kv.first);
  for (const auto& k : keys) {
    int m = 0;
    for (const auto& t : trees) m = std::max(m, t.contains(k) ? t.threshold(k) : 0);
    out.tree.thresholds[k] = m + 1;
  }
  if (trees.empty()) out.tree.thresholds[{}] = 0;
  auto els = elements_below(b, w.bound);
  for (const auto& t : trees) {
    int n = 0;
    for (const auto& e : els)
      if (!e.empty() && out.tree.contains(e) && !t.contains(e)) n = std::max(n, e[0]);
    out.column_bound.push_back(n);
  }
  return out;
}

// ---- G_c(B) ----

struct GcResult {
  bool positive = false;
  FinSet x;
};

inline GcResult gc_positive(const Code& b, const Coloring& in_s, const Window& w, int target) {
  try {
    auto m = nash_williams_search(b, in_s, w, target, SearchStrategy::Pruned, nullptr, 1);
    return {true, m.set};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotFoundInWindow) throw;
  }
  return {};
}

// ---- Katetov shrinking ----

using MapTable = std::map<FinSet, FinSet>;

struct ShrinkCertificate {
  enum class Kind { ColumnBounded, HechlerDisjoint };
  FinSet x;
  Kind kind = Kind::HechlerDisjoint;
  int column = 0;
  HechlerTree tree;
  std::vector<FinSet> image;
  std::string branch;
  Window checked_window;
};

inline const char* kind_label(ShrinkCertificate::Kind k) {
  return k == ShrinkCertificate::Kind::ColumnBounded ? "ColumnBounded" : "HechlerDisjoint";
}

inline HechlerTree certificate_tree(const ShrinkCertificate& c) {
  if (c.kind == ShrinkCertificate::Kind::HechlerDisjoint) return c.tree;
  HechlerTree t;
  t.thresholds[{}] = c.column + 1;
  return t;
}

struct CertCheck {
  bool valid = true;
  std::string reason;
  FinSet element;
};

// literal check on the window: B|x is nonempty and every image obeys the kind
inline CertCheck check_certificate(const Code& b, const Code& c, const MapTable& f, const ShrinkCertificate& cert) {
  auto els = elements_within(b, cert.x);
  std::vector<FinSet> in_window;
  for (const auto& e : els)
    if (e.empty() || e.back() < cert.checked_window.bound) in_window.push_back(e);
  if (in_window.empty()) return {false, "B restricted to x is empty", {}};
  for (const auto& e : in_window) {
    auto it = f.find(e);
    if (it == f.end()) return {false, "map undefined", e};
    const FinSet& y = it->second;
    if (!contains(c, y)) return {false, "image is not in C", e};
    if (cert.kind == ShrinkCertificate::Kind::ColumnBounded) {
      if (y.empty() || y[0] > cert.column) return {false, "image above the column bound", e};
    } else if (cert.tree.contains(y)) {
      return {false, "image lies on the tree", e};
    }
  }
  return {};
}

namespace detail {

using PartialMap = std::function<std::optional<FinSet>(const FinSet&)>;

inline int column_of(const FinSet& y) { return y.empty() ? -1 : y[0]; }

// blocks each image at its parent node
inline HechlerTree deep_block(const std::vector<FinSet>& images, bool* root_blocked = nullptr) {
  HechlerTree t;
  for (const auto& y : images) {
    if (y.empty()) {
      if (root_blocked) *root_blocked = true;
      continue;
    }
    FinSet p(y.begin(), y.end() - 1);
    t.raise(p, y.back() + 1);
  }
  return t;
}

inline void intersect_into(HechlerTree& a, const HechlerTree& b) {
  for (const auto& [k, v] : b.thresholds) a.raise(k, v);
  a.dflt = std::max(a.dflt, b.dflt);
}

struct Shrunk {
  FinSet x;
  HechlerTree tree;
  bool root_blocked = false;
  std::string branch;
  std::optional<int> column;
};

// greedy: keep x when every new element of B ending at x has a defined image
// on the wanted side of column n (low: column <= n)
inline FinSet greedy_side(const Code& b, const PartialMap& g, const FinSet& pool, int n, bool low) {
  FinSet z;
  for (int x : pool) {
    bool ok = true;
    for (const auto& e : elements_ending_at(b, z, x)) {
      auto y = g(e);
      if (!y) continue;
      if ((column_of(*y) <= n) != low) {
        ok = false;
        break;
      }
    }
    if (ok) z.push_back(x);
  }
  return z;
}

inline std::vector<FinSet> images_on(const Code& b, const PartialMap& g, const FinSet& x) {
  std::vector<FinSet> out;
  for (const auto& e : elements_within(b, x))
    if (auto y = g(e)) out.push_back(*y);
  return out;
}

inline Shrunk shrink_rec(const Code& b, const Code& c, const PartialMap& g, const FinSet& pool, const Window& w) {
  Shrunk out;
  if (member(b, view(FinSet{}), Base{})) {
    out.x = pool;
    out.branch = "rank0";
    if (auto y = g({})) out.tree = deep_block({*y}, &out.root_blocked);
    return out;
  }
  // low columns: all images in columns <= n on a set with at least half its
  // points past n
  std::size_t need = std::min<std::size_t>(w.depth, pool.size());
  for (int n = 0; n < w.bound && need > 0; ++n) {
    FinSet z = greedy_side(b, g, pool, n, true);
    if (z.size() < need) continue;
    FinSet above;
    for (int x : z)
      if (x > n) above.push_back(x);
    if (2 * above.size() < need) continue;
    bool reach = false;
    for (const auto& e : elements_within(b, above))
      if (g(e)) reach = true;
    if (!reach) continue;
    out.x = z;
    out.column = n;
    out.branch = "low-column";
    out.tree.thresholds[{}] = n + 1;
    return out;
  }
  bool rank_one = true;
  for (const auto& e : elements_within(b, pool)) rank_one &= e.size() == 1;
  if (rank_one) {
    // one image per column
    std::set<int> used;
    for (int x : pool) {
      auto y = g({x});
      if (y && !used.insert(column_of(*y)).second) continue;
      out.x.push_back(x);
    }
    out.branch = "rank1-thin";
    out.tree = deep_block(images_on(b, g, out.x), &out.root_blocked);
    return out;
  }
  out.branch = "recursion";
  FinSet cur = greedy_side(b, g, pool, 0, false);
  FinSet ms;
  std::map<int, HechlerTree> col_trees;
  std::set<int> blocked;
  for (int n = 0; n + 1 < w.bound; ++n) {
    if (!cur.empty()) ms.push_back(cur.front());
    FinSet rest;
    for (int x : cur)
      if (ms.empty() || x > ms.back()) rest.push_back(x);
    FinSet xp = greedy_side(b, g, rest, n + 1, false);
    int col = n + 1;
    if (ambient_contains(c, col) && extendable(c, view(FinSet{col}), Base{})) {
      Code cc = column_code(c, col);
      // nonempty s' inside {m_0..m_n} that are nodes of T(B)
      std::vector<FinSet> heads;
      FinSet s;
      std::function<void(std::size_t)> dfs = [&](std::size_t from) {
        for (std::size_t i = from; i < ms.size(); ++i) {
          s.push_back(ms[i]);
          if (extendable(b, view(s), Base{})) {
            heads.push_back(s);
            dfs(i + 1);
          }
          s.pop_back();
        }
      };
      dfs(0);
      std::sort(heads.begin(), heads.end());
      for (const auto& h : heads) {
        Code bb = member(b, view(h), Base{}) ? uniform(0) : sub_barrier(b, h);
        PartialMap gg = [&g, h, col](const FinSet& t) -> std::optional<FinSet> {
          auto y = g(set_union(h, t));
          if (!y || column_of(*y) != col) return std::nullopt;
          return FinSet(y->begin() + 1, y->end());
        };
        Shrunk sub = shrink_rec(bb, cc, gg, xp, w);
        xp = sub.x;
        intersect_into(col_trees[col], sub.tree);
        if (sub.root_blocked) blocked.insert(col);
      }
    }
    cur = xp;
  }
  out.x = ms;
  out.tree.thresholds[{}] = blocked.empty() ? 0 : *blocked.rbegin() + 1;
  for (const auto& [col, t] : col_trees)
    for (const auto& [k, v] : t.thresholds) {
      FinSet key{col};
      key.insert(key.end(), k.begin(), k.end());
      out.tree.raise(key, v);
    }
  return out;
}

inline PartialMap table_map(const MapTable& f) {
  return [&f](const FinSet& s) -> std::optional<FinSet> {
    auto it = f.find(s);
    if (it == f.end()) return std::nullopt;
    return it->second;
  };
}

inline void check_shrink_inputs(const Code& b, const Code& c, const MapTable& f, const Window& w) {
  w.validate();
  Ordinal rb = rank(b), rc = rank(c);
  if (!(rb < rc)) fail(ErrorKind::RankOrderViolated, "rank " + rb.str() + " is not below " + rc.str());
  for (const auto& e : elements_below(b, w.bound)) {
    auto it = f.find(e);
    if (it == f.end()) fail(ErrorKind::Invalid, "map undefined at " + set_str(e));
    if (!contains(c, it->second)) fail(ErrorKind::Invalid, "map sends " + set_str(e) + " outside C");
  }
}

}  // namespace detail

inline ShrinkCertificate katetov_shrink_recursive(const Code& b, const Code& c, const MapTable& f, const Window& w) {
  detail::check_shrink_inputs(b, c, f, w);
  auto g = detail::table_map(f);
  auto r = detail::shrink_rec(b, c, g, window_pool(w), w);
  ShrinkCertificate cert;
  cert.x = r.x;
  cert.branch = r.branch;
  cert.checked_window = w;
  if (r.column) {
    cert.kind = ShrinkCertificate::Kind::ColumnBounded;
    cert.column = *r.column;
  } else {
    cert.tree = r.tree;
  }
  cert.image = detail::images_on(b, g, cert.x);
  if (cert.x.empty() || elements_within(b, cert.x).empty())
    fail(ErrorKind::WindowExhausted, "the recursion left no element of B; enlarge the window");
  return cert;
}

// lexicographically first x of the target size with B|x nonempty; its
// image is blocked node by node
inline ShrinkCertificate katetov_shrink_bruteforce(const Code& b, const Code& c, const MapTable& f, const Window& w,
                                                   int target) {
  detail::check_shrink_inputs(b, c, f, w);
  auto g = detail::table_map(f);
  std::optional<ShrinkCertificate> found;
  detail::for_each_subset(window_pool(w), target, [&](const FinSet& x) {
    if (elements_within(b, x).empty()) return false;
    ShrinkCertificate cert;
    cert.x = x;
    cert.branch = "bruteforce";
    cert.checked_window = w;
    cert.image = detail::images_on(b, g, x);
    cert.tree = detail::deep_block(cert.image);
    if (!check_certificate(b, c, f, cert).valid) return false;
    found = cert;
    return true;
  });
  if (!found) fail(ErrorKind::NotFoundInWindow, "no set of size " + std::to_string(target) + " in the window");
  return *found;
}

// ---- stage construction ----

// nodes of the tree of C restricted to e
inline std::function<bool(const FinSet&)> e_up(const Code& c, const SetDescriptor& e) {
  Code ce = restrict(c, e);
  return [ce, e](const FinSet& s) {
    for (int x : s)
      if (!e.contains(x)) return false;
    return detail::extendable(ce, detail::view(s), Base{});
  };
}

struct Clause {
  int id = 0;
  bool pass = true;
  std::string detail;
};

struct AdStageCertificate {
  std::vector<FinSet> a_new;
  std::optional<FinSet> x_new;
  std::vector<Clause> checks;
  HechlerTree tree;
  std::vector<int> bounds;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline AdStageCertificate ad_stage(const Code& c, const std::vector<std::vector<FinSet>>& prior_a,
                                   const std::vector<ShrinkCertificate>& prior_images, const SetDescriptor& e,
                                   const Window& w, const ShrinkCertificate* current = nullptr) {
  w.validate();
  std::vector<HechlerTree> trees;
  for (const auto& a : prior_a) trees.push_back(hechler_avoiding(c, FinDesc::elements(a), w));
  for (const auto& cert : prior_images) trees.push_back(certificate_tree(cert));
  auto dom = hechler_dominating(trees, c, w);
  AdStageCertificate out;
  out.tree = dom.tree;
  out.bounds = dom.column_bound;
  auto up = e_up(c, e);
  auto candidates = elements_below(restrict(c, e), w.bound);
  std::set<int> cols;
  for (const auto& y : candidates) {
    if (y.empty() || cols.count(y[0])) continue;
    if (!dom.tree.contains(y) || !up(y)) continue;
    cols.insert(y[0]);
    out.a_new.push_back(y);
  }
  if (static_cast<int>(out.a_new.size()) < w.depth)
    fail(ErrorKind::WindowExhausted, "only " + std::to_string(out.a_new.size()) + " columns inhabited, need " +
                                         std::to_string(w.depth));

  Clause c1{1, true, "no current map"};
  if (current) {
    out.x_new = current->x;
    c1.detail = "image of the current map avoids its certificate";
    for (const auto& y : current->image) {
      bool ok = current->kind == ShrinkCertificate::Kind::ColumnBounded ? (!y.empty() && y[0] <= current->column)
                                                                        : !current->tree.contains(y);
      if (!ok) {
        c1.pass = false;
        c1.detail = "image " + set_str(y) + " breaks the certificate";
        break;
      }
    }
  }
  out.checks.push_back(c1);

  auto confined = [&](int id, const std::vector<FinSet>& other, int bound, std::size_t which) {
    Clause cl{id, true, ""};
    std::size_t meet = 0;
    for (const auto& y : out.a_new)
      if (std::find(other.begin(), other.end(), y) != other.end()) {
        ++meet;
        if (y[0] > bound) {
          cl.pass = false;
          cl.detail = "prior " + std::to_string(which) + " meets " + set_str(y) + " past column " + std::to_string(bound);
        }
      }
    if (cl.pass) cl.detail = "prior " + std::to_string(which) + ": " + std::to_string(meet) + " shared, all in columns <= " +
                             std::to_string(bound);
    return cl;
  };
  std::size_t k = 0;
  Clause c2{2, true, "all priors"}, c3{3, true, "all prior images"};
  for (std::size_t i = 0; i < prior_a.size(); ++i, ++k) {
    auto cl = confined(2, prior_a[i], out.bounds[k], i);
    if (!cl.pass) c2 = cl;
  }
  for (std::size_t i = 0; i < prior_images.size(); ++i, ++k) {
    auto cl = confined(3, prior_images[i].image, out.bounds[k], i);
    if (!cl.pass) c3 = cl;
  }
  out.checks.push_back(c2);
  out.checks.push_back(c3);

  Clause c4{4, true, "one element per column"};
  std::set<int> seen;
  for (const auto& y : out.a_new)
    if (!seen.insert(y[0]).second) c4 = {4, false, "two elements in column " + std::to_string(y[0])};
  out.checks.push_back(c4);

  Clause c5{5, true, "every element is in the tree of C restricted to " + e.str()};
  for (const auto& y : out.a_new)
    if (!contains(c, y) || !up(y)) c5 = {5, false, set_str(y) + " is not in the tree of C restricted to " + e.str()};
  out.checks.push_back(c5);
  return out;
}

// greedy: each new point clears every threshold met along subsets of A
inline FinSet selective_branch_set(const HechlerTree& t, const Window& w) {
  w.validate();
  FinSet a;
  for (int x = 0; x < w.bound; ++x) {
    if (!t.base.contains(x) || (!a.empty() && x <= a.back())) continue;
    int need = 0;
    std::size_t listed = 0;
    for (const auto& [k, v] : t.thresholds)
      if (is_subset(k, a)) {
        need = std::max(need, v);
        ++listed;
      }
    bool unlisted = a.size() >= 63 || listed < (std::size_t{1} << a.size());
    if (unlisted) need = std::max(need, t.dflt);
    if (x >= need) a.push_back(x);
  }
  if (a.empty()) fail(ErrorKind::WindowExhausted, "no point of the base clears the root threshold in the window");
  return a;
}

struct NoCseqResult {
  bool pass = true;
  std::string reason;
};

inline NoCseqResult verify_noCseq_hypotheses(const Code& c, const std::vector<std::vector<FinSet>>& family,
                                             const std::vector<SetDescriptor>& grid, const Window& w) {
  w.validate();
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::set<int> cols;
    for (const auto& y : family[i]) {
      if (!contains(c, y)) return {false, "member " + std::to_string(i) + " has " + set_str(y) + " outside C"};
      if (!cols.insert(y[0]).second)
        return {false, "member " + std::to_string(i) + " has two elements in column " + std::to_string(y[0])};
    }
  }
  for (const auto& e : grid) {
    bool covered = false;
    for (const auto& a : family) {
      if (a.empty()) continue;
      bool inside = true;
      for (const auto& y : a)
        for (int x : y)
          if (x >= w.bound || !e.contains(x)) inside = false;
      if (inside) {
        covered = true;
        break;
      }
    }
    if (!covered) return {false, "uncovered E " + e.str()};
  }
  return {};
}

}  // namespace nwb
