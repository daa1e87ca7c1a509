#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "barrier.hpp"

namespace nwb {

constexpr int kMaxArity = 16;

class Coloring {
 public:
  enum class Rule { Table, SumMod, EvenSum, MinMod, Const, Hash, MinAtLeast, Lift };

  static Coloring table(int arity, std::map<FinSet, int> t) {
    Coloring c(Rule::Table, arity);
    for (const auto& [s, v] : t)
      if (v < 0 || v >= arity) fail(ErrorKind::Invalid, "table color out of range at " + set_str(s));
    c.table_ = std::make_shared<const std::map<FinSet, int>>(std::move(t));
    return c;
  }
  static Coloring sum_mod(int arity) { return Coloring(Rule::SumMod, arity); }
  static Coloring even_sum() { return Coloring(Rule::EvenSum, 2); }
  static Coloring min_mod(int arity) { return Coloring(Rule::MinMod, arity); }
  static Coloring constant(int arity, int color) {
    if (color < 0 || color >= arity) fail(ErrorKind::Invalid, "constant color out of range");
    Coloring c(Rule::Const, arity);
    c.param_ = static_cast<std::uint64_t>(color);
    return c;
  }
  static Coloring hash(int arity, std::uint64_t seed) {
    Coloring c(Rule::Hash, arity);
    c.param_ = seed;
    return c;
  }
  static Coloring min_at_least(int k) {
    Coloring c(Rule::MinAtLeast, 2);
    c.param_ = static_cast<std::uint64_t>(k);
    return c;
  }
  // color of t is col2 applied to the two least elements of t
  static Coloring lift(const Coloring& col2) {
    Coloring c(Rule::Lift, col2.arity());
    c.inner_ = std::make_shared<const Coloring>(col2);
    return c;
  }

  int arity() const { return arity_; }
  Rule rule() const { return rule_; }
  const std::map<FinSet, int>* table_data() const { return table_.get(); }

  int operator()(const FinSet& s) const {
    switch (rule_) {
      case Rule::Table: {
        auto it = table_->find(s);
        if (it == table_->end()) fail(ErrorKind::Invalid, "table coloring undefined at " + set_str(s));
        return it->second;
      }
      case Rule::SumMod: {
        long long sum = 0;
        for (int x : s) sum += x;
        return static_cast<int>(sum % arity_);
      }
      case Rule::EvenSum: {
        long long sum = 0;
        for (int x : s) sum += x;
        return sum % 2 == 0 ? 1 : 0;
      }
      case Rule::MinMod:
        if (s.empty()) fail(ErrorKind::Invalid, "min of the empty set");
        return s[0] % arity_;
      case Rule::Const: return static_cast<int>(param_);
      case Rule::Hash: {
        std::uint64_t h = param_ ^ 0x9e3779b97f4a7c15ULL;
        for (int x : s) h = mix(h ^ static_cast<std::uint64_t>(x + 1));
        return static_cast<int>(mix(h) % static_cast<std::uint64_t>(arity_));
      }
      case Rule::MinAtLeast: return !s.empty() && s[0] >= static_cast<int>(param_) ? 1 : 0;
      case Rule::Lift:
        if (s.size() < 2) fail(ErrorKind::ShortElement, set_str(s) + " has fewer than two elements");
        return (*inner_)({s[0], s[1]});
    }
    return 0;
  }

  std::string str() const {
    switch (rule_) {
      case Rule::Table: return "table(" + std::to_string(arity_) + ")";
      case Rule::SumMod: return arity_ == 2 ? "parity" : "sum-mod(" + std::to_string(arity_) + ")";
      case Rule::EvenSum: return "even-sum";
      case Rule::MinMod: return "min-mod(" + std::to_string(arity_) + ")";
      case Rule::Const: return "const(" + std::to_string(param_) + "," + std::to_string(arity_) + ")";
      case Rule::Hash: return "hash(" + std::to_string(param_) + "," + std::to_string(arity_) + ")";
      case Rule::MinAtLeast: return "min-at-least(" + std::to_string(param_) + ")";
      case Rule::Lift: return "lift(" + inner_->str() + ")";
    }
    return "?";
  }

  // rule names: parity, sum-mod(c), even-sum, min-mod(c), const(v[,c]),
  // hash(seed[,c]), min-at-least(k), lift(rule)
  static Coloring parse(const std::string& text) {
    std::string t;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    auto args = [&](const std::string& name) {
      std::vector<std::uint64_t> out;
      std::string inside = t.substr(name.size() + 1, t.size() - name.size() - 2);
      std::stringstream ss(inside);
      std::string part;
      while (std::getline(ss, part, ',')) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
          fail(ErrorKind::Parse, "bad argument in coloring '" + text + "'");
        out.push_back(std::stoull(part));
      }
      return out;
    };
    auto is_call = [&](const std::string& name) {
      return t.size() > name.size() + 1 && t.compare(0, name.size() + 1, name + "(") == 0 && t.back() == ')';
    };
    if (t == "parity" || t == "parity-of-sum") return sum_mod(2);
    if (t == "even-sum") return even_sum();
    if (is_call("lift")) return lift(parse(t.substr(5, t.size() - 6)));
    auto arity_arg = [&](const std::vector<std::uint64_t>& a, std::size_t i, int dflt) {
      int v = a.size() > i ? static_cast<int>(a[i]) : dflt;
      check_arity(v);
      return v;
    };
    if (is_call("sum-mod")) return sum_mod(arity_arg(args("sum-mod"), 0, 2));
    if (is_call("min-mod")) return min_mod(arity_arg(args("min-mod"), 0, 2));
    if (is_call("const")) {
      auto a = args("const");
      if (a.empty()) fail(ErrorKind::Parse, "const needs a color");
      return constant(arity_arg(a, 1, 2), static_cast<int>(a[0]));
    }
    if (is_call("hash")) {
      auto a = args("hash");
      if (a.empty()) fail(ErrorKind::Parse, "hash needs a seed");
      return hash(arity_arg(a, 1, 2), a[0]);
    }
    if (is_call("min-at-least")) {
      auto a = args("min-at-least");
      if (a.size() != 1) fail(ErrorKind::Parse, "min-at-least needs one argument");
      return min_at_least(static_cast<int>(a[0]));
    }
    fail(ErrorKind::Parse, "unknown coloring '" + text + "'");
  }

  // lines "1 4 9;0" (elements separated by blanks or commas, then the color)
  static Coloring from_csv(const std::string& text, int arity) {
    std::map<FinSet, int> t;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto semi = line.find(';');
      if (semi == std::string::npos) fail(ErrorKind::Parse, "missing ';' in coloring line '" + line + "'");
      std::string elems = line.substr(0, semi);
      for (char& ch : elems)
        if (ch == ',' || ch == '{' || ch == '}') ch = ' ';
      std::stringstream es(elems);
      FinSet s;
      int x;
      while (es >> x) s.push_back(x);
      require_increasing(s, "table element");
      t[s] = std::stoi(line.substr(semi + 1));
    }
    return table(arity, std::move(t));
  }

  std::string to_csv() const {
    if (rule_ != Rule::Table) fail(ErrorKind::Invalid, "only table colorings have a CSV form");
    std::string out;
    for (const auto& [s, v] : *table_) {
      for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
      out += ";" + std::to_string(v) + "\n";
    }
    return out;
  }

 private:
  Coloring(Rule r, int arity) : rule_(r), arity_(arity) { check_arity(arity); }
  static void check_arity(int a) {
    if (a < 2 || a > kMaxArity) fail(ErrorKind::Invalid, "arity must be between 2 and 16");
  }
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  Rule rule_;
  int arity_;
  std::uint64_t param_ = 0;
  std::shared_ptr<const std::map<FinSet, int>> table_;
  std::shared_ptr<const Coloring> inner_;
};

struct MonochromeWitness {
  FinSet set;
  int color = 0;
  int discarded_prefix = 0;
  friend bool operator==(const MonochromeWitness&, const MonochromeWitness&) = default;
};

enum class SearchStrategy { Exhaustive, Pruned };

inline FinSet window_pool(const Window& w) {
  FinSet p(w.bound);
  for (int i = 0; i < w.bound; ++i) p[i] = i;
  return p;
}

namespace detail {

// color shared by all sets, -1 if they disagree, -2 if there are none
inline int common_color(const std::vector<FinSet>& els, const Coloring& col) {
  int c = -2;
  for (const auto& e : els) {
    int v = col(e);
    if (c == -2)
      c = v;
    else if (c != v)
      return -1;
  }
  return c;
}

// elements of B inside m that contain x, for x above every member of m
inline std::vector<FinSet> elements_ending_at(const Code& code, const FinSet& m, int x) {
  std::vector<FinSet> out;
  FinSet s;
  std::function<void(std::size_t)> dfs = [&](std::size_t from) {
    s.push_back(x);
    if (member(code, view(s), Base{})) out.push_back(s);
    s.pop_back();
    for (std::size_t i = from; i < m.size(); ++i) {
      s.push_back(m[i]);
      if (extendable(code, view(s), Base{})) dfs(i + 1);
      s.pop_back();
    }
  };
  dfs(0);
  return out;
}

template <class F>
bool for_each_subset(const FinSet& pool, int k, F&& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  int n = static_cast<int>(pool.size());
  if (k > n) return false;
  FinSet cur(k);
  while (true) {
    for (int i = 0; i < k; ++i) cur[i] = pool[idx[i]];
    if (f(cur)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline FinSet extend_constant(const Code& code, const Coloring& col, FinSet m, int color, const FinSet& pool) {
  for (int x : pool) {
    if (!m.empty() && x <= m.back()) continue;
    bool ok = true;
    for (const auto& e : elements_ending_at(code, m, x))
      if (col(e) != color) {
        ok = false;
        break;
      }
    if (ok) m.push_back(x);
  }
  return m;
}

}  // namespace detail

// Lexicographically least target-size M with B|M nonempty and one color
// (the given one if want >= 0), then extended greedily upward.
inline MonochromeWitness nash_williams_search(const Code& code, const Coloring& col, const Window& w, int target,
                                              SearchStrategy strategy = SearchStrategy::Pruned,
                                              const FinSet* pool_in = nullptr, int want = -1) {
  w.validate();
  FinSet pool = pool_in ? *pool_in : window_pool(w);
  std::optional<FinSet> found;
  int color = -1;
  if (strategy == SearchStrategy::Exhaustive) {
    detail::for_each_subset(pool, target, [&](const FinSet& m) {
      int c = detail::common_color(elements_within(code, m), col);
      if (c >= 0 && (want < 0 || c == want)) {
        found = m;
        color = c;
        return true;
      }
      return false;
    });
  } else {
    FinSet m;
    std::function<bool(std::size_t, int)> dfs = [&](std::size_t from, int c) -> bool {
      if (static_cast<int>(m.size()) == target) {
        if (c < 0) return false;
        found = m;
        color = c;
        return true;
      }
      for (std::size_t i = from; i < pool.size(); ++i) {
        if (static_cast<int>(pool.size() - i) < target - static_cast<int>(m.size())) return false;
        int cc = c;
        bool ok = true;
        for (const auto& e : detail::elements_ending_at(code, m, pool[i])) {
          int v = col(e);
          if (cc < 0)
            cc = v;
          else if (cc != v) {
            ok = false;
            break;
          }
        }
        if (!ok || (want >= 0 && cc >= 0 && cc != want)) continue;
        m.push_back(pool[i]);
        if (dfs(i + 1, cc)) return true;
        m.pop_back();
      }
      return false;
    };
    dfs(0, -1);
  }
  if (!found) fail(ErrorKind::NotFoundInWindow, "no monochromatic set of size " + std::to_string(target) + " in the window");
  return {detail::extend_constant(code, col, *found, color, pool), color, 0};
}

// every element of B|(set minus its first p members) has the color
inline std::optional<FinSet> monochrome_counterexample(const Code& code, const Coloring& col, const MonochromeWitness& wt) {
  std::size_t p = static_cast<std::size_t>(std::max(wt.discarded_prefix, 0));
  for (const auto& e : elements_within(code, wt.set)) {
    bool kept = e.empty() ? p == 0 : p < wt.set.size() && e[0] >= wt.set[p];
    if (kept && col(e) != wt.color) return e;
  }
  return std::nullopt;
}

inline Coloring minimal_part_partition(const Code& code, const Window& w) {
  w.validate();
  auto els = elements_below(code, w.bound);
  std::map<FinSet, int> t;
  for (const auto& e : els) {
    int c = 0;
    for (const auto& s : els)
      if (s.size() < e.size() && is_subset(s, e)) {
        c = 1;
        break;
      }
    t[e] = c;
  }
  return Coloring::table(2, std::move(t));
}

// checks that no element of B inside the window is too short to lift onto
inline Coloring lift_coloring(const Coloring& col2, const Code& code, const Window* w = nullptr) {
  if (w)
    for (const auto& e : elements_below(code, w->bound))
      if (e.size() < 2) fail(ErrorKind::ShortElement, set_str(e) + " has fewer than two elements");
  return Coloring::lift(col2);
}

struct AlmostWitness {
  FinSet set;
  std::vector<MonochromeWitness> per_coloring;
};

namespace detail {

// least p such that B|(h minus its first p members) is nonempty and one color
inline std::optional<std::pair<int, int>> least_prefix(const std::vector<FinSet>& els, const FinSet& h, const Coloring& col) {
  for (std::size_t p = 0; p < h.size(); ++p) {
    std::vector<FinSet> rest;
    for (const auto& e : els)
      if (!e.empty() && e[0] >= h[p]) rest.push_back(e);
    int c = common_color(rest, col);
    if (c >= 0) return std::make_pair(static_cast<int>(p), c);
  }
  return std::nullopt;
}

}  // namespace detail

// a common set H with the least total number of discarded leading elements
inline AlmostWitness almost_monochromatic_search(const Code& code, const std::vector<Coloring>& cols, const Window& w,
                                                 int target, const FinSet* pool_in = nullptr) {
  w.validate();
  if (cols.empty()) fail(ErrorKind::Invalid, "empty coloring family");
  FinSet pool = pool_in ? *pool_in : window_pool(w);
  std::optional<AlmostWitness> best;
  int best_cost = INT32_MAX;
  detail::for_each_subset(pool, target, [&](const FinSet& h) {
    auto els = elements_within(code, h);
    AlmostWitness cand{h, {}};
    int cost = 0;
    for (const auto& col : cols) {
      auto r = detail::least_prefix(els, h, col);
      if (!r) return false;
      cost += r->first;
      cand.per_coloring.push_back({h, r->second, r->first});
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = cand;
    }
    return cost == 0;
  });
  if (!best) fail(ErrorKind::NotFoundInWindow, "no almost monochromatic set of size " + std::to_string(target));
  FinSet h = best->set;
  for (int x : pool) {
    if (x <= h.back()) continue;
    auto fresh = detail::elements_ending_at(code, h, x);
    bool ok = true;
    for (std::size_t a = 0; a < cols.size() && ok; ++a) {
      const auto& wt = best->per_coloring[a];
      int from = h[wt.discarded_prefix];
      for (const auto& e : fresh)
        if (e[0] >= from && cols[a](e) != wt.color) {
          ok = false;
          break;
        }
    }
    if (ok) h.push_back(x);
  }
  for (auto& wt : best->per_coloring) wt.set = h;
  best->set = h;
  return *best;
}

struct DiagonalStep {
  int n = 0;
  std::vector<int> colors;  // -1 where the column is empty on what is left
  int threshold = 0;
};

struct DiagonalResult {
  FinSet set;
  std::vector<MonochromeWitness> per_coloring;
  std::vector<DiagonalStep> spine;
};

namespace detail {

struct DiagSub {
  FinSet h;
  std::vector<int> colors;
  std::vector<DiagonalStep> spine;
};

inline bool compatible(const std::vector<int>& a, const std::vector<int>& v) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] >= 0 && a[i] != v[i]) return false;
  return true;
}

// colors of the family {t : prefix + t in B} over pool, with `code` its sub-barrier
inline DiagSub diagonal_rec(const Code& code, const FinSet& prefix, const FinSet& pool, const std::vector<Coloring>& cols) {
  std::size_t k = cols.size();
  DiagSub out{{}, std::vector<int>(k, -1), {}};
  if (pool.empty()) return out;
  auto colors_of = [&](const FinSet& t) {
    FinSet s = set_union(prefix, t);
    std::vector<int> v(k);
    for (std::size_t a = 0; a < k; ++a) v[a] = cols[a](s);
    return v;
  };
  bool rank_one = true;
  for (int x : pool)
    if (!contains(code, {x})) rank_one = false;
  if (rank_one) {
    std::map<std::vector<int>, FinSet> cls;
    for (int x : pool) cls[colors_of({x})].push_back(x);
    const std::pair<const std::vector<int>, FinSet>* best = nullptr;
    for (const auto& kv : cls)
      if (!best || kv.second.size() > best->second.size() ||
          (kv.second.size() == best->second.size() && kv.second[0] < best->second[0]))
        best = &kv;
    out.h = best->second;
    out.colors = best->first;
    return out;
  }
  FinSet rest = pool;
  while (!rest.empty()) {
    int n = rest.front();
    rest.erase(rest.begin());
    DiagonalStep st{n, std::vector<int>(k, -1), n};
    if (!tree_contains(code, {n})) continue;
    if (contains(code, {n})) {
      st.colors = colors_of({n});
    } else {
      DiagSub sub = diagonal_rec(sub_barrier(code, {n}), set_union(prefix, {n}), rest, cols);
      rest = sub.h;
      st.colors = sub.colors;
    }
    out.spine.push_back(st);
  }
  // split the spine by realized color vectors, vacuous steps fit everywhere
  std::vector<std::vector<int>> cands;
  for (const auto& st : out.spine) {
    bool vac = true;
    for (int c : st.colors) vac &= c < 0;
    if (vac) continue;
    std::vector<int> v = st.colors;
    for (auto& c : v)
      if (c < 0) c = 0;
    cands.push_back(v);
  }
  if (cands.empty()) cands.push_back(std::vector<int>(k, 0));
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::optional<std::tuple<bool, std::size_t, FinSet, std::vector<int>>> best;
  for (const auto& v : cands) {
    FinSet x;
    int last_threshold = -1;
    for (const auto& st : out.spine)
      if (compatible(st.colors, v) && st.n > last_threshold) {
        x.push_back(st.n);
        last_threshold = st.threshold;
      }
    bool nonempty = !elements_within(code, x).empty();
    if (!best || std::make_pair(nonempty, x.size()) > std::make_pair(std::get<0>(*best), std::get<1>(*best)))
      best = std::make_tuple(nonempty, x.size(), x, v);
  }
  out.h = std::get<2>(*best);
  if (std::get<0>(*best)) out.colors = std::get<3>(*best);
  return out;
}

}  // namespace detail

// Builds J along a spine of sub-barriers: each spine point n gets the colors
// of B[n] on what is left, then J keeps one realized color vector.
inline DiagonalResult diagonal_monochromatic(const Code& code, const std::vector<Coloring>& cols, const Window& w) {
  w.validate();
  if (cols.empty()) fail(ErrorKind::Invalid, "empty coloring family");
  auto sub = detail::diagonal_rec(code, {}, window_pool(w), cols);
  if (elements_within(code, sub.h).empty())
    fail(ErrorKind::NotFoundInWindow, "diagonal construction left no element of B inside the window");
  DiagonalResult r{sub.h, {}, sub.spine};
  for (std::size_t a = 0; a < cols.size(); ++a) {
    MonochromeWitness wt{sub.h, sub.colors[a], 0};
    if (auto bad = monochrome_counterexample(code, cols[a], wt))
      fail(ErrorKind::NotFoundInWindow, "diagonal certificate fails re-verification at " + set_str(*bad));
    r.per_coloring.push_back(wt);
  }
  return r;
}

}  // namespace nwb
