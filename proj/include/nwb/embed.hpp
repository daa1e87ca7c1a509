#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ramsey.hpp"

namespace nwb {

enum class Relation { BleqC, CleqB, Undecided };

inline const char* relation_name(Relation r) {
  switch (r) {
    case Relation::BleqC: return "BleqC";
    case Relation::CleqB: return "CleqB";
    case Relation::Undecided: return "Undecided";
  }
  return "?";
}

struct EmbeddingResult {
  Relation relation = Relation::Undecided;
  FinSet witness;
};

namespace detail {

// every element of `from` inside m is a node of the tree of `to`
inline bool prefixes_on(const Code& from, const Code& to, const FinSet& m) {
  for (const auto& b : elements_within(from, m))
    if (!extendable(to, view(b), Base{})) return false;
  return true;
}

inline Coloring tree_membership_coloring(const Code& from, const Code& to, int bound) {
  std::map<FinSet, int> t;
  for (const auto& b : elements_below(from, bound)) t[b] = extendable(to, view(b), Base{}) ? 1 : 0;
  return Coloring::table(2, std::move(t));
}

}  // namespace detail

// Colors B by whether an element sits in T(C), finds a monochromatic M of
// size depth, and reads off the relation; otherwise tries the other side.
inline EmbeddingResult compare_embedding(const Code& b, const Code& c, const Window& w) {
  w.validate();
  for (int side = 0; side < 2; ++side) {
    const Code& from = side ? c : b;
    const Code& to = side ? b : c;
    MonochromeWitness m;
    try {
      m = nash_williams_search(from, detail::tree_membership_coloring(from, to, w.bound), w, w.depth);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotFoundInWindow) throw;
      continue;
    }
    if (m.color == 1 && detail::prefixes_on(from, to, m.set))
      return {side ? Relation::CleqB : Relation::BleqC, m.set};
  }
  return {};
}

struct PhaseEntry {
  char phase = 'a';  // '0' for the first step, 'a'/'b' for the two halves, 'w' for rank-w thresholds
  int step = 0;
  std::string kind;  // "star": rank of s+{m} vs f[s]+{next}; "phi": rank of s vs f[s]; "threshold"
  FinSet lhs, rhs;
  Ordinal lhs_rank, rhs_rank;
  friend bool operator==(const PhaseEntry&, const PhaseEntry&) = default;
};

struct DoubleArrowWitness {
  enum class Mode { Alternating, RankOmega, Composite };
  Mode mode = Mode::Alternating;
  std::vector<int> breakpoints;
  // value of f on interval i, empty for f(n) = i
  std::vector<int> values;
  int below = 0;
  std::vector<PhaseEntry> phase_log;
  // composite only: f then g, with the middle barrier
  std::vector<DoubleArrowWitness> parts;
  std::optional<Code> via;

  int interval(int n) const {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), n);
    return static_cast<int>(it - breakpoints.begin()) - 1;
  }

  int operator()(int n) const {
    int i = interval(n);
    if (i < 0) return below;
    return values.empty() ? i : values[i];
  }

  FinSet image(const FinSet& s) const {
    FinSet out;
    for (int x : s) out.push_back((*this)(x));
    return out;
  }
};

inline const char* mode_name(DoubleArrowWitness::Mode m) {
  switch (m) {
    case DoubleArrowWitness::Mode::Alternating: return "alternating";
    case DoubleArrowWitness::Mode::RankOmega: return "rank-omega";
    case DoubleArrowWitness::Mode::Composite: return "composite";
  }
  return "?";
}

namespace detail {

inline Ordinal rank_of(const Code& c, const FinSet& s) {
  if (!is_increasing(s)) return Ordinal::below_zero();
  for (int x : s)
    if (!ambient_contains(c, x)) return Ordinal::below_zero();
  return rank_or_below(c, s);
}

// s in T(B), inside the union of intervals [lo_i, hi_i), at most one point each
inline std::vector<FinSet> interval_nodes(const Code& b, const std::vector<std::pair<int, int>>& ivs) {
  std::vector<FinSet> out;
  FinSet s;
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (i == ivs.size()) {
      out.push_back(s);
      return;
    }
    dfs(i + 1);
    for (int x = ivs[i].first; x < ivs[i].second; ++x) {
      if (!ambient_contains(b, x)) continue;
      s.push_back(x);
      if (extendable(b, view(s), Base{})) dfs(i + 1);
      s.pop_back();
    }
  };
  if (extendable(b, view(s), Base{})) dfs(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Two-phase construction of breakpoints a_0 < b_0 < a_1 < ... so that f maps
// every thinned element of B onto a set with an initial segment in C.
inline DoubleArrowWitness double_arrow_witness(const Code& b, const Code& c, int steps, int fuel) {
  if (steps < 0) fail(ErrorKind::Invalid, "steps must be nonnegative");
  if (fuel < 1) fail(ErrorKind::Invalid, "fuel must be positive");
  auto u = is_uniform(b);
  if (!u.uniform) fail(ErrorKind::NotUniform, b.str() + " is not uniform: " + u.reason);
  Ordinal rb = rank(b), rc = rank(c);
  if (rb < rc) fail(ErrorKind::RankOrderViolated, "rank " + rb.str() + " is below " + rc.str());

  DoubleArrowWitness wt;
  std::vector<int> a, bb;
  auto image = [&](const FinSet& s) {
    DoubleArrowWitness cur;
    for (std::size_t i = 0; i < a.size(); ++i) {
      cur.breakpoints.push_back(a[i]);
      if (i < bb.size()) cur.breakpoints.push_back(bb[i]);
    }
    return cur.image(s);
  };
  // least m >= lower with rank of s+{m} in B at least the rank of t in C
  auto ascend = [&](const FinSet& s, const FinSet& t, int lower, char phase, int step) {
    Ordinal need = detail::rank_of(c, t);
    int from = std::max(lower, s.empty() ? 0 : s.back() + 1);
    for (int m = from; m < from + fuel; ++m) {
      if (!detail::ambient_contains(b, m)) continue;
      FinSet sm = s;
      sm.push_back(m);
      Ordinal got = detail::rank_of(b, sm);
      if (got >= need) {
        wt.phase_log.push_back({phase, step, "star", sm, t, got, need});
        return m;
      }
    }
    fail(ErrorKind::FuelExhausted, "no m within " + std::to_string(fuel) + " steps above " + std::to_string(from) +
                                       " for " + set_str(s) + " against " + set_str(t));
  };

  a.push_back(ascend({}, {0}, 0, '0', 0));
  bb.push_back(ascend({}, {1}, a[0] + 1, '0', 0));
  for (int n = 0; n < steps; ++n) {
    std::vector<std::pair<int, int>> ivs;
    for (int i = 0; i <= n; ++i) ivs.push_back({a[i], bb[i]});
    int next = bb[n] + 1;
    for (const auto& s : detail::interval_nodes(b, ivs)) {
      if (!s.empty() && s.back() >= a[n])
        wt.phase_log.push_back({'a', n, "phi", s, image(s), detail::rank_of(b, s), detail::rank_of(c, image(s))});
      FinSet t = image(s);
      t.push_back(2 * n + 2);
      next = std::max(next, ascend(s, t, bb[n] + 1, 'a', n));
    }
    a.push_back(next);

    ivs.clear();
    for (int i = 0; i <= n; ++i) ivs.push_back({bb[i], a[i + 1]});
    next = a[n + 1] + 1;
    for (const auto& s : detail::interval_nodes(b, ivs)) {
      if (!s.empty() && s.back() >= bb[n])
        wt.phase_log.push_back({'b', n, "phi", s, image(s), detail::rank_of(b, s), detail::rank_of(c, image(s))});
      FinSet t = image(s);
      t.push_back(2 * n + 3);
      next = std::max(next, ascend(s, t, a[n + 1] + 1, 'b', n));
    }
    bb.push_back(next);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    wt.breakpoints.push_back(a[i]);
    wt.breakpoints.push_back(bb[i]);
  }
  return wt;
}

// m_i least with rank of {m} at least i+1 for all m in [m_i, horizon); f
// maps into the Schreier barrier.
inline DoubleArrowWitness double_arrow_witness_rank_omega(const Code& b, int horizon) {
  if (rank(b) != Ordinal::omega()) fail(ErrorKind::RankMismatch, b.str() + " does not have rank w");
  DoubleArrowWitness wt;
  wt.mode = DoubleArrowWitness::Mode::RankOmega;
  std::vector<Ordinal> r(horizon);
  for (int m = 0; m < horizon; ++m) r[m] = detail::rank_of(b, {m});
  int lower = 0;
  for (std::uint64_t i = 0;; ++i) {
    Ordinal need = Ordinal::nat(i + 1);
    int m = horizon;
    while (m > lower && r[m - 1] >= need) --m;
    if (m >= horizon) break;
    wt.breakpoints.push_back(m);
    wt.phase_log.push_back({'w', static_cast<int>(i), "threshold", {m}, {}, r[m], need});
    lower = m + 1;
  }
  if (wt.breakpoints.empty()) fail(ErrorKind::NotFoundInWindow, "no threshold below " + std::to_string(horizon));
  return wt;
}

// g after f; admissible sets are those admissible for f whose image is admissible for g
inline DoubleArrowWitness compose_witness(const DoubleArrowWitness& f, const DoubleArrowWitness& g, const Code& middle) {
  DoubleArrowWitness out;
  out.mode = DoubleArrowWitness::Mode::Composite;
  out.parts = {f, g};
  out.via = middle;
  out.below = g(f.below);
  int last = INT32_MIN;
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    int v = g(f.values.empty() ? static_cast<int>(i) : f.values[i]);
    if (!out.values.empty() && v == last) continue;
    out.breakpoints.push_back(f.breakpoints[i]);
    out.values.push_back(v);
    last = v;
  }
  return out;
}

struct ArrowCheck {
  bool pass = true;
  FinSet b, image;
  long long checked = 0;
};

namespace detail {

// the whole set may sit inside one thinned N
inline bool admissible(const DoubleArrowWitness& wt, const Code& b, const FinSet& s,
                       std::map<int, int>& spacing_cache) {
  using M = DoubleArrowWitness::Mode;
  if (wt.mode == M::Composite) {
    if (!admissible(wt.parts[0], b, s, spacing_cache)) return false;
    std::map<int, int> inner;
    FinSet img = wt.parts[0].image(s);
    if (!is_increasing(img)) return false;
    return admissible(wt.parts[1], *wt.via, img, inner);
  }
  if (wt.breakpoints.empty()) return false;
  int parity = -1;
  int prev_iv = -1;
  int floor = -1;
  for (int x : s) {
    int iv = wt.interval(x);
    if (iv < 0 || iv == prev_iv) return false;
    if (wt.mode == M::Alternating) {
      if (parity < 0) parity = iv % 2;
      if (iv % 2 != parity) return false;
    } else {
      if (x <= floor) return false;
      auto it = spacing_cache.find(x);
      int k;
      if (it != spacing_cache.end()) {
        k = it->second;
      } else {
        k = x;
        if (tree_contains(b, {x}) && !contains(b, {x})) {
          int r = static_cast<int>(node_rank(b, {x}).finite_value());
          auto st = stabilization(sub_barrier(b, {x}), r);
          if (!st) fail(ErrorKind::FuelExhausted, "column " + std::to_string(x) + " does not stabilize");
          k = std::max(k, *st);
        }
        spacing_cache[x] = k;
      }
      floor = std::max(floor, k);
    }
    prev_iv = iv;
  }
  return true;
}

inline bool has_prefix_in(const Code& c, const FinSet& t) {
  FinSet p;
  if (member(c, view(p), Base{})) return true;
  for (int x : t) {
    if (!ambient_contains(c, x)) return false;
    p.push_back(x);
    if (!extendable(c, view(p), Base{})) return false;
    if (member(c, view(p), Base{})) return true;
  }
  return false;
}

inline std::optional<ArrowCheck> check_element(const DoubleArrowWitness& wt, const Code& c, const FinSet& e) {
  FinSet img = wt.image(e);
  if (!is_increasing(img) || !has_prefix_in(c, img)) return ArrowCheck{false, e, img, 0};
  return std::nullopt;
}

}  // namespace detail

// samples == 0: every admissible element of B inside the window.
// Otherwise that many random thinned sets N, each checked on all of B|N.
inline ArrowCheck verify_double_arrow(const DoubleArrowWitness& wt, const Code& b, const Code& c, const Window& w,
                                      int samples = 0, std::uint64_t seed = 0) {
  w.validate();
  ArrowCheck out;
  std::map<int, int> cache;
  if (samples == 0) {
    FinSet s;
    std::function<bool()> dfs = [&]() -> bool {
      if (detail::member(b, detail::view(s), Base{})) {
        ++out.checked;
        if (auto bad = detail::check_element(wt, c, s)) {
          bad->checked = out.checked;
          out = *bad;
          return true;
        }
      }
      for (int x = s.empty() ? 0 : s.back() + 1; x < w.bound; ++x) {
        if (!detail::ambient_contains(b, x)) continue;
        s.push_back(x);
        if (detail::extendable(b, detail::view(s), Base{}) && detail::admissible(wt, b, s, cache) && dfs()) return true;
        s.pop_back();
      }
      return false;
    };
    dfs();
    return out;
  }
  std::mt19937_64 rng(seed);
  const DoubleArrowWitness* first = &wt;
  while (first->mode == DoubleArrowWitness::Mode::Composite) first = &first->parts[0];
  for (int i = 0; i < samples; ++i) {
    // one random point (or none) from each interval of one parity
    int parity = static_cast<int>(rng() % 2);
    FinSet n;
    for (std::size_t iv = 0; iv < first->breakpoints.size(); ++iv) {
      if (first->mode == DoubleArrowWitness::Mode::Alternating && static_cast<int>(iv % 2) != parity) continue;
      int lo = first->breakpoints[iv];
      int hi = iv + 1 < first->breakpoints.size() ? first->breakpoints[iv + 1] : w.bound;
      hi = std::min(hi, w.bound);
      if (lo >= hi || rng() % 4 == 0) continue;
      int x = lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo));
      FinSet trial = n;
      trial.push_back(x);
      if (detail::admissible(wt, b, trial, cache)) n = trial;
    }
    for (const auto& e : elements_within(b, n)) {
      ++out.checked;
      if (auto bad = detail::check_element(wt, c, e)) {
        bad->checked = out.checked;
        return *bad;
      }
    }
  }
  return out;
}

// index of the first logged inequality that fails on re-evaluation
inline std::optional<std::size_t> recheck_phase_log(const DoubleArrowWitness& wt, const Code& b, const Code& c) {
  for (std::size_t i = 0; i < wt.phase_log.size(); ++i) {
    const auto& e = wt.phase_log[i];
    Ordinal lhs = detail::rank_of(b, e.lhs);
    Ordinal rhs = e.kind == "threshold" ? Ordinal::nat(static_cast<std::uint64_t>(e.step) + 1) : detail::rank_of(c, e.rhs);
    if (lhs != e.lhs_rank || rhs != e.rhs_rank || lhs < rhs) return i;
  }
  return std::nullopt;
}

}  // namespace nwb
