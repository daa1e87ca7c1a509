#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace nwb {

// finite sets of naturals, always kept strictly increasing
using FinSet = std::vector<int>;

inline bool is_increasing(const FinSet& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] >= s[i]) return false;
  for (int x : s)
    if (x < 0) return false;
  return true;
}

inline void require_increasing(const FinSet& s, const char* what) {
  if (!is_increasing(s)) fail(ErrorKind::NotIncreasing, std::string(what) + " is not strictly increasing");
}

// s is an initial segment of t
inline bool is_prefix(const FinSet& s, const FinSet& t) {
  return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.begin());
}

inline bool is_subset(const FinSet& s, const FinSet& t) {
  return std::includes(t.begin(), t.end(), s.begin(), s.end());
}

inline FinSet set_union(const FinSet& a, const FinSet& b) {
  FinSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline FinSet set_minus(const FinSet& a, const FinSet& b) {
  FinSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::string set_str(const FinSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

struct Window {
  int bound = 12;
  int depth = 12;

  void validate() const {
    if (bound < 1 || depth < 1) fail(ErrorKind::Invalid, "window bound and depth must be positive");
  }
};

// finite prefix plus an eventually periodic tail
struct SetDescriptor {
  enum class Tail { Cofinite, Arithmetic, Empty };

  FinSet prefix;
  Tail tail = Tail::Cofinite;
  int start = 0;
  int step = 1;

  static SetDescriptor omega() { return cofinite(0); }
  static SetDescriptor cofinite(int from, FinSet pre = {}) {
    SetDescriptor d{std::move(pre), Tail::Cofinite, from, 1};
    d.validate();
    return d;
  }
  static SetDescriptor arith(int start, int step, FinSet pre = {}) {
    SetDescriptor d{std::move(pre), Tail::Arithmetic, start, step};
    d.validate();
    return d;
  }
  static SetDescriptor finite(FinSet pre) {
    SetDescriptor d{std::move(pre), Tail::Empty, 0, 1};
    d.validate();
    return d;
  }
  static SetDescriptor evens() { return arith(0, 2); }
  static SetDescriptor odds() { return arith(1, 2); }

  void validate() const {
    require_increasing(prefix, "descriptor prefix");
    if (tail == Tail::Empty) return;
    if (start < 0) fail(ErrorKind::Invalid, "descriptor tail starts below 0");
    if (tail == Tail::Arithmetic && step < 1) fail(ErrorKind::Invalid, "arithmetic step must be positive");
    if (!prefix.empty() && start <= prefix.back())
      fail(ErrorKind::Invalid, "descriptor tail must start above the prefix");
  }

  bool infinite() const { return tail != Tail::Empty; }

  bool contains(int n) const {
    if (n < 0) return false;
    if (std::binary_search(prefix.begin(), prefix.end(), n)) return true;
    switch (tail) {
      case Tail::Cofinite: return n >= start;
      case Tail::Arithmetic: return n >= start && (n - start) % step == 0;
      case Tail::Empty: return false;
    }
    return false;
  }

  // final segment [start, inf)
  bool is_final_segment() const { return prefix.empty() && tail == Tail::Cofinite; }

  // membership is periodic with period() from threshold() on
  int threshold() const {
    if (tail == Tail::Empty) return prefix.empty() ? 0 : prefix.back() + 1;
    return start;
  }
  int period() const { return tail == Tail::Arithmetic ? step : 1; }

  // least member >= x
  std::optional<int> next(int x) const {
    x = std::max(x, 0);
    auto it = std::lower_bound(prefix.begin(), prefix.end(), x);
    if (it != prefix.end()) return *it;
    switch (tail) {
      case Tail::Cofinite: return std::max(x, start);
      case Tail::Arithmetic:
        if (x <= start) return start;
        return start + ((x - start + step - 1) / step) * step;
      case Tail::Empty: return std::nullopt;
    }
    return std::nullopt;
  }

  FinSet members_below(int bound) const {
    FinSet out;
    for (auto x = next(0); x && *x < bound; x = next(*x + 1)) out.push_back(*x);
    return out;
  }

  std::string str() const {
    std::string out;
    if (!prefix.empty()) {
      out = "[";
      for (std::size_t i = 0; i < prefix.size(); ++i) out += (i ? "," : "") + std::to_string(prefix[i]);
      out += "]";
    }
    std::string t;
    switch (tail) {
      case Tail::Cofinite: t = "cofinite(" + std::to_string(start) + ")"; break;
      case Tail::Arithmetic: t = "arith(" + std::to_string(start) + "," + std::to_string(step) + ")"; break;
      case Tail::Empty: t = out.empty() ? "empty" : ""; break;
    }
    if (out.empty()) return t;
    return t.empty() ? out : out + "+" + t;
  }

  friend bool operator==(const SetDescriptor&, const SetDescriptor&) = default;
};

// first `count` members of d
inline FinSet enumerate(const SetDescriptor& d, int count) {
  FinSet out;
  std::optional<int> x = d.next(0);
  while (static_cast<int>(out.size()) < count) {
    if (!x) fail(ErrorKind::Exhausted, "descriptor " + d.str() + " has fewer than " + std::to_string(count) + " members");
    out.push_back(*x);
    x = d.next(*x + 1);
  }
  return out;
}

// Interval i is [k_i, k_{i+1}), the last one is [k_last, inf); nothing
// below k_0 is used. Takes the least member of d from every interval whose
// index has the requested parity, within [0, bound).
inline FinSet thin(const SetDescriptor& d, const std::vector<int>& breakpoints, int parity, const Window& w) {
  require_increasing(breakpoints, "breakpoints");
  if (parity != 0 && parity != 1) fail(ErrorKind::Invalid, "parity must be 0 or 1");
  FinSet out;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (static_cast<int>(i % 2) != parity) continue;
    int lo = breakpoints[i];
    int hi = i + 1 < breakpoints.size() ? breakpoints[i + 1] : w.bound;
    hi = std::min(hi, w.bound);
    auto x = d.next(lo);
    if (x && *x < hi) out.push_back(*x);
  }
  if (out.empty()) fail(ErrorKind::EmptyResult, "thinning left nothing inside the window");
  return out;
}

// A base set for barrier evaluation: x >= lo and d.contains(x + off) for
// every part. Eventually periodic, so emptiness questions are decidable.
struct Base {
  int lo = 0;
  std::vector<std::pair<SetDescriptor, int>> parts;

  bool contains(int x) const {
    if (x < lo || x < 0) return false;
    for (const auto& [d, off] : parts)
      if (!d.contains(x + off)) return false;
    return true;
  }

  Base above(int n) const {
    Base b = *this;
    b.lo = std::max(lo, n + 1);
    return b;
  }

  // base seen from inside a shift by o: y is in it iff y + o is here
  Base down(int o) const {
    Base b;
    b.lo = std::max(0, lo - o);
    for (const auto& [d, off] : parts) b.parts.push_back({d, off + o});
    return b;
  }

  Base with(const SetDescriptor& d) const {
    Base b = *this;
    b.parts.push_back({d, 0});
    return b;
  }

  int threshold() const {
    int t = std::max(lo, 0);
    for (const auto& [d, off] : parts) t = std::max(t, d.threshold() - off);
    return t;
  }

  int period() const {
    int p = 1;
    for (const auto& pr : parts) p = std::lcm(p, pr.first.period());
    return p;
  }

  std::optional<int> next(int x) const {
    int y = std::max({x, lo, 0});
    int stop = std::max(threshold(), y) + period();
    for (; y < stop; ++y)
      if (contains(y)) return y;
    return std::nullopt;
  }

  bool infinite() const {
    int t = threshold();
    for (int y = t; y < t + period(); ++y)
      if (contains(y)) return true;
    return false;
  }

  bool empty() const { return !next(0); }

  // number of members >= x, capped at need
  int count_from(int x, int need) const {
    int c = 0;
    for (auto y = next(x); y && c < need; y = next(*y + 1)) ++c;
    return c;
  }

  bool is_omega() const { return lo == 0 && parts.empty(); }
};

}  // namespace nwb
