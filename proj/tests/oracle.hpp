#pragma once
// Independent brute-force interpreters used as test oracles. They read the
// code straight from its definition and never touch the library's Base type.

#include <functional>
#include <map>
#include <set>

#include <nwb/code.hpp>

namespace oracle {

using nwb::Code;
using nwb::FinSet;
using Pred = std::function<bool(int)>;

inline Code column(const nwb::Glue& g, int n) {
  if (n < static_cast<int>(g.cols.size())) return g.cols[n];
  auto param = [&](const nwb::ParamRule& r) {
    if (auto* u = std::get_if<nwb::UniformAffine>(&r)) return nwb::uniform(u->a * n + u->b);
    return nwb::shift(nwb::schreier(n + std::get<nwb::SchreierAffine>(r).c), n + 1);
  };
  if (auto* u = std::get_if<nwb::UniformAffine>(&g.tail)) return nwb::uniform(u->a * n + u->b);
  if (auto* c = std::get_if<nwb::ConstCode>(&g.tail)) return c->code;
  const auto& cs = std::get<nwb::Cases>(g.tail);
  return param(cs.rules[n % cs.modulus]);
}

inline bool member(const Code& c, const FinSet& s, const Pred& in) {
  for (int x : s)
    if (!in(x)) return false;
  const auto& v = c.node().v;
  if (auto* u = std::get_if<nwb::UniformK>(&v)) return static_cast<int>(s.size()) == u->k;
  if (auto* u = std::get_if<nwb::SchreierShift>(&v))
    return !s.empty() && static_cast<int>(s.size()) == std::max(s[0] + u->k, 1);
  if (auto* g = std::get_if<nwb::Glue>(&v)) {
    if (s.empty()) return false;
    int n = s[0];
    FinSet rest(s.begin() + 1, s.end());
    return member(column(*g, n), rest, [&](int x) { return x > n && in(x); });
  }
  if (auto* r = std::get_if<nwb::Restrict>(&v)) {
    return member(r->inner, s, [&](int x) { return r->base.contains(x) && in(x); });
  }
  if (auto* sh = std::get_if<nwb::Shift>(&v)) {
    FinSet t;
    for (int x : s) {
      if (x < sh->offset) return false;
      t.push_back(x - sh->offset);
    }
    int o = sh->offset;
    return member(sh->inner, t, [&](int y) { return in(y + o); });
  }
  const auto& k = std::get<nwb::Cons>(v);
  if (s.empty() || s[0] != k.root) return false;
  FinSet rest(s.begin() + 1, s.end());
  int r = k.root;
  return member(k.inner, rest, [&](int x) { return x > r && in(x); });
}

inline bool member(const Code& c, const FinSet& s) {
  return member(c, s, [](int x) { return x >= 0; });
}

// all elements with support in [0,bound) and size <= maxsize
inline std::vector<FinSet> elements(const Code& c, int bound, int maxsize) {
  std::vector<FinSet> out;
  FinSet s;
  std::function<void(int)> go = [&](int from) {
    if (member(c, s)) out.push_back(s);
    if (static_cast<int>(s.size()) == maxsize) return;
    for (int x = from; x < bound; ++x) {
      s.push_back(x);
      go(x + 1);
      s.pop_back();
    }
  };
  go(0);
  return out;
}

// rank at the root of the tree of initial segments of the given sets
inline int truncated_rank(const std::vector<FinSet>& els) {
  std::set<FinSet> nodes;
  for (const auto& e : els)
    for (std::size_t k = 0; k <= e.size(); ++k) nodes.insert(FinSet(e.begin(), e.begin() + k));
  std::map<FinSet, int> rk;
  std::vector<FinSet> order(nodes.begin(), nodes.end());
  std::sort(order.begin(), order.end(), [](const FinSet& a, const FinSet& b) { return a.size() > b.size(); });
  for (const auto& s : order) {
    if (!rk.count(s)) rk[s] = 0;
    if (!s.empty()) {
      FinSet p(s.begin(), s.end() - 1);
      rk[p] = std::max(rk.count(p) ? rk[p] : 0, rk[s] + 1);
    }
  }
  return nodes.empty() ? -1 : rk[FinSet{}];
}

}  // namespace oracle
