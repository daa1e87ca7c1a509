#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "sets.hpp"

namespace nwb {

struct CodeNode;

// Immutable handle to a barrier code.
class Code {
 public:
  explicit Code(std::shared_ptr<const CodeNode> p) : p_(std::move(p)) {}
  const CodeNode& node() const { return *p_; }
  std::string str() const;
  friend bool operator==(const Code& a, const Code& b) { return a.str() == b.str(); }

 private:
  std::shared_ptr<const CodeNode> p_;
};

struct UniformK {
  int k;
};
// |s| = max(min(s) + k, 1); k = 0 only arises inside glued columns
struct SchreierShift {
  int k;
};
struct UniformAffine {
  int a, b;
};
struct SchreierAffine {
  int c;
};
using ParamRule = std::variant<UniformAffine, SchreierAffine>;
struct ConstCode {
  Code code;
};
struct Cases {
  int modulus;
  std::vector<ParamRule> rules;
};
using TailRule = std::variant<UniformAffine, ConstCode, Cases>;
struct Glue {
  std::vector<Code> cols;
  TailRule tail;
};
struct Restrict {
  Code inner;
  SetDescriptor base;
};
struct Shift {
  Code inner;
  int offset;
};
struct Cons {
  int root;
  Code inner;
};

struct CodeNode {
  std::variant<UniformK, SchreierShift, Glue, Restrict, Shift, Cons> v;
};

constexpr int kMaxCasesModulus = 8;

namespace detail {
template <class T>
Code make(T t) {
  return Code(std::make_shared<const CodeNode>(CodeNode{std::move(t)}));
}
inline void check_rule(const UniformAffine& r) {
  if (r.a < 0 || r.b < 0) fail(ErrorKind::Invalid, "uniformAff parameters must be natural");
}
inline void check_rule(const SchreierAffine& r) {
  if (r.c < 0) fail(ErrorKind::Invalid, "schreierAff parameter must be natural");
}
}  // namespace detail

inline Code uniform(int k) {
  if (k < 0) fail(ErrorKind::Invalid, "uniform(k) needs k >= 0");
  return detail::make(UniformK{k});
}

inline Code schreier(int k) {
  if (k < 0) fail(ErrorKind::Invalid, "schreier(k) needs k >= 0");
  return detail::make(SchreierShift{k});
}

inline Code glue(std::vector<Code> cols, TailRule tail) {
  if (auto* c = std::get_if<Cases>(&tail)) {
    if (c->modulus < 2 || c->modulus > kMaxCasesModulus)
      fail(ErrorKind::Invalid, "cases modulus must be in [2,8]");
    if (static_cast<int>(c->rules.size()) != c->modulus)
      fail(ErrorKind::Invalid, "cases needs one rule per residue");
    for (const auto& r : c->rules) std::visit([](const auto& x) { detail::check_rule(x); }, r);
  } else if (auto* u = std::get_if<UniformAffine>(&tail)) {
    detail::check_rule(*u);
  }
  return detail::make(Glue{std::move(cols), std::move(tail)});
}

inline Code restrict(Code inner, SetDescriptor m) {
  m.validate();
  if (!m.infinite()) fail(ErrorKind::Invalid, "restriction needs an infinite set");
  return detail::make(Restrict{std::move(inner), std::move(m)});
}

inline Code shift(Code inner, int n) {
  if (n < 0) fail(ErrorKind::Invalid, "shift needs a natural offset");
  if (n == 0) return inner;
  return detail::make(Shift{std::move(inner), n});
}

// smallest element every member of the family is forced to contain
inline std::optional<int> forced_min(const Code& c) {
  const auto& v = c.node().v;
  if (auto* x = std::get_if<Cons>(&v)) return x->root;
  if (auto* x = std::get_if<Shift>(&v)) {
    auto m = forced_min(x->inner);
    if (m) return *m + x->offset;
    return std::nullopt;
  }
  if (auto* x = std::get_if<Restrict>(&v)) return forced_min(x->inner);
  return std::nullopt;
}

inline Code cons(int n, Code inner) {
  if (n < 0) fail(ErrorKind::Invalid, "cons needs a natural root");
  auto m = forced_min(inner);
  if (m && *m <= n)
    fail(ErrorKind::BaseClash, "root " + std::to_string(n) + " is not below " + std::to_string(*m));
  return detail::make(Cons{n, std::move(inner)});
}

inline Code omega_plus_one_example() {
  return glue({}, Cases{2, {SchreierAffine{0}, UniformAffine{1, 0}}});
}

// code for column n of a glued barrier, before restricting above n
inline Code param_column(const ParamRule& r, int n) {
  if (auto* u = std::get_if<UniformAffine>(&r)) return uniform(u->a * n + u->b);
  return shift(schreier(n + std::get<SchreierAffine>(r).c), n + 1);
}

inline Code glue_column(const Glue& g, int n) {
  if (n < static_cast<int>(g.cols.size())) return g.cols[n];
  if (auto* u = std::get_if<UniformAffine>(&g.tail)) return uniform(u->a * n + u->b);
  if (auto* c = std::get_if<ConstCode>(&g.tail)) return c->code;
  const auto& cs = std::get<Cases>(g.tail);
  return param_column(cs.rules[n % cs.modulus], n);
}

// ---- text form ----

inline std::string rule_str(const ParamRule& r) {
  if (auto* u = std::get_if<UniformAffine>(&r))
    return "uniformAff(" + std::to_string(u->a) + "," + std::to_string(u->b) + ")";
  return "schreierAff(" + std::to_string(std::get<SchreierAffine>(r).c) + ")";
}

inline std::string Code::str() const {
  const auto& v = node().v;
  if (auto* x = std::get_if<UniformK>(&v)) return "uniform(" + std::to_string(x->k) + ")";
  if (auto* x = std::get_if<SchreierShift>(&v)) return "schreier(" + std::to_string(x->k) + ")";
  if (auto* x = std::get_if<Restrict>(&v)) return "restrict(" + x->inner.str() + ", " + x->base.str() + ")";
  if (auto* x = std::get_if<Shift>(&v)) return "shift(" + x->inner.str() + ", " + std::to_string(x->offset) + ")";
  if (auto* x = std::get_if<Cons>(&v)) return "cons(" + std::to_string(x->root) + ", " + x->inner.str() + ")";
  const auto& g = std::get<Glue>(v);
  std::string out = "glue{";
  for (std::size_t i = 0; i < g.cols.size(); ++i) out += std::to_string(i) + ": " + g.cols[i].str() + "; ";
  out += "tail: ";
  if (auto* u = std::get_if<UniformAffine>(&g.tail)) {
    out += rule_str(*u);
  } else if (auto* c = std::get_if<ConstCode>(&g.tail)) {
    out += "const(" + c->code.str() + ")";
  } else {
    const auto& cs = std::get<Cases>(g.tail);
    out += "cases" + std::to_string(cs.modulus) + "[";
    for (std::size_t i = 0; i < cs.rules.size(); ++i) out += (i ? ", " : "") + rule_str(cs.rules[i]);
    out += "]";
  }
  return out + "}";
}

namespace detail {

class TextParser {
 public:
  explicit TextParser(const std::string& s) : s_(s) {}

  Code whole_code() {
    Code c = code();
    end();
    return c;
  }
  SetDescriptor whole_desc() {
    SetDescriptor d = desc();
    end();
    return d;
  }
  FinSet whole_set() {
    FinSet s = set();
    end();
    return s;
  }

  Code code() {
    std::string w = word();
    if (w == "omega1" || w == "omegaPlusOne") return omega_plus_one_example();
    if (w == "uniform") {
      expect('(');
      int k = num();
      expect(')');
      return uniform(k);
    }
    if (w == "schreier") {
      expect('(');
      int k = num();
      expect(')');
      return schreier(k);
    }
    if (w == "restrict") {
      expect('(');
      Code in = code();
      expect(',');
      SetDescriptor d = desc();
      expect(')');
      return restrict(in, d);
    }
    if (w == "shift") {
      expect('(');
      Code in = code();
      expect(',');
      int o = num();
      expect(')');
      return shift(in, o);
    }
    if (w == "cons") {
      expect('(');
      int r = num();
      expect(',');
      Code in = code();
      expect(')');
      return cons(r, in);
    }
    if (w == "glue") return glue_body();
    error("unknown code '" + w + "'");
  }

  SetDescriptor desc() {
    ws();
    FinSet pre;
    if (peek('[')) {
      pre = list('[', ']');
      if (!eat('+')) return SetDescriptor::finite(pre);
    }
    std::string w = word();
    if (w == "omega") return with_prefix(pre, SetDescriptor::omega());
    if (w == "evens") return with_prefix(pre, SetDescriptor::evens());
    if (w == "odds") return with_prefix(pre, SetDescriptor::odds());
    if (w == "empty") return SetDescriptor::finite(pre);
    if (w == "cofinite") {
      expect('(');
      int a = num();
      expect(')');
      return SetDescriptor::cofinite(a, pre);
    }
    if (w == "arith") {
      expect('(');
      int a = num();
      expect(',');
      int b = num();
      expect(')');
      return SetDescriptor::arith(a, b, pre);
    }
    error("unknown set descriptor '" + w + "'");
  }

  FinSet set() {
    ws();
    FinSet s = peek('{') ? list('{', '}') : list('[', ']');
    require_increasing(s, "set");
    return s;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  [[noreturn]] void error(const std::string& m) {
    fail(ErrorKind::Parse, m + " at offset " + std::to_string(i_) + " in '" + s_ + "'");
  }
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    ws();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) error(std::string("expected '") + c + "'");
  }
  void end() {
    ws();
    if (i_ != s_.size()) error("trailing input");
  }
  std::string word() {
    ws();
    std::size_t j = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (j == i_) error("expected a name");
    if (s_.compare(j, i_ - j, "omega") == 0 && i_ < s_.size() && s_[i_] == '1') ++i_;
    return s_.substr(j, i_ - j);
  }
  int num() {
    ws();
    std::size_t j = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (j == i_) error("expected a number");
    if (i_ - j > 9) error("number too large");
    return std::stoi(s_.substr(j, i_ - j));
  }
  FinSet list(char open, char close) {
    expect(open);
    FinSet out;
    if (eat(close)) return out;
    do out.push_back(num());
    while (eat(','));
    expect(close);
    return out;
  }
  static SetDescriptor with_prefix(const FinSet& pre, SetDescriptor d) {
    d.prefix = pre;
    d.validate();
    return d;
  }
  ParamRule param() {
    std::string w = word();
    expect('(');
    if (w == "uniformAff") {
      int a = num();
      expect(',');
      int b = num();
      expect(')');
      return UniformAffine{a, b};
    }
    if (w == "schreierAff") {
      int c = num();
      expect(')');
      return SchreierAffine{c};
    }
    error("unknown tail rule '" + w + "'");
  }
  Code glue_body() {
    expect('{');
    std::vector<Code> cols;
    while (true) {
      ws();
      if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        int n = num();
        if (n != static_cast<int>(cols.size())) error("glue columns must be listed as 0..m-1");
        expect(':');
        cols.push_back(code());
        expect(';');
        continue;
      }
      break;
    }
    if (word() != "tail") error("expected 'tail'");
    expect(':');
    ws();
    std::size_t save = i_;
    std::string w = word();
    TailRule tail = UniformAffine{0, 0};
    if (w == "const") {
      expect('(');
      Code c = code();
      expect(')');
      tail = ConstCode{c};
    } else if (w == "cases") {
      int m = num();
      expect('[');
      std::vector<ParamRule> rules;
      do rules.push_back(param());
      while (eat(','));
      expect(']');
      tail = Cases{m, rules};
    } else {
      i_ = save;
      ParamRule r = param();
      if (!std::holds_alternative<UniformAffine>(r)) error("a plain tail must be uniformAff");
      tail = std::get<UniformAffine>(r);
    }
    eat(';');
    expect('}');
    return glue(std::move(cols), std::move(tail));
  }
};

}  // namespace detail

inline Code parse_code(const std::string& text) { return detail::TextParser(text).whole_code(); }
inline SetDescriptor parse_desc(const std::string& text) { return detail::TextParser(text).whole_desc(); }
inline FinSet parse_set(const std::string& text) { return detail::TextParser(text).whole_set(); }

}  // namespace nwb
