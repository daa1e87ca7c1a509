#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace nwb {

struct OrdTerm;

// Ordinals below epsilon_0 in Cantor normal form, plus a flag value -1
// that sits below 0 (rank of a set outside the tree).
class Ordinal {
 public:
  Ordinal() = default;

  static Ordinal nat(std::uint64_t n);
  static Ordinal omega();
  static Ordinal omega_pow(const Ordinal& e, std::uint64_t c = 1);
  static Ordinal below_zero();
  // ordinal sum of the terms in the given order
  static Ordinal from_terms(const std::vector<OrdTerm>& ts);

  bool is_below_zero() const { return below_zero_; }
  bool is_zero() const { return !below_zero_ && terms_.empty(); }
  bool is_finite() const;
  std::uint64_t finite_value() const;
  bool is_limit() const;
  bool is_successor() const;
  const std::vector<OrdTerm>& terms() const { return terms_; }

  Ordinal succ() const;
  Ordinal plus(const Ordinal& o) const;

  std::string str() const;
  static Ordinal parse(const std::string& text);

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

 private:
  std::vector<OrdTerm> terms_;
  bool below_zero_ = false;
};

struct OrdTerm {
  Ordinal exponent;
  std::uint64_t coeff = 0;
};

inline Ordinal Ordinal::nat(std::uint64_t n) {
  Ordinal o;
  if (n) o.terms_.push_back({Ordinal(), n});
  return o;
}

inline Ordinal Ordinal::omega() { return omega_pow(nat(1)); }

inline Ordinal Ordinal::omega_pow(const Ordinal& e, std::uint64_t c) {
  if (e.is_below_zero()) fail(ErrorKind::Invalid, "negative exponent");
  Ordinal o;
  if (c) o.terms_.push_back({e, c});
  return o;
}

inline Ordinal Ordinal::below_zero() {
  Ordinal o;
  o.below_zero_ = true;
  return o;
}

inline Ordinal Ordinal::from_terms(const std::vector<OrdTerm>& ts) {
  Ordinal o;
  for (const auto& t : ts) {
    if (t.exponent.is_below_zero()) fail(ErrorKind::Invalid, "negative exponent");
    if (t.coeff == 0) continue;
    while (!o.terms_.empty() && o.terms_.back().exponent < t.exponent) o.terms_.pop_back();
    if (!o.terms_.empty() && o.terms_.back().exponent == t.exponent)
      o.terms_.back().coeff += t.coeff;
    else
      o.terms_.push_back(t);
  }
  return o;
}

inline bool Ordinal::is_finite() const {
  if (below_zero_) return false;
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

inline std::uint64_t Ordinal::finite_value() const {
  if (!is_finite()) fail(ErrorKind::Invalid, "ordinal " + str() + " is not a natural number");
  return terms_.empty() ? 0 : terms_[0].coeff;
}

inline bool Ordinal::is_limit() const {
  return !below_zero_ && !terms_.empty() && !terms_.back().exponent.is_zero();
}

inline bool Ordinal::is_successor() const {
  return !below_zero_ && !terms_.empty() && terms_.back().exponent.is_zero();
}

inline Ordinal Ordinal::succ() const {
  if (below_zero_) return Ordinal();
  Ordinal o = *this;
  if (!o.terms_.empty() && o.terms_.back().exponent.is_zero())
    o.terms_.back().coeff++;
  else
    o.terms_.push_back({Ordinal(), 1});
  return o;
}

inline Ordinal Ordinal::plus(const Ordinal& b) const {
  if (below_zero_ || b.below_zero_) fail(ErrorKind::Invalid, "sum with -1");
  std::vector<OrdTerm> ts = terms_;
  ts.insert(ts.end(), b.terms_.begin(), b.terms_.end());
  return from_terms(ts);
}

inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  if (a.below_zero_ || b.below_zero_) {
    if (a.below_zero_ && b.below_zero_) return std::strong_ordering::equal;
    return a.below_zero_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = a.terms_[i].exponent <=> b.terms_[i].exponent;
    if (c != 0) return c;
    if (a.terms_[i].coeff != b.terms_[i].coeff) return a.terms_[i].coeff <=> b.terms_[i].coeff;
  }
  return a.terms_.size() <=> b.terms_.size();
}

inline std::string Ordinal::str() const {
  if (below_zero_) return "-1";
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coeff);
      continue;
    }
    out += "w";
    if (t.exponent.is_finite()) {
      if (t.exponent.finite_value() != 1) out += "^" + std::to_string(t.exponent.finite_value());
    } else {
      out += "^(" + t.exponent.str() + ")";
    }
    if (t.coeff != 1) out += "*" + std::to_string(t.coeff);
  }
  return out;
}

namespace detail {

struct OrdParser {
  const std::string& s;
  std::size_t i = 0;

  void ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::uint64_t num() {
    ws();
    if (i >= s.size() || !isdigit(static_cast<unsigned char>(s[i])))
      fail(ErrorKind::Parse, "expected a number in ordinal '" + s + "'");
    std::uint64_t v = 0;
    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
    return v;
  }
  OrdTerm term() {
    ws();
    if (eat('w')) {
      Ordinal e = Ordinal::nat(1);
      if (eat('^')) {
        if (eat('(')) {
          e = sum();
          if (!eat(')')) fail(ErrorKind::Parse, "missing ')' in ordinal '" + s + "'");
        } else {
          e = Ordinal::nat(num());
        }
      }
      std::uint64_t c = 1;
      if (eat('*')) c = num();
      return {e, c};
    }
    return {Ordinal(), num()};
  }
  Ordinal sum() {
    std::vector<OrdTerm> ts{term()};
    while (eat('+')) ts.push_back(term());
    return Ordinal::from_terms(ts);
  }
};

}  // namespace detail

inline Ordinal Ordinal::parse(const std::string& text) {
  detail::OrdParser p{text};
  p.ws();
  if (text.compare(p.i, 2, "-1") == 0) {
    p.i += 2;
    p.ws();
    if (p.i != text.size()) fail(ErrorKind::Parse, "trailing input in ordinal '" + text + "'");
    return below_zero();
  }
  Ordinal o = p.sum();
  p.ws();
  if (p.i != text.size()) fail(ErrorKind::Parse, "trailing input in ordinal '" + text + "'");
  return o;
}

inline Ordinal max(const Ordinal& a, const Ordinal& b) { return a < b ? b : a; }

// sup of (a*n + b) over n; omega as soon as the slope is positive
inline Ordinal sup_affine(std::uint64_t a, std::uint64_t b) {
  return a > 0 ? Ordinal::omega() : Ordinal::nat(b + 1);
}

}  // namespace nwb
