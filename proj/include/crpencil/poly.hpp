#pragma once

// Sparse multivariate polynomials over Q(zeta_m), iterated in graded-lex order.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crpencil/field.hpp"

namespace crpencil {

inline constexpr int kMaxVars = 12;
inline constexpr int kDefaultDegreeCap = 64;

class PolyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeCapExceeded : public PolyError {
 public:
  DegreeCapExceeded(int degree, int cap)
      : PolyError("degree " + std::to_string(degree) + " exceeds the configured cap " + std::to_string(cap)),
        degree_(degree),
        cap_(cap) {}
  int degree() const { return degree_; }
  int cap() const { return cap_; }

 private:
  int degree_, cap_;
};

inline void check_degree_cap(int degree, int cap) {
  if (degree > cap) throw DegreeCapExceeded(degree, cap);
}

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(int nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
    if (nvars < 1 || nvars > kMaxVars) throw PolyError("unsupported number of variables: " + std::to_string(nvars));
  }
  Monomial(int nvars, const std::vector<int>& exps) : Monomial(nvars) {
    if (static_cast<int>(exps.size()) != nvars) throw PolyError("exponent vector has wrong length");
    for (int i = 0; i < nvars; ++i) set(i, exps[i]);
  }

  static Monomial variable(int nvars, int i, int power = 1) {
    Monomial m(nvars);
    m.set(i, power);
    return m;
  }

  int nvars() const { return nvars_; }
  int degree() const { return static_cast<int>(degree_); }
  int operator[](int i) const { return e_[i]; }

  void set(int i, int power) {
    if (power < 0 || power > 0xFFFF) throw PolyError("exponent out of range: " + std::to_string(power));
    degree_ = degree_ - e_[i] + static_cast<std::uint32_t>(power);
    e_[i] = static_cast<std::uint16_t>(power);
  }

  std::vector<int> exponents() const { return std::vector<int>(e_.begin(), e_.begin() + nvars_); }

  bool divides(const Monomial& o) const {
    for (int i = 0; i < nvars_; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (int i = 0; i < a.nvars_; ++i) {
      const int s = a.e_[i] + b.e_[i];
      if (s > 0xFFFF) throw PolyError("exponent overflow");
      r.e_[i] = static_cast<std::uint16_t>(s);
    }
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }
  // Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a.nvars_);
    for (int i = 0; i < a.nvars_; ++i) r.e_[i] = static_cast<std::uint16_t>(a.e_[i] - b.e_[i]);
    r.degree_ = a.degree_ - b.degree_;
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.nvars_ == b.nvars_ && a.e_ == b.e_;
  }

 private:
  std::uint8_t nvars_ = 0;
  std::uint32_t degree_ = 0;
  std::array<std::uint16_t, kMaxVars> e_{};
};

// Graded lexicographic with x0 > x1 > ... > xn.
struct GrLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i < a.nvars(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, CycloElem, GrLex>;

  MultiPoly() : MultiPoly(1, 1) {}
  MultiPoly(int nvars, int order) : nvars_(nvars), order_(order) {
    if (nvars < 1 || nvars > kMaxVars) throw PolyError("unsupported number of variables: " + std::to_string(nvars));
  }

  static MultiPoly constant(int nvars, const CycloElem& c) {
    MultiPoly p(nvars, c.order());
    p.add_term(Monomial(nvars), c);
    return p;
  }
  static MultiPoly variable(int nvars, int order, int i) {
    MultiPoly p(nvars, order);
    p.add_term(Monomial::variable(nvars, i), embed(1, order));
    return p;
  }
  // sum_i coeffs[i] * x_i
  static MultiPoly linear(const std::vector<CycloElem>& coeffs) {
    if (coeffs.empty()) throw PolyError("empty linear form");
    const int n = static_cast<int>(coeffs.size());
    MultiPoly p(n, coeffs[0].order());
    for (int i = 0; i < n; ++i) p.add_term(Monomial::variable(n, i), coeffs[i]);
    return p;
  }

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
  }
  bool is_constant() const { return terms_.empty() || degree() == 0; }

  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const CycloElem& leading_coeff() const { return terms_.rbegin()->second; }

  CycloElem coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? embed(0, order_) : it->second;
  }

  void add_term(const Monomial& m, const CycloElem& c) {
    if (m.nvars() != nvars_) throw PolyError("monomial has wrong number of variables");
    if (c.order() != order_) throw FieldError("cyclotomic order mismatch in polynomial term");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r(a.nvars_, a.order_);
    for (const auto& [m, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check(b);
    MultiPoly r(a.nvars_, a.order_);
    const MultiPoly& small = a.size() <= b.size() ? a : b;
    const MultiPoly& big = a.size() <= b.size() ? b : a;
    for (const auto& [ms, cs] : small.terms_) {
      for (const auto& [mb, cb] : big.terms_) r.add_term(ms * mb, cs * cb);
    }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend MultiPoly operator*(const CycloElem& s, const MultiPoly& p) {
    MultiPoly r(p.nvars_, p.order_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : p.terms_) r.terms_.emplace_hint(r.terms_.end(), m, s * c);
    return r;
  }

  MultiPoly mul_monomial(const Monomial& mono, const CycloElem& s) const {
    MultiPoly r(nvars_, order_);
    if (s.is_zero()) return r;
    // multiplying by a monomial preserves grlex order
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m * mono, s * c);
    return r;
  }

  MultiPoly pow(unsigned e, int degree_cap = kDefaultDegreeCap) const {
    if (!is_zero()) check_degree_cap(degree() * static_cast<int>(e), degree_cap);
    MultiPoly result = constant(nvars_, embed(1, order_));
    for (unsigned i = 0; i < e; ++i) result = result * *this;
    return result;
  }

  MultiPoly derivative(int var) const {
    MultiPoly r(nvars_, order_);
    for (const auto& [m, c] : terms_) {
      const int e = m[var];
      if (e == 0) continue;
      Monomial dm = m;
      dm.set(var, e - 1);
      r.add_term(dm, embed(e, order_) * c);
    }
    return r;
  }

  CycloElem evaluate(const std::vector<CycloElem>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw PolyError("evaluation point has wrong length");
    const int maxdeg = std::max(0, degree());
    std::vector<std::vector<CycloElem>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) {
      if (point[i].order() != order_) throw FieldError("cyclotomic order mismatch in evaluation point");
      powers[i].reserve(maxdeg + 1);
      powers[i].push_back(embed(1, order_));
      for (int k = 1; k <= maxdeg; ++k) powers[i].push_back(powers[i].back() * point[i]);
    }
    CycloElem acc = embed(0, order_);
    for (const auto& [m, c] : terms_) {
      CycloElem t = c;
      for (int i = 0; i < nvars_; ++i)
        if (m[i]) t = t * powers[i][m[i]];
      acc += t;
    }
    return acc;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
      if (!(it->first == m) || it->second != c) return false;
      ++it;
    }
    return true;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  void check(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) throw PolyError("polynomial dimension mismatch");
    if (order_ != o.order_) throw FieldError("polynomial cyclotomic order mismatch");
  }

 private:
  int nvars_;
  int order_;
  TermMap terms_;
};

// Returns r with q * r == p, or nullopt when q does not divide p.
inline std::optional<MultiPoly> exact_divide(const MultiPoly& p, const MultiPoly& q) {
  p.check(q);
  if (q.is_zero()) throw PolyError("division by the zero polynomial");
  MultiPoly quotient(p.nvars(), p.order());
  MultiPoly rem = p;
  const Monomial& lq = q.leading_monomial();
  const CycloElem lc_inv = q.leading_coeff().inverse();
  while (!rem.is_zero()) {
    const Monomial& lr = rem.leading_monomial();
    if (!lq.divides(lr)) return std::nullopt;
    const Monomial t = lr / lq;
    const CycloElem c = rem.leading_coeff() * lc_inv;
    quotient.add_term(t, c);
    rem -= q.mul_monomial(t, c);
  }
  return quotient;
}

inline MultiPoly zero_like(const MultiPoly& p) { return MultiPoly(p.nvars(), p.order()); }
inline MultiPoly one_like(const MultiPoly& p) { return MultiPoly::constant(p.nvars(), embed(1, p.order())); }
inline bool is_zero(const MultiPoly& p) { return p.is_zero(); }

inline bool divides(const MultiPoly& q, const MultiPoly& p) { return exact_divide(p, q).has_value(); }

// True iff q^e | p, checked by e successive exact divisions.
inline bool divides_power(const MultiPoly& q, int e, const MultiPoly& p) {
  if (q.is_zero()) throw PolyError("division by the zero polynomial");
  MultiPoly cur = p;
  for (int i = 0; i < e; ++i) {
    auto r = exact_divide(cur, q);
    if (!r) return false;
    cur = std::move(*r);
  }
  return true;
}

inline std::vector<std::string> default_variable_names(int nvars) {
  std::vector<std::string> names;
  for (int i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

// Human-readable text in the parser grammar, terms in decreasing grlex order.
inline std::string to_string(const MultiPoly& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  if (static_cast<int>(vars.size()) != p.nvars()) throw PolyError("variable name list has wrong length");
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono;
    for (int i = 0; i < p.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    std::string coeff;
    bool negative = false;
    if (c.is_rational()) {
      Rational q = c.rational_part();
      negative = q < 0;
      q = abs(q);
      if (!(q == 1 && !mono.empty())) coeff = q.get_str();
    } else {
      coeff = c.to_string();
    }
    std::string term = coeff;
    if (!mono.empty()) term = coeff.empty() ? mono : coeff + "*" + mono;
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

inline std::string to_string(const MultiPoly& p) { return to_string(p, default_variable_names(p.nvars())); }

}  // namespace crpencil
