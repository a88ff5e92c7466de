#pragma once

// Exact arithmetic over Q and over cyclotomic fields Q(zeta_m) = Q[t]/Phi_m(t).

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace crpencil {

using Rational = mpq_class;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw FieldError("invalid rational literal '" + text + "'");
  }
  if (q.get_den() == 0) throw FieldError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Dense univariate polynomial over Q, coefficients stored low degree first,
// no trailing zeros. The zero polynomial is the empty vector.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly monomial(std::size_t deg, const Rational& coeff = 1) {
    std::vector<Rational> c(deg + 1, Rational(0));
    c[deg] = coeff;
    return UPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  // Euclidean division; divisor must be nonzero.
  static void divmod(const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem) {
    if (b.is_zero()) throw FieldError("univariate division by zero");
    std::vector<Rational> r = a.c_;
    const int db = b.degree();
    std::vector<Rational> q(std::max(0, a.degree() - db + 1), Rational(0));
    for (int i = a.degree(); i >= db; --i) {
      if (r[i] == 0) continue;
      Rational f = r[i] / b.leading();
      q[i - db] = f;
      for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
    }
    quot = UPoly(std::move(q));
    rem = UPoly(std::move(r));
  }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  std::string to_string(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Rational& k = c_[i];
      if (k == 0) continue;
      Rational mag = abs(k);
      if (out.empty()) {
        if (k < 0) out += "-";
      } else {
        out += k < 0 ? " - " : " + ";
      }
      const bool unit = mag == 1 && i > 0;
      if (!unit) out += mag.get_str();
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// Phi_m, computed as (t^m - 1) divided by Phi_e for every proper divisor e of m.
inline UPoly cyclotomic_polynomial(int m) {
  if (m < 1) throw FieldError("cyclotomic order must be positive");
  UPoly acc = UPoly::monomial(static_cast<std::size_t>(m)) - UPoly::monomial(0);
  for (int e = 1; e < m; ++e) {
    if (m % e != 0) continue;
    UPoly q, r;
    UPoly::divmod(acc, cyclotomic_polynomial(e), q, r);
    if (!r.is_zero()) throw FieldError("internal: non-exact cyclotomic division");
    acc = q;
  }
  return acc;
}

inline int euler_phi(int m) {
  int result = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace detail {

struct CycloContext {
  int order;
  int phi;
  UPoly modulus;
  // reduce_table[k] = t^(phi + k) mod Phi_m, for k in [0, phi - 1)
  std::vector<std::vector<Rational>> reduce_table;
};

inline std::shared_ptr<const CycloContext> cyclo_context(int m) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CycloContext>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto ctx = std::make_shared<CycloContext>();
  ctx->order = m;
  ctx->modulus = cyclotomic_polynomial(m);
  ctx->phi = ctx->modulus.degree();
  for (int k = 0; k + 1 < ctx->phi; ++k) {
    UPoly q, r;
    UPoly::divmod(UPoly::monomial(static_cast<std::size_t>(ctx->phi + k)), ctx->modulus, q, r);
    std::vector<Rational> row(ctx->phi, Rational(0));
    for (int i = 0; i <= r.degree(); ++i) row[i] = r.coeff(i);
    ctx->reduce_table.push_back(std::move(row));
  }
  cache.emplace(m, ctx);
  return ctx;
}

}  // namespace detail

// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1),
// always reduced modulo Phi_m. Equality is coefficient-vector equality.
class CycloElem {
 public:
  CycloElem() : CycloElem(1) {}
  explicit CycloElem(int order) : ctx_(detail::cyclo_context(order)), c_(ctx_->phi, Rational(0)) {}
  CycloElem(int order, std::vector<Rational> coeffs) : ctx_(detail::cyclo_context(order)) {
    set_from_poly(UPoly(std::move(coeffs)));
  }

  static CycloElem embed(const Rational& q, int order) {
    CycloElem e(order);
    e.c_[0] = q;
    return e;
  }
  static CycloElem zeta(int order) {
    // zeta = t, reduced (phi(1) = phi(2) = 1, so t collapses to 1 or -1)
    CycloElem e(order);
    e.set_from_poly(UPoly::monomial(1));
    return e;
  }
  static CycloElem zeta_power(int order, long k) {
    long r = ((k % order) + order) % order;
    return zeta(order).pow(static_cast<unsigned>(r));
  }

  int order() const { return ctx_->order; }
  int phi() const { return ctx_->phi; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  bool is_one() const { return is_rational() && c_[0] == 1; }
  const Rational& rational_part() const { return c_[0]; }

  CycloElem zero_like() const { return CycloElem(order()); }
  CycloElem one_like() const { return embed(1, order()); }

  CycloElem& operator+=(const CycloElem& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CycloElem& operator-=(const CycloElem& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  CycloElem& operator*=(const CycloElem& o) {
    *this = *this * o;
    return *this;
  }
  CycloElem& operator/=(const CycloElem& o) {
    *this = *this / o;
    return *this;
  }

  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  friend CycloElem operator-(CycloElem a) {
    for (auto& q : a.c_) q = -q;
    return a;
  }
  friend CycloElem operator*(const CycloElem& a, const CycloElem& b) {
    a.check(b);
    const int phi = a.phi();
    CycloElem r(a.ctx_);
    if (phi == 1) {
      r.c_[0] = a.c_[0] * b.c_[0];
      return r;
    }
    std::vector<Rational> prod(2 * phi - 1, Rational(0));
    for (int i = 0; i < phi; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; j < phi; ++j) {
        if (b.c_[j] == 0) continue;
        prod[i + j] += a.c_[i] * b.c_[j];
      }
    }
    for (int i = 0; i < phi; ++i) r.c_[i] = prod[i];
    for (int k = 0; k + 1 < phi; ++k) {
      const Rational& high = prod[phi + k];
      if (high == 0) continue;
      const auto& row = a.ctx_->reduce_table[k];
      for (int i = 0; i < phi; ++i) r.c_[i] += high * row[i];
    }
    return r;
  }
  friend CycloElem operator/(const CycloElem& a, const CycloElem& b) { return a * b.inverse(); }

  // Inverse by extended Euclid against Phi_m.
  CycloElem inverse() const {
    if (is_zero()) throw FieldError("division by zero in Q(zeta_" + std::to_string(order()) + ")");
    if (phi() == 1) return embed(1 / c_[0], order());
    UPoly r0 = ctx_->modulus, r1 = as_poly();
    UPoly s0, s1 = UPoly::monomial(0);
    while (r1.degree() > 0) {
      UPoly q, r;
      UPoly::divmod(r0, r1, q, r);
      UPoly s = s0 - q * s1;
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    // r1 is a nonzero constant since Phi_m is irreducible
    Rational inv = 1 / r1.leading();
    CycloElem out(ctx_);
    out.set_from_poly(s1 * UPoly(std::vector<Rational>{inv}));
    return out;
  }

  CycloElem pow(unsigned e) const {
    CycloElem result = one_like(), base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const CycloElem& a, const CycloElem& b) {
    return a.order() == b.order() && a.c_ == b.c_;
  }
  friend bool operator!=(const CycloElem& a, const CycloElem& b) { return !(a == b); }
  // Arbitrary total order (order, then lexicographic coefficients) for use as map keys.
  friend bool operator<(const CycloElem& a, const CycloElem& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.c_ < b.c_;
  }

  UPoly as_poly() const { return UPoly(c_); }

  // Text form accepted by the polynomial parser, e.g. "3/2", "(1 + 2*z)".
  std::string to_string() const {
    if (is_rational()) return c_[0].get_str();
    std::string s = as_poly().to_string("z");
    return "(" + s + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const CycloElem& e) { return os << e.to_string(); }

 private:
  explicit CycloElem(std::shared_ptr<const detail::CycloContext> ctx)
      : ctx_(std::move(ctx)), c_(ctx_->phi, Rational(0)) {}

  void check(const CycloElem& o) const {
    if (ctx_->order != o.ctx_->order) {
      throw FieldError("cyclotomic order mismatch: " + std::to_string(ctx_->order) + " vs " +
                       std::to_string(o.ctx_->order));
    }
  }

  void set_from_poly(const UPoly& p) {
    UPoly q, r;
    UPoly::divmod(p, ctx_->modulus, q, r);
    c_.assign(ctx_->phi, Rational(0));
    for (int i = 0; i <= r.degree(); ++i) c_[i] = r.coeff(i);
  }

  std::shared_ptr<const detail::CycloContext> ctx_;
  std::vector<Rational> c_;
};

inline CycloElem embed(const Rational& q, int order) { return CycloElem::embed(q, order); }

// Linear algebra helpers pick up field constants through these.
inline CycloElem zero_like(const CycloElem& x) { return x.zero_like(); }
inline CycloElem one_like(const CycloElem& x) { return x.one_like(); }
inline bool is_zero(const CycloElem& x) { return x.is_zero(); }
inline Rational zero_like(const Rational&) { return 0; }
inline Rational one_like(const Rational&) { return 1; }
inline bool is_zero(const Rational& x) { return x == 0; }

}  // namespace crpencil
