#pragma once

// Polynomial 1- and 2-forms on affine (n+1)-space.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "crpencil/linalg.hpp"
#include "crpencil/poly.hpp"

namespace crpencil {

// omega = sum_i coeffs[i] dx_i
struct Form1 {
  std::vector<MultiPoly> coeffs;

  Form1() = default;
  explicit Form1(std::vector<MultiPoly> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) throw PolyError("a 1-form needs at least one coefficient");
    for (const auto& a : coeffs) coeffs[0].check(a);
    if (static_cast<int>(coeffs.size()) != coeffs[0].nvars())
      throw PolyError("a 1-form needs one coefficient per variable");
  }
  static Form1 zero(int nvars, int order) { return Form1(std::vector<MultiPoly>(nvars, MultiPoly(nvars, order))); }

  int nvars() const { return static_cast<int>(coeffs.size()); }
  int order() const { return coeffs.at(0).order(); }
  bool is_zero() const {
    for (const auto& a : coeffs)
      if (!a.is_zero()) return false;
    return true;
  }
  // Common coefficient degree, or -1 if zero; throws if the form is not homogeneous.
  int coefficient_degree() const {
    int deg = -1;
    for (const auto& a : coeffs) {
      if (a.is_zero()) continue;
      if (!a.is_homogeneous()) throw PolyError("1-form coefficient is not homogeneous");
      if (deg == -1) deg = a.degree();
      if (a.degree() != deg) throw PolyError("1-form coefficients have different degrees");
    }
    return deg;
  }

  friend Form1 operator+(Form1 a, const Form1& b) {
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs.at(i);
    return a;
  }
  friend Form1 operator-(Form1 a, const Form1& b) {
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs.at(i);
    return a;
  }
  friend Form1 operator*(const MultiPoly& f, const Form1& w) {
    Form1 r = w;
    for (auto& a : r.coeffs) a = f * a;
    return r;
  }
  friend Form1 operator*(const CycloElem& s, const Form1& w) {
    Form1 r = w;
    for (auto& a : r.coeffs) a = s * a;
    return r;
  }
  friend bool operator==(const Form1& a, const Form1& b) { return a.coeffs == b.coeffs; }
};

// sum_{i<j} coeffs[(i,j)] dx_i ^ dx_j, zero entries never stored.
struct Form2 {
  int nvars = 0;
  int order = 1;
  std::map<std::pair<int, int>, MultiPoly> coeffs;

  Form2() = default;
  Form2(int n, int m) : nvars(n), order(m) {}

  bool is_zero() const { return coeffs.empty(); }

  void add(int i, int j, const MultiPoly& p) {
    if (i == j || p.is_zero()) return;
    if (i > j) {
      add(j, i, -p);
      return;
    }
    auto key = std::make_pair(i, j);
    auto it = coeffs.find(key);
    if (it == coeffs.end()) {
      coeffs.emplace(key, p);
    } else {
      it->second += p;
      if (it->second.is_zero()) coeffs.erase(it);
    }
  }
  MultiPoly at(int i, int j) const {
    if (i == j) return MultiPoly(nvars, order);
    if (i > j) return -at(j, i);
    auto it = coeffs.find({i, j});
    return it == coeffs.end() ? MultiPoly(nvars, order) : it->second;
  }
  friend bool operator==(const Form2& a, const Form2& b) { return a.nvars == b.nvars && a.coeffs == b.coeffs; }
};

inline Form1 exterior_derivative(const MultiPoly& p) {
  std::vector<MultiPoly> c;
  c.reserve(p.nvars());
  for (int i = 0; i < p.nvars(); ++i) c.push_back(p.derivative(i));
  return Form1(std::move(c));
}

// d(sum a_i dx_i) = sum_{i<j} (da_j/dx_i - da_i/dx_j) dx_i ^ dx_j
inline Form2 exterior_derivative(const Form1& w) {
  const int n = w.nvars();
  Form2 r(n, w.order());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r.add(i, j, w.coeffs[j].derivative(i) - w.coeffs[i].derivative(j));
  return r;
}

inline Form2 wedge(const Form1& a, const Form1& b) {
  if (a.nvars() != b.nvars()) throw PolyError("wedge of forms in different dimensions");
  const int n = a.nvars();
  Form2 r(n, a.order());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r.add(i, j, a.coeffs[i] * b.coeffs[j] - a.coeffs[j] * b.coeffs[i]);
  return r;
}

// Contraction with the Euler field R = sum x_i d/dx_i.
inline MultiPoly euler_contract(const Form1& w) {
  const int n = w.nvars();
  MultiPoly r(n, w.order());
  for (int i = 0; i < n; ++i) r += MultiPoly::variable(n, w.order(), i) * w.coeffs[i];
  return r;
}

// i_R(dx_i ^ dx_j) = x_i dx_j - x_j dx_i
inline Form1 euler_contract(const Form2& eta) {
  Form1 r = Form1::zero(eta.nvars, eta.order);
  for (const auto& [ij, c] : eta.coeffs) {
    const auto [i, j] = ij;
    r.coeffs[j] += MultiPoly::variable(eta.nvars, eta.order, i) * c;
    r.coeffs[i] -= MultiPoly::variable(eta.nvars, eta.order, j) * c;
  }
  return r;
}

// Coefficients of the 3-form alpha ^ eta over index triples i<j<k; zero entries omitted.
inline std::map<std::array<int, 3>, MultiPoly> wedge3(const Form1& alpha, const Form2& eta) {
  const int n = alpha.nvars();
  std::map<std::array<int, 3>, MultiPoly> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        MultiPoly c = alpha.coeffs[i] * eta.at(j, k) - alpha.coeffs[j] * eta.at(i, k) + alpha.coeffs[k] * eta.at(i, j);
        if (!c.is_zero()) out.emplace(std::array<int, 3>{i, j, k}, std::move(c));
      }
  return out;
}

inline bool is_integrable(const Form1& w) { return wedge3(w, exterior_derivative(w)).empty(); }

// (d a_i / d x_j)
inline Matrix<MultiPoly> jacobian_matrix(const Form1& w) {
  const int n = w.nvars();
  Matrix<MultiPoly> m(n, n, MultiPoly(n, w.order()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = w.coeffs[i].derivative(j);
  return m;
}

// Upper bound on intermediate degrees reached by the fraction-free elimination below.
inline int bareiss_degree_bound(int size, int entry_degree) {
  if (entry_degree <= 0 || size <= 1) return std::max(0, entry_degree);
  return 2 * (size - 1) * entry_degree;
}

// Fraction-free (Bareiss) determinant of a polynomial matrix.
inline MultiPoly bareiss_determinant(Matrix<MultiPoly> m, int degree_cap = kDefaultDegreeCap) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw PolyError("determinant of non-square matrix");
  const MultiPoly zero = m.zero();
  int entry_deg = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) entry_deg = std::max(entry_deg, m(i, j).degree());
  check_degree_cap(bareiss_degree_bound(static_cast<int>(n), entry_deg), degree_cap);
  if (n == 0) return MultiPoly::constant(zero.nvars(), embed(1, zero.order()));
  bool negate = false;
  MultiPoly prev = MultiPoly::constant(zero.nvars(), embed(1, zero.order()));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m(p, k).is_zero()) ++p;
      if (p == n) return zero;
      m.swap_rows(p, k);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        auto q = exact_divide(num, prev);
        if (!q) throw PolyError("internal: Bareiss division was not exact");
        m(i, j) = std::move(*q);
      }
      m(i, k) = zero;
    }
    prev = m(k, k);
  }
  MultiPoly det = m(n - 1, n - 1);
  return negate ? -det : det;
}

inline MultiPoly jacobian_determinant(const Form1& w, int degree_cap = kDefaultDegreeCap) {
  return bareiss_determinant(jacobian_matrix(w), degree_cap);
}

// D(v) from the evaluated Jacobian, without forming D symbolically.
inline CycloElem jacobian_determinant_at(const Matrix<MultiPoly>& jac, const std::vector<CycloElem>& point) {
  const std::size_t n = jac.rows();
  Matrix<CycloElem> num(n, n, embed(0, jac.zero().order()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) num(i, j) = jac(i, j).evaluate(point);
  return determinant(num);
}

// Returns c with b == c * a when a is nonzero and the forms are proportional.
inline std::optional<CycloElem> proportionality_constant(const Form1& a, const Form1& b) {
  if (a.nvars() != b.nvars()) return std::nullopt;
  std::optional<CycloElem> c;
  for (std::size_t i = 0; i < a.coeffs.size() && !c; ++i) {
    if (a.coeffs[i].is_zero()) continue;
    const auto& [m, ca] = *a.coeffs[i].terms().rbegin();
    c = b.coeffs[i].coeff(m) / ca;
  }
  if (!c || c->is_zero()) return std::nullopt;
  if (!(b == *c * a)) return std::nullopt;
  return c;
}

}  // namespace crpencil
