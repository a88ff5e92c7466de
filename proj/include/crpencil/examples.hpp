#pragma once

// Example families: the Hesse pencil, the Fermat family, the gdd4 (A_d) family and
// logarithmic foliations.

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "crpencil/pencil.hpp"

namespace crpencil {

class ExampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExampleBundle {
  std::string name;
  std::map<std::string, std::string> params;
  std::optional<CRFiberSet> fibers;  // absent for logarithmic
  Arrangement arrangement;
  std::optional<FoliationForm> form;  // the logarithmic form, given directly
  std::vector<Rational> lambda;
};

namespace detail {

// normal of x_a - c x_b
inline Vec difference_normal(int nvars, int order, int a, int b, const CycloElem& c) {
  Vec v(nvars, embed(0, order));
  v[a] = embed(1, order);
  v[b] = -c;
  return v;
}

inline Vec unit_normal(int nvars, int order, int a) {
  Vec v(nvars, embed(0, order));
  v[a] = embed(1, order);
  return v;
}

// x_a^q - x_b^q = prod_j (x_a - zeta^j x_b), zeta of order q
inline FactoredFiber& add_difference_of_powers(FactoredFiber& f, int a, int b, int q) {
  for (int j = 0; j < q; ++j) f.add_linear(difference_normal(f.nvars, f.order, a, b, CycloElem::zeta_power(q, j)));
  return f;
}

inline ExampleBundle finish(std::string name, std::map<std::string, std::string> params, const Pencil& p,
                            const std::vector<FactoredFiber>& extra) {
  ExampleBundle b;
  b.name = std::move(name);
  b.params = std::move(params);
  b.fibers = CRFiberSet::certify(p, extra);
  b.arrangement = b.fibers->arrangement();
  return b;
}

}  // namespace detail

// F = xyz, G = x^3 + y^3 + z^3 - 3xyz; the other triangles are x^3 + y^3 + z^3 - 3 zeta^k xyz.
inline ExampleBundle hesse() {
  const int m = 3;
  auto triangle = [&](int k) {
    FactoredFiber t(3, m);
    for (int j = 0; j < 3; ++j) {
      Vec v{embed(1, m), CycloElem::zeta_power(m, j), CycloElem::zeta_power(m, (2 * j + k) % 3)};
      t.add_linear(v);
    }
    return t;
  };
  FactoredFiber f(3, m);
  for (int i = 0; i < 3; ++i) f.add_linear(detail::unit_normal(3, m, i));
  return detail::finish("hesse", {}, Pencil(f, triangle(0)), {triangle(1), triangle(2)});
}

// Over Q(zeta_{m-1}): F = x^{m-1}(y^{m-1} - z^{m-1}), G = y^{m-1}(z^{m-1} - x^{m-1}),
// third fiber z^{m-1}(x^{m-1} - y^{m-1}) = -F - G.
inline ExampleBundle fermat(int m) {
  if (m < 2) throw ExampleError("fermat needs m >= 2");
  const int q = m - 1;
  auto fib = [&](int a, int b, int c) {
    FactoredFiber f(3, q);
    f.add_linear(detail::unit_normal(3, q, a), q);
    detail::add_difference_of_powers(f, b, c, q);
    return f;
  };
  return detail::finish("fermat", {{"m", std::to_string(m)}}, Pencil(fib(0, 1, 2), fib(1, 2, 0)), {fib(2, 0, 1)});
}

// Over Q(zeta_d): F = (x0^d - x1^d)(x2^d - x3^d), G = (x0^d - x2^d)(x1^d - x3^d),
// F - G = (x0^d - x3^d)(x2^d - x1^d).
inline ExampleBundle gdd4(int d) {
  if (d < 1) throw ExampleError("gdd4 needs d >= 1");
  auto fib = [&](int a, int b, int c, int e) {
    FactoredFiber f(4, d);
    detail::add_difference_of_powers(f, a, b, d);
    detail::add_difference_of_powers(f, c, e, d);
    return f;
  };
  return detail::finish("gdd4", {{"d", std::to_string(d)}}, Pencil(fib(0, 1, 2, 3), fib(0, 2, 1, 3)),
                        {fib(0, 3, 2, 1)});
}

inline std::vector<Rational> default_lambda(int n) {
  if (n == 2) return {Rational(1), Rational(1), Rational(-2)};
  std::vector<Rational> l(n + 1, Rational(1));
  l[n] = -n;
  return l;
}

// omega = sum_i lambda_i (prod_{j != i} x_j) dx_i on P^n
inline ExampleBundle logarithmic(int n, std::vector<Rational> lambda = {}) {
  if (n < 2 || n + 1 > kMaxVars) throw ExampleError("logarithmic needs 2 <= n <= " + std::to_string(kMaxVars - 1));
  if (lambda.empty()) lambda = default_lambda(n);
  if (static_cast<int>(lambda.size()) != n + 1) throw ExampleError("lambda needs n+1 entries");
  Rational sum = 0;
  for (const auto& l : lambda) {
    if (l == 0) throw ExampleError("lambda entries must be nonzero");
    sum += l;
  }
  if (sum != 0) throw ExampleError("lambda entries must sum to zero");
  const int nv = n + 1;
  std::vector<MultiPoly> coeffs;
  std::vector<Hyperplane> hs;
  for (int i = 0; i < nv; ++i) {
    MultiPoly c = MultiPoly::constant(nv, embed(lambda[i], 1));
    for (int j = 0; j < nv; ++j)
      if (j != i) c = c * MultiPoly::variable(nv, 1, j);
    coeffs.push_back(std::move(c));
    hs.emplace_back(detail::unit_normal(nv, 1, i));
  }
  ExampleBundle b;
  b.name = "logarithmic";
  b.params = {{"n", std::to_string(n)}};
  std::string ls;
  for (std::size_t i = 0; i < lambda.size(); ++i) ls += (i ? "," : "") + to_string(lambda[i]);
  b.params["lambda"] = ls;
  b.lambda = lambda;
  FoliationForm w;
  w.omega = Form1(std::move(coeffs));
  w.degree = w.omega.coefficient_degree() - 1;
  b.form = std::move(w);
  b.arrangement = Arrangement(nv, 1, std::move(hs));
  return b;
}

}  // namespace crpencil
