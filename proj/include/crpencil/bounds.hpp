#pragma once

// Integer bound checks for completely reducible and mixed-fiber pencils.

#include <optional>
#include <string>
#include <vector>

#include "crpencil/field.hpp"

namespace crpencil {

class BoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CRBoundReport {
  int n = 0, d = 0, k = 0, excess = 0;
  long lhs = 0, rhs = 0;  // (n-1) k d  <=  (n+1)(2d-2) - 2 excess
  bool holds = false;
  std::optional<int> max_k_for_d;  // largest k passing at this (n, d, excess)
  int max_k_any_d = 0;             // largest k with (n-1) k < 2(n+1)
  std::optional<int> min_d_for_k;  // smallest pencil degree passing at this (n, k, excess)
};

inline CRBoundReport cr_bound_check(int n, int d, int k, int excess) {
  if (n < 2 || d < 1 || k < 0 || excess < 0) throw BoundError("cr_bound_check needs n >= 2, d >= 1, k >= 0, excess >= 0");
  CRBoundReport r{n, d, k, excess};
  r.lhs = static_cast<long>(n - 1) * k * d;
  r.rhs = static_cast<long>(n + 1) * (2L * d - 2) - 2L * excess;
  r.holds = r.lhs <= r.rhs;
  if (r.rhs >= 0) r.max_k_for_d = static_cast<int>(r.rhs / (static_cast<long>(n - 1) * d));
  while ((r.max_k_any_d + 1) * (n - 1) < 2 * (n + 1)) ++r.max_k_any_d;
  // d (2(n+1) - (n-1)k) >= 2(n+1) + 2 excess
  const long c = 2L * (n + 1) - static_cast<long>(n - 1) * k;
  if (c > 0) {
    const long need = 2L * (n + 1) + 2L * excess;
    r.min_d_for_k = static_cast<int>(std::max(1L, (need + c - 1) / c));
  }
  return r;
}

struct MixedDegrees {
  int n = 0;
  int u_tilde = 0, u = 0;  // linear part of the third fiber and its reduction
  int v_tilde = 0, v = 0;  // non-reduced part and its reduction
  int q_tilde = 0, q = 0;  // FG and its reduction
};

struct BoundStep {
  std::string name;
  Rational lhs, rhs;
  std::string relation;  // "<=", "<", ">=", "=="
  bool applicable = true;
  bool holds = false;
};

struct MixedBoundReport {
  MixedDegrees data;
  std::vector<BoundStep> steps;
  bool chain_holds = false;  // every applicable step holds
  bool n_lt_7 = false;       // 4(n-1) < 3(n+1)
};

namespace detail {

inline BoundStep make_step(std::string name, Rational lhs, Rational rhs, std::string rel, bool applicable = true) {
  BoundStep s{std::move(name), std::move(lhs), std::move(rhs), std::move(rel), applicable, false};
  s.lhs.canonicalize();
  s.rhs.canonicalize();
  if (!applicable) return s;
  if (s.relation == "<=") s.holds = s.lhs <= s.rhs;
  else if (s.relation == "<") s.holds = s.lhs < s.rhs;
  else if (s.relation == ">=") s.holds = s.lhs >= s.rhs;
  else s.holds = s.lhs == s.rhs;
  return s;
}

}  // namespace detail

// The inequality chain for a third fiber K = U~ V~ with Q~ = FG, step by step.
inline MixedBoundReport mixed_bound_check(const MixedDegrees& g) {
  const int vals[] = {g.u_tilde, g.u, g.v_tilde, g.v, g.q_tilde, g.q};
  for (int x : vals)
    if (x < 0) throw BoundError("degrees must be non-negative");
  if (g.n < 2) throw BoundError("need n >= 2");
  if (g.u > g.u_tilde || g.v > g.v_tilde || g.q > g.q_tilde) throw BoundError("reduced degree exceeds full degree");
  if ((g.u == 0) != (g.u_tilde == 0) || (g.v == 0) != (g.v_tilde == 0) || (g.q == 0) != (g.q_tilde == 0))
    throw BoundError("reduced degree is zero exactly when the full degree is");
  if (g.q_tilde != 2 * (g.u_tilde + g.v_tilde)) throw BoundError("deg FG must be twice the degree of the third fiber");

  MixedBoundReport r;
  r.data = g;
  const Rational n(g.n), ut(g.u_tilde), vt(g.v_tilde), qt(g.q_tilde);
  const Rational eu(g.u_tilde - g.u), ev(g.v_tilde - g.v), eq(g.q_tilde - g.q);
  const bool big = g.n >= 3;

  r.steps.push_back(detail::make_step("E:trivial 2 deg(V~/V) >= deg V~", 2 * ev, vt, ">="));
  const Rational rhs1 = (n + 1) * (qt - 2 - (eu + ev + eq)) + (n - 1) * (eu + eq);
  r.steps.push_back(detail::make_step("determinant degree count", (n - 1) * (ut + qt), rhs1, "<="));
  const Rational rhs2 = (n + 1) * (qt - 2) - 2 * (eu + eq) - (n + 1) * ev;
  r.steps.push_back(detail::make_step("rewrite", rhs1, rhs2, "=="));
  const Rational rhs3 = (n + 1) * (qt - 2) - (n + 1) / Rational(2) * vt - (n - 1) * ut;
  r.steps.push_back(detail::make_step("drop the U~Q~/UQ term and apply E:trivial", (n - 1) * qt, rhs3, "<=", big));
  const Rational rhs4 = (n + 1) * (qt - 2) - (n + 1) / Rational(2) * (ut + vt);
  r.steps.push_back(detail::make_step("(n-1) >= (n+1)/2", rhs3, rhs4, "<=", big));
  const Rational rhs5 = Rational(3) * (n + 1) / 4 * qt;
  r.steps.push_back(detail::make_step("deg K = deg Q~ / 2", rhs4, rhs5, "<", big));
  r.steps.push_back(detail::make_step("combined", (n - 1) * qt, rhs5, "<", big));

  r.chain_holds = true;
  for (const auto& s : r.steps)
    if (s.applicable && !s.holds) r.chain_holds = false;
  r.n_lt_7 = 4 * (g.n - 1) < 3 * (g.n + 1);
  return r;
}

}  // namespace crpencil
