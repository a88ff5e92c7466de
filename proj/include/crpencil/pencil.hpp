#pragma once

// Pencils aF + bG with completely reducible fibers and their foliation forms.

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crpencil/arrangement.hpp"
#include "crpencil/forms.hpp"
#include "crpencil/sampling.hpp"

namespace crpencil {

class PencilError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionFailed : public PencilError {
 public:
  using PencilError::PencilError;
};

struct LinearFactor {
  Hyperplane plane;
  int exp = 1;
};

struct NonreducedFactor {
  MultiPoly poly;  // claimed irreducible
  int exp = 2;
};

// scalar * prod alpha^exp * prod f^exp
struct FactoredFiber {
  int nvars = 0;
  int order = 1;
  CycloElem scalar;
  std::vector<LinearFactor> linear;
  std::vector<NonreducedFactor> nonreduced;

  FactoredFiber() = default;
  FactoredFiber(int n, int m) : nvars(n), order(m), scalar(embed(1, m)) {}

  // Stores the normalized hyperplane and moves the leading coefficient into the scalar;
  // repeated hyperplanes merge their exponents.
  FactoredFiber& add_linear(const Vec& normal, int exp = 1) {
    if (exp < 1) throw PencilError("linear factor exponent must be positive");
    if (static_cast<int>(normal.size()) != nvars) throw PencilError("linear factor has wrong length");
    Hyperplane h(normal);
    const auto lead = std::find_if(normal.begin(), normal.end(), [](const CycloElem& x) { return !x.is_zero(); });
    scalar = scalar * lead->pow(static_cast<unsigned>(exp));
    for (auto& f : linear) {
      if (f.plane.normal == h.normal) {
        f.exp += exp;
        return *this;
      }
    }
    linear.push_back({std::move(h), exp});
    return *this;
  }

  FactoredFiber& add_nonreduced(const MultiPoly& p, int exp) {
    if (exp < 1) throw PencilError("factor exponent must be positive");
    if (p.nvars() != nvars || p.order() != order) throw PencilError("factor lives in the wrong ring");
    if (!p.is_homogeneous() || p.degree() < 1) throw PencilError("non-reduced factor must be homogeneous of positive degree");
    nonreduced.push_back({p, exp});
    return *this;
  }

  bool is_completely_reducible() const { return nonreduced.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& f : linear) d += f.exp;
    for (const auto& f : nonreduced) d += f.exp * f.poly.degree();
    return d;
  }

  // prod alpha^exp (the linear part U-tilde, no scalar)
  MultiPoly linear_part(int cap = kDefaultDegreeCap) const {
    MultiPoly p = MultiPoly::constant(nvars, embed(1, order));
    for (const auto& f : linear) p = p * f.plane.linear_form().pow(f.exp, cap);
    return p;
  }

  MultiPoly expand(int cap = kDefaultDegreeCap) const {
    check_degree_cap(degree(), cap);
    MultiPoly p = scalar * linear_part(cap);
    for (const auto& f : nonreduced) p = p * f.poly.pow(f.exp, cap);
    return p;
  }
};

namespace detail {

inline bool proportional(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.size() != b.size()) return false;
  const auto& [m, ca] = *a.terms().rbegin();
  const CycloElem c = b.coeff(m) / ca;
  return !c.is_zero() && c * a == b;
}

}  // namespace detail

struct Pencil {
  FactoredFiber F, G;
  MultiPoly f_poly, g_poly;
  int d = 0;
  int nvars = 0;
  int order = 1;

  Pencil() = default;
  Pencil(FactoredFiber f, FactoredFiber g, int cap = kDefaultDegreeCap) : F(std::move(f)), G(std::move(g)) {
    if (F.nvars != G.nvars || F.order != G.order) throw PencilError("generators live in different rings");
    nvars = F.nvars;
    order = F.order;
    f_poly = F.expand(cap);
    g_poly = G.expand(cap);
    if (f_poly.is_zero() || g_poly.is_zero()) throw PencilError("zero generator");
    if (!f_poly.is_homogeneous() || !g_poly.is_homogeneous()) throw PencilError("generators must be homogeneous");
    if (f_poly.degree() != g_poly.degree()) throw PencilError("generators have different degrees");
    d = f_poly.degree();
    if (d < 1) throw PencilError("generators must have positive degree");
    if (detail::proportional(f_poly, g_poly)) throw PencilError("generators are proportional");
    for (const auto& a : F.linear)
      for (const auto& b : G.linear)
        if (a.plane.normal == b.plane.normal) throw PencilError("generators share a linear factor");
    for (const auto& a : F.nonreduced)
      for (const auto& b : G.nonreduced)
        if (detail::proportional(a.poly, b.poly)) throw PencilError("generators share a factor");
  }

  int n() const { return nvars - 1; }
};

inline MultiPoly fiber(const Pencil& p, const CycloElem& a, const CycloElem& b) {
  if (a.is_zero() && b.is_zero()) throw PencilError("fiber parameters (0, 0)");
  return a * p.f_poly + b * p.g_poly;
}

using PencilParam = std::pair<CycloElem, CycloElem>;

// (a, b) with expansion(candidate) = a F + b G, or nullopt when the candidate is not a member.
inline std::optional<PencilParam> detect_member(const Pencil& p, const MultiPoly& k) {
  if (k.nvars() != p.nvars || k.order() != p.order || k.is_zero()) return std::nullopt;
  if (!k.is_homogeneous() || k.degree() != p.d) return std::nullopt;
  std::set<Monomial, GrLex> support;
  for (const auto* q : {&p.f_poly, &p.g_poly, &k})
    for (const auto& [m, c] : q->terms()) support.insert(m);
  const CycloElem zero = embed(0, p.order);
  Matrix<CycloElem> sys(support.size(), 2, zero);
  std::vector<CycloElem> rhs;
  std::size_t r = 0;
  for (const auto& m : support) {
    sys(r, 0) = p.f_poly.coeff(m);
    sys(r, 1) = p.g_poly.coeff(m);
    rhs.push_back(k.coeff(m));
    ++r;
  }
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  return PencilParam{(*sol)[0], (*sol)[1]};
}

inline std::optional<PencilParam> detect_member(const Pencil& p, const FactoredFiber& candidate,
                                                int cap = kDefaultDegreeCap) {
  if (candidate.nvars != p.nvars || candidate.order != p.order || candidate.degree() != p.d) return std::nullopt;
  return detect_member(p, candidate.expand(cap));
}

struct CRFiberSet {
  Pencil pencil;
  std::vector<FactoredFiber> fibers;  // fibers[0] = F, fibers[1] = G
  std::vector<PencilParam> params;

  // F and G plus the extra fibers, each certified as a completely reducible member.
  static CRFiberSet certify(const Pencil& p, const std::vector<FactoredFiber>& extra, int cap = kDefaultDegreeCap) {
    CRFiberSet s;
    s.pencil = p;
    s.fibers = {p.F, p.G};
    s.params = {{embed(1, p.order), embed(0, p.order)}, {embed(0, p.order), embed(1, p.order)}};
    for (std::size_t i = 0; i < extra.size(); ++i) {
      auto ab = detect_member(p, extra[i], cap);
      if (!ab) throw PencilError("fiber " + std::to_string(i + 2) + " is not a member of the pencil");
      s.fibers.push_back(extra[i]);
      s.params.push_back(*ab);
    }
    std::set<Vec> seen;
    for (std::size_t i = 0; i < s.fibers.size(); ++i) {
      if (!s.fibers[i].is_completely_reducible())
        throw PencilError("fiber " + std::to_string(i) + " is not completely reducible");
      for (const auto& f : s.fibers[i].linear)
        if (!seen.insert(f.plane.normal).second) throw PencilError("a hyperplane appears in two fibers");
    }
    return s;
  }

  int k() const { return static_cast<int>(fibers.size()); }
  int nvars() const { return pencil.nvars; }
  int order() const { return pencil.order; }

  // Hyperplanes of all fibers; class = fiber index, multiplicity = exponent.
  Arrangement arrangement() const {
    std::vector<Hyperplane> hs;
    for (std::size_t i = 0; i < fibers.size(); ++i)
      for (const auto& f : fibers[i].linear) hs.emplace_back(f.plane.normal, f.exp, static_cast<int>(i));
    return Arrangement(nvars(), order(), std::move(hs));
  }

  // prod alpha (reduced)
  MultiPoly Q() const {
    MultiPoly q = MultiPoly::constant(nvars(), embed(1, order()));
    for (const auto& fib : fibers)
      for (const auto& f : fib.linear) q = q * f.plane.linear_form();
    return q;
  }
  // prod alpha^m
  MultiPoly Qtilde(int cap = kDefaultDegreeCap) const {
    MultiPoly q = MultiPoly::constant(nvars(), embed(1, order()));
    for (const auto& fib : fibers) q = q * fib.linear_part(cap);
    return q;
  }
  int excess() const {
    int e = 0;
    for (const auto& fib : fibers)
      for (const auto& f : fib.linear) e += f.exp - 1;
    return e;
  }
};

inline Form1 omega0(const MultiPoly& f, const MultiPoly& g) {
  return f * exterior_derivative(g) - g * exterior_derivative(f);
}
inline Form1 omega0(const Pencil& p) { return omega0(p.f_poly, p.g_poly); }

struct Division {
  std::string label;  // which factor was removed
  MultiPoly divisor;
};

struct FoliationForm {
  Form1 omega;
  int degree = -1;  // coefficient degree - 1
  std::vector<Division> divisions;
  std::optional<CycloElem> independence_constant;  // from the second generator pair
  bool generator_independence = true;

  int n() const { return omega.nvars() - 1; }
};

namespace detail {

inline Form1 divide_form(const Form1& w, const MultiPoly& q) {
  std::vector<MultiPoly> out;
  for (const auto& a : w.coeffs) {
    auto r = exact_divide(a, q);
    if (!r) throw DivisionFailed("coefficient not divisible by " + to_string(q));
    out.push_back(std::move(*r));
  }
  return Form1(std::move(out));
}

inline std::string hyperplane_label(const Hyperplane& h) {
  return to_string(h.linear_form());
}

inline std::vector<Division> cr_divisors(const std::vector<FactoredFiber>& fibers, int cap) {
  std::vector<Division> out;
  for (std::size_t i = 0; i < fibers.size(); ++i)
    for (const auto& f : fibers[i].linear)
      if (f.exp > 1)
        out.push_back({"fiber " + std::to_string(i) + ": (" + hyperplane_label(f.plane) + ")^" + std::to_string(f.exp - 1),
                       f.plane.linear_form().pow(f.exp - 1, cap)});
  return out;
}

inline Form1 apply_divisions(Form1 w, const std::vector<Division>& ds) {
  for (const auto& d : ds) w = divide_form(w, d.divisor);
  return w;
}

}  // namespace detail

// omega = (Q / Q-tilde) omega_0 built from fibers 0 and 1; generator independence is checked against
// the pair (0, 2) when a third fiber exists.
inline FoliationForm omega_reduced(const CRFiberSet& crs, int cap = kDefaultDegreeCap) {
  if (crs.k() < 2) throw PencilError("need at least two completely reducible fibers");
  FoliationForm out;
  out.divisions = detail::cr_divisors(crs.fibers, cap);
  out.omega = detail::apply_divisions(omega0(crs.pencil), out.divisions);
  out.degree = out.omega.coefficient_degree() - 1;
  if (crs.k() >= 3) {
    const MultiPoly k = crs.fibers[2].expand(cap);
    const Form1 alt = detail::apply_divisions(omega0(crs.pencil.f_poly, k), out.divisions);
    out.independence_constant = proportionality_constant(out.omega, alt);
    out.generator_independence = out.independence_constant.has_value();
  }
  return out;
}

// alpha_H divides every coefficient of d(alpha_H) ^ omega.
inline bool invariant_hyperplane(const Form1& omega, const Hyperplane& h) {
  if (h.nvars() != omega.nvars()) throw PencilError("hyperplane and form in different dimensions");
  const MultiPoly alpha = h.linear_form();
  const Form2 w = wedge(exterior_derivative(alpha), omega);
  for (const auto& [ij, c] : w.coeffs)
    if (!divides(alpha, c)) return false;
  return true;
}

struct JacobianReport {
  bool computed = false;
  std::string notice;
  std::optional<MultiPoly> D;
  bool d_zero = false;
  int exponent = 0;  // n - 1
  std::optional<bool> divisible;
  std::optional<MultiPoly> cofactor;
};

inline JacobianReport jacobian_and_divisibility(const Form1& omega, const MultiPoly& Q, int cap = kDefaultDegreeCap) {
  JacobianReport r;
  r.exponent = omega.nvars() - 2;
  try {
    r.D = jacobian_determinant(omega, cap);
  } catch (const DegreeCapExceeded& e) {
    r.notice = std::string("symbolic determinant skipped: ") + e.what();
    return r;
  }
  r.computed = true;
  r.d_zero = r.D->is_zero();
  if (r.d_zero) return r;
  if (r.exponent * Q.degree() > r.D->degree()) {
    r.divisible = false;
    return r;
  }
  const MultiPoly qe = Q.pow(r.exponent, std::max(cap, r.D->degree()));
  auto cof = exact_divide(*r.D, qe);
  r.divisible = cof.has_value();
  r.cofactor = std::move(cof);
  return r;
}

struct GaussVerdict {
  enum Kind { Dominant, DegenerateLikely, DegenerateCertified } kind = DegenerateLikely;
  std::optional<Vec> witness;
  std::optional<CycloElem> value;
  int samples = 0;  // points actually evaluated
  long bound = 0;
  std::uint64_t seed = 0;
  int degree_bound = 0;       // deg D for a nonzero D
  double failure_bound = 1.0;  // (deg D / (2B+1))^samples, for DegenerateLikely

  static const char* name(Kind k) {
    switch (k) {
      case Dominant: return "Dominant";
      case DegenerateLikely: return "DegenerateLikely";
      default: return "DegenerateCertified";
    }
  }
};

inline constexpr long kDefaultSampleBound = 10000;

// D is nonzero somewhere iff the Gauss map is dominant; a symbolic D, when given, settles
// the degenerate case exactly.
inline GaussVerdict gauss_dominant(const Form1& omega, int samples, std::uint64_t seed,
                                   long bound = kDefaultSampleBound, const std::optional<MultiPoly>& symbolic = {}) {
  if (samples < 1) throw PencilError("samples must be positive");
  GaussVerdict v;
  v.seed = seed;
  v.bound = bound;
  const int e = omega.coefficient_degree();
  v.degree_bound = e <= 0 ? 0 : omega.nvars() * (e - 1);
  if (symbolic && symbolic->is_zero()) {
    v.kind = GaussVerdict::DegenerateCertified;
    return v;
  }
  const auto jac = jacobian_matrix(omega);
  Sampler rng(seed);
  const int budget = symbolic ? std::max(samples, 64) : samples;
  for (int s = 0; s < budget; ++s) {
    Vec p = rng.point(omega.nvars(), omega.order(), bound);
    CycloElem val = jacobian_determinant_at(jac, p);
    ++v.samples;
    if (!val.is_zero()) {
      v.kind = GaussVerdict::Dominant;
      v.witness = std::move(p);
      v.value = std::move(val);
      return v;
    }
  }
  v.kind = GaussVerdict::DegenerateLikely;
  const double ratio = static_cast<double>(v.degree_bound) / static_cast<double>(2 * bound + 1);
  v.failure_bound = std::min(1.0, std::pow(ratio, v.samples));
  return v;
}

struct InvariantCountReport {
  std::vector<int> invariant;  // indices into the candidate list
  int count = 0;
  int degree = 0;
  int n = 0;
  Rational bound;  // (n+1)/(n-1) * degree
  bool holds = false;
  bool attained = false;
};

inline InvariantCountReport invariant_count_bound(const FoliationForm& w, const std::vector<Hyperplane>& candidates,
                                                  const GaussVerdict& verdict) {
  if (verdict.kind != GaussVerdict::Dominant)
    throw PencilError("invariant hyperplane bound needs a dominant Gauss map");
  InvariantCountReport r;
  r.n = w.n();
  if (r.n < 2) throw PencilError("invariant hyperplane bound needs n >= 2");
  r.degree = w.degree;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (invariant_hyperplane(w.omega, candidates[i])) r.invariant.push_back(static_cast<int>(i));
  r.count = static_cast<int>(r.invariant.size());
  r.bound = Rational(r.n + 1, r.n - 1) * r.degree;
  r.bound.canonicalize();
  r.holds = r.count <= r.bound;
  r.attained = r.count == r.bound;
  return r;
}

struct LocalDegreeReport {
  bool applicable = true;
  std::string reason;
  std::optional<PencilParam> membership;
  struct Entry {
    std::vector<int> members;  // indices into the F-then-G arrangement
    int codim = 0;
    int f_sum = 0, g_sum = 0;
  };
  std::vector<Entry> flats;
  std::vector<int> violations;
  bool balanced = false;
};

// Arrangement of the F and G divisors (class 0 = F, class 1 = G).
inline Arrangement generator_arrangement(const Pencil& p) {
  if (!p.F.is_completely_reducible() || !p.G.is_completely_reducible())
    throw PencilError("generators must be completely reducible");
  std::vector<Hyperplane> hs;
  for (const auto& f : p.F.linear) hs.emplace_back(f.plane.normal, f.exp, 0);
  for (const auto& f : p.G.linear) hs.emplace_back(f.plane.normal, f.exp, 1);
  return Arrangement(p.nvars, p.order, std::move(hs));
}

// Balance of F-side and G-side multiplicity sums at every base-locus flat, valid when
// the third fiber is a product of linear forms and non-reduced factors.
inline LocalDegreeReport local_degree_check(const Pencil& p, const FactoredFiber& third, int cap = kDefaultDegreeCap) {
  LocalDegreeReport r;
  for (const auto& f : third.nonreduced) {
    if (f.exp < 2) {
      r.applicable = false;
      r.reason = "third fiber has a reduced nonlinear factor " + to_string(f.poly);
      return r;
    }
  }
  r.membership = detect_member(p, third, cap);
  if (!r.membership) throw PencilError("third fiber is not a member of the pencil");
  const Arrangement arr = generator_arrangement(p);
  for (int codim = 2; codim <= std::min(arr.n(), linear_rank(arr)); ++codim) {
    for (const auto& f : flats(arr, codim)) {
      LocalDegreeReport::Entry e{f.members, f.codim, 0, 0};
      for (int i : f.members) (*arr.hyperplanes[i].cls == 0 ? e.f_sum : e.g_sum) += arr.hyperplanes[i].mult;
      if (e.f_sum == 0 || e.g_sum == 0) continue;
      if (e.f_sum != e.g_sum) r.violations.push_back(static_cast<int>(r.flats.size()));
      r.flats.push_back(std::move(e));
    }
  }
  r.balanced = r.violations.empty();
  return r;
}

// omega = (U/U~)(V/V~)(Q/Q~) omega_0 with Q~ = FG and third = U~ V~.
inline FoliationForm mixed_fiber_omega(const Pencil& p, const FactoredFiber& third, int cap = kDefaultDegreeCap) {
  if (!p.F.is_completely_reducible() || !p.G.is_completely_reducible())
    throw PencilError("generators must be completely reducible");
  for (const auto& f : third.nonreduced)
    if (f.exp < 2) throw PencilError("non-reduced factor with exponent < 2");
  auto ab = detect_member(p, third, cap);
  if (!ab) throw PencilError("third fiber is not a member of the pencil");
  FoliationForm out;
  out.divisions = detail::cr_divisors({p.F, p.G, third}, cap);
  for (const auto& f : third.nonreduced)
    out.divisions.push_back({"fiber 2: (" + to_string(f.poly) + ")^" + std::to_string(f.exp - 1),
                             f.poly.pow(f.exp - 1, cap)});
  out.omega = detail::apply_divisions(omega0(p), out.divisions);
  out.degree = out.omega.coefficient_degree() - 1;
  const MultiPoly k = third.expand(cap);
  const Form1 alt = detail::apply_divisions(omega0(p.f_poly, k), out.divisions);
  out.independence_constant = proportionality_constant(out.omega, alt);
  out.generator_independence = out.independence_constant.has_value();
  return out;
}

}  // namespace crpencil
