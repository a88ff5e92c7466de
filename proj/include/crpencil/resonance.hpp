#pragma once

// Orlik-Solomon algebra in degrees <= 2 and first resonance varieties.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crpencil/arrangement.hpp"
#include "crpencil/pencil.hpp"
#include "crpencil/sampling.hpp"

namespace crpencil {

class ResonanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OSDegree2 {
  Arrangement arr;
  int m = 0;
  Matrix<CycloElem> relations{0, 0, CycloElem()};  // RREF of the dependent-triple rows
  std::vector<std::size_t> pivots;
  std::size_t relation_rows = 0;  // before reduction
  int a2_dim = 0;
  int lattice_dim = 0;  // C(m,2) - sum_X C(|X|,2) + sum_X (|X|-1) over rank-2 flats
  std::vector<Flat> rank2_flats;

  std::size_t pair_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    // pairs (0,1), (0,2), ..., (0,m-1), (1,2), ...
    return static_cast<std::size_t>(i) * (2 * m - i - 1) / 2 + (j - i - 1);
  }
  std::size_t num_pairs() const { return static_cast<std::size_t>(m) * (m - 1) / 2; }
  int order() const { return arr.order; }
  CycloElem zero() const { return embed(0, arr.order); }

  std::vector<CycloElem> reduce(std::vector<CycloElem> v) const { return reduce_by_rref(std::move(v), relations, pivots); }
};

inline OSDegree2 build_os2(const Arrangement& arr) {
  if (arr.size() < 2) throw ResonanceError("Orlik-Solomon algebra needs at least two hyperplanes");
  OSDegree2 os;
  os.arr = arr;
  os.m = static_cast<int>(arr.size());
  os.rank2_flats = flats(arr, 2);
  const CycloElem zero = os.zero(), one = embed(1, arr.order);
  std::vector<std::vector<CycloElem>> rows;
  long pairs_in_flats = 0, flat_contrib = 0;
  for (const auto& f : os.rank2_flats) {
    const auto& x = f.members;
    const long s = static_cast<long>(x.size());
    pairs_in_flats += s * (s - 1) / 2;
    flat_contrib += s - 1;
    for (std::size_t a = 0; a < x.size(); ++a)
      for (std::size_t b = a + 1; b < x.size(); ++b)
        for (std::size_t c = b + 1; c < x.size(); ++c) {
          // d(e_i e_j e_l) = e_j e_l - e_i e_l + e_i e_j
          std::vector<CycloElem> row(os.num_pairs(), zero);
          row[os.pair_index(x[b], x[c])] += one;
          row[os.pair_index(x[a], x[c])] -= one;
          row[os.pair_index(x[a], x[b])] += one;
          rows.push_back(std::move(row));
        }
  }
  os.relation_rows = rows.size();
  os.relations = Matrix<CycloElem>::from_rows(rows, os.num_pairs(), zero);
  os.pivots = rref(os.relations);
  os.a2_dim = static_cast<int>(os.num_pairs() - os.pivots.size());
  os.lattice_dim = static_cast<int>(static_cast<long>(os.num_pairs()) - pairs_in_flats + flat_contrib);
  return os;
}

// a b in A^2, reduced modulo the relations.
inline std::vector<CycloElem> multiply(const OSDegree2& os, const std::vector<CycloElem>& a,
                                       const std::vector<CycloElem>& b) {
  if (static_cast<int>(a.size()) != os.m || static_cast<int>(b.size()) != os.m)
    throw ResonanceError("A^1 vectors must have one entry per hyperplane");
  std::vector<CycloElem> v(os.num_pairs(), os.zero());
  for (int i = 0; i < os.m; ++i)
    for (int j = i + 1; j < os.m; ++j) {
      if (a[i].is_zero() && a[j].is_zero()) continue;
      v[os.pair_index(i, j)] = a[i] * b[j] - a[j] * b[i];
    }
  return os.reduce(std::move(v));
}

inline bool is_zero_vector(const std::vector<CycloElem>& v) {
  return std::all_of(v.begin(), v.end(), [](const CycloElem& x) { return x.is_zero(); });
}

struct MembershipResult {
  bool in_r1 = false;
  std::vector<std::vector<CycloElem>> kernel;  // basis of {b : a b = 0}
};

inline std::vector<std::vector<CycloElem>> multiplication_kernel(const OSDegree2& os, const std::vector<CycloElem>& a) {
  Matrix<CycloElem> mat(os.num_pairs(), os.m, os.zero());
  for (int k = 0; k < os.m; ++k) {
    std::vector<CycloElem> e(os.m, os.zero());
    e[k] = embed(1, os.order());
    const auto col = multiply(os, a, e);
    for (std::size_t r = 0; r < col.size(); ++r) mat(r, k) = col[r];
  }
  return nullspace(std::move(mat));
}

inline MembershipResult resonance_membership(const OSDegree2& os, const std::vector<CycloElem>& a) {
  if (static_cast<int>(a.size()) != os.m) throw ResonanceError("A^1 vector has wrong length");
  if (is_zero_vector(a)) throw ResonanceError("membership test needs a nonzero vector");
  MembershipResult r;
  r.kernel = multiplication_kernel(os, a);
  r.in_r1 = r.kernel.size() >= 2;
  return r;
}

struct ResonanceCandidate {
  std::vector<std::vector<CycloElem>> basis;
  std::string provenance;           // "local", "pencil" or "search"
  std::vector<int> flat_members;    // for local components
  bool independent = false;
  bool isotropic = false;
  bool resonant = false;            // every basis vector lies in R^1
  bool sums_vanish = false;         // every basis vector has coordinate sum 0

  int dim() const { return static_cast<int>(basis.size()); }
};

// Fills the independence, isotropy, membership and coordinate-sum certificates.
inline void certify_candidate(const OSDegree2& os, ResonanceCandidate& c) {
  c.independent = rank_of_vectors(c.basis, os.m, os.zero()) == c.basis.size();
  c.isotropic = true;
  for (std::size_t i = 0; i < c.basis.size() && c.isotropic; ++i)
    for (std::size_t j = i + 1; j < c.basis.size() && c.isotropic; ++j)
      c.isotropic = is_zero_vector(multiply(os, c.basis[i], c.basis[j]));
  c.resonant = true;
  for (const auto& v : c.basis) c.resonant = c.resonant && !is_zero_vector(v) && resonance_membership(os, v).in_r1;
  c.sums_vanish = true;
  for (const auto& v : c.basis) {
    CycloElem s = os.zero();
    for (const auto& x : v) s += x;
    c.sums_vanish = c.sums_vanish && s.is_zero();
  }
}

// lambda^(i)_H = m(H) on fiber i, -m(H) on the last fiber, for i = 0 .. k-2.
inline ResonanceCandidate pencil_component(const OSDegree2& os, const CRFiberSet& crs) {
  if (crs.k() < 3) throw ResonanceError("pencil component needs k >= 3");
  if (crs.nvars() != os.arr.nvars || crs.order() != os.order())
    throw ResonanceError("arrangement/fiber mismatch: different ambient space or field");
  std::vector<std::vector<int>> idx(crs.k());
  std::vector<bool> covered(os.m, false);
  for (int i = 0; i < crs.k(); ++i)
    for (const auto& f : crs.fibers[i].linear) {
      auto j = os.arr.index_of(f.plane.normal);
      if (!j) throw ResonanceError("arrangement/fiber mismatch: fiber hyperplane missing from arrangement");
      idx[i].push_back(*j);
      covered[*j] = true;
    }
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    throw ResonanceError("arrangement/fiber mismatch: hyperplane in no fiber");
  ResonanceCandidate c;
  c.provenance = "pencil";
  const int last = crs.k() - 1;
  for (int i = 0; i < last; ++i) {
    std::vector<CycloElem> v(os.m, os.zero());
    for (std::size_t t = 0; t < idx[i].size(); ++t) v[idx[i][t]] = embed(crs.fibers[i].linear[t].exp, os.order());
    for (std::size_t t = 0; t < idx[last].size(); ++t)
      v[idx[last][t]] = embed(-crs.fibers[last].linear[t].exp, os.order());
    c.basis.push_back(std::move(v));
  }
  certify_candidate(os, c);
  return c;
}

// One component per rank-2 flat with at least three members: {lambda supported on X, sum 0}.
inline std::vector<ResonanceCandidate> local_components(const OSDegree2& os) {
  std::vector<ResonanceCandidate> out;
  for (const auto& f : os.rank2_flats) {
    if (f.members.size() < 3) continue;
    ResonanceCandidate c;
    c.provenance = "local";
    c.flat_members = f.members;
    for (std::size_t t = 1; t < f.members.size(); ++t) {
      std::vector<CycloElem> v(os.m, os.zero());
      v[f.members[0]] = embed(1, os.order());
      v[f.members[t]] = embed(-1, os.order());
      c.basis.push_back(std::move(v));
    }
    certify_candidate(os, c);
    out.push_back(std::move(c));
  }
  return out;
}

inline constexpr int kDefaultMaximalityTrials = 3;

struct MaximalityResult {
  bool maximal = false;
  std::vector<int> kernel_dims;  // per trial
  std::uint64_t seed = 0;
};

// At random elements a of the span, the kernel of multiplication by a must equal the span.
inline MaximalityResult component_maximality(const OSDegree2& os, const ResonanceCandidate& cand,
                                             int trials = kDefaultMaximalityTrials, std::uint64_t seed = 0,
                                             long bound = 1000) {
  if (cand.basis.empty()) throw ResonanceError("empty candidate");
  MaximalityResult r;
  r.seed = seed;
  r.maximal = true;
  Sampler rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<CycloElem> a;
    do {
      a = rng.combination(cand.basis, os.order(), bound);
    } while (is_zero_vector(a));
    auto ker = multiplication_kernel(os, a);
    r.kernel_dims.push_back(static_cast<int>(ker.size()));
    std::vector<std::vector<CycloElem>> both = ker;
    both.insert(both.end(), cand.basis.begin(), cand.basis.end());
    const bool equal = ker.size() == cand.basis.size() && rank_of_vectors(both, os.m, os.zero()) == ker.size();
    r.maximal = r.maximal && equal;
  }
  return r;
}

struct DimensionBoundReport {
  std::vector<int> support;
  int support_rank = 0;    // projective
  int projective_dim = 0;  // dim - 1
  struct Clause {
    std::string text;
    bool applies = false;
    bool satisfied = true;
  };
  std::vector<Clause> clauses;
  bool alarm = false;  // a clause applies and fails
};

inline DimensionBoundReport dimension_bound_check(const Arrangement& arr, const ResonanceCandidate& cand) {
  DimensionBoundReport r;
  for (std::size_t h = 0; h < arr.size(); ++h)
    for (const auto& v : cand.basis)
      if (!v.at(h).is_zero()) {
        r.support.push_back(static_cast<int>(h));
        break;
      }
  if (r.support.empty()) throw ResonanceError("candidate has empty support");
  r.support_rank = projective_rank(arr, r.support);
  r.projective_dim = cand.dim() - 1;
  const int pd = r.projective_dim, sr = r.support_rank;
  r.clauses = {{"dim > 3 implies support rank 1", pd > 3, !(pd > 3) || sr == 1},
               {"dim > 1 implies support rank <= 2", pd > 1, !(pd > 1) || sr <= 2},
               {"dim > 0 implies support rank <= 4", pd > 0, !(pd > 0) || sr <= 4}};
  for (const auto& c : r.clauses) r.alarm = r.alarm || !c.satisfied;
  return r;
}

struct FiberCountReport {
  int k = 0;
  int dim = 0;
  bool holds = false;
};

inline FiberCountReport fiber_count_identity(const CRFiberSet& crs, const ResonanceCandidate& cand) {
  if (crs.k() < 3) throw ResonanceError("fiber count identity needs k >= 3");
  return {crs.k(), cand.dim(), crs.k() == cand.dim() + 1};
}

}  // namespace crpencil
