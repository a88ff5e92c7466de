#pragma once

// Projective hyperplane multi-arrangements: flats, ranks, multinet
// verification and an exhaustive multinet search.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crpencil/linalg.hpp"
#include "crpencil/poly.hpp"
#include "crpencil/sampling.hpp"

namespace crpencil {

class ArrangementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vec = std::vector<CycloElem>;

// Scales v so its first nonzero coordinate is 1; throws on the zero vector.
inline Vec normalize_projective(Vec v) {
  auto it = std::find_if(v.begin(), v.end(), [](const CycloElem& x) { return !x.is_zero(); });
  if (it == v.end()) throw ArrangementError("zero normal vector");
  const CycloElem inv = it->inverse();
  for (auto& x : v) x = x * inv;
  return v;
}

struct Hyperplane {
  Vec normal;  // first nonzero coordinate is 1
  int mult = 1;
  std::optional<int> cls;

  Hyperplane() = default;
  Hyperplane(Vec n, int m = 1, std::optional<int> c = std::nullopt)
      : normal(normalize_projective(std::move(n))), mult(m), cls(c) {
    if (mult < 1) throw ArrangementError("hyperplane multiplicity must be positive");
  }

  // alpha_H with the stored normalization
  MultiPoly linear_form() const { return MultiPoly::linear(normal); }
  int nvars() const { return static_cast<int>(normal.size()); }
  int order() const { return normal.at(0).order(); }
  bool contains_point(const Vec& p) const {
    CycloElem acc = embed(0, order());
    for (std::size_t i = 0; i < normal.size(); ++i) acc += normal[i] * p.at(i);
    return acc.is_zero();
  }
};

struct Arrangement {
  int nvars = 0;
  int order = 1;
  std::vector<Hyperplane> hyperplanes;

  Arrangement() = default;
  Arrangement(int n, int m, std::vector<Hyperplane> hs) : nvars(n), order(m), hyperplanes(std::move(hs)) {
    validate();
  }

  std::size_t size() const { return hyperplanes.size(); }
  int n() const { return nvars - 1; }  // projective dimension

  bool has_classes() const {
    return !hyperplanes.empty() && std::all_of(hyperplanes.begin(), hyperplanes.end(),
                                               [](const Hyperplane& h) { return h.cls.has_value(); });
  }
  int num_classes() const {
    int k = 0;
    for (const auto& h : hyperplanes)
      if (h.cls) k = std::max(k, *h.cls + 1);
    return k;
  }
  std::vector<int> class_members(int c) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < hyperplanes.size(); ++i)
      if (hyperplanes[i].cls == c) out.push_back(static_cast<int>(i));
    return out;
  }
  std::optional<int> index_of(const Vec& normal) const {
    const Vec key = normalize_projective(normal);
    for (std::size_t i = 0; i < hyperplanes.size(); ++i)
      if (hyperplanes[i].normal == key) return static_cast<int>(i);
    return std::nullopt;
  }

  void validate() const {
    if (nvars < 2 || nvars > kMaxVars) throw ArrangementError("unsupported ambient dimension");
    std::set<Vec> seen;
    bool any_class = false, all_class = true;
    for (const auto& h : hyperplanes) {
      if (h.nvars() != nvars) throw ArrangementError("hyperplane normal has wrong length");
      if (h.order() != order) throw ArrangementError("hyperplane normal over the wrong field");
      if (!seen.insert(h.normal).second) throw ArrangementError("duplicate hyperplane in arrangement");
      any_class |= h.cls.has_value();
      all_class &= h.cls.has_value();
    }
    if (any_class && !all_class) throw ArrangementError("class labels must be given for every hyperplane or none");
    if (any_class) {
      const int k = num_classes();
      for (int c = 0; c < k; ++c)
        if (class_members(c).empty()) throw ArrangementError("class " + std::to_string(c) + " is empty");
      for (const auto& h : hyperplanes)
        if (*h.cls < 0) throw ArrangementError("negative class id");
    }
  }
};

struct Flat {
  Matrix<CycloElem> basis;  // RREF basis of the span of member normals
  std::vector<std::size_t> pivots;
  std::vector<int> members;
  int codim = 0;

  bool contains_normal(const Vec& v) const {
    auto r = reduce_by_rref(v, basis, pivots);
    return std::all_of(r.begin(), r.end(), [](const CycloElem& x) { return x.is_zero(); });
  }
  bool has_member(int i) const { return std::binary_search(members.begin(), members.end(), i); }
  std::vector<CycloElem> key() const {
    std::vector<CycloElem> k;
    for (std::size_t i = 0; i < basis.rows(); ++i)
      for (std::size_t j = 0; j < basis.cols(); ++j) k.push_back(basis(i, j));
    return k;
  }
};

inline Flat span_flat(const Arrangement& arr, const std::vector<Vec>& generators) {
  Matrix<CycloElem> m = Matrix<CycloElem>::from_rows(generators, arr.nvars, embed(0, arr.order));
  Flat f{m, {}, {}, 0};
  f.pivots = rref(f.basis);
  f.codim = static_cast<int>(f.pivots.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    if (f.contains_normal(arr.hyperplanes[i].normal)) f.members.push_back(static_cast<int>(i));
  return f;
}

// Flats spanned by the given hyperplane indices, closed under membership.
inline Flat flat_of(const Arrangement& arr, const std::vector<int>& indices) {
  std::vector<Vec> gens;
  for (int i : indices) gens.push_back(arr.hyperplanes.at(i).normal);
  return span_flat(arr, gens);
}

// All flats of the given codimension, built level by level: every codim-(c+1)
// flat is the closure of a codim-c flat plus one hyperplane.
inline std::vector<Flat> flats(const Arrangement& arr, int codim) {
  if (codim < 1 || codim > arr.n() + 1) throw ArrangementError("flat codimension out of range");
  std::vector<Flat> level;
  for (std::size_t i = 0; i < arr.size(); ++i) level.push_back(flat_of(arr, {static_cast<int>(i)}));
  for (int c = 1; c < codim; ++c) {
    std::map<std::vector<CycloElem>, Flat> next;
    for (const auto& f : level) {
      for (std::size_t i = 0; i < arr.size(); ++i) {
        if (f.has_member(static_cast<int>(i))) continue;
        std::vector<Vec> gens;
        for (std::size_t r = 0; r < f.basis.rows(); ++r) gens.push_back(f.basis.row(r));
        gens.push_back(arr.hyperplanes[i].normal);
        Flat g = span_flat(arr, gens);
        auto key = g.key();
        next.try_emplace(std::move(key), std::move(g));
      }
    }
    level.clear();
    for (auto& [k, f] : next) level.push_back(std::move(f));
  }
  if (codim == 1) return level;
  // order by member lists for stable output
  std::sort(level.begin(), level.end(), [](const Flat& a, const Flat& b) { return a.members < b.members; });
  return level;
}

// Linear rank of the normals of the given subset (all hyperplanes when empty).
inline int linear_rank(const Arrangement& arr, const std::vector<int>& subset = {}) {
  std::vector<Vec> rows;
  if (subset.empty()) {
    for (const auto& h : arr.hyperplanes) rows.push_back(h.normal);
  } else {
    for (int i : subset) rows.push_back(arr.hyperplanes.at(i).normal);
  }
  return static_cast<int>(rank_of_vectors(rows, arr.nvars, embed(0, arr.order)));
}

inline int projective_rank(const Arrangement& arr, const std::vector<int>& subset = {}) {
  return linear_rank(arr, subset) - 1;
}

inline bool is_essential(const Arrangement& arr) { return linear_rank(arr) == arr.nvars; }

struct EssentialPoint {
  Vec point;
  Flat flat;
};

// Points cut out by codim-n flats; the hyperplanes through each form a subarrangement of
// projective rank n-1.
inline std::vector<EssentialPoint> essential_points(const Arrangement& arr) {
  if (!is_essential(arr)) throw ArrangementError("arrangement is not essential");
  std::vector<EssentialPoint> out;
  for (auto& f : flats(arr, arr.n())) {
    auto ker = nullspace(f.basis);
    if (ker.size() != 1) throw ArrangementError("internal: codim-n flat without a unique point");
    Vec p = normalize_projective(ker[0]);
    if (projective_rank(arr, f.members) != arr.n() - 1) continue;
    out.push_back({std::move(p), std::move(f)});
  }
  return out;
}

struct FlatBalance {
  Flat flat;
  std::vector<int> class_sums;  // n_i(X) = sum of m(H) over class-i members containing X
  bool balanced = true;
};

struct MultinetReport {
  int k = 0;
  std::vector<int> class_degrees;
  bool degrees_balanced = false;
  std::vector<FlatBalance> base_flats;  // codim-2 flats met by at least two classes
  std::vector<int> violations;          // indices into base_flats
  bool is_net = false;
  bool passes = false;
};

inline std::vector<int> class_sums_at(const Arrangement& arr, const Flat& f, int k) {
  std::vector<int> sums(k, 0);
  for (int i : f.members) sums[*arr.hyperplanes[i].cls] += arr.hyperplanes[i].mult;
  return sums;
}

inline MultinetReport multinet_check(const Arrangement& arr) {
  if (!arr.has_classes()) throw ArrangementError("multinet check needs a class partition");
  MultinetReport rep;
  rep.k = arr.num_classes();
  if (rep.k < 2) throw ArrangementError("multinet check needs at least two classes");
  rep.class_degrees.assign(rep.k, 0);
  for (const auto& h : arr.hyperplanes) rep.class_degrees[*h.cls] += h.mult;
  rep.degrees_balanced = std::adjacent_find(rep.class_degrees.begin(), rep.class_degrees.end(),
                                            std::not_equal_to<>()) == rep.class_degrees.end();
  bool all_unit = std::all_of(arr.hyperplanes.begin(), arr.hyperplanes.end(),
                              [](const Hyperplane& h) { return h.mult == 1; });
  for (auto& f : flats(arr, 2)) {
    auto sums = class_sums_at(arr, f, rep.k);
    const int touched = static_cast<int>(std::count_if(sums.begin(), sums.end(), [](int s) { return s > 0; }));
    if (touched < 2) continue;
    FlatBalance fb{std::move(f), sums, true};
    fb.balanced = std::adjacent_find(sums.begin(), sums.end(), std::not_equal_to<>()) == sums.end();
    if (!fb.balanced) rep.violations.push_back(static_cast<int>(rep.base_flats.size()));
    if (sums[0] != 1) all_unit = false;
    rep.base_flats.push_back(std::move(fb));
  }
  rep.passes = rep.degrees_balanced && rep.violations.empty();
  rep.is_net = rep.passes && all_unit;
  return rep;
}

// Restriction to a seeded random plane x = u P + v Q + w R, kept only if it preserves
// every codim-2 flat (same member sets, no new coincidences).
inline std::optional<Arrangement> generic_plane_section(const Arrangement& arr, std::uint64_t seed, int bound = 50,
                                                        int attempts = 8) {
  Sampler rng(seed);
  const auto reference = flats(arr, 2);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<Vec> basis(3);
    for (auto& b : basis) b = rng.point(arr.nvars, arr.order, bound);
    std::vector<Hyperplane> hs;
    bool degenerate = false;
    for (const auto& h : arr.hyperplanes) {
      Vec restricted;
      for (const auto& b : basis) {
        CycloElem acc = embed(0, arr.order);
        for (int i = 0; i < arr.nvars; ++i) acc += h.normal[i] * b[i];
        restricted.push_back(acc);
      }
      if (std::all_of(restricted.begin(), restricted.end(), [](const CycloElem& x) { return x.is_zero(); })) {
        degenerate = true;
        break;
      }
      hs.emplace_back(restricted, h.mult, h.cls);
    }
    if (degenerate) continue;
    try {
      Arrangement section(3, arr.order, std::move(hs));
      auto sec_flats = flats(section, 2);
      if (sec_flats.size() != reference.size()) continue;
      bool same = true;
      for (std::size_t i = 0; i < sec_flats.size() && same; ++i) same = sec_flats[i].members == reference[i].members;
      if (same) return section;
    } catch (const ArrangementError&) {
      continue;  // two hyperplanes collapsed to the same line
    }
  }
  return std::nullopt;
}

struct MultinetStructure {
  std::vector<int> classes;
  std::vector<int> mults;

  Arrangement apply(const Arrangement& arr) const {
    Arrangement out = arr;
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.hyperplanes[i].cls = classes[i];
      out.hyperplanes[i].mult = mults[i];
    }
    out.validate();
    return out;
  }
};

inline constexpr std::size_t kDefaultSearchCap = 15;

class SearchCapExceeded : public ArrangementError {
 public:
  SearchCapExceeded(std::size_t size, std::size_t cap)
      : ArrangementError("arrangement has " + std::to_string(size) + " hyperplanes, search cap is " +
                         std::to_string(cap)) {}
};

namespace detail {

class MultinetSearch {
 public:
  MultinetSearch(const Arrangement& arr, int k, int max_mult)
      : arr_(arr), k_(k), max_mult_(max_mult), m_(static_cast<int>(arr.size())) {
    for (auto& f : flats(arr, 2)) {
      const int last = f.members.back();
      closing_.resize(m_);
      closing_[last].push_back(f.members);
    }
    closing_.resize(m_);
    cls_.assign(m_, -1);
    mult_.assign(m_, 0);
    weight_.assign(k_, 0);
  }

  std::vector<MultinetStructure> run() {
    dfs(0, 0);
    return std::move(hits_);
  }

 private:
  bool flat_ok(const std::vector<int>& members) const {
    std::vector<int> sums(k_, 0);
    for (int i : members) sums[cls_[i]] += mult_[i];
    const int touched = static_cast<int>(std::count_if(sums.begin(), sums.end(), [](int s) { return s > 0; }));
    if (touched < 2) return true;
    return std::adjacent_find(sums.begin(), sums.end(), std::not_equal_to<>()) == sums.end();
  }

  bool weights_feasible(int remaining, int used) const {
    if (k_ - used > remaining) return false;
    int lo = weight_[0], hi = weight_[0];
    for (int c = 0; c < k_; ++c) {
      lo = std::min(lo, weight_[c]);
      hi = std::max(hi, weight_[c]);
    }
    return hi <= lo + remaining * max_mult_;
  }

  void dfs(int i, int used) {
    if (i == m_) {
      if (used != k_) return;
      if (std::adjacent_find(weight_.begin(), weight_.end(), std::not_equal_to<>()) != weight_.end()) return;
      int g = 0;
      for (int x : mult_) g = std::gcd(g, x);
      if (g != 1) return;  // scaled copy of a primitive hit
      hits_.push_back({cls_, mult_});
      return;
    }
    const int max_class = std::min(used, k_ - 1);
    for (int c = 0; c <= max_class; ++c) {
      for (int mu = 1; mu <= max_mult_; ++mu) {
        cls_[i] = c;
        mult_[i] = mu;
        weight_[c] += mu;
        const int now_used = std::max(used, c + 1);
        bool ok = weights_feasible(m_ - i - 1, now_used);
        for (std::size_t f = 0; ok && f < closing_[i].size(); ++f) ok = flat_ok(closing_[i][f]);
        if (ok) dfs(i + 1, now_used);
        weight_[c] -= mu;
      }
    }
    cls_[i] = -1;
    mult_[i] = 0;
  }

  const Arrangement& arr_;
  int k_, max_mult_, m_;
  std::vector<std::vector<std::vector<int>>> closing_;  // codim-2 flats whose last member is i
  std::vector<int> cls_, mult_, weight_;
  std::vector<MultinetStructure> hits_;
};

}  // namespace detail

// Every class partition with multiplicities <= max_mult satisfying the class-degree and
// codim-2 balance conditions. Classes are labelled in order of first appearance, so each
// structure is reported once up to class permutation; scaled copies (gcd of m > 1) are dropped.
inline std::vector<MultinetStructure> search_multinets(const Arrangement& arr, int k, int max_mult,
                                                       std::size_t cap = kDefaultSearchCap) {
  if (k < 3) throw ArrangementError("multinet search needs k >= 3");
  if (max_mult < 1) throw ArrangementError("max multiplicity must be positive");
  if (arr.size() > cap) throw SearchCapExceeded(arr.size(), cap);
  if (arr.size() == 0) return {};
  return detail::MultinetSearch(arr, k, max_mult).run();
}

}  // namespace crpencil
