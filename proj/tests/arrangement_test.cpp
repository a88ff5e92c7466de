#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "crpencil/examples.hpp"
#include "crpencil/latin.hpp"

namespace crpencil {
namespace {

Vec V(std::vector<int> xs, int order = 1) {
  Vec v;
  for (int x : xs) v.push_back(embed(x, order));
  return v;
}

Arrangement from_int_normals(const std::vector<std::vector<int>>& ns, std::vector<int> classes = {},
                             std::vector<int> mults = {}) {
  std::vector<Hyperplane> hs;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    std::optional<int> c;
    if (!classes.empty()) c = classes[i];
    hs.emplace_back(V(ns[i]), mults.empty() ? 1 : mults[i], c);
  }
  return Arrangement(static_cast<int>(ns[0].size()), 1, std::move(hs));
}

Arrangement braid() {
  return from_int_normals({{1, -1, 0, 0}, {1, 0, -1, 0}, {1, 0, 0, -1}, {0, 1, -1, 0}, {0, 1, 0, -1}, {0, 0, 1, -1}});
}

Arrangement generic_lines() { return from_int_normals({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }

// Integer rank by fraction-free elimination over long long; independent of the field code.
int int_rank(std::vector<std::vector<long long>> m) {
  int rank = 0;
  const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  for (int c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    int p = rank;
    while (p < static_cast<int>(m.size()) && m[p][c] == 0) ++p;
    if (p == static_cast<int>(m.size())) continue;
    std::swap(m[p], m[rank]);
    for (int i = rank + 1; i < static_cast<int>(m.size()); ++i) {
      const long long f = m[i][c], g = m[rank][c];
      for (int j = 0; j < cols; ++j) m[i][j] = m[i][j] * g - m[rank][j] * f;
      long long gg = 0;
      for (long long x : m[i]) gg = std::gcd(gg, x);
      if (gg > 1)
        for (auto& x : m[i]) x /= gg;
    }
    ++rank;
  }
  return rank;
}

// Codim-2 member sets by brute force: l joins flat(i,j) iff rank{i,j,l} = 2.
std::set<std::vector<int>> oracle_codim2(const std::vector<std::vector<int>>& ns) {
  std::set<std::vector<int>> out;
  auto as_ll = [&](int i) { return std::vector<long long>(ns[i].begin(), ns[i].end()); };
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (std::size_t j = i + 1; j < ns.size(); ++j) {
      if (int_rank({as_ll(i), as_ll(j)}) < 2) continue;
      std::vector<int> mem;
      for (std::size_t l = 0; l < ns.size(); ++l)
        if (int_rank({as_ll(i), as_ll(j), as_ll(l)}) == 2) mem.push_back(static_cast<int>(l));
      out.insert(mem);
    }
  return out;
}

std::vector<std::vector<int>> random_distinct_normals(std::mt19937_64& rng, int count, int nvars, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  std::vector<std::vector<int>> out;
  std::set<Vec> seen;
  while (static_cast<int>(out.size()) < count) {
    std::vector<int> v(nvars);
    for (auto& x : v) x = d(rng);
    if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
    if (!seen.insert(normalize_projective(V(v))).second) continue;
    out.push_back(v);
  }
  return out;
}

TEST(Hyperplane, NormalizationAndIdentity) {
  Hyperplane h(V({0, 2, -4}));
  EXPECT_EQ(h.normal, V({0, 1, -2}));
  EXPECT_THROW(Hyperplane(V({0, 0, 0})), ArrangementError);
  EXPECT_THROW(from_int_normals({{1, 1, 0}, {2, 2, 0}}), ArrangementError);
}

TEST(Arrangement, ClassValidation) {
  EXPECT_THROW(from_int_normals({{1, 0, 0}, {0, 1, 0}}, {0, 2}), ArrangementError);
  std::vector<Hyperplane> hs{Hyperplane(V({1, 0, 0}), 1, 0), Hyperplane(V({0, 1, 0}))};
  EXPECT_THROW(Arrangement(3, 1, hs), ArrangementError);
}

TEST(Flats, SpecExamples) {
  auto f = flats(generic_lines(), 2);
  ASSERT_EQ(f.size(), 3u);
  for (const auto& x : f) EXPECT_EQ(x.members.size(), 2u);
  auto g = flats(from_int_normals({{1, 0, 0}, {0, 1, 0}, {1, -1, 0}}), 2);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].members, (std::vector<int>{0, 1, 2}));
}

TEST(Flats, Gdd4TwoAgainstHandListing) {
  const auto b = gdd4(2);
  const auto& arr = b.arrangement;
  const auto f = flats(arr, 2);
  EXPECT_EQ(f.size(), flats(arr, 2).size());
  EXPECT_EQ(f.size(), oracle_codim2([&] {
              std::vector<std::vector<int>> ns;
              for (const auto& h : arr.hyperplanes) {
                std::vector<int> v;
                for (const auto& c : h.normal) v.push_back(static_cast<int>(c.rational_part().get_num().get_si()));
                ns.push_back(v);
              }
              return ns;
            }())
                          .size());
  auto find = [&](std::vector<std::vector<int>> normals) {
    std::vector<int> idx;
    for (auto& n : normals) idx.push_back(*arr.index_of(V(n, 2)));
    return flat_of(arr, idx).members;
  };
  auto sorted_idx = [&](std::vector<std::vector<int>> normals) {
    std::vector<int> idx;
    for (auto& n : normals) idx.push_back(*arr.index_of(V(n, 2)));
    std::sort(idx.begin(), idx.end());
    return idx;
  };
  // {x0 = x1, x2 = x3}: only x0 - x1 and x2 - x3, both factors of F
  EXPECT_EQ(find({{1, -1, 0, 0}, {0, 0, 1, -1}}), sorted_idx({{1, -1, 0, 0}, {0, 0, 1, -1}}));
  // {x0 = x1 = x2}: x0 - x1, x0 - x2, x1 - x2, one per class
  EXPECT_EQ(find({{1, -1, 0, 0}, {1, 0, -1, 0}}), sorted_idx({{1, -1, 0, 0}, {1, 0, -1, 0}, {0, 1, -1, 0}}));
  // {x0 = x1 = 0}: x0 - x1 and x0 + x1
  EXPECT_EQ(find({{1, -1, 0, 0}, {1, 1, 0, 0}}), sorted_idx({{1, -1, 0, 0}, {1, 1, 0, 0}}));
}

TEST(Flats, AgreeWithBruteForceOracle) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 15; ++trial) {
    const int nvars = 3 + trial % 2;
    auto ns = random_distinct_normals(rng, 7, nvars, 1);
    const Arrangement arr = from_int_normals(ns);
    std::set<std::vector<int>> mine;
    for (const auto& f : flats(arr, 2)) mine.insert(f.members);
    EXPECT_EQ(mine, oracle_codim2(ns));
  }
}

TEST(Flats, MemberSetsAreClosed) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    const Arrangement arr = from_int_normals(random_distinct_normals(rng, 8, 4, 1));
    for (int codim = 1; codim <= 3; ++codim) {
      for (const auto& f : flats(arr, codim)) {
        EXPECT_EQ(f.codim, codim);
        EXPECT_EQ(linear_rank(arr, f.members), codim);
        for (std::size_t h = 0; h < arr.size(); ++h) {
          std::vector<int> more = f.members;
          if (f.has_member(static_cast<int>(h))) continue;
          more.push_back(static_cast<int>(h));
          EXPECT_GT(linear_rank(arr, more), codim);
        }
      }
    }
  }
}

TEST(Rank, SpecExamples) {
  EXPECT_EQ(linear_rank(braid()), 3);
  EXPECT_EQ(projective_rank(braid()), 2);
  EXPECT_EQ(linear_rank(from_int_normals({{1, 2, 3}})), 1);
  EXPECT_EQ(linear_rank(gdd4(2).arrangement), 4);
}

TEST(Essential, SpecExamples) {
  EXPECT_FALSE(is_essential(braid()));
  EXPECT_TRUE(is_essential(gdd4(2).arrangement));
  EXPECT_TRUE(is_essential(from_int_normals({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})));
}

TEST(EssentialPoints, SpecExamples) {
  const auto arr = gdd4(2).arrangement;
  const auto pts = essential_points(arr);
  EXPECT_GE(pts.size(), 2u);
  const Vec p = V({0, 0, 1, 1}, 2);
  auto it = std::find_if(pts.begin(), pts.end(), [&](const EssentialPoint& e) { return e.point == p; });
  ASSERT_NE(it, pts.end());
  std::vector<int> expect{*arr.index_of(V({1, -1, 0, 0}, 2)), *arr.index_of(V({1, 1, 0, 0}, 2)),
                          *arr.index_of(V({0, 0, 1, -1}, 2))};
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(it->flat.members, expect);
  EXPECT_EQ(projective_rank(arr, it->flat.members), 2);
  for (int i : it->flat.members) EXPECT_TRUE(arr.hyperplanes[i].contains_point(p));

  const auto simplex = from_int_normals({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto sp = essential_points(simplex);
  ASSERT_EQ(sp.size(), 3u);
  EXPECT_TRUE(std::any_of(sp.begin(), sp.end(), [](const EssentialPoint& e) { return e.point == V({1, 0, 0}); }));
  EXPECT_THROW(essential_points(braid()), ArrangementError);
}

TEST(EssentialPoints, AtLeastTwoForExampleFamilies) {
  EXPECT_GE(essential_points(hesse().arrangement).size(), 2u);
  for (int m = 2; m <= 4; ++m) EXPECT_GE(essential_points(fermat(m).arrangement).size(), 2u);
  for (int d = 2; d <= 3; ++d) EXPECT_GE(essential_points(gdd4(d).arrangement).size(), 2u);
}

TEST(MultinetCheck, BraidFamily) {
  const auto rep = multinet_check(gdd4(1).arrangement);
  EXPECT_TRUE(rep.passes);
  EXPECT_EQ(rep.class_degrees, (std::vector<int>{2, 2, 2}));
  EXPECT_TRUE(rep.is_net);
  // triple points x_a = x_b = x_c, one member per class
  EXPECT_EQ(rep.base_flats.size(), 4u);
  for (const auto& fb : rep.base_flats) EXPECT_EQ(fb.class_sums, (std::vector<int>{1, 1, 1}));
}

TEST(MultinetCheck, HesseIsAFourThreeNet) {
  const auto rep = multinet_check(hesse().arrangement);
  EXPECT_TRUE(rep.passes);
  EXPECT_TRUE(rep.is_net);
  EXPECT_EQ(rep.k, 4);
  EXPECT_EQ(rep.class_degrees, (std::vector<int>{3, 3, 3, 3}));
  EXPECT_EQ(rep.base_flats.size(), 9u);
  for (const auto& fb : rep.base_flats) EXPECT_EQ(fb.class_sums, (std::vector<int>{1, 1, 1, 1}));
}

TEST(MultinetCheck, FermatThreeWithDoubleCoordinates) {
  const auto arr = fermat(3).arrangement;
  const auto rep = multinet_check(arr);
  EXPECT_TRUE(rep.passes);
  EXPECT_FALSE(rep.is_net);
  EXPECT_EQ(rep.class_degrees, (std::vector<int>{4, 4, 4}));
  // hand count at [0:0:1]: x (2), y (2), x - y and x + y (1 + 1)
  const Vec p = V({0, 0, 1}, 2);
  std::vector<int> sums(3, 0);
  for (const auto& h : arr.hyperplanes)
    if (h.contains_point(p)) sums[*h.cls] += h.mult;
  EXPECT_EQ(sums, (std::vector<int>{2, 2, 2}));
  bool found = false;
  for (const auto& fb : rep.base_flats)
    if (std::all_of(fb.flat.members.begin(), fb.flat.members.end(),
                    [&](int i) { return arr.hyperplanes[i].contains_point(p); }) &&
        fb.flat.members.size() == 4) {
      found = true;
      EXPECT_EQ(fb.class_sums, sums);
    }
  EXPECT_TRUE(found);
}

TEST(MultinetCheck, ReportsViolations) {
  auto arr = gdd4(1).arrangement;
  arr.hyperplanes[0].mult = 2;
  const auto rep = multinet_check(arr);
  EXPECT_FALSE(rep.passes);
  EXPECT_FALSE(rep.degrees_balanced);
  EXPECT_EQ(rep.violations.size(), 2u);  // the two triple points through hyperplane 0
  EXPECT_THROW(multinet_check(braid()), ArrangementError);
}

TEST(MultinetCheck, PlaneSectionAgrees) {
  for (int d = 1; d <= 3; ++d) {
    const auto arr = gdd4(d).arrangement;
    auto sec = generic_plane_section(arr, 5);
    ASSERT_TRUE(sec);
    EXPECT_EQ(sec->nvars, 3);
    EXPECT_EQ(multinet_check(*sec).passes, multinet_check(arr).passes);
    auto bad = arr;
    bad.hyperplanes[0].mult = 2;
    auto bad_sec = generic_plane_section(bad, 5);
    ASSERT_TRUE(bad_sec);
    EXPECT_FALSE(multinet_check(*bad_sec).passes);
  }
}

// Latin square oracle: direct point incidence using explicit intersection points in P^3.
TEST(LatinSquare, BraidFamilyIsZ2) {
  const auto sq = latin_square(gdd4(1).arrangement);
  EXPECT_EQ(sq.order, 2);
  EXPECT_TRUE(sq.is_latin());
  EXPECT_TRUE(is_isotopic(sq, cyclic_table(2)));
}

TEST(LatinSquare, Gdd4TwoAndThree) {
  const auto s2 = latin_square(gdd4(2).arrangement);
  EXPECT_EQ(s2.order, 4);
  EXPECT_TRUE(isotopy_to_group_table(s2, {GroupSpec::Dihedral, 2}));
  EXPECT_FALSE(isotopy_to_group_table(s2, {GroupSpec::Cyclic, 4}));
  const auto s3 = latin_square(gdd4(3).arrangement);
  EXPECT_EQ(s3.order, 6);
  EXPECT_TRUE(isotopy_to_group_table(s3, {GroupSpec::Dihedral, 3}));
  EXPECT_FALSE(isotopy_to_group_table(s3, {GroupSpec::Cyclic, 6}));
  EXPECT_THROW(isotopy_to_group_table(s3, {GroupSpec::Cyclic, 5}), ArrangementError);
}

TEST(LatinSquare, EntriesMatchIncidenceOracle) {
  for (int d = 1; d <= 4; ++d) {
    const auto arr = gdd4(d).arrangement;
    const auto sq = latin_square(arr);
    const auto a = arr.class_members(0), b = arr.class_members(1), c = arr.class_members(2);
    for (int i = 0; i < sq.order; ++i)
      for (int j = 0; j < sq.order; ++j) {
        // the class-2 hyperplane whose normal is a combination of the two: rank of the triple is 2
        std::vector<int> hits;
        for (int s = 0; s < sq.order; ++s)
          if (linear_rank(arr, {a[i], b[j], c[s]}) == 2) hits.push_back(s);
        ASSERT_EQ(hits.size(), 1u);
        EXPECT_EQ(sq.cells[i][j], hits[0]);
      }
    // exhaustive Latin property
    for (int i = 0; i < sq.order; ++i) {
      std::set<int> row(sq.cells[i].begin(), sq.cells[i].end()), col;
      for (int j = 0; j < sq.order; ++j) col.insert(sq.cells[j][i]);
      EXPECT_EQ(static_cast<int>(row.size()), sq.order);
      EXPECT_EQ(static_cast<int>(col.size()), sq.order);
    }
  }
}

TEST(LatinSquare, RejectsNonNets) {
  EXPECT_THROW(latin_square(hesse().arrangement), NotANet);
  EXPECT_THROW(latin_square(fermat(3).arrangement), NotANet);
}

TEST(GroupTables, DihedralIsAGroup) {
  for (int d = 1; d <= 5; ++d) {
    const auto t = dihedral_table(d);
    EXPECT_TRUE(t.is_latin());
    for (int x = 0; x < t.order; ++x)
      for (int y = 0; y < t.order; ++y)
        for (int z = 0; z < t.order; ++z) ASSERT_EQ(t.cells[t.cells[x][y]][z], t.cells[x][t.cells[y][z]]);
    EXPECT_EQ(t.is_commutative(), d <= 2);
  }
}

LatinSquare shuffle(const LatinSquare& sq, std::mt19937_64& rng) {
  std::vector<int> r(sq.order), c(sq.order), s(sq.order);
  std::iota(r.begin(), r.end(), 0);
  c = s = r;
  std::shuffle(r.begin(), r.end(), rng);
  std::shuffle(c.begin(), c.end(), rng);
  std::shuffle(s.begin(), s.end(), rng);
  LatinSquare out{sq.order, std::vector<std::vector<int>>(sq.order, std::vector<int>(sq.order))};
  for (int i = 0; i < sq.order; ++i)
    for (int j = 0; j < sq.order; ++j) out.cells[r[i]][c[j]] = s[sq.cells[i][j]];
  return out;
}

TEST(Isotopy, RandomIsotopesAreDetected) {
  std::mt19937_64 rng(107);
  for (int q = 1; q <= 8; ++q) {
    const auto cyc = cyclic_table(q);
    EXPECT_TRUE(is_isotopic(cyc, cyc));
    EXPECT_TRUE(is_isotopic(shuffle(cyc, rng), cyc));
    if (q % 2 == 0) {
      const auto dih = dihedral_table(q / 2);
      EXPECT_TRUE(is_isotopic(shuffle(dih, rng), dih));
      // groups are isotopic only when isomorphic; D_1 = Z_2 is the one coincidence here
      EXPECT_EQ(is_isotopic(shuffle(dih, rng), cyc), q == 2);
    }
  }
}

TEST(Search, BraidFamilyFindsTheKnownPartition) {
  auto arr = gdd4(1).arrangement;
  std::vector<int> known;
  for (auto& h : arr.hyperplanes) {
    known.push_back(*h.cls);
    h.cls.reset();
  }
  const auto hits = search_multinets(arr, 3, 1);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].classes, known);
  EXPECT_EQ(hits[0].mults, std::vector<int>(6, 1));
}

TEST(Search, GenericLinesHaveNone) { EXPECT_TRUE(search_multinets(generic_lines(), 3, 2).empty()); }

TEST(Search, HesseFindsTheNet) {
  const auto arr = hesse().arrangement;
  const auto hits = search_multinets(arr, 4, 1);
  ASSERT_EQ(hits.size(), 1u);
  for (std::size_t i = 0; i < arr.size(); ++i)
    for (std::size_t j = 0; j < arr.size(); ++j)
      EXPECT_EQ(hits[0].classes[i] == hits[0].classes[j], arr.hyperplanes[i].cls == arr.hyperplanes[j].cls);
}

TEST(Search, RoundTripThroughMultinetCheck) {
  for (const auto& arr : {gdd4(1).arrangement, fermat(2).arrangement, fermat(3).arrangement}) {
    const auto hits = search_multinets(arr, 3, 2);
    EXPECT_FALSE(hits.empty());
    for (const auto& h : hits) EXPECT_TRUE(multinet_check(h.apply(arr)).passes);
  }
}

TEST(Search, FermatThreeNeedsMultiplicityTwo) {
  const auto arr = fermat(3).arrangement;
  EXPECT_TRUE(search_multinets(arr, 3, 1).empty());
  const auto hits = search_multinets(arr, 3, 2);
  ASSERT_EQ(hits.size(), 1u);
  for (std::size_t i = 0; i < arr.size(); ++i) EXPECT_EQ(hits[0].mults[i], arr.hyperplanes[i].mult);
}

TEST(Search, CapAndArguments) {
  EXPECT_THROW(search_multinets(gdd4(3).arrangement, 3, 1), SearchCapExceeded);
  EXPECT_THROW(search_multinets(generic_lines(), 2, 1), ArrangementError);
}

TEST(ExampleFamilies, HyperplaneCounts) {
  for (int d = 1; d <= 4; ++d) EXPECT_EQ(gdd4(d).arrangement.size(), static_cast<std::size_t>(6 * d));
  EXPECT_EQ(hesse().arrangement.size(), 12u);
  for (int m = 2; m <= 5; ++m) EXPECT_EQ(fermat(m).arrangement.size(), static_cast<std::size_t>(3 * m));
}

}  // namespace
}  // namespace crpencil
