#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "crpencil/examples.hpp"
#include "crpencil/resonance.hpp"
#include "test_support.hpp"

namespace crpencil {
namespace {

using crpencil::testing::random_scalar;

Vec V(std::vector<int> xs, int order = 1) {
  Vec v;
  for (int x : xs) v.push_back(embed(x, order));
  return v;
}

Arrangement from_int_normals(const std::vector<std::vector<int>>& ns) {
  std::vector<Hyperplane> hs;
  for (const auto& n : ns) hs.emplace_back(V(n));
  return Arrangement(static_cast<int>(ns[0].size()), 1, std::move(hs));
}

Arrangement random_arrangement(std::mt19937_64& rng, int count, int nvars) {
  std::uniform_int_distribution<int> d(-1, 1);
  std::vector<std::vector<int>> ns;
  std::set<Vec> seen;
  while (static_cast<int>(ns.size()) < count) {
    std::vector<int> v(nvars);
    for (auto& x : v) x = d(rng);
    if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
    if (seen.insert(normalize_projective(V(v))).second) ns.push_back(v);
  }
  return from_int_normals(ns);
}

std::vector<CycloElem> random_a1(std::mt19937_64& rng, int m, int order = 1) {
  std::vector<CycloElem> v;
  for (int i = 0; i < m; ++i) v.push_back(random_scalar(rng, order));
  return v;
}

const Arrangement kConcurrent = from_int_normals({{1, 0, 0}, {0, 1, 0}, {1, -1, 0}});
const Arrangement kGeneric = from_int_normals({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});

TEST(OS2, SpecExamples) {
  const auto c = build_os2(kConcurrent);
  EXPECT_EQ(c.num_pairs(), 3u);
  EXPECT_EQ(c.relation_rows, 1u);
  EXPECT_EQ(c.a2_dim, 2);
  const auto g = build_os2(kGeneric);
  EXPECT_EQ(g.relation_rows, 0u);
  EXPECT_EQ(g.a2_dim, 3);
  EXPECT_THROW(build_os2(from_int_normals({{1, 0, 0}})), ResonanceError);
}

TEST(OS2, PairIndexIsABijection) {
  const auto os = build_os2(gdd4(1).arrangement);
  std::set<std::size_t> seen;
  for (int i = 0; i < os.m; ++i)
    for (int j = i + 1; j < os.m; ++j) {
      const auto k = os.pair_index(i, j);
      EXPECT_LT(k, os.num_pairs());
      EXPECT_EQ(os.pair_index(j, i), k);
      seen.insert(k);
    }
  EXPECT_EQ(seen.size(), os.num_pairs());
}

TEST(OS2, DimensionMatchesLatticeFormula) {
  for (const auto& arr : {hesse().arrangement, gdd4(1).arrangement, gdd4(2).arrangement, fermat(3).arrangement})
    EXPECT_EQ(build_os2(arr).a2_dim, build_os2(arr).lattice_dim);
  std::mt19937_64 rng(401);
  for (int t = 0; t < 20; ++t) {
    const auto os = build_os2(random_arrangement(rng, 5 + t % 4, 3 + t % 2));
    EXPECT_EQ(os.a2_dim, os.lattice_dim);
  }
}

TEST(Multiply, BilinearAndAntisymmetric) {
  std::mt19937_64 rng(403);
  for (const auto& arr : {gdd4(1).arrangement, hesse().arrangement}) {
    const auto os = build_os2(arr);
    for (int t = 0; t < 5; ++t) {
      const auto a = random_a1(rng, os.m, os.order()), b = random_a1(rng, os.m, os.order()),
                 c = random_a1(rng, os.m, os.order());
      const CycloElem s = random_scalar(rng, os.order());
      std::vector<CycloElem> sa_plus_b(os.m, os.zero()), sum(os.num_pairs(), os.zero());
      for (int i = 0; i < os.m; ++i) sa_plus_b[i] = s * a[i] + b[i];
      const auto ac = multiply(os, a, c), bc = multiply(os, b, c), lhs = multiply(os, sa_plus_b, c);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = s * ac[i] + bc[i];
      EXPECT_EQ(lhs, os.reduce(sum));
      const auto ca = multiply(os, c, a);
      for (std::size_t i = 0; i < ca.size(); ++i) EXPECT_EQ(ca[i], -ac[i]);
      EXPECT_TRUE(is_zero_vector(multiply(os, a, a)));
    }
  }
}

TEST(Membership, ConcurrentLines) {
  const auto os = build_os2(kConcurrent);
  const auto yes = resonance_membership(os, V({1, -1, 0}));
  EXPECT_TRUE(yes.in_r1);
  EXPECT_EQ(yes.kernel.size(), 2u);
  EXPECT_TRUE(resonance_membership(os, V({2, 1, -3})).in_r1);
  const auto no = resonance_membership(os, V({1, 1, 1}));
  EXPECT_FALSE(no.in_r1);
  EXPECT_EQ(no.kernel.size(), 1u);
  EXPECT_THROW(resonance_membership(os, V({0, 0, 0})), ResonanceError);
  EXPECT_THROW(resonance_membership(os, V({1, 0})), ResonanceError);
}

TEST(Membership, GenericLinesHaveNoResonance) {
  const auto os = build_os2(kGeneric);
  std::mt19937_64 rng(405);
  for (int t = 0; t < 10; ++t) {
    auto a = random_a1(rng, 3);
    if (is_zero_vector(a)) continue;
    EXPECT_FALSE(resonance_membership(os, a).in_r1);
  }
  EXPECT_TRUE(local_components(os).empty());
}

TEST(LocalComponents, Counts) {
  const auto c = local_components(build_os2(kConcurrent));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].dim(), 2);
  EXPECT_TRUE(c[0].isotropic && c[0].resonant && c[0].sums_vanish && c[0].independent);
  // the Hesse arrangement has nine quadruple points and no triple points
  const auto h = local_components(build_os2(hesse().arrangement));
  EXPECT_EQ(h.size(), 9u);
  for (const auto& x : h) EXPECT_EQ(x.dim(), 3);
  // braid arrangement: four triple points
  EXPECT_EQ(local_components(build_os2(gdd4(1).arrangement)).size(), 4u);
}

TEST(LocalComponents, CertifiedOnRandomArrangements) {
  std::mt19937_64 rng(407);
  for (int t = 0; t < 10; ++t) {
    const auto os = build_os2(random_arrangement(rng, 6, 3));
    for (const auto& c : local_components(os)) {
      EXPECT_TRUE(c.independent && c.isotropic && c.resonant && c.sums_vanish);
      EXPECT_EQ(c.dim() + 1, static_cast<int>(c.flat_members.size()));
      EXPECT_TRUE(component_maximality(os, c, 2, t).maximal);
    }
  }
}

TEST(PencilComponent, ExampleFamilies) {
  struct Case {
    ExampleBundle b;
    int dim;
  };
  for (const auto& [b, dim] : {Case{hesse(), 3}, Case{gdd4(1), 2}, Case{gdd4(2), 2}, Case{fermat(3), 2}}) {
    const auto os = build_os2(b.arrangement);
    const auto c = pencil_component(os, *b.fibers);
    EXPECT_EQ(c.dim(), dim);
    EXPECT_TRUE(c.independent && c.isotropic && c.resonant && c.sums_vanish);
    EXPECT_TRUE(component_maximality(os, c).maximal);
    EXPECT_FALSE(dimension_bound_check(b.arrangement, c).alarm);
    EXPECT_TRUE(fiber_count_identity(*b.fibers, c).holds);
  }
}

TEST(PencilComponent, FermatWeightsAreMultiplicities) {
  const auto b = fermat(3);
  const auto os = build_os2(b.arrangement);
  const auto c = pencil_component(os, *b.fibers);
  const int x = *b.arrangement.index_of(V({1, 0, 0}, 2));
  const int z = *b.arrangement.index_of(V({0, 0, 1}, 2));
  EXPECT_EQ(c.basis[0][x], embed(2, 2));
  EXPECT_EQ(c.basis[0][z], embed(-2, 2));
}

TEST(PencilComponent, Mismatch) {
  const auto b = gdd4(2);
  EXPECT_THROW(pencil_component(build_os2(gdd4(1).arrangement), *b.fibers), ResonanceError);
  EXPECT_THROW(pencil_component(build_os2(hesse().arrangement), *b.fibers), ResonanceError);
}

TEST(Maximality, TruncatedComponentIsNotMaximal) {
  const auto b = hesse();
  const auto os = build_os2(b.arrangement);
  auto c = pencil_component(os, *b.fibers);
  c.basis.pop_back();
  const auto r = component_maximality(os, c);
  EXPECT_FALSE(r.maximal);
  for (int k : r.kernel_dims) EXPECT_EQ(k, 3);
}

TEST(DimensionBound, Clauses) {
  const auto b = hesse();
  const auto os = build_os2(b.arrangement);
  const auto c = pencil_component(os, *b.fibers);
  const auto r = dimension_bound_check(b.arrangement, c);
  EXPECT_EQ(r.projective_dim, 2);
  EXPECT_EQ(r.support_rank, 2);
  EXPECT_EQ(r.support.size(), 12u);
  EXPECT_TRUE(r.clauses[1].applies);
  const auto loc = local_components(os);
  const auto rl = dimension_bound_check(b.arrangement, loc[0]);
  EXPECT_EQ(rl.support_rank, 1);
  EXPECT_FALSE(rl.alarm);
}

}  // namespace
}  // namespace crpencil
