#include <gtest/gtest.h>

#include <random>

#include "face_compare.hpp"
#include "tvbetti/polyhedron.hpp"

using namespace tvb;

namespace {

Cone cone(std::initializer_list<Vector> gens, std::size_t n) { return Cone::from_generators(gens, n); }

std::set<Vector> as_set(const std::vector<Vector>& v) { return {v.begin(), v.end()}; }

Cone ray1(int s) { return cone({Vector{s}}, 1); }

Polyhedron interval(Rational a, Rational b) {
  return Polyhedron::minkowski_sum({Vector{a}, Vector{b}}, Cone(1));
}

std::map<int, int> face_counts(const Polyhedron& p) {
  std::map<int, int> c;
  for (const auto& f : p.face_lattice()) ++c[f.dim];
  return c;
}

}  // namespace

TEST(Cone, OrthantIsSelfDual) {
  const Cone c = cone({Vector{1, 0}, Vector{0, 1}}, 2);
  EXPECT_EQ(as_set(c.facets()), (std::set<Vector>{{1, 0}, {0, 1}}));
  EXPECT_TRUE(c.strongly_convex());
  EXPECT_EQ(c.dual(), c);
}

TEST(Cone, SkewCone) {
  const Cone c = cone({Vector{1, 0}, Vector{1, 2}}, 2);
  EXPECT_EQ(as_set(c.facets()), (std::set<Vector>{{0, 1}, {2, -1}}));
  EXPECT_TRUE(c.strongly_convex());
  EXPECT_EQ(c.dual(), cone({Vector{0, 1}, Vector{2, -1}}, 2));
}

TEST(Cone, LineIsNotStronglyConvex) {
  const Cone c = cone({Vector{1, 0}, Vector{-1, 0}}, 2);
  EXPECT_FALSE(c.strongly_convex());
  EXPECT_EQ(c.dim(), 1u);
}

TEST(Cone, DualOfZeroIsFullSpace) {
  const Cone z(3);
  const Cone d = z.dual();
  EXPECT_EQ(d, Cone::full_space(3));
  EXPECT_FALSE(d.strongly_convex());
  EXPECT_EQ(d.dim(), 3u);
}

TEST(Cone, RedundantGeneratorsPruned) {
  const Cone c = cone({Vector{1, 0}, Vector{1, 1}, Vector{0, 1}, Vector{2, 2}}, 2);
  EXPECT_EQ(c.rays(), (std::vector<Vector>{{0, 1}, {1, 0}}));
}

TEST(Cone, DoubleDualityRandom) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-3, 3), count(1, 6);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 3;
    std::vector<Vector> gens;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      std::vector<Rational> xs;
      for (std::size_t j = 0; j < n; ++j) xs.emplace_back(entry(rng));
      gens.emplace_back(std::move(xs));
    }
    const Cone c = Cone::from_generators(gens, n);
    EXPECT_EQ(c.dual().dual(), c) << to_string(c);
    for (const auto& g : gens) EXPECT_TRUE(c.contains(g));
    // V and H describe the same set: every generator satisfies every facet.
    for (const auto& f : c.facets())
      for (const auto& r : c.rays()) EXPECT_GE(dot(f, r), 0);
  }
}

TEST(Minkowski, RayFromHalf) {
  const auto p = Polyhedron::minkowski_sum({Vector{Rational(1, 2)}}, ray1(1));
  EXPECT_EQ(p.vertices(), (std::vector<Vector>{{Rational(1, 2)}}));
  EXPECT_EQ(p.tail(), ray1(1));
}

TEST(Minkowski, UnitInterval) {
  const auto p = interval(0, 1);
  EXPECT_EQ(p.vertices(), (std::vector<Vector>{{0}, {1}}));
  EXPECT_TRUE(p.bounded());
}

TEST(Minkowski, OrthantTail) {
  const Cone orth = cone({Vector{1, 0}, Vector{0, 1}}, 2);
  const auto p = Polyhedron::minkowski_sum({Vector{0, 0}, Vector{1, 0}}, orth);
  EXPECT_EQ(p.vertices(), (std::vector<Vector>{{0, 0}}));
  EXPECT_EQ(p.tail(), orth);
}

TEST(Minkowski, EmptyPointSetRejected) {
  std::vector<Vector> none;
  EXPECT_THROW(Polyhedron::minkowski_sum(std::span<const Vector>(none), Cone(1)), Error);
}

TEST(FaceLattice, Interval) {
  const auto faces = interval(0, 1).face_lattice();
  EXPECT_EQ(faces.size(), 4u);
  EXPECT_EQ(faces.front().dim, -1);
  EXPECT_EQ(faces.back().dim, 1);
}

TEST(FaceLattice, HalfLine) {
  const auto p = Polyhedron::minkowski_sum({Vector{Rational(1, 2)}}, ray1(1));
  const auto faces = p.face_lattice();
  ASSERT_EQ(faces.size(), 3u);
  EXPECT_EQ(faces[1].dim, 0);
  EXPECT_EQ(faces[2].dim, 1);
  EXPECT_FALSE(faces[2].bounded);
}

TEST(FaceLattice, Square) {
  const auto p = Polyhedron::minkowski_sum({Vector{0, 0}, Vector{1, 0}, Vector{0, 1}, Vector{1, 1}}, Cone(2));
  EXPECT_EQ(face_counts(p), (std::map<int, int>{{-1, 1}, {0, 4}, {1, 4}, {2, 1}}));
}

TEST(FaceLattice, CoveringRelations) {
  const auto p = Polyhedron::minkowski_sum({Vector{0, 0}, Vector{1, 0}, Vector{0, 1}, Vector{1, 1}}, Cone(2));
  for (const auto& f : p.face_lattice()) {
    if (f.dim == -1) {
      EXPECT_EQ(f.parent_ids.size(), 4u);
    }
    if (f.dim == 0) {
      EXPECT_EQ(f.parent_ids.size(), 2u);
    }
    if (f.dim == 1) {
      EXPECT_EQ(f.parent_ids.size(), 1u);
    }
    if (f.dim == 2) {
      EXPECT_TRUE(f.parent_ids.empty());
    }
  }
}

TEST(FaceLattice, MatchesBruteForceOracle) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> entry(-3, 3), count(2, 7), tail_pick(0, 2);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + trial % 3;
    std::vector<Vector> pts;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      std::vector<Rational> xs;
      for (std::size_t j = 0; j < n; ++j) xs.emplace_back(entry(rng), 1 + (i % 2));
      pts.emplace_back(std::move(xs));
    }
    std::vector<Vector> tail_gens;
    if (tail_pick(rng) == 0) tail_gens.push_back(unit_vector(n, 0));
    if (n > 1 && tail_pick(rng) == 0) tail_gens.push_back(unit_vector(n, 1));
    const auto p = Polyhedron::minkowski_sum(pts, Cone::from_generators(tail_gens, n));
    if (p.dim() != static_cast<int>(n)) continue;  // oracle wants full dimension
    EXPECT_EQ(oracle::kernel_faces(p), oracle::faces(oracle::h_rep(p))) << to_string(p);
    ++checked;
  }
  EXPECT_GT(checked, 40);
}

TEST(FaceLattice, EulerRelationForPolytopes) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    std::vector<Vector> pts;
    for (int i = 0; i < 8; ++i) {
      std::vector<Rational> xs;
      for (std::size_t j = 0; j < n; ++j) xs.emplace_back(entry(rng));
      pts.emplace_back(std::move(xs));
    }
    const auto p = Polyhedron::minkowski_sum(pts, Cone(n));
    int euler = 0;
    for (const auto& [d, c] : face_counts(p)) euler += (d % 2 == 0 ? 1 : -1) * c;
    EXPECT_EQ(euler, 0) << to_string(p);
    std::vector<Vector> zero_faces;
    for (const auto& f : p.face_lattice())
      if (f.dim == 0) zero_faces.push_back(p.vertices()[f.vertex_ids[0]]);
    std::sort(zero_faces.begin(), zero_faces.end());
    EXPECT_EQ(zero_faces, p.vertices());
  }
}

TEST(CommonFace, Examples) {
  const auto up1 = Polyhedron::minkowski_sum({Vector{1}}, ray1(1));
  const auto down1 = Polyhedron::minkowski_sum({Vector{1}}, ray1(-1));
  const auto up0 = Polyhedron::minkowski_sum({Vector{0}}, ray1(1));
  const auto up2 = Polyhedron::minkowski_sum({Vector{2}}, ray1(1));

  auto v = common_face_check(up1, down1);
  EXPECT_EQ(v.kind, CommonFaceKind::CommonFace);
  ASSERT_TRUE(v.face.has_value());
  EXPECT_EQ(v.face->vertices(), (std::vector<Vector>{{1}}));
  EXPECT_TRUE(v.face->bounded());

  EXPECT_EQ(common_face_check(up0, down1).kind, CommonFaceKind::Violation);
  EXPECT_EQ(common_face_check(up2, down1).kind, CommonFaceKind::Disjoint);
}

TEST(Lambda, Examples) {
  const auto half = Polyhedron::minkowski_sum({Vector{Rational(1, 2)}}, ray1(1));
  EXPECT_EQ(lambda_cone(half, Vector{Rational(1, 2)}), ray1(1));
  EXPECT_EQ(lambda_cone(interval(0, 1), Vector{0}), ray1(1));
  const auto pt = Polyhedron::minkowski_sum({Vector{0}}, Cone(1));
  EXPECT_EQ(lambda_cone(pt, Vector{0}), Cone::full_space(1));
  EXPECT_THROW(lambda_cone(interval(0, 1), Vector{Rational(1, 2)}), Error);
}
