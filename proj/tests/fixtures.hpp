#pragma once

// Named fans and random fan generators shared by the test binaries.

#include <random>
#include <vector>

#include "tvbetti/fan.hpp"
#include "tvbetti/polyhedron.hpp"

namespace fixtures {

using tvb::Cone;
using tvb::Fan;
using tvb::Rational;
using tvb::Vector;

inline Cone cone(std::initializer_list<Vector> gens, std::size_t n) { return Cone::from_generators(gens, n); }

inline Fan p1_fan() { return Fan::build({cone({Vector{1}}, 1), cone({Vector{-1}}, 1)}, 1); }

inline Fan p2_fan() {
  return Fan::build({cone({Vector{1, 0}, Vector{0, 1}}, 2), cone({Vector{0, 1}, Vector{-1, -1}}, 2),
                     cone({Vector{-1, -1}, Vector{1, 0}}, 2)},
                    2);
}

inline Fan p1xp1_fan() {
  return Fan::build({cone({Vector{1, 0}, Vector{0, 1}}, 2), cone({Vector{0, 1}, Vector{-1, 0}}, 2),
                     cone({Vector{-1, 0}, Vector{0, -1}}, 2), cone({Vector{0, -1}, Vector{1, 0}}, 2)},
                    2);
}

/// Hirzebruch surface F_a: rays (1,0),(0,1),(-1,a),(0,-1).
inline Fan hirzebruch_fan(int a) {
  const Vector u{1, 0}, v{0, 1}, w{-1, a}, z{0, -1};
  return Fan::build({cone({u, v}, 2), cone({v, w}, 2), cone({w, z}, 2), cone({z, u}, 2)}, 2);
}

/// Face fan of a polytope containing the origin in its interior.
inline Fan face_fan(const std::vector<Vector>& pts, std::size_t n) {
  const auto p = tvb::Polyhedron::minkowski_sum(pts, Cone(n));
  std::vector<Cone> cones;
  for (const auto& rec : p.face_lattice()) {
    if (rec.dim != static_cast<int>(n) - 1) continue;
    std::vector<Vector> gens;
    for (auto i : rec.vertex_ids) gens.push_back(p.vertices()[i]);
    cones.push_back(Cone::from_generators(gens, n));
  }
  return Fan::build(cones, n);
}

/// The octants: fan of (P^1)^3, normal fan of the cube.
inline Fan octant_fan() {
  std::vector<Vector> pts;
  for (int i = 0; i < 3; ++i)
    for (int s : {1, -1}) {
      std::vector<Rational> xs(3);
      xs[i] = s;
      pts.emplace_back(xs);
    }
  return face_fan(pts, 3);
}

/// Face fan of the square pyramid; its cone poset is the pyramid's own.
inline Fan pyramid_fan() {
  return face_fan({{1, 1, -1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, -1}, {0, 0, 1}}, 3);
}

/// Face fan of the cube: six non-simplicial cones over squares.
inline Fan cube_face_fan() {
  std::vector<Vector> pts;
  for (int a : {1, -1})
    for (int b : {1, -1})
      for (int c : {1, -1}) pts.push_back(Vector{a, b, c});
  return face_fan(pts, 3);
}

/// Random complete simplicial fan of rank n in {1,2,3}: the face fan of a
/// random simplicial polytope with the origin in its interior.
inline Fan random_complete_simplicial_fan(std::mt19937& rng, std::size_t n) {
  if (n == 1) return p1_fan();
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> count(static_cast<int>(n) + 1, static_cast<int>(n) + 5);
  for (;;) {
    std::vector<Vector> pts;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      std::vector<Rational> xs;
      for (std::size_t j = 0; j < n; ++j) xs.emplace_back(coord(rng));
      Vector v(xs);
      if (!v.is_zero()) pts.push_back(v);
    }
    if (pts.size() <= n) continue;
    const auto p = tvb::Polyhedron::minkowski_sum(pts, Cone(n));
    if (p.dim() != static_cast<int>(n)) continue;
    if (!p.homogenization().in_relative_interior(Vector(n).extended(1))) continue;
    bool simplicial = true;
    for (const auto& rec : p.face_lattice())
      if (rec.dim == static_cast<int>(n) - 1 && rec.vertex_ids.size() != n) simplicial = false;
    if (!simplicial) continue;
    return face_fan(p.vertices(), n);
  }
}

inline Fan p3_fan() { return face_fan({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, 3); }

/// Blows up a random cone of a smooth fan at the sum of some of its rays.
inline Fan random_blowup(std::mt19937& rng, const Fan& f) {
  const auto& maxc = f.maximal_cones();
  const Cone& c = maxc[std::uniform_int_distribution<std::size_t>(0, maxc.size() - 1)(rng)];
  std::vector<Vector> rays = c.rays();
  std::shuffle(rays.begin(), rays.end(), rng);
  const std::size_t k = std::uniform_int_distribution<std::size_t>(2, rays.size())(rng);
  Vector s(f.ambient_rank());
  for (std::size_t i = 0; i < k; ++i) s = s + rays[i];
  return tvb::star_subdivide(f, s);
}

/// A random unimodular matrix: a product of elementary operations.
inline tvb::Matrix random_unimodular(std::mt19937& rng, std::size_t n) {
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-1, 1);
  for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
    const std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const int c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) a[i][k] += c * a[j][k];
  }
  std::vector<Vector> rows;
  for (auto& r : a) rows.emplace_back(r);
  return tvb::Matrix(rows, n);
}

/// Applies x -> x A to every ray.
inline Fan transform(const Fan& f, const tvb::Matrix& a) {
  std::vector<Cone> cones;
  for (const auto& c : f.maximal_cones()) {
    std::vector<Vector> gens;
    for (const auto& r : c.rays()) gens.push_back((tvb::Matrix({r}, r.size()) * a).row(0));
    cones.push_back(Cone::from_generators(gens, f.ambient_rank()));
  }
  return Fan::build(cones, f.ambient_rank());
}

/// Random smooth complete fan of rank 2 or 3 by blowing up a standard one.
inline Fan random_smooth_fan(std::mt19937& rng, std::size_t n, int blowups) {
  Fan f = n == 2 ? (rng() % 2 ? p2_fan() : hirzebruch_fan(static_cast<int>(rng() % 3)))
                 : (rng() % 2 ? p3_fan() : octant_fan());
  for (int i = 0; i < blowups; ++i) f = random_blowup(rng, f);
  return transform(f, random_unimodular(rng, n));
}

}  // namespace fixtures
