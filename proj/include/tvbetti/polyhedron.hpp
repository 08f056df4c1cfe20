#pragma once

// sigma-polyhedra conv(Q) + sigma, handled through their homogenization
// cone(Q x {1} u sigma x {0}) in one more dimension.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tvbetti/cone.hpp"

namespace tvb {

/// One face of a polyhedron or cone. dim is -1 for the empty face.
struct FaceRecord {
  std::size_t face_id = 0;
  int dim = -1;
  std::vector<std::size_t> parent_ids;  // faces covering this one
  std::vector<std::size_t> vertex_ids;  // indices into vertices()
  std::vector<std::size_t> ray_ids;     // indices into tail().rays()
  bool bounded = true;
};

class Polyhedron {
 public:
  /// conv(points) + tail. The tail must be strongly convex.
  static Polyhedron minkowski_sum(std::span<const Vector> points, const Cone& tail) {
    if (points.empty())
      throw Error(ErrorCategory::Precondition, "a sigma-polyhedron needs a non-empty finite point set");
    if (!tail.strongly_convex())
      throw Error(ErrorCategory::Precondition, "the tail of a polyhedron must be strongly convex");
    const std::size_t n = tail.ambient_rank();
    std::vector<Vector> gens;
    for (const auto& p : points) {
      if (p.size() != n) throw Error(ErrorCategory::Precondition, "point has the wrong ambient rank");
      gens.push_back(p.extended(1));
    }
    for (const auto& r : tail.rays()) gens.push_back(r.extended(0));
    return from_homogenization(Cone::from_generators(std::span<const Vector>(gens), n + 1));
  }

  static Polyhedron minkowski_sum(std::initializer_list<Vector> points, const Cone& tail) {
    std::vector<Vector> p(points);
    return minkowski_sum(std::span<const Vector>(p), tail);
  }

  /// The cone viewed as a polyhedron with apex vertex 0.
  static Polyhedron from_cone(const Cone& c) {
    std::vector<Vector> origin{Vector(c.ambient_rank())};
    return minkowski_sum(std::span<const Vector>(origin), c);
  }

  /// Builds a polyhedron from its homogenization; nullopt when the cone has
  /// no point at height 1 (the polyhedron is empty).
  static std::optional<Polyhedron> try_from_homogenization(const Cone& hom) {
    const std::size_t n = hom.ambient_rank() - 1;
    if (!hom.strongly_convex())
      throw Error(ErrorCategory::Precondition, "homogenization of a polyhedron must be pointed");
    std::vector<Vector> verts, tail_rays;
    for (const auto& r : hom.rays()) {
      const int s = sgn(r[n]);
      if (s < 0) throw Error(ErrorCategory::Precondition, "homogenization reaches negative height");
      if (s == 0) tail_rays.push_back(r.head(n));
      else verts.push_back(Rational(1 / r[n]) * r.head(n));
    }
    if (verts.empty()) return std::nullopt;
    Polyhedron p;
    p.vertices_ = std::move(verts);
    std::sort(p.vertices_.begin(), p.vertices_.end());
    p.tail_ = Cone::from_generators(std::span<const Vector>(tail_rays), n);
    p.hom_ = hom;
    return p;
  }

  static Polyhedron from_homogenization(const Cone& hom) {
    auto p = try_from_homogenization(hom);
    if (!p) throw Error(ErrorCategory::Precondition, "empty polyhedron");
    return *p;
  }

  std::size_t ambient_rank() const noexcept { return tail_.ambient_rank(); }
  const std::vector<Vector>& vertices() const noexcept { return vertices_; }
  const Cone& tail() const noexcept { return tail_; }
  const Cone& homogenization() const noexcept { return hom_; }
  int dim() const noexcept { return static_cast<int>(hom_.dim()) - 1; }
  bool bounded() const noexcept { return tail_.is_zero(); }

  bool contains(const Vector& x) const { return hom_.contains(x.extended(1)); }

  bool is_vertex(const Vector& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
  }

  /// A point in the relative interior (barycenter of vertices plus tail rays).
  Vector relative_interior_point() const {
    Vector s(ambient_rank());
    for (const auto& v : vertices_) s = s + v;
    s = Rational(Rational(1) / static_cast<long>(vertices_.size())) * s;
    for (const auto& r : tail_.rays()) s = s + r;
    return s;
  }

  /// min over the polyhedron of <m, .>; m must lie in the dual of the tail.
  Rational min_pairing(const Vector& m) const {
    for (const auto& r : tail_.rays())
      if (sgn(dot(m, r)) < 0)
        throw Error(ErrorCategory::Precondition, "linear form is unbounded below on the polyhedron");
    Rational best = dot(m, vertices_.front());
    for (const auto& v : vertices_) best = std::min(best, Rational(dot(m, v)));
    return best;
  }

  /// Translation by a vector.
  Polyhedron translated(const Vector& t) const {
    std::vector<Vector> pts;
    for (const auto& v : vertices_) pts.push_back(v + t);
    return minkowski_sum(std::span<const Vector>(pts), tail_);
  }

  friend std::optional<Polyhedron> intersect(const Polyhedron& a, const Polyhedron& b) {
    return try_from_homogenization(intersect(a.hom_, b.hom_));
  }

  friend Polyhedron minkowski_add(const Polyhedron& a, const Polyhedron& b) {
    std::vector<Vector> pts;
    for (const auto& u : a.vertices_)
      for (const auto& v : b.vertices_) pts.push_back(u + v);
    std::vector<Vector> tail_gens = a.tail_.rays();
    tail_gens.insert(tail_gens.end(), b.tail_.rays().begin(), b.tail_.rays().end());
    return minkowski_sum(std::span<const Vector>(pts),
                         Cone::from_generators(std::span<const Vector>(tail_gens), a.ambient_rank()));
  }

  /// All faces including the empty face and the polyhedron itself, graded by
  /// dimension, with covering relations.
  std::vector<FaceRecord> face_lattice() const {
    const std::size_t n = ambient_rank();
    std::vector<FaceRecord> out;
    FaceRecord empty;
    empty.dim = -1;
    out.push_back(empty);
    for (const auto& f : hom_.faces()) {
      FaceRecord rec;
      for (auto j : f.ray_ids) {
        const Vector& r = hom_.rays()[j];
        if (sgn(r[n]) == 0) rec.ray_ids.push_back(tail_index(r.head(n)));
        else rec.vertex_ids.push_back(vertex_index(Rational(1 / r[n]) * r.head(n)));
      }
      if (rec.vertex_ids.empty()) continue;  // faces at infinity and the apex
      std::sort(rec.vertex_ids.begin(), rec.vertex_ids.end());
      std::sort(rec.ray_ids.begin(), rec.ray_ids.end());
      rec.dim = static_cast<int>(f.dim) - 1;
      rec.bounded = rec.ray_ids.empty();
      out.push_back(std::move(rec));
    }
    std::stable_sort(out.begin(), out.end(), [](const FaceRecord& a, const FaceRecord& b) {
      if (a.dim != b.dim) return a.dim < b.dim;
      if (a.vertex_ids != b.vertex_ids) return a.vertex_ids < b.vertex_ids;
      return a.ray_ids < b.ray_ids;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].face_id = i;
    auto contained = [](const FaceRecord& a, const FaceRecord& b) {
      return std::includes(b.vertex_ids.begin(), b.vertex_ids.end(), a.vertex_ids.begin(),
                           a.vertex_ids.end()) &&
             std::includes(b.ray_ids.begin(), b.ray_ids.end(), a.ray_ids.begin(), a.ray_ids.end());
    };
    for (auto& a : out)
      for (const auto& b : out)
        if (b.dim == a.dim + 1 && contained(a, b)) a.parent_ids.push_back(b.face_id);
    return out;
  }

  /// The face described by a record (not the empty face).
  Polyhedron face(const FaceRecord& rec) const {
    std::vector<Vector> pts, rays;
    for (auto i : rec.vertex_ids) pts.push_back(vertices_[i]);
    for (auto j : rec.ray_ids) rays.push_back(tail_.rays()[j]);
    return minkowski_sum(std::span<const Vector>(pts),
                         Cone::from_generators(std::span<const Vector>(rays), ambient_rank()));
  }

  /// All non-empty faces as polyhedra.
  std::vector<Polyhedron> nonempty_faces() const {
    std::vector<Polyhedron> out;
    for (const auto& rec : face_lattice())
      if (rec.dim >= 0) out.push_back(face(rec));
    return out;
  }

  bool is_face_of(const Polyhedron& other) const {
    if (!other.hom_.contains(hom_)) return false;
    return other.hom_.smallest_face_containing(hom_.relative_interior_point()) == hom_;
  }

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) { return a.hom_ == b.hom_; }
  friend bool operator!=(const Polyhedron& a, const Polyhedron& b) { return !(a == b); }
  friend bool operator<(const Polyhedron& a, const Polyhedron& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    if (a.vertices_ != b.vertices_) return a.vertices_ < b.vertices_;
    return a.tail_.rays() < b.tail_.rays();
  }

 private:
  Polyhedron() = default;

  std::size_t vertex_index(const Vector& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    return static_cast<std::size_t>(it - vertices_.begin());
  }
  std::size_t tail_index(const Vector& r) const {
    const auto& rs = tail_.rays();
    auto it = std::lower_bound(rs.begin(), rs.end(), r);
    return static_cast<std::size_t>(it - rs.begin());
  }

  std::vector<Vector> vertices_;
  Cone tail_;
  Cone hom_;
};

inline std::string to_string(const Polyhedron& p) {
  std::string s = "conv{";
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    if (i) s += ",";
    s += to_string(p.vertices()[i]);
  }
  s += "}";
  if (!p.tail().is_zero()) s += " + " + to_string(p.tail());
  return s;
}

inline Polyhedron minkowski_sum(std::span<const Vector> q, const Cone& sigma) {
  return Polyhedron::minkowski_sum(q, sigma);
}

enum class CommonFaceKind { Disjoint, CommonFace, Violation };

struct CommonFaceVerdict {
  CommonFaceKind kind = CommonFaceKind::Disjoint;
  std::optional<Polyhedron> face;  // the intersection, when non-empty
};

/// Decides whether p1 and p2 meet in a common face.
inline CommonFaceVerdict common_face_check(const Polyhedron& p1, const Polyhedron& p2) {
  if (p1.ambient_rank() != p2.ambient_rank())
    throw Error(ErrorCategory::Precondition, "common_face_check on different ambient ranks");
  auto meet = intersect(p1, p2);
  if (!meet) return {CommonFaceKind::Disjoint, std::nullopt};
  const bool ok = meet->is_face_of(p1) && meet->is_face_of(p2);
  return {ok ? CommonFaceKind::CommonFace : CommonFaceKind::Violation, meet};
}

/// The cone of linear forms m in the dual of the tail that are minimized on
/// the whole face f of p: { m : <m, w - u> >= 0 for vertices w of p and u of
/// f, <m, r> = 0 for rays r of the face, m in dual(tail) }.
inline Cone normal_cone(const Polyhedron& p, const Polyhedron& f) {
  const std::size_t n = p.ambient_rank();
  std::vector<Vector> ineqs = p.tail().rays();
  for (const auto& w : p.vertices())
    for (const auto& u : f.vertices())
      if (w != u) ineqs.push_back(w - u);
  std::vector<Vector> eqs = f.tail().rays();
  return Cone::from_inequalities(ineqs, eqs, n);
}

/// The weight cone lambda(v) of a vertex.
inline Cone lambda_cone(const Polyhedron& p, const Vector& v) {
  if (!p.is_vertex(v))
    throw Error(ErrorCategory::Precondition, "lambda_cone: " + to_string(v) + " is not a vertex");
  std::vector<Vector> pt{v};
  return normal_cone(p, Polyhedron::minkowski_sum(std::span<const Vector>(pt), Cone(p.ambient_rank())));
}

}  // namespace tvb
