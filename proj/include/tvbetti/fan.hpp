#pragma once

// Fans of strongly convex rational cones.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tvbetti/cone.hpp"
#include "tvbetti/face_poset.hpp"

namespace tvb {

class Fan {
 public:
  /// Closes the cones under faces after checking that every pair meets in a
  /// common face. The error names the first offending pair by input index.
  static Fan build(std::span<const Cone> cones, std::size_t ambient_rank) {
    for (std::size_t i = 0; i < cones.size(); ++i) {
      if (cones[i].ambient_rank() != ambient_rank)
        throw Error(ErrorCategory::Precondition, "fan cone " + std::to_string(i) + " has the wrong ambient rank");
      if (!cones[i].strongly_convex())
        throw Error(ErrorCategory::Axiom, "fan cone " + std::to_string(i) + " is not strongly convex");
    }
    auto overlap = [&](std::size_t i, std::size_t j) {
      return Error(ErrorCategory::Axiom, "fan cones " + std::to_string(i) + " and " + std::to_string(j) +
                                             " overlap in a non-face: " + to_string(cones[i]) + " and " +
                                             to_string(cones[j]));
    };
    // A cone inside another must be a face of it, and then meets every other
    // cone properly as soon as its container does; so only the cones not
    // contained in any other need the pairwise check.
    std::vector<std::size_t> top;
    for (std::size_t i = 0; i < cones.size(); ++i) {
      std::size_t container = cones.size();
      for (std::size_t j = 0; j < cones.size() && container == cones.size(); ++j)
        if (j != i && cones[j].contains(cones[i]) && (cones[j] != cones[i] || j < i)) container = j;
      if (container == cones.size()) top.push_back(i);
      else if (!cones[i].is_face_of(cones[container])) throw overlap(std::min(i, container), std::max(i, container));
    }
    for (std::size_t a = 0; a < top.size(); ++a)
      for (std::size_t b = a + 1; b < top.size(); ++b) {
        const Cone& ci = cones[top[a]];
        const Cone& cj = cones[top[b]];
        const Cone meet = intersect(ci, cj);
        if (!meet.is_face_of(ci) || !meet.is_face_of(cj)) throw overlap(top[a], top[b]);
      }
    Fan f;
    f.ambient_ = ambient_rank;
    std::set<Cone> all;
    for (std::size_t i : top)
      for (const auto& face : cones[i].faces()) all.insert(cones[i].face_cone(face));
    if (cones.empty()) all.insert(Cone(ambient_rank));
    f.cones_.assign(all.begin(), all.end());
    f.finish();
    return f;
  }

  static Fan build(std::initializer_list<Cone> cones, std::size_t ambient_rank) {
    std::vector<Cone> c(cones);
    return build(std::span<const Cone>(c), ambient_rank);
  }

  std::size_t ambient_rank() const noexcept { return ambient_; }
  /// Every cone, sorted by dimension then generators; the zero cone is first.
  const std::vector<Cone>& cones() const noexcept { return cones_; }
  const std::vector<Cone>& maximal_cones() const noexcept { return maximal_; }
  /// Primitive ray generators in lexicographic order.
  const std::vector<Vector>& rays() const noexcept { return rays_; }

  /// Indices into rays() of the rays of cone i.
  const std::vector<std::size_t>& ray_ids(std::size_t i) const { return ray_ids_[i]; }

  std::vector<std::size_t> cones_of_dim(std::size_t k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cones_.size(); ++i)
      if (cones_[i].dim() == k) out.push_back(i);
    return out;
  }

  /// Index of a cone equal to c, or size() if c is not in the fan.
  std::size_t index_of(const Cone& c) const {
    auto it = std::lower_bound(cones_.begin(), cones_.end(), c);
    if (it != cones_.end() && *it == c) return static_cast<std::size_t>(it - cones_.begin());
    return cones_.size();
  }

  bool contains_point(const Vector& v) const {
    return std::any_of(maximal_.begin(), maximal_.end(), [&](const Cone& c) { return c.contains(v); });
  }

  /// Non-empty, pure of full dimension, every codimension-one cone in exactly
  /// two maximal cones, and the adjacency graph of maximal cones connected.
  bool is_complete() const {
    if (maximal_.empty()) return false;
    for (const auto& m : maximal_)
      if (m.dim() != ambient_) return false;
    const std::size_t k = maximal_.size();
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& c : cones_) {
      if (c.dim() + 1 != ambient_) continue;
      std::vector<std::size_t> owners;
      for (std::size_t i = 0; i < k; ++i)
        if (maximal_[i].contains(c)) owners.push_back(i);
      if (owners.size() != 2) return false;
      parent[find(owners[0])] = find(owners[1]);
    }
    for (std::size_t i = 0; i < k; ++i)
      if (find(i) != find(0)) return false;
    return true;
  }

  bool is_simplicial() const {
    return std::all_of(maximal_.begin(), maximal_.end(), [](const Cone& c) { return c.is_simplicial(); });
  }

  /// Each cone's primitive generators extend to a lattice basis.
  bool is_smooth() const {
    for (const auto& c : maximal_) {
      if (!c.is_simplicial()) return false;
      if (c.rays().empty()) continue;
      const SmithForm s = smith_normal_form(Matrix(c.rays(), ambient_));
      for (const auto& d : s.diag)
        if (d != 1) return false;
    }
    return true;
  }

  /// The cone poset ordered by inclusion, ranked dim - 1, with a top element
  /// of rank ambient_rank adjoined. For a complete fan this is the face poset
  /// of the polar of any polytope whose normal fan it is.
  FacePoset cone_poset() const {
    const std::size_t n = cones_.size();
    std::vector<int> dims(n + 1);
    std::vector<std::vector<bool>> leq(n + 1, std::vector<bool>(n + 1, false));
    for (std::size_t i = 0; i < n; ++i) {
      dims[i] = static_cast<int>(cones_[i].dim()) - 1;
      for (std::size_t j = 0; j < n; ++j) leq[i][j] = is_subset(ray_ids_[i], ray_ids_[j]);
      leq[i][n] = true;
    }
    dims[n] = static_cast<int>(ambient_);
    leq[n][n] = true;
    return FacePoset(std::move(dims), std::move(leq));
  }

  /// The face poset of a polytope with this normal fan: a cone of dimension k
  /// gives a face of dimension ambient_rank - k, order reversed, plus the
  /// empty face.
  FacePoset dual_face_poset() const {
    if (!is_complete())
      throw Error(ErrorCategory::Precondition, "dual_face_poset needs a complete fan (no dual polytope)");
    return cone_poset().polar();
  }

  friend bool operator==(const Fan& a, const Fan& b) { return a.ambient_ == b.ambient_ && a.cones_ == b.cones_; }
  friend bool operator!=(const Fan& a, const Fan& b) { return !(a == b); }

 private:
  static bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  void finish() {
    std::set<Vector> rays;
    for (const auto& c : cones_)
      if (c.dim() == 1) rays.insert(c.rays()[0]);
    rays_.assign(rays.begin(), rays.end());
    ray_ids_.clear();
    for (const auto& c : cones_) {
      std::vector<std::size_t> ids;
      for (const auto& r : c.rays())
        ids.push_back(static_cast<std::size_t>(std::lower_bound(rays_.begin(), rays_.end(), r) - rays_.begin()));
      std::sort(ids.begin(), ids.end());
      ray_ids_.push_back(std::move(ids));
    }
    maximal_.clear();
    for (std::size_t i = 0; i < cones_.size(); ++i) {
      bool maximal = true;
      for (std::size_t j = 0; j < cones_.size() && maximal; ++j)
        if (j != i && cones_[j].dim() > cones_[i].dim() && is_subset(ray_ids_[i], ray_ids_[j])) maximal = false;
      if (maximal) maximal_.push_back(cones_[i]);
    }
  }

  std::size_t ambient_ = 0;
  std::vector<Cone> cones_;
  std::vector<Cone> maximal_;
  std::vector<Vector> rays_;
  std::vector<std::vector<std::size_t>> ray_ids_;
};

inline Fan build_fan(std::span<const Cone> cones, std::size_t ambient_rank) { return Fan::build(cones, ambient_rank); }

inline std::string to_string(const Fan& f) {
  std::string s = "fan[";
  for (std::size_t i = 0; i < f.maximal_cones().size(); ++i) {
    if (i) s += ", ";
    s += to_string(f.maximal_cones()[i]);
  }
  return s + "]";
}

inline bool is_complete(const Fan& f) { return f.is_complete(); }
inline bool is_simplicial(const Fan& f) { return f.is_simplicial(); }
inline bool is_smooth(const Fan& f) { return f.is_smooth(); }
inline FacePoset dual_face_poset(const Fan& f) { return f.dual_face_poset(); }

/// Star subdivision at a ray: every maximal cone sigma containing the ray is
/// replaced by the cones over its facets that miss the ray, each joined with
/// the ray.
inline Fan star_subdivide(const Fan& f, const Vector& ray) {
  if (ray.size() != f.ambient_rank())
    throw Error(ErrorCategory::Precondition, "star_subdivide: ray has the wrong ambient rank");
  const Vector rho = primitive(ray);
  if (!f.contains_point(rho))
    throw Error(ErrorCategory::Precondition, "star_subdivide: ray " + to_string(rho) + " is outside the support");
  std::vector<Cone> out;
  for (const auto& sigma : f.maximal_cones()) {
    if (!sigma.contains(rho)) {
      out.push_back(sigma);
      continue;
    }
    for (const auto& face : sigma.faces()) {
      if (face.dim + 1 != sigma.dim()) continue;
      const Cone tau = sigma.face_cone(face);
      if (tau.contains(rho)) continue;
      std::vector<Vector> gens = tau.rays();
      gens.push_back(rho);
      out.push_back(Cone::from_generators(std::span<const Vector>(gens), f.ambient_rank()));
    }
  }
  return Fan::build(std::span<const Cone>(out), f.ambient_rank());
}

/// Pulls rays of non-simplicial cones, lexicographically smallest first,
/// until every cone is simplicial.
inline Fan simplicialize(const Fan& f) {
  Fan cur = f;
  while (!cur.is_simplicial()) {
    bool progressed = false;
    for (const auto& r : cur.rays()) {
      const bool in_bad = std::any_of(cur.maximal_cones().begin(), cur.maximal_cones().end(),
                                      [&](const Cone& c) { return !c.is_simplicial() && c.contains(r); });
      if (!in_bad) continue;
      Fan next = star_subdivide(cur, r);
      if (next != cur) {
        cur = std::move(next);
        progressed = true;
        break;
      }
    }
    if (!progressed)
      throw Error(ErrorCategory::Invariant, "simplicialize made no progress on " + to_string(cur));
  }
  return cur;
}

/// True iff every cone of fine lies in a cone of coarse and the supports agree.
inline bool refines(const Fan& fine, const Fan& coarse) {
  if (fine.ambient_rank() != coarse.ambient_rank()) return false;
  for (const auto& c : fine.maximal_cones())
    if (!std::any_of(coarse.cones().begin(), coarse.cones().end(), [&](const Cone& d) { return d.contains(c); }))
      return false;
  // Each maximal cone of coarse must be tiled by the equidimensional cones of
  // fine inside it: codimension-one pieces meet two tiles in the relative
  // interior and one tile on the boundary, and the tiles are connected.
  for (const auto& sigma : coarse.maximal_cones()) {
    const std::size_t k = sigma.dim();
    std::vector<Cone> tiles;
    for (const auto& c : fine.cones())
      if (c.dim() == k && sigma.contains(c)) tiles.push_back(c);
    if (tiles.empty()) return false;
    if (k == 0) continue;
    std::vector<std::size_t> parent(tiles.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& w : fine.cones()) {
      if (w.dim() + 1 != k || !sigma.contains(w)) continue;
      std::vector<std::size_t> owners;
      for (std::size_t i = 0; i < tiles.size(); ++i)
        if (tiles[i].contains(w)) owners.push_back(i);
      if (owners.empty()) continue;
      const bool interior = sigma.in_relative_interior(w.relative_interior_point());
      if (owners.size() != (interior ? 2u : 1u)) return false;
      if (interior) parent[find(owners[0])] = find(owners[1]);
    }
    for (std::size_t i = 0; i < tiles.size(); ++i)
      if (find(i) != find(0)) return false;
  }
  return true;
}

}  // namespace tvb
