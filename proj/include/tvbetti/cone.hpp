#pragma once

// Rational polyhedral cones with both V- and H-representations, converted
// eagerly by the double description method.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tvbetti/exactlin.hpp"

namespace tvb {

/// Generators of a cone { x : <a,x> >= 0, <e,x> = 0 }: a lineality basis
/// plus extreme rays of the pointed part.
struct GeneratorForm {
  std::vector<Vector> lineality;
  std::vector<Vector> rays;
};

namespace detail {

using TightSet = std::vector<bool>;

inline bool subset_of(const TightSet& a, const TightSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

inline TightSet meet(const TightSet& a, const TightSet& b) {
  TightSet c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] && b[i];
  return c;
}

struct DDRay {
  Vector v;
  TightSet tight;
};

/// Vector reduced against an echelon basis with unit pivots.
inline Vector reduce_against(const Vector& v, std::span<const Vector> echelon) {
  std::vector<Rational> x = v.entries();
  for (const auto& row : echelon) {
    std::size_t p = 0;
    while (p < row.size() && sgn(row[p]) == 0) ++p;
    if (p == row.size() || sgn(x[p]) == 0) continue;
    const Rational f = x[p];
    for (std::size_t k = 0; k < x.size(); ++k) x[k] -= f * row[k];
  }
  return Vector(std::move(x));
}

/// Echelon basis scaled to primitive integer rows; a canonical subspace basis.
inline std::vector<Vector> canonical_subspace(std::span<const Vector> span_of, std::size_t n) {
  std::vector<Vector> basis = row_echelon_basis(span_of, n);
  for (auto& b : basis) b = primitive(b);
  return basis;
}

/// Canonical representatives of rays modulo a subspace, deduplicated and sorted.
inline std::vector<Vector> canonical_rays(std::span<const Vector> rays, std::span<const Vector> subspace,
                                          std::size_t n) {
  const auto echelon = row_echelon_basis(subspace, n);
  std::set<Vector> out;
  for (const auto& r : rays) {
    Vector red = reduce_against(r, echelon);
    if (!red.is_zero()) out.insert(primitive(red));
  }
  return {out.begin(), out.end()};
}

}  // namespace detail

/// Double description: generators of { x in Q^n : <a,x> >= 0 (a in ineqs),
/// <e,x> = 0 (e in eqs) }. Rays are extreme modulo lineality but not yet
/// canonicalized.
inline GeneratorForm double_description(std::span<const Vector> ineqs, std::span<const Vector> eqs,
                                        std::size_t n) {
  using detail::DDRay;
  std::vector<Vector> lineality;
  for (std::size_t i = 0; i < n; ++i) lineality.push_back(unit_vector(n, i));

  // Equations only cut down the lineality space.
  for (const auto& e : eqs) {
    auto it = std::find_if(lineality.begin(), lineality.end(),
                           [&](const Vector& l) { return sgn(dot(e, l)) != 0; });
    if (it == lineality.end()) continue;
    const Vector l0 = *it;
    const Rational e0 = dot(e, l0);
    lineality.erase(it);
    for (auto& l : lineality) {
      const Rational el = dot(e, l);
      if (sgn(el) != 0) l = l - (el / e0) * l0;
    }
  }

  const std::size_t m = ineqs.size();
  std::vector<DDRay> rays;
  for (std::size_t k = 0; k < m; ++k) {
    const Vector& a = ineqs[k];
    if (a.is_zero()) {
      for (auto& r : rays) r.tight[k] = true;
      continue;
    }
    auto it = std::find_if(lineality.begin(), lineality.end(),
                           [&](const Vector& l) { return sgn(dot(a, l)) != 0; });
    if (it != lineality.end()) {
      Vector l0 = *it;
      Rational a0 = dot(a, l0);
      if (sgn(a0) < 0) {
        l0 = -l0;
        a0 = -a0;
      }
      lineality.erase(it);
      for (auto& l : lineality) {
        const Rational al = dot(a, l);
        if (sgn(al) != 0) l = l - (al / a0) * l0;
      }
      for (auto& r : rays) {
        const Rational ar = dot(a, r.v);
        if (sgn(ar) != 0) r.v = primitive(r.v - (ar / a0) * l0);
        r.tight[k] = true;
      }
      detail::TightSet t(m, false);
      for (std::size_t j = 0; j < k; ++j) t[j] = true;
      rays.push_back({primitive(l0), std::move(t)});
      continue;
    }

    std::vector<std::size_t> pos, neg;
    std::vector<DDRay> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const int s = sgn(dot(a, rays[i].v));
      if (s > 0) pos.push_back(i);
      else if (s < 0) neg.push_back(i);
      else {
        DDRay r = rays[i];
        r.tight[k] = true;
        next.push_back(std::move(r));
      }
    }
    for (auto i : pos) next.push_back(rays[i]);
    for (auto p : pos)
      for (auto q : neg) {
        const auto common = detail::meet(rays[p].tight, rays[q].tight);
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != q && detail::subset_of(common, rays[r].tight)) adjacent = false;
        if (!adjacent) continue;
        const Rational ap = dot(a, rays[p].v), aq = dot(a, rays[q].v);
        DDRay w{primitive(ap * rays[q].v - aq * rays[p].v), common};
        w.tight[k] = true;
        next.push_back(std::move(w));
      }
    rays = std::move(next);
  }

  GeneratorForm out;
  out.lineality = std::move(lineality);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

/// A face of a cone, recorded by the extreme rays it contains.
struct ConeFace {
  std::vector<std::size_t> ray_ids;
  std::size_t dim = 0;
};

class Cone {
 public:
  /// The zero cone of the given rank.
  explicit Cone(std::size_t ambient_rank = 0) : ambient_(ambient_rank) { finish_from_generators({}, {}); }

  static Cone from_generators(std::span<const Vector> gens, std::size_t ambient_rank) {
    for (const auto& g : gens)
      if (g.size() != ambient_rank)
        throw Error(ErrorCategory::Precondition, "generator has the wrong ambient rank");
    Cone c;
    c.ambient_ = ambient_rank;
    // Facets of cone(gens) are the extreme rays of its dual.
    const GeneratorForm dual = double_description(gens, {}, ambient_rank);
    c.set_h_representation(dual.rays, dual.lineality);
    c.recompute_generators();
    return c;
  }

  static Cone from_generators(std::initializer_list<Vector> gens, std::size_t ambient_rank) {
    std::vector<Vector> g(gens);
    return from_generators(std::span<const Vector>(g), ambient_rank);
  }

  /// { x : <a,x> >= 0 for a in ineqs, <e,x> = 0 for e in eqs }.
  static Cone from_inequalities(std::span<const Vector> ineqs, std::span<const Vector> eqs,
                                std::size_t ambient_rank) {
    const GeneratorForm g = double_description(ineqs, eqs, ambient_rank);
    Cone c;
    c.ambient_ = ambient_rank;
    c.finish_from_generators(g.lineality, g.rays);
    return c;
  }

  static Cone full_space(std::size_t n) {
    std::vector<Vector> none;
    return from_inequalities(none, none, n);
  }

  std::size_t ambient_rank() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return lineality_.size() + rank(rays_, ambient_); }
  const std::vector<Vector>& rays() const noexcept { return rays_; }
  const std::vector<Vector>& lineality() const noexcept { return lineality_; }
  const std::vector<Vector>& facets() const noexcept { return facets_; }
  const std::vector<Vector>& equations() const noexcept { return equations_; }
  bool strongly_convex() const noexcept { return lineality_.empty(); }
  bool full_dimensional() const noexcept { return equations_.empty(); }
  bool is_zero() const noexcept { return rays_.empty() && lineality_.empty(); }

  /// All generators, lineality as +/- pairs.
  std::vector<Vector> generators() const {
    std::vector<Vector> g = rays_;
    for (const auto& l : lineality_) {
      g.push_back(l);
      g.push_back(-l);
    }
    return g;
  }

  bool contains(const Vector& x) const {
    for (const auto& e : equations_)
      if (sgn(dot(e, x)) != 0) return false;
    for (const auto& f : facets_)
      if (sgn(dot(f, x)) < 0) return false;
    return true;
  }

  bool contains(const Cone& other) const {
    for (const auto& g : other.generators())
      if (!contains(g)) return false;
    return true;
  }

  bool in_relative_interior(const Vector& x) const {
    if (!contains(x)) return false;
    for (const auto& f : facets_)
      if (sgn(dot(f, x)) == 0) return false;
    return true;
  }

  /// Sum of the extreme rays; lies in the relative interior.
  Vector relative_interior_point() const {
    Vector s(ambient_);
    for (const auto& r : rays_) s = s + r;
    return s;
  }

  Cone dual() const {
    std::vector<Vector> g = facets_;
    for (const auto& e : equations_) {
      g.push_back(e);
      g.push_back(-e);
    }
    return from_generators(std::span<const Vector>(g), ambient_);
  }

  friend Cone intersect(const Cone& a, const Cone& b) {
    std::vector<Vector> ineqs = a.facets_, eqs = a.equations_;
    ineqs.insert(ineqs.end(), b.facets_.begin(), b.facets_.end());
    eqs.insert(eqs.end(), b.equations_.begin(), b.equations_.end());
    return from_inequalities(ineqs, eqs, a.ambient_);
  }

  /// Incidence of extreme rays with facets.
  std::vector<std::vector<bool>> incidence() const {
    std::vector<std::vector<bool>> inc(facets_.size(), std::vector<bool>(rays_.size()));
    for (std::size_t i = 0; i < facets_.size(); ++i)
      for (std::size_t j = 0; j < rays_.size(); ++j) inc[i][j] = sgn(dot(facets_[i], rays_[j])) == 0;
    return inc;
  }

  /// Every face (including the cone itself and the minimal face), sorted by
  /// dimension and then by ray ids.
  std::vector<ConeFace> faces() const {
    const auto inc = incidence();
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> queue;
    std::vector<std::size_t> all(rays_.size());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    seen.insert(all);
    queue.push_back(all);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const auto cur = queue[q];
      for (const auto& row : inc) {
        std::vector<std::size_t> next;
        for (auto j : cur)
          if (row[j]) next.push_back(j);
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
    std::vector<ConeFace> out;
    for (const auto& ids : seen) {
      std::vector<Vector> gens;
      for (auto j : ids) gens.push_back(rays_[j]);
      out.push_back({ids, lineality_.size() + rank(gens, ambient_)});
    }
    std::sort(out.begin(), out.end(), [](const ConeFace& a, const ConeFace& b) {
      return a.dim != b.dim ? a.dim < b.dim : a.ray_ids < b.ray_ids;
    });
    return out;
  }

  Cone face_cone(const ConeFace& f) const {
    std::vector<Vector> gens;
    for (auto j : f.ray_ids) gens.push_back(rays_[j]);
    for (const auto& l : lineality_) {
      gens.push_back(l);
      gens.push_back(-l);
    }
    return from_generators(std::span<const Vector>(gens), ambient_);
  }

  /// The smallest face containing x (x must lie in the cone).
  Cone smallest_face_containing(const Vector& x) const {
    std::vector<Vector> gens;
    for (const auto& r : rays_) {
      bool keep = true;
      for (const auto& f : facets_)
        if (sgn(dot(f, x)) == 0 && sgn(dot(f, r)) != 0) {
          keep = false;
          break;
        }
      if (keep) gens.push_back(r);
    }
    for (const auto& l : lineality_) {
      gens.push_back(l);
      gens.push_back(-l);
    }
    return from_generators(std::span<const Vector>(gens), ambient_);
  }

  bool is_face_of(const Cone& other) const {
    if (!other.contains(*this)) return false;
    return other.smallest_face_containing(relative_interior_point()) == *this;
  }

  bool is_simplicial() const {
    return strongly_convex() && rank(rays_, ambient_) == rays_.size();
  }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.ambient_ == b.ambient_ && a.lineality_ == b.lineality_ && a.rays_ == b.rays_;
  }
  friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }
  /// Deterministic order: by dimension, then lineality, then rays.
  friend bool operator<(const Cone& a, const Cone& b) {
    const auto da = a.dim(), db = b.dim();
    if (da != db) return da < db;
    if (a.lineality_ != b.lineality_) return a.lineality_ < b.lineality_;
    return a.rays_ < b.rays_;
  }

 private:
  void set_h_representation(std::span<const Vector> normals, std::span<const Vector> eqs) {
    equations_ = detail::canonical_subspace(eqs, ambient_);
    facets_ = detail::canonical_rays(normals, equations_, ambient_);
  }

  void recompute_generators() {
    const GeneratorForm g = double_description(facets_, equations_, ambient_);
    lineality_ = detail::canonical_subspace(g.lineality, ambient_);
    rays_ = detail::canonical_rays(g.rays, lineality_, ambient_);
  }

  void finish_from_generators(std::span<const Vector> lineality, std::span<const Vector> rays) {
    std::vector<Vector> gens(rays.begin(), rays.end());
    for (const auto& l : lineality) {
      gens.push_back(l);
      gens.push_back(-l);
    }
    const GeneratorForm dual = double_description(gens, {}, ambient_);
    set_h_representation(dual.rays, dual.lineality);
    lineality_ = detail::canonical_subspace(lineality, ambient_);
    rays_ = detail::canonical_rays(rays, lineality_, ambient_);
  }

  std::size_t ambient_ = 0;
  std::vector<Vector> rays_;
  std::vector<Vector> lineality_;
  std::vector<Vector> facets_;
  std::vector<Vector> equations_;
};

inline std::string to_string(const Cone& c) {
  std::string s = "cone(";
  for (std::size_t i = 0; i < c.rays().size(); ++i) {
    if (i) s += ",";
    s += to_string(c.rays()[i]);
  }
  if (!c.lineality().empty()) {
    s += "; lineality ";
    for (std::size_t i = 0; i < c.lineality().size(); ++i) {
      if (i) s += ",";
      s += to_string(c.lineality()[i]);
    }
  }
  return s + ")";
}

inline Cone cone_from_generators(std::span<const Vector> gens, std::size_t ambient_rank) {
  return Cone::from_generators(gens, ambient_rank);
}

inline Cone dual_cone(const Cone& c) { return c.dual(); }

}  // namespace tvb
