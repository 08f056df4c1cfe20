#pragma once

// Polyhedral divisors and divisorial fans over an abstract curve: a genus and
// a list of named points. Positions never matter, only which point is which.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tvbetti/fan.hpp"
#include "tvbetti/polyhedron.hpp"

namespace tvb {

/// A point of the curve: a label, or nullopt for a general point that carries
/// no label and lies in every locus.
using PointRef = std::optional<std::string>;

inline std::string point_name(const PointRef& y) { return y ? *y : std::string("<generic>"); }

struct Curve {
  unsigned genus = 0;
  std::vector<std::string> points;

  bool has(const std::string& label) const {
    return std::find(points.begin(), points.end(), label) != points.end();
  }
};

/// Finitely supported map from point labels to rationals.
using RationalDivisor = std::map<std::string, Rational>;

inline Rational degree(const RationalDivisor& d) {
  Rational s = 0;
  for (const auto& [y, c] : d) s += c;
  return s;
}

class PolyhedralDivisor {
 public:
  /// Coefficients equal to the tail itself are dropped, so equal divisors
  /// compare equal regardless of how they were written down.
  PolyhedralDivisor(Cone tail, std::set<std::string> excluded, std::map<std::string, Polyhedron> coefficients)
      : tail_(std::move(tail)), excluded_(std::move(excluded)) {
    if (!tail_.strongly_convex())
      throw Error(ErrorCategory::Precondition, "divisor tail " + to_string(tail_) + " is not strongly convex");
    const Polyhedron trivial = Polyhedron::from_cone(tail_);
    for (auto& [y, p] : coefficients) {
      if (excluded_.count(y))
        throw Error(ErrorCategory::Precondition, "coefficient given at excluded point " + y);
      if (p.tail() != tail_)
        throw Error(ErrorCategory::Precondition,
                    "coefficient at " + y + " has tail " + to_string(p.tail()) + ", expected " + to_string(tail_));
      if (p != trivial) coefficients_.emplace(y, std::move(p));
    }
  }

  const Cone& tail() const noexcept { return tail_; }
  std::size_t rank() const noexcept { return tail_.ambient_rank(); }
  const std::set<std::string>& excluded() const noexcept { return excluded_; }
  const std::map<std::string, Polyhedron>& coefficients() const noexcept { return coefficients_; }

  bool affine_locus() const noexcept { return !excluded_.empty(); }
  bool in_locus(const PointRef& y) const { return !y || !excluded_.count(*y); }

  /// D_y; the tail itself away from the listed points.
  Polyhedron slice(const PointRef& y) const {
    if (!in_locus(y)) throw Error(ErrorCategory::Precondition, "point " + point_name(y) + " is not in the locus");
    if (y) {
      auto it = coefficients_.find(*y);
      if (it != coefficients_.end()) return it->second;
    }
    return Polyhedron::from_cone(tail_);
  }

  friend bool operator==(const PolyhedralDivisor& a, const PolyhedralDivisor& b) {
    return a.tail_ == b.tail_ && a.excluded_ == b.excluded_ && a.coefficients_ == b.coefficients_;
  }

 private:
  Cone tail_;
  std::set<std::string> excluded_;
  std::map<std::string, Polyhedron> coefficients_;
};

struct DivisorialFan {
  Curve curve;
  std::size_t rank = 1;
  std::vector<PolyhedralDivisor> divisors;
  bool assert_projective = false;
  std::optional<bool> assert_smooth;
  /// Overrides properness checks that are undecidable from the combinatorics
  /// (full-curve loci on curves of positive genus).
  bool assert_proper = false;
};

/// D(m) = sum_y min_{D_y} <m, .> [y]; zero entries are omitted.
inline RationalDivisor evaluate_divisor(const PolyhedralDivisor& d, const Vector& m) {
  if (!d.tail().dual().contains(m))
    throw Error(ErrorCategory::Precondition, "evaluate_divisor: " + to_string(m) + " is not in the dual of the tail");
  RationalDivisor out;
  for (const auto& [y, p] : d.coefficients()) {
    Rational v = p.min_pairing(m);
    if (sgn(v) != 0) out.emplace(y, std::move(v));
  }
  return out;
}

/// deg D = sum over all points of D_y, defined for full-curve loci.
inline Polyhedron degree_polyhedron(const PolyhedralDivisor& d) {
  if (d.affine_locus())
    throw Error(ErrorCategory::Precondition, "degree polyhedron is undefined for a divisor with affine locus");
  Polyhedron acc = Polyhedron::from_cone(d.tail());
  for (const auto& [y, p] : d.coefficients()) acc = minkowski_add(acc, p);
  return acc;
}

enum class Properness { Proper, Improper, Undecidable };

struct ProperVerdict {
  Properness verdict = Properness::Proper;
  std::string reason;
  bool proper() const noexcept { return verdict == Properness::Proper; }
};

/// Properness: automatic on affine loci; otherwise deg D must lie strictly
/// inside the tail, and every D(m) of degree zero must be principal up to a
/// multiple. On genus 0 the second condition always holds. On higher genus it
/// is decided only when each summand vanishes on the degree-zero faces of
/// the dual cone; otherwise principality depends on the point classes.
inline ProperVerdict is_proper(const PolyhedralDivisor& d, const Curve& curve) {
  if (d.affine_locus()) return {Properness::Proper, "affine locus"};
  const Polyhedron deg = degree_polyhedron(d);
  for (const auto& v : deg.vertices())
    if (!d.tail().contains(v))
      return {Properness::Improper, "deg D has vertex " + to_string(v) + " outside the tail"};
  if (deg.contains(Vector(d.rank())))
    return {Properness::Improper, "deg D is not strictly inside the tail (it contains the origin)"};
  if (curve.genus == 0) return {Properness::Proper, "deg D strictly inside the tail; genus 0"};

  for (const auto& v : deg.vertices()) {
    std::vector<Vector> ineqs = d.tail().rays();
    std::vector<Vector> eqs{v};
    const Cone zero_face = Cone::from_inequalities(ineqs, eqs, d.rank());
    for (const auto& m : zero_face.generators())
      for (const auto& [y, p] : d.coefficients())
        if (sgn(p.min_pairing(m)) != 0)
          return {Properness::Undecidable,
                  "principality of degree-zero D(m) on genus " + std::to_string(curve.genus) +
                      " is undecidable from combinatorics"};
  }
  return {Properness::Proper, "every degree-zero D(m) vanishes identically"};
}

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind { Malformed, MissingIntersection, NotCommonFace, LociDoNotCover, Improper };

inline const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::Malformed: return "malformed";
    case ViolationKind::MissingIntersection: return "missing-intersection";
    case ViolationKind::NotCommonFace: return "not-common-face";
    case ViolationKind::LociDoNotCover: return "loci-do-not-cover";
    case ViolationKind::Improper: return "improper";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> divisors;  // indices into DivisorialFan::divisors
  std::string point;                  // empty when not point specific
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool degenerate = false;  // empty divisor list
  bool ok() const noexcept { return violations.empty(); }
  bool has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == k; });
  }
};

namespace detail {

/// The labeled points together with the general point.
inline std::vector<PointRef> all_points(const Curve& c) {
  std::vector<PointRef> out(c.points.begin(), c.points.end());
  out.emplace_back(std::nullopt);
  return out;
}

/// D^i cap D^j: tail sigma_i cap sigma_j, locus the points of both loci where
/// the slices meet, coefficients the slice intersections.
struct Intersection {
  Cone tail;
  std::set<std::string> excluded;
  std::map<std::string, Polyhedron> coefficients;  // nontrivial slices only
};

/// Member k realizes the intersection up to restricting its locus.
inline bool realizes(const PolyhedralDivisor& k, const Intersection& meet, const Curve& c) {
  if (k.tail() != meet.tail) return false;
  if (!std::includes(meet.excluded.begin(), meet.excluded.end(), k.excluded().begin(), k.excluded().end()))
    return false;
  for (const auto& y : c.points) {
    if (meet.excluded.count(y)) continue;
    auto it = meet.coefficients.find(y);
    if (it == meet.coefficients.end() ? k.coefficients().count(y) != 0 : k.slice(y) != it->second) return false;
  }
  return true;
}

}  // namespace detail

/// Checks well-formedness, the three axioms and properness; every violation
/// is reported with the divisor indices involved.
inline ValidationReport validate_divisorial_fan(const DivisorialFan& e) {
  ValidationReport rep;
  rep.degenerate = e.divisors.empty();
  const auto& ds = e.divisors;
  bool malformed = false;
  std::set<std::string> seen;
  for (const auto& y : e.curve.points)
    if (!seen.insert(y).second) {
      rep.violations.push_back({ViolationKind::Malformed, {}, y, "duplicate point label " + y});
      malformed = true;
    }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds[i].rank() != e.rank) {
      rep.violations.push_back({ViolationKind::Malformed, {i}, "", "divisor " + std::to_string(i) + " has the wrong rank"});
      malformed = true;
    }
    for (const auto& y : ds[i].excluded())
      if (!e.curve.has(y)) {
        rep.violations.push_back({ViolationKind::Malformed, {i}, y, "unknown point label " + y});
        malformed = true;
      }
    for (const auto& [y, p] : ds[i].coefficients())
      if (!e.curve.has(y)) {
        rep.violations.push_back({ViolationKind::Malformed, {i}, y, "unknown point label " + y});
        malformed = true;
      }
  }
  if (malformed) return rep;

  // (i) closed under intersection, (ii) slices meet in common faces. Where
  // both slices are tails the check reduces to the one on the tails, done
  // once at the general point.
  auto not_common = [&](std::size_t i, std::size_t j, const std::string& where) {
    rep.violations.push_back({ViolationKind::NotCommonFace, {i, j}, where,
                              "slices of divisors " + std::to_string(i) + " and " + std::to_string(j) + " at " +
                                  (where.empty() ? point_name(std::nullopt) : where) +
                                  " do not meet in a common face"});
  };
  auto meets_in_face = [](const auto& meet, const auto& p) { return meet == p || meet.is_face_of(p); };
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      const PolyhedralDivisor& a = ds[i];
      const PolyhedralDivisor& b = ds[j];
      detail::Intersection meet{intersect(a.tail(), b.tail()), {}, {}};
      if (!meets_in_face(meet.tail, a.tail()) || !meets_in_face(meet.tail, b.tail())) not_common(i, j, "");
      for (const auto& y : e.curve.points) {
        if (!a.in_locus(y) || !b.in_locus(y)) {
          meet.excluded.insert(y);
          continue;
        }
        if (!a.coefficients().count(y) && !b.coefficients().count(y)) continue;
        const Polyhedron sa = a.slice(y), sb = b.slice(y);
        std::optional<Polyhedron> m = sa == sb ? std::optional(sa) : intersect(sa, sb);
        if (!m) {
          meet.excluded.insert(y);
          continue;
        }
        if (!meets_in_face(*m, sa) || !meets_in_face(*m, sb)) not_common(i, j, y);
        if (*m != Polyhedron::from_cone(meet.tail)) meet.coefficients.emplace(y, std::move(*m));
      }
      const bool listed = std::any_of(ds.begin(), ds.end(), [&](const PolyhedralDivisor& k) {
        return detail::realizes(k, meet, e.curve);
      });
      if (!listed)
        rep.violations.push_back({ViolationKind::MissingIntersection, {i, j}, "",
                                  "intersection not listed: divisors " + std::to_string(i) + " and " +
                                      std::to_string(j)});
    }

  // (iii) the loci cover the curve.
  if (ds.empty())
    rep.violations.push_back({ViolationKind::LociDoNotCover, {}, "", "no divisors: the loci do not cover the curve"});
  for (const auto& y : e.curve.points)
    if (std::none_of(ds.begin(), ds.end(), [&](const PolyhedralDivisor& d) { return d.in_locus(y); }))
      rep.violations.push_back({ViolationKind::LociDoNotCover, {}, y, "point " + y + " lies in no locus"});

  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto v = is_proper(ds[i], e.curve);
    if (v.verdict == Properness::Improper || (v.verdict == Properness::Undecidable && !e.assert_proper))
      rep.violations.push_back({ViolationKind::Improper, {i}, "",
                                "divisor " + std::to_string(i) + " is not proper: " + v.reason});
  }
  return rep;
}

/// Throws an Axiom error summarizing the first violation.
inline void require_valid(const DivisorialFan& e) {
  const auto rep = validate_divisorial_fan(e);
  if (!rep.ok())
    throw Error(ErrorCategory::Axiom, "invalid divisorial fan (" + std::to_string(rep.violations.size()) +
                                          (rep.violations.size() == 1 ? " violation): " : " violations): ") +
                                          rep.violations.front().message);
}

// ---------------------------------------------------------------------------
// Fans, slices and orbits

inline Fan tail_fan(const DivisorialFan& e) {
  std::vector<Cone> tails;
  for (const auto& d : e.divisors) tails.push_back(d.tail());
  return Fan::build(tails, e.rank);
}

/// C(D)_y = cone(sigma x {0} u D_y x {1}); this is the homogenization of D_y.
inline Cone hypercone(const PolyhedralDivisor& d, const PointRef& y) {
  if (!d.in_locus(y)) throw Error(ErrorCategory::Precondition, "hypercone: point " + point_name(y) + " is excluded");
  return d.slice(y).homogenization();
}

/// C^-(D) = cone(sigma x {0} u sigma x {-1}).
inline Cone lower_cone(const Cone& sigma) {
  std::vector<Vector> gens;
  for (const auto& r : sigma.rays()) gens.push_back(r.extended(0));
  gens.push_back(Vector(sigma.ambient_rank()).extended(-1));
  return Cone::from_generators(gens, sigma.ambient_rank() + 1);
}

enum class SliceVariant { Plus, Full };

/// E_y^+ from the hypercones at y; the full variant adds C^-(D) for every member.
inline Fan slice_fan(const DivisorialFan& e, const PointRef& y, SliceVariant variant) {
  std::vector<Cone> cones;
  for (const auto& d : e.divisors)
    if (d.in_locus(y)) cones.push_back(hypercone(d, y));
  if (variant == SliceVariant::Full)
    for (const auto& d : e.divisors) cones.push_back(lower_cone(d.tail()));
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  return Fan::build(cones, e.rank + 1);
}

struct OrbitFace {
  Polyhedron face;
  int codim = 0;
};

/// face(E)_y: every non-empty face of every slice at y, deduplicated by exact
/// equality, with codim F = rank - dim F.
inline std::vector<OrbitFace> faces_at(const DivisorialFan& e, const PointRef& y) {
  std::set<Polyhedron> faces;
  for (const auto& d : e.divisors) {
    if (!d.in_locus(y)) continue;
    for (auto& f : d.slice(y).nonempty_faces()) faces.insert(std::move(f));
  }
  std::vector<OrbitFace> out;
  for (const auto& f : faces) out.push_back({f, static_cast<int>(e.rank) - f.dim()});
  return out;
}

namespace detail {

/// No member in whose locus y lies has a nontrivial coefficient there.
inline bool tails_only_at(const DivisorialFan& e, const PointRef& y) {
  return !y || std::none_of(e.divisors.begin(), e.divisors.end(),
                            [&](const PolyhedralDivisor& d) { return d.coefficients().count(*y) != 0; });
}

/// Every maximal cone of the tail fan is the tail of a member whose locus
/// contains y. With tails only at y this says face(E)_y = tail(E).
inline bool all_tails_present(const DivisorialFan& e, const Fan& tails, const PointRef& y) {
  return std::all_of(tails.maximal_cones().begin(), tails.maximal_cones().end(), [&](const Cone& c) {
    return std::any_of(e.divisors.begin(), e.divisors.end(),
                       [&](const PolyhedralDivisor& d) { return d.in_locus(y) && d.tail() == c; });
  });
}

}  // namespace detail

/// Labeled points where face(E)_y differs from the cones of tail(E).
inline std::vector<std::string> support(const DivisorialFan& e) {
  std::set<Polyhedron> tail_faces;
  const Fan tails = tail_fan(e);
  for (const auto& c : tails.cones()) tail_faces.insert(Polyhedron::from_cone(c));
  std::vector<std::string> out;
  for (const auto& y : e.curve.points) {
    if (detail::tails_only_at(e, y)) {
      if (!detail::all_tails_present(e, tails, y)) out.push_back(y);
      continue;
    }
    std::set<Polyhedron> here;
    for (const auto& f : faces_at(e, y)) here.insert(f.face);
    if (here != tail_faces) out.push_back(y);
  }
  return out;
}

namespace detail {

/// Whether a collection of polyhedra closed under faces (a polyhedral
/// complex) covers Q^n: all maximal cells are n-dimensional and every
/// (n-1)-cell borders exactly two of them.
inline bool complex_covers_space(const std::vector<Polyhedron>& cells, std::size_t n) {
  std::vector<const Polyhedron*> top;
  for (const auto& c : cells)
    if (c.dim() == static_cast<int>(n)) top.push_back(&c);
  if (top.empty()) return false;
  for (const auto& c : cells) {
    if (c.dim() == static_cast<int>(n)) continue;
    const Vector x = c.relative_interior_point();
    std::size_t owners = 0;
    for (const auto* t : top)
      if (t->contains(x)) ++owners;
    if (owners == 0) return false;
    if (c.dim() + 1 == static_cast<int>(n) && owners != 2) return false;
  }
  return true;
}

}  // namespace detail

/// The slices cover N_Q at every labeled point and at a general point.
inline bool is_complete_variety(const DivisorialFan& e) {
  const Fan tails = tail_fan(e);
  for (const auto& y : detail::all_points(e.curve)) {
    if (detail::tails_only_at(e, y)) {
      if (!tails.is_complete() || !detail::all_tails_present(e, tails, y)) return false;
      continue;
    }
    std::vector<Polyhedron> cells;
    for (auto& f : faces_at(e, y)) cells.push_back(std::move(f.face));
    if (!detail::complex_covers_space(cells, e.rank)) return false;
  }
  return true;
}

/// Every member has an affine locus. Vacuously true for an empty list.
inline bool is_contraction_free(const DivisorialFan& e) {
  return std::all_of(e.divisors.begin(), e.divisors.end(), [](const PolyhedralDivisor& d) { return d.affine_locus(); });
}

enum class GermType { Horizontal, Vertical };

struct Germ {
  GermType type;
  Cone cone;           // tau in N_Q, or a face of a hypercone in (N + Z)_Q
  std::string point;   // empty for horizontal germs
  std::size_t dim = 0; // dimension of the orbit closure
};

/// Horizontal germs from cones of tail(E), vertical germs from faces of the
/// hypercones at support points that leave N_Q x {0}.
inline std::vector<Germ> enumerate_germs(const DivisorialFan& e) {
  std::vector<Germ> out;
  const std::size_t d = e.rank + 1;
  const Fan tails = tail_fan(e);
  for (const auto& tau : tails.cones()) out.push_back({GermType::Horizontal, tau, "", d - tau.dim()});
  for (const auto& y : support(e)) {
    std::set<Cone> faces;
    for (const auto& div : e.divisors) {
      if (!div.in_locus(y)) continue;
      const Cone c = hypercone(div, y);
      for (const auto& f : c.faces()) {
        const Cone fc = c.face_cone(f);
        const bool vertical = std::any_of(fc.rays().begin(), fc.rays().end(),
                                          [&](const Vector& r) { return sgn(r[e.rank]) > 0; });
        if (vertical) faces.insert(fc);
      }
    }
    for (const auto& f : faces) out.push_back({GermType::Vertical, f, y, d - f.dim()});
  }
  return out;
}

}  // namespace tvb
