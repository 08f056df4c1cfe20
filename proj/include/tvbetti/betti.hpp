#pragma once

// Intersection cohomology Poincare polynomials of complete complexity-one
// T-varieties, through the tail fan and the slice fans at the special points.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "tvbetti/divisorial.hpp"
#include "tvbetti/fan.hpp"
#include "tvbetti/hpoly.hpp"
#include "tvbetti/polynomial.hpp"

namespace tvb {

struct BettiReport {
  IntPolynomial poincare;
  int dim = 0;
  IntPolynomial h_tail;
  std::map<std::string, IntPolynomial> h_slices;
  unsigned genus = 0;
  std::size_t support_size = 0;
  std::vector<std::string> support;
  std::string pipeline;
  std::vector<std::string> diagnostics;
};

/// h(Q, t) where the complete fan f is the normal fan of Q. The recursion
/// runs over the cone poset of f, i.e. the face poset of the polar of Q.
inline IntPolynomial toric_h(const Fan& f) {
  if (!f.is_complete()) throw Error(ErrorCategory::Precondition, "toric h-vector needs a complete fan");
  return h_polynomial(f.cone_poset());
}

/// P_X(t) = h(Q, t^2) for the toric variety of a complete fan.
inline IntPolynomial toric_poincare(const Fan& f) { return toric_h(f).in_t_squared(); }

/// sum over the cones tau of f of (t-1)^(rank - dim tau): the h-polynomial of
/// a complete simplicial fan from its cone counts.
inline IntPolynomial face_count_h(const Fan& f) {
  const IntPolynomial tm1{-1, 1};
  IntPolynomial out;
  for (const auto& c : f.cones()) out += tm1.pow(static_cast<unsigned>(f.ambient_rank() - c.dim()));
  return out;
}

namespace detail {

/// Checks the structural invariants of an intersection cohomology Poincare
/// polynomial of a d-dimensional variety.
inline void check_poincare_shape(const IntPolynomial& p, int d, const std::string& pipeline) {
  std::string why;
  if (p.degree() != 2 * d) why = "degree is not 2d";
  else if (p.coeff(0) != 1 || p.coeff(2 * d) != 1) why = "b_0 or b_2d differs from 1";
  else if (!is_palindromic(p, 2 * d)) why = "not palindromic";
  else
    for (const auto& c : p.coefficients())
      if (c < 0) why = "negative Betti number";
  if (!why.empty())
    throw Error(ErrorCategory::Invariant, pipeline + " produced " + to_string(p) + ": " + why);
}

struct MainData {
  Fan tail;
  std::vector<std::string> support;
  std::map<std::string, Fan> slices;
};

inline MainData main_preconditions(const DivisorialFan& e) {
  require_valid(e);
  if (!is_contraction_free(e))
    throw Error(ErrorCategory::Precondition,
                "divisorial fan is not contraction-free (a member has the whole curve as locus); "
                "use the non-contraction-free smooth formula");
  if (!is_complete_variety(e)) throw Error(ErrorCategory::Precondition, "X(E) is not complete");
  if (!e.assert_projective)
    throw Error(ErrorCategory::Precondition, "projectivity must be asserted (assert_projective) for this formula");
  MainData m{tail_fan(e), support(e), {}};
  for (const auto& y : m.support) m.slices.emplace(y, slice_fan(e, y, SliceVariant::Full));
  return m;
}

/// ((1-r)t^2 + 2gt + 1 - r) A(t^2) + sum_y B_y(t^2).
inline IntPolynomial combine(const IntPolynomial& tail_part, const std::vector<IntPolynomial>& slice_parts,
                             unsigned genus) {
  const long r = static_cast<long>(slice_parts.size());
  const IntPolynomial factor{1 - r, 2 * static_cast<long>(genus), 1 - r};
  IntPolynomial p = factor * tail_part.in_t_squared();
  for (const auto& s : slice_parts) p += s.in_t_squared();
  return p;
}

}  // namespace detail

namespace detail {

inline BettiReport main_from(const DivisorialFan& e, const MainData& m) {
  BettiReport rep;
  rep.dim = static_cast<int>(e.rank) + 1;
  rep.genus = e.curve.genus;
  rep.support = m.support;
  rep.support_size = m.support.size();
  rep.h_tail = toric_h(m.tail);
  std::vector<IntPolynomial> parts;
  for (const auto& [y, f] : m.slices) {
    if (!f.is_complete())
      throw Error(ErrorCategory::Precondition, "slice fan at " + y + " is not complete; is X(E) projective?");
    rep.h_slices[y] = toric_h(f);
    parts.push_back(rep.h_slices[y]);
  }
  rep.poincare = combine(rep.h_tail, parts, e.curve.genus);
  rep.pipeline = "main";
  check_poincare_shape(rep.poincare, rep.dim, rep.pipeline);
  if (rep.poincare.odd_part() != IntPolynomial::monomial(1, 2 * e.curve.genus) * rep.h_tail.in_t_squared())
    throw Error(ErrorCategory::Invariant, "odd part of the Poincare polynomial is not 2gt h(Q; t^2)");
  rep.diagnostics.push_back("valid; contraction-free; complete; projective (asserted)");
  return rep;
}

}  // namespace detail

/// The main formula for projective contraction-free inputs.
inline BettiReport poincare_main(const DivisorialFan& e) { return detail::main_from(e, detail::main_preconditions(e)); }

/// The simplicial case: the same formula written with face counts of the
/// polytopes, cross-checked against the recursion.
namespace detail {

inline bool all_simplicial(const MainData& m) {
  if (!m.tail.is_simplicial()) return false;
  for (const auto& [y, f] : m.slices)
    if (!f.is_simplicial()) return false;
  return true;
}

inline BettiReport simplicial_from(const DivisorialFan& e, const MainData& m) {
  auto require_simplicial = [](const Fan& f, const std::string& where) {
    for (const auto& c : f.maximal_cones())
      if (!c.is_simplicial())
        throw Error(ErrorCategory::Precondition, where + " has the non-simplicial cone " + to_string(c));
  };
  require_simplicial(m.tail, "tail fan");
  for (const auto& [y, f] : m.slices) require_simplicial(f, "slice fan at " + y);

  BettiReport rep;
  rep.dim = static_cast<int>(e.rank) + 1;
  rep.genus = e.curve.genus;
  rep.support = m.support;
  rep.support_size = m.support.size();
  rep.h_tail = face_count_h(m.tail);
  std::vector<IntPolynomial> parts;
  for (const auto& [y, f] : m.slices) {
    rep.h_slices[y] = face_count_h(f);
    parts.push_back(rep.h_slices[y]);
  }
  rep.poincare = detail::combine(rep.h_tail, parts, e.curve.genus);
  rep.pipeline = "simplicial";
  rep.diagnostics.push_back("valid; contraction-free; complete; projective (asserted)");

  const BettiReport main = detail::main_from(e, m);
  if (main.poincare != rep.poincare)
    throw Error(ErrorCategory::Invariant, "simplicial face-count formula gives " + to_string(rep.poincare) +
                                              " but the recursion gives " + to_string(main.poincare));
  return rep;
}

}  // namespace detail

inline BettiReport poincare_smooth_simplicial(const DivisorialFan& e) {
  return detail::simplicial_from(e, detail::main_preconditions(e));
}

// ---------------------------------------------------------------------------
// Non-contraction-free smooth inputs on the projective line

namespace detail {

inline void require_genus_zero(const DivisorialFan& e, const char* what) {
  if (e.curve.genus != 0)
    throw Error(ErrorCategory::Precondition, std::string(what) + " is only defined over the projective line (genus 0)");
}

/// tau^perp cap sigma^vee.
inline Cone dual_face(const Cone& sigma, const Cone& tau) {
  return Cone::from_inequalities(sigma.rays(), tau.rays(), sigma.ambient_rank());
}

/// Sum over the points of min_{D_y} <m, .>.
inline Rational divisor_degree_at(const PolyhedralDivisor& d, const Vector& m) {
  return degree(evaluate_divisor(d, m));
}

/// D(m) is big for m in the relative interior of the weight cone w.
inline bool big_on(const PolyhedralDivisor& d, const Cone& w) {
  if (d.affine_locus()) return true;
  return sgn(divisor_degree_at(d, w.relative_interior_point())) > 0;
}

}  // namespace detail

/// Cones tau of tail(E) that are faces of the tail of some member D with D(m)
/// big on the relative interior of tau^perp cap sigma^vee. Members with an
/// affine locus always count as big.
inline std::vector<Cone> big_fan(const DivisorialFan& e) {
  detail::require_genus_zero(e, "bigfan");
  std::vector<Cone> out;
  if (e.divisors.empty()) return out;
  const Fan tails = tail_fan(e);
  for (const auto& tau : tails.cones()) {
    const bool big = std::any_of(e.divisors.begin(), e.divisors.end(), [&](const PolyhedralDivisor& d) {
      return tau.is_face_of(d.tail()) && detail::big_on(d, detail::dual_face(d.tail(), tau));
    });
    if (big) out.push_back(tau);
  }
  return out;
}

struct PhiClass {
  std::vector<std::pair<std::string, Polyhedron>> members;  // pairs (y, F)
  int codim = 0;
  bool absorbed = false;  // orbits of a tail cone outside bigfan, counted there
};

/// The classes of pairs (y, F), y in supp(E) and F in face(E)_y, glued along
/// the orbits that members with the whole curve as locus contract. Two pairs
/// are identified when a member D with marked tail has equal weight cones
/// lambda(D, F, y) = lambda(D, F', y') on which D(m) is not big. Classes whose
/// contracted weight cone is the dual face of a cone outside bigfan are the
/// orbits of that cone; they are flagged absorbed.
inline std::vector<PhiClass> phi_partition(const DivisorialFan& e) {
  detail::require_genus_zero(e, "Phi");
  const auto supp = support(e);
  std::vector<std::pair<std::string, Polyhedron>> pairs;
  for (const auto& y : supp)
    for (const auto& f : faces_at(e, y)) pairs.emplace_back(y, f.face);
  if (pairs.empty()) return {};

  const Fan tails = tail_fan(e);
  std::vector<Cone> big = big_fan(e);
  auto in_big = [&](const Cone& c) { return std::find(big.begin(), big.end(), c) != big.end(); };

  std::vector<std::size_t> parent(pairs.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<bool> absorbed(pairs.size(), false);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (const auto& d : e.divisors) {
    if (d.affine_locus()) continue;
    const bool marked = std::find(tails.maximal_cones().begin(), tails.maximal_cones().end(), d.tail()) !=
                        tails.maximal_cones().end();
    if (!marked) continue;
    std::vector<Cone> absorbing;
    for (const auto& face : d.tail().faces()) {
      const Cone tau = d.tail().face_cone(face);
      if (!in_big(tau)) absorbing.push_back(detail::dual_face(d.tail(), tau));
    }
    std::map<Cone, std::size_t> first_with;  // contracted weight cone -> pair index
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [y, f] = pairs[i];
      const Polyhedron dy = d.slice(y);
      if (!f.is_face_of(dy)) continue;
      const Cone lambda = normal_cone(dy, f);
      if (detail::big_on(d, lambda)) continue;
      if (std::find(absorbing.begin(), absorbing.end(), lambda) != absorbing.end()) absorbed[i] = true;
      auto [it, fresh] = first_with.emplace(lambda, i);
      if (!fresh) parent[find(i)] = find(it->second);
    }
  }

  std::map<std::size_t, PhiClass> classes;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::size_t root = find(i);
    auto& c = classes[root];
    const int codim = static_cast<int>(e.rank) - pairs[i].second.dim();
    if (!c.members.empty() && c.codim != codim)
      throw Error(ErrorCategory::Invariant, "Phi class mixes codimensions");
    c.codim = codim;
    c.members.push_back(pairs[i]);
    c.absorbed = c.absorbed || absorbed[i];
  }
  std::vector<PhiClass> out;
  for (auto& [root, c] : classes) out.push_back(std::move(c));
  return out;
}

/// Phi: the classes not already counted among the tail cones outside bigfan.
inline std::vector<PhiClass> phi_classes(const DivisorialFan& e) {
  std::vector<PhiClass> out;
  for (auto& c : phi_partition(e))
    if (!c.absorbed) out.push_back(std::move(c));
  return out;
}

/// Smooth complete inputs on the projective line, with or without
/// contraction-free loci:
/// (t^2 + 1 - r) sum c_i (t^2-1)^i + sum d_i (t^2-1)^i + sum e_i (t^2-1)^i.
inline BettiReport poincare_noncf_smooth(const DivisorialFan& e) {
  detail::require_genus_zero(e, "the non-contraction-free smooth formula");
  if (!e.assert_smooth.value_or(false))
    throw Error(ErrorCategory::Precondition, "smoothness of X(E) must be asserted (assert_smooth) for this formula");
  require_valid(e);
  if (!is_complete_variety(e)) throw Error(ErrorCategory::Precondition, "X(E) is not complete");

  const Fan tails = tail_fan(e);
  const auto big = big_fan(e);
  const auto phi = phi_classes(e);
  const auto supp = support(e);
  const long n = static_cast<long>(e.rank);
  std::vector<long> c(n + 1, 0), d(n + 1, 0), ec(n + 1, 0);
  for (const auto& tau : tails.cones()) {
    const auto codim = static_cast<std::size_t>(n - static_cast<long>(tau.dim()));
    if (std::find(big.begin(), big.end(), tau) != big.end()) ++c[codim];
    else ++d[codim];
  }
  for (const auto& cls : phi) ++ec[static_cast<std::size_t>(cls.codim)];

  const IntPolynomial s{-1, 0, 1};  // t^2 - 1
  IntPolynomial cs, ds, es;
  for (long i = 0; i <= n; ++i) {
    cs += IntPolynomial(c[i]) * s.pow(static_cast<unsigned>(i));
    ds += IntPolynomial(d[i]) * s.pow(static_cast<unsigned>(i));
    es += IntPolynomial(ec[i]) * s.pow(static_cast<unsigned>(i));
  }
  const long r = static_cast<long>(supp.size());
  BettiReport rep;
  rep.dim = static_cast<int>(n) + 1;
  rep.genus = 0;
  rep.support = supp;
  rep.support_size = supp.size();
  rep.h_tail = toric_h(tails);
  rep.poincare = IntPolynomial{1 - r, 0, 1} * cs + ds + es;
  rep.pipeline = "noncf-smooth";
  auto counts = [](const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  rep.diagnostics.push_back("valid; complete; smooth (asserted)");
  rep.diagnostics.push_back("bigfan cones by codim: " + counts(c));
  rep.diagnostics.push_back("non-big tail cones by codim: " + counts(d));
  rep.diagnostics.push_back("Phi classes by codim: " + counts(ec));
  detail::check_poincare_shape(rep.poincare, rep.dim, rep.pipeline);
  return rep;
}

// ---------------------------------------------------------------------------
// Hodge-Deligne building blocks

enum class EKind { Torus, Curve };

inline EPolynomial e_polynomial(EKind kind, unsigned arg) {
  return kind == EKind::Torus ? EPolynomial::torus(arg) : EPolynomial::curve(arg);
}
inline EPolynomial e_product(const EPolynomial& a, const EPolynomial& b) { return a * b; }
inline EPolynomial e_sum(const EPolynomial& a, const EPolynomial& b) { return a + b; }

// ---------------------------------------------------------------------------

namespace detail {

inline bool all_slices_simplicial(const DivisorialFan& e) {
  if (!tail_fan(e).is_simplicial()) return false;
  for (const auto& y : support(e))
    if (!slice_fan(e, y, SliceVariant::Full).is_simplicial()) return false;
  return true;
}

}  // namespace detail

/// Picks the applicable formula. When the simplicial form applies, both it
/// and the main formula run and must agree.
inline BettiReport betti_report(const DivisorialFan& e) {
  if (is_contraction_free(e)) {
    const auto m = detail::main_preconditions(e);
    if (detail::all_simplicial(m)) {
      BettiReport rep = detail::simplicial_from(e, m);  // throws on disagreement
      rep.pipeline = "main+simplicial cross-check";
      rep.diagnostics.push_back("simplicial face-count form agrees with the recursion");
      return rep;
    }
    return detail::main_from(e, m);
  }
  require_valid(e);
  if (e.curve.genus != 0)
    throw Error(ErrorCategory::Precondition,
                "a member has the whole curve as locus and the genus is positive; no formula applies");
  if (!e.assert_smooth.value_or(false))
    throw Error(ErrorCategory::Precondition,
                "a member has the whole curve as locus; the applicable formula needs assert_smooth");
  return poincare_noncf_smooth(e);
}

}  // namespace tvb
