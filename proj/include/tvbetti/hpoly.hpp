#pragma once

// The toric g- and h-polynomials, computed by the mutual recursion over the
// proper faces of every element of a face poset.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tvbetti/face_poset.hpp"
#include "tvbetti/polynomial.hpp"

namespace tvb {

namespace detail {

/// g from h for an element of rank d: the coefficients h_k - h_{k-1} for k <= d/2.
inline IntPolynomial g_from_h(const IntPolynomial& h, int d) {
  std::vector<Integer> xs;
  for (int k = 0; 2 * k <= d; ++k) xs.push_back(h.coeff(k) - h.coeff(k - 1));
  return IntPolynomial(std::move(xs));
}

class HRecursion {
 public:
  explicit HRecursion(const FacePoset& p) : p_(p), g_(p.size()) {}

  IntPolynomial h(std::size_t x) {
    const int d = p_.dim(x);
    if (d < 0) return 1;
    const IntPolynomial tm1{-1, 1};
    IntPolynomial out;
    for (std::size_t y = 0; y < p_.size(); ++y)
      if (p_.less(y, x)) out += g(y) * tm1.pow(static_cast<unsigned>(d - 1 - p_.dim(y)));
    return out;
  }

  const IntPolynomial& g(std::size_t x) {
    if (!g_[x]) g_[x] = p_.dim(x) < 0 ? IntPolynomial(1) : g_from_h(h(x), p_.dim(x));
    return *g_[x];
  }

 private:
  const FacePoset& p_;
  std::vector<std::optional<IntPolynomial>> g_;
};

}  // namespace detail

/// h of the maximal element: sum over proper faces y of g(y)(t-1)^(p-1-dim y).
inline IntPolynomial h_polynomial(const FacePoset& p) {
  detail::HRecursion r(p);
  return r.h(p.top());
}

/// g of the maximal element; 1 for the poset consisting of the empty face.
inline IntPolynomial g_polynomial(const FacePoset& p) {
  detail::HRecursion r(p);
  return r.g(p.top());
}

/// sum_{i=-1}^{p-1} d_i (t-1)^{p-1-i}, with counts[0] = d_{-1}.
inline IntPolynomial h_simplicial(std::span<const long> counts, int p) {
  const IntPolynomial tm1{-1, 1};
  IntPolynomial out;
  for (int i = -1; i <= p - 1; ++i) {
    const auto idx = static_cast<std::size_t>(i + 1);
    if (idx >= counts.size()) break;
    out += IntPolynomial(counts[idx]) * tm1.pow(static_cast<unsigned>(p - 1 - i));
  }
  return out;
}

}  // namespace tvb
