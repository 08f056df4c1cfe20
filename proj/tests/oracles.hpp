#pragma once

// Independent reference implementations used only by the tests. Nothing here
// shares code paths with the double description kernel.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <set>
#include <vector>

#include "tvbetti/exactlin.hpp"

namespace oracle {

using tvb::Rational;
using tvb::Vector;

/// Solves the square system A x = b by Gaussian elimination; empty if singular.
inline std::optional<Vector> solve(const std::vector<Vector>& a, const std::vector<Rational>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = a[i].entries();
    m[i].push_back(b[i]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t k = c; k <= n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return Vector(std::move(x));
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

/// A full-dimensional polyhedron { x : <a_i, x> >= b_i }.
struct HPolyhedron {
  std::vector<Vector> a;
  std::vector<Rational> b;
  std::size_t n = 0;

  bool feasible(const Vector& x) const {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (tvb::dot(a[i], x) < b[i]) return false;
    return true;
  }
};

/// Vertices by basis enumeration: every n-subset of constraints with a unique
/// feasible solution.
inline std::set<Vector> vertices(const HPolyhedron& p) {
  std::set<Vector> out;
  for_each_subset(p.a.size(), p.n, [&](const std::vector<std::size_t>& s) {
    std::vector<Vector> rows;
    std::vector<Rational> rhs;
    for (auto i : s) {
      rows.push_back(p.a[i]);
      rhs.push_back(p.b[i]);
    }
    auto x = solve(rows, rhs);
    if (x && p.feasible(*x)) out.insert(*x);
  });
  return out;
}

/// Extreme rays of the recession cone: kernels of (n-1)-subsets that are
/// feasible in one direction.
inline std::set<Vector> rays(const HPolyhedron& p) {
  std::set<Vector> out;
  if (p.n == 0) return out;
  for_each_subset(p.a.size(), p.n - 1, [&](const std::vector<std::size_t>& s) {
    std::vector<Vector> rows;
    for (auto i : s) rows.push_back(p.a[i]);
    if (tvb::rank(rows, p.n) != p.n - 1) return;
    const auto ker = tvb::nullspace(rows, p.n);
    for (const Vector& d : {ker[0], -ker[0]}) {
      bool ok = true;
      for (const auto& ai : p.a)
        if (sgn(tvb::dot(ai, d)) < 0) ok = false;
      if (ok) out.insert(tvb::primitive(d));
    }
  });
  return out;
}

struct OracleFace {
  std::set<Vector> verts;
  std::set<Vector> rays;
  int dim = -1;
  bool operator<(const OracleFace& o) const {
    return std::tie(dim, verts, rays) < std::tie(o.dim, o.verts, o.rays);
  }
  bool operator==(const OracleFace& o) const {
    return dim == o.dim && verts == o.verts && rays == o.rays;
  }
};

/// All non-empty faces: for every subset S of inequalities made tight, the
/// vertices and rays tight on S. Pointed polyhedra have a vertex in every
/// non-empty face, so emptiness is decided by the vertex set.
inline std::set<OracleFace> faces(const HPolyhedron& p) {
  const auto vs = vertices(p);
  const auto rs = rays(p);
  std::set<OracleFace> out;
  const std::size_t m = p.a.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    OracleFace f;
    for (const auto& v : vs) {
      bool tight = true;
      for (std::size_t i = 0; i < m; ++i)
        if ((mask >> i & 1) && tvb::dot(p.a[i], v) != p.b[i]) tight = false;
      if (tight) f.verts.insert(v);
    }
    if (f.verts.empty()) continue;
    for (const auto& r : rs) {
      bool tight = true;
      for (std::size_t i = 0; i < m; ++i)
        if ((mask >> i & 1) && sgn(tvb::dot(p.a[i], r)) != 0) tight = false;
      if (tight) f.rays.insert(r);
    }
    std::vector<Vector> span;
    const Vector v0 = *f.verts.begin();
    for (const auto& v : f.verts) span.push_back(v - v0);
    for (const auto& r : f.rays) span.push_back(r);
    f.dim = static_cast<int>(tvb::rank(span, p.n));
    out.insert(f);
  }
  return out;
}

/// Invariant factors as gcds of k x k minors: d_k = D_k / D_{k-1}.
inline std::vector<tvb::Integer> invariant_factors(const tvb::Matrix& m) {
  std::vector<tvb::Integer> out;
  tvb::Integer prev = 1;
  const std::size_t r = m.n_rows(), c = m.n_cols();
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    tvb::Integer g = 0;
    for_each_subset(r, k, [&](const std::vector<std::size_t>& rows) {
      for_each_subset(c, k, [&](const std::vector<std::size_t>& cols) {
        std::vector<Vector> sub;
        for (auto i : rows) {
          std::vector<Rational> xs;
          for (auto j : cols) xs.push_back(m(i, j));
          sub.emplace_back(std::move(xs));
        }
        const Rational d = tvb::determinant(tvb::Matrix(sub, k));
        tvb::Integer dn = d.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), dn.get_mpz_t());
      });
    });
    if (g == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(prev == 0 ? tvb::Integer(0) : tvb::Integer(g / prev));
    prev = g;
  }
  return out;
}

}  // namespace oracle
