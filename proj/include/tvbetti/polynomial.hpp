#pragma once

// Dense integer polynomials in t, and two-variable Hodge-Deligne polynomials.

#include <climits>
#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tvbetti/exactlin.hpp"

namespace tvb {

class IntPolynomial {
 public:
  IntPolynomial() = default;
  IntPolynomial(long c) : coeffs_{Integer(c)} { normalize(); }  // NOLINT: constants convert
  explicit IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  IntPolynomial(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.emplace_back(c);
    normalize();
  }

  static IntPolynomial monomial(std::size_t k, const Integer& c = 1) {
    std::vector<Integer> xs(k + 1, 0);
    xs[k] = c;
    return IntPolynomial(std::move(xs));
  }

  /// Degree; INT_MIN for the zero polynomial.
  int degree() const noexcept { return coeffs_.empty() ? INT_MIN : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }

  /// Coefficient of t^k; zero outside the stored range, including k < 0.
  Integer coeff(long k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= coeffs_.size()) return 0;
    return coeffs_[static_cast<std::size_t>(k)];
  }

  /// p(t^2).
  IntPolynomial in_t_squared() const {
    std::vector<Integer> xs(coeffs_.empty() ? 0 : 2 * coeffs_.size() - 1, 0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) xs[2 * k] = coeffs_[k];
    return IntPolynomial(std::move(xs));
  }

  /// The part made of odd powers of t.
  IntPolynomial odd_part() const {
    std::vector<Integer> xs(coeffs_.size(), 0);
    for (std::size_t k = 1; k < coeffs_.size(); k += 2) xs[k] = coeffs_[k];
    return IntPolynomial(std::move(xs));
  }

  Integer evaluate(const Integer& t) const {
    Integer s = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * t + *it;
    return s;
  }

  IntPolynomial pow(unsigned e) const {
    IntPolynomial out(1), base = *this;
    while (e) {
      if (e & 1) out = out * base;
      base = base * base;
      e >>= 1;
    }
    return out;
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Integer> xs(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) xs[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) xs[k] += b.coeffs_[k];
    return IntPolynomial(std::move(xs));
  }
  friend IntPolynomial operator-(const IntPolynomial& a) {
    std::vector<Integer> xs = a.coeffs_;
    for (auto& x : xs) x = -x;
    return IntPolynomial(std::move(xs));
  }
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> xs(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) xs[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(xs));
  }
  IntPolynomial& operator+=(const IntPolynomial& b) { return *this = *this + b; }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) { return !(a == b); }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Integer> coeffs_;
};

/// The polynomial t.
inline IntPolynomial t_var() { return IntPolynomial::monomial(1); }

/// True iff the coefficient of t^k equals that of t^(center-k) for every k.
inline bool is_palindromic(const IntPolynomial& q, int center) {
  if (q.degree() > center) return false;
  for (int k = 0; k <= center; ++k)
    if (q.coeff(k) != q.coeff(center - k)) return false;
  return true;
}

/// "1 + 2t^2 + t^4" style rendering, ascending degree.
inline std::string to_string(const IntPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int k = 0; k <= p.degree(); ++k) {
    Integer c = p.coeff(k);
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    if (k == 0 || c != 1) s += c.get_str();
    if (k >= 1) s += "t";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << to_string(p); }

/// Integer polynomial in u and v, stored sparsely by exponent pair.
class EPolynomial {
 public:
  using Exponent = std::pair<unsigned, unsigned>;

  EPolynomial() = default;
  explicit EPolynomial(std::map<Exponent, Integer> terms) : terms_(std::move(terms)) { normalize(); }

  static EPolynomial constant(long c) {
    std::map<Exponent, Integer> t;
    t[{0, 0}] = c;
    return EPolynomial(std::move(t));
  }

  /// (uv - 1)^r, the torus of rank r.
  static EPolynomial torus(unsigned r) {
    const EPolynomial uv1(std::map<Exponent, Integer>{{{1, 1}, 1}, {{0, 0}, -1}});
    EPolynomial out = constant(1);
    for (unsigned i = 0; i < r; ++i) out = out * uv1;
    return out;
  }

  /// uv - g(u+v) + 1, a smooth projective curve of genus g.
  static EPolynomial curve(unsigned g) {
    return EPolynomial(
        std::map<Exponent, Integer>{{{1, 1}, 1}, {{1, 0}, -Integer(g)}, {{0, 1}, -Integer(g)}, {{0, 0}, 1}});
  }

  const std::map<Exponent, Integer>& terms() const noexcept { return terms_; }

  bool is_symmetric() const {
    for (const auto& [e, c] : terms_) {
      auto it = terms_.find({e.second, e.first});
      if (it == terms_.end() || it->second != c) return false;
    }
    return true;
  }

  /// E(-t, -t), which for pure Hodge structures is the Poincare polynomial.
  IntPolynomial at_minus_t() const {
    IntPolynomial out;
    for (const auto& [e, c] : terms_) {
      const unsigned k = e.first + e.second;
      out += IntPolynomial::monomial(k, (k % 2 ? Integer(-c) : c));
    }
    return out;
  }

  friend EPolynomial operator+(const EPolynomial& a, const EPolynomial& b) {
    auto t = a.terms_;
    for (const auto& [e, c] : b.terms_) t[e] += c;
    return EPolynomial(std::move(t));
  }
  friend EPolynomial operator*(const EPolynomial& a, const EPolynomial& b) {
    std::map<Exponent, Integer> t;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) t[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
    return EPolynomial(std::move(t));
  }
  friend bool operator==(const EPolynomial& a, const EPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  void normalize() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }

  std::map<Exponent, Integer> terms_;
};

inline std::string to_string(const EPolynomial& p) {
  if (p.terms().empty()) return "0";
  std::string s;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c0] = *it;
    Integer c = c0;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    const bool unit = e.first == 0 && e.second == 0;
    if (unit || c != 1) s += c.get_str();
    auto var = [&](const char* name, unsigned k) {
      if (k == 0) return;
      s += name;
      if (k > 1) s += "^" + std::to_string(k);
    };
    var("u", e.first);
    var("v", e.second);
  }
  return s;
}

}  // namespace tvb
