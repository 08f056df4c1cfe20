#pragma once

// JSON input documents, fan files and reports. Rationals are written as JSON
// integers or as strings "p/q"; floating point literals are rejected.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tvbetti/betti.hpp"
#include "tvbetti/divisorial.hpp"
#include "tvbetti/fan.hpp"

namespace tvb::io {

using Json = nlohmann::ordered_json;

struct CoefficientRecord {
  std::vector<Vector> vertices;
  std::vector<Vector> rays;  // empty: the divisor's tail
  friend bool operator==(const CoefficientRecord&, const CoefficientRecord&) = default;
};

struct DivisorRecord {
  std::vector<Vector> tail;  // generators; empty for the zero cone
  std::vector<std::string> excluded;
  std::map<std::string, CoefficientRecord> coefficients;
  friend bool operator==(const DivisorRecord&, const DivisorRecord&) = default;
};

struct InputDocument {
  std::size_t rank = 0;
  unsigned genus = 0;
  std::vector<std::string> points;
  std::vector<DivisorRecord> divisors;
  bool assert_projective = false;
  std::optional<bool> assert_smooth;
  bool assert_proper = false;
  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

struct FanDocument {
  std::size_t rank = 0;
  std::vector<Vector> rays;
  std::vector<std::vector<std::size_t>> cones;
  friend bool operator==(const FanDocument&, const FanDocument&) = default;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCategory::Parse, (path.empty() ? std::string("document") : path) + ": " + msg);
}

/// n/d with d <= 10000 equal to x, for the error message.
inline std::string suggest_fraction(double x) {
  for (long d = 1; d <= 10000; ++d) {
    const double n = std::round(x * static_cast<double>(d));
    if (n / static_cast<double>(d) == x) {
      const Rational q(static_cast<long>(n), d);
      return q.get_str();
    }
  }
  return "p/q";
}

inline Rational parse_rational(const Json& j, const std::string& path) {
  if (j.is_number_float()) fail(path, "floating point literal rejected; write " + suggest_fraction(j.get<double>()));
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<unsigned long long>())));
    return Rational(Integer(std::to_string(j.get<long long>())));
  }
  if (!j.is_string()) fail(path, "expected a rational (integer or \"p/q\" string)");
  const std::string s = j.get<std::string>();
  if (s.find_first_of(".eE") != std::string::npos) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end && *end == '\0' && !s.empty()) fail(path, "floating point literal rejected; write " + suggest_fraction(x));
  }
  const auto slash = s.find('/');
  auto is_int = [](const std::string& t) {
    std::size_t k = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (k == t.size()) return false;
    for (; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9') return false;
    return true;
  };
  const std::string num = s.substr(0, slash), den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    fail(path, "malformed rational \"" + s + "\"");
  const Integer d(den);
  if (d == 0) fail(path, "zero denominator in \"" + s + "\"");
  Rational q(Integer(num[0] == '+' ? num.substr(1) : num), d);
  q.canonicalize();
  return q;
}

inline std::string rational_text(const Rational& q) { return q.get_str(); }

inline Json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(rational_text(q));
}

inline Vector parse_vector(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a vector of length " + std::to_string(n));
  if (j.size() != n) fail(path, "expected " + std::to_string(n) + " entries, found " + std::to_string(j.size()));
  std::vector<Rational> xs;
  for (std::size_t k = 0; k < j.size(); ++k) xs.push_back(parse_rational(j[k], path + "[" + std::to_string(k) + "]"));
  return Vector(std::move(xs));
}

inline std::vector<Vector> parse_vectors(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of vectors");
  std::vector<Vector> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(parse_vector(j[k], n, path + "[" + std::to_string(k) + "]"));
  return out;
}

inline Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

inline Json vectors_json(const std::vector<Vector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vector_json(v));
  return a;
}

inline void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) fail(path, "unknown field \"" + k + "\"");
}

inline const Json& required(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) fail(path, "missing field \"" + key + "\"");
  return j.at(key);
}

inline std::size_t parse_count(const Json& j, const std::string& path, bool positive) {
  if (!j.is_number_integer() || j.get<long long>() < (positive ? 1 : 0))
    fail(path, positive ? "expected a positive integer" : "expected a non-negative integer");
  return static_cast<std::size_t>(j.get<long long>());
}

/// Two-space indentation; arrays of scalars stay on one line, every other
/// container puts one element per line. Empty containers are [] and {}.
inline void canonical_dump(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) { out += "{}"; return; }
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(k).dump() + ": ";
      canonical_dump(v, out, indent + 2);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) { out += "[]"; return; }
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (flat) {
      out += "[";
      for (std::size_t k = 0; k < j.size(); ++k) out += (k ? ", " : "") + j[k].dump();
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += (k ? ",\n" : "") + pad;
      canonical_dump(j[k], out, indent + 2);
    }
    out += "\n" + close + "]";
  } else {
    out += j.dump();
  }
}

inline std::string canonical_text(const Json& j) {
  std::string out;
  canonical_dump(j, out, 0);
  return out + "\n";
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCategory::Parse, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Divisorial fan documents

inline InputDocument parse_input(const std::string& text) {
  using namespace detail;
  const Json j = parse_text(text);
  check_keys(j, {"rank", "genus", "points", "divisors", "assert_projective", "assert_smooth", "assert_proper"}, "");
  InputDocument doc;
  doc.rank = parse_count(required(j, "rank", ""), "rank", true);
  doc.genus = static_cast<unsigned>(parse_count(required(j, "genus", ""), "genus", false));

  const Json& pts = required(j, "points", "");
  if (!pts.is_array()) fail("points", "expected a list of labels");
  std::set<std::string> labels;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const std::string path = "points[" + std::to_string(k) + "]";
    if (!pts[k].is_string()) fail(path, "expected a string label");
    const auto y = pts[k].get<std::string>();
    if (y.empty()) fail(path, "empty label");
    if (!labels.insert(y).second) fail(path, "duplicate point label \"" + y + "\"");
    doc.points.push_back(y);
  }

  const Json& divs = required(j, "divisors", "");
  if (!divs.is_array()) fail("divisors", "expected a list of divisors");
  for (std::size_t i = 0; i < divs.size(); ++i) {
    const std::string path = "divisors[" + std::to_string(i) + "]";
    const Json& dj = divs[i];
    check_keys(dj, {"tail", "excluded", "coefficients"}, path);
    DivisorRecord d;
    d.tail = parse_vectors(required(dj, "tail", path), doc.rank, path + ".tail");
    if (dj.contains("excluded")) {
      const Json& ex = dj.at("excluded");
      if (!ex.is_array()) fail(path + ".excluded", "expected a list of labels");
      for (std::size_t k = 0; k < ex.size(); ++k) {
        const std::string p = path + ".excluded[" + std::to_string(k) + "]";
        if (!ex[k].is_string()) fail(p, "expected a string label");
        const auto y = ex[k].get<std::string>();
        if (!labels.count(y)) fail(p, "unknown point label \"" + y + "\"");
        d.excluded.push_back(y);
      }
    }
    if (dj.contains("coefficients")) {
      const Json& cs = dj.at("coefficients");
      if (!cs.is_object()) fail(path + ".coefficients", "expected an object keyed by point label");
      for (const auto& [y, cj] : cs.items()) {
        const std::string p = path + ".coefficients." + y;
        if (!labels.count(y)) fail(p, "coefficient at unknown point label \"" + y + "\"");
        check_keys(cj, {"vertices", "rays"}, p);
        CoefficientRecord c;
        c.vertices = parse_vectors(required(cj, "vertices", p), doc.rank, p + ".vertices");
        if (c.vertices.empty()) fail(p + ".vertices", "a coefficient needs at least one vertex");
        if (cj.contains("rays")) c.rays = parse_vectors(cj.at("rays"), doc.rank, p + ".rays");
        d.coefficients.emplace(y, std::move(c));
      }
    }
    doc.divisors.push_back(std::move(d));
  }

  const Json& proj = required(j, "assert_projective", "");
  if (!proj.is_boolean()) fail("assert_projective", "expected true or false");
  doc.assert_projective = proj.get<bool>();
  if (j.contains("assert_smooth")) {
    if (!j.at("assert_smooth").is_boolean()) fail("assert_smooth", "expected true or false");
    doc.assert_smooth = j.at("assert_smooth").get<bool>();
  }
  if (j.contains("assert_proper")) {
    if (!j.at("assert_proper").is_boolean()) fail("assert_proper", "expected true or false");
    doc.assert_proper = j.at("assert_proper").get<bool>();
  }
  return doc;
}

inline InputDocument parse_input_file(const std::string& path) { return parse_input(read_file(path)); }

/// Canonical text: fixed key order, canonical layout, trailing newline.
inline std::string serialize(const InputDocument& doc) {
  using namespace detail;
  Json j;
  j["rank"] = doc.rank;
  j["genus"] = doc.genus;
  j["points"] = doc.points;
  j["divisors"] = Json::array();
  for (const auto& d : doc.divisors) {
    Json dj;
    dj["tail"] = vectors_json(d.tail);
    dj["excluded"] = d.excluded;
    Json cs = Json::object();
    for (const auto& [y, c] : d.coefficients) {
      Json cj;
      cj["vertices"] = vectors_json(c.vertices);
      if (!c.rays.empty()) cj["rays"] = vectors_json(c.rays);
      cs[y] = cj;
    }
    dj["coefficients"] = cs;
    j["divisors"].push_back(dj);
  }
  j["assert_projective"] = doc.assert_projective;
  if (doc.assert_smooth) j["assert_smooth"] = *doc.assert_smooth;
  j["assert_proper"] = doc.assert_proper;
  return canonical_text(j);
}

/// Builds the divisorial fan; malformed divisors are parse errors naming the field.
inline DivisorialFan to_divisorial_fan(const InputDocument& doc) {
  DivisorialFan e;
  e.curve = {doc.genus, doc.points};
  e.rank = doc.rank;
  e.assert_projective = doc.assert_projective;
  e.assert_smooth = doc.assert_smooth;
  e.assert_proper = doc.assert_proper;
  for (std::size_t i = 0; i < doc.divisors.size(); ++i) {
    const auto& d = doc.divisors[i];
    const std::string path = "divisors[" + std::to_string(i) + "]";
    const Cone tail = Cone::from_generators(d.tail, doc.rank);
    if (!tail.strongly_convex()) detail::fail(path + ".tail", "cone " + to_string(tail) + " is not strongly convex");
    std::map<std::string, Polyhedron> coeffs;
    for (const auto& [y, c] : d.coefficients) {
      if (!c.rays.empty() && Cone::from_generators(c.rays, doc.rank) != tail)
        detail::fail(path + ".coefficients." + y + ".rays", "rays do not generate the tail " + to_string(tail));
      coeffs.emplace(y, Polyhedron::minkowski_sum(std::span<const Vector>(c.vertices), tail));
    }
    std::set<std::string> excluded(d.excluded.begin(), d.excluded.end());
    try {
      e.divisors.emplace_back(tail, std::move(excluded), std::move(coeffs));
    } catch (const Error& err) {
      detail::fail(path, err.what());
    }
  }
  return e;
}

/// The canonical document of a divisorial fan: primitive tail rays, sorted
/// vertices, trivial coefficients omitted.
inline InputDocument to_document(const DivisorialFan& e) {
  InputDocument doc;
  doc.rank = e.rank;
  doc.genus = e.curve.genus;
  doc.points = e.curve.points;
  doc.assert_projective = e.assert_projective;
  doc.assert_smooth = e.assert_smooth;
  doc.assert_proper = e.assert_proper;
  for (const auto& d : e.divisors) {
    DivisorRecord r;
    r.tail = d.tail().rays();
    r.excluded.assign(d.excluded().begin(), d.excluded().end());
    for (const auto& [y, p] : d.coefficients()) r.coefficients[y] = {p.vertices(), {}};
    doc.divisors.push_back(std::move(r));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Fan files: {"rank", "rays", "cones"}, cones as lists of ray indices.

inline FanDocument parse_fan_document(const std::string& text) {
  using namespace detail;
  const Json j = parse_text(text);
  check_keys(j, {"rank", "rays", "cones"}, "");
  FanDocument doc;
  doc.rank = parse_count(required(j, "rank", ""), "rank", true);
  doc.rays = parse_vectors(required(j, "rays", ""), doc.rank, "rays");
  for (std::size_t k = 0; k < doc.rays.size(); ++k)
    if (doc.rays[k].is_zero()) fail("rays[" + std::to_string(k) + "]", "zero ray");
  const Json& cs = required(j, "cones", "");
  if (!cs.is_array()) fail("cones", "expected a list of ray index lists");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string path = "cones[" + std::to_string(i) + "]";
    if (!cs[i].is_array()) fail(path, "expected a list of ray indices");
    std::vector<std::size_t> ids;
    for (std::size_t k = 0; k < cs[i].size(); ++k) {
      const std::string p = path + "[" + std::to_string(k) + "]";
      const std::size_t id = parse_count(cs[i][k], p, false);
      if (id >= doc.rays.size()) fail(p, "ray index " + std::to_string(id) + " out of range");
      ids.push_back(id);
    }
    doc.cones.push_back(std::move(ids));
  }
  return doc;
}

inline Fan to_fan(const FanDocument& doc) {
  std::vector<Cone> cones;
  for (const auto& ids : doc.cones) {
    std::vector<Vector> gens;
    for (auto id : ids) gens.push_back(doc.rays[id]);
    cones.push_back(Cone::from_generators(gens, doc.rank));
  }
  return Fan::build(cones, doc.rank);
}

inline Fan parse_fan(const std::string& text) { return to_fan(parse_fan_document(text)); }

/// Rays in the fan's order, maximal cones as sorted index lists.
inline FanDocument to_document(const Fan& f) {
  FanDocument doc;
  doc.rank = f.ambient_rank();
  doc.rays = f.rays();
  for (std::size_t i = 0; i < f.cones().size(); ++i) {
    const Cone& c = f.cones()[i];
    if (std::find(f.maximal_cones().begin(), f.maximal_cones().end(), c) == f.maximal_cones().end()) continue;
    doc.cones.push_back(f.ray_ids(i));
  }
  std::sort(doc.cones.begin(), doc.cones.end());
  return doc;
}

inline std::string serialize(const FanDocument& doc) {
  using namespace detail;
  Json j;
  j["rank"] = doc.rank;
  j["rays"] = vectors_json(doc.rays);
  j["cones"] = doc.cones;
  return canonical_text(j);
}

inline std::string serialize(const Fan& f) { return serialize(to_document(f)); }

// ---------------------------------------------------------------------------
// Reports

inline Json coefficients_json(const IntPolynomial& p, int degree) {
  Json a = Json::array();
  for (int k = 0; k <= degree; ++k) {
    const Integer c = p.coeff(k);
    if (c.fits_slong_p()) a.push_back(c.get_si());
    else a.push_back(c.get_str());
  }
  return a;
}

/// Exactly the fields of the report; "poincare" lists b_0 .. b_2d.
inline Json report_json(const BettiReport& r) {
  Json j;
  j["poincare"] = coefficients_json(r.poincare, 2 * r.dim);
  j["dim"] = r.dim;
  j["h_tail"] = coefficients_json(r.h_tail, r.dim - 1);
  j["h_slices"] = Json::object();
  for (const auto& [y, h] : r.h_slices) j["h_slices"][y] = coefficients_json(h, r.dim);
  j["genus"] = r.genus;
  j["support_size"] = r.support_size;
  j["support"] = r.support;
  j["pipeline"] = r.pipeline;
  j["diagnostics"] = r.diagnostics;
  return j;
}

/// "(1, 2, 1)": the coefficients up to the given degree.
inline std::string tuple_text(const IntPolynomial& p, int degree) {
  std::string s = "(";
  for (int k = 0; k <= degree; ++k) s += (k ? ", " : "") + p.coeff(k).get_str();
  return s + ")";
}

inline std::string report_text(const BettiReport& r) {
  std::ostringstream os;
  os << "P(t) = " << to_string(r.poincare) << "\n";
  os << "betti = " << tuple_text(r.poincare, 2 * r.dim) << "\n";
  os << "pipeline: " << r.pipeline << "\n";
  os << "dim = " << r.dim << ", genus = " << r.genus << ", support = {";
  for (std::size_t i = 0; i < r.support.size(); ++i) os << (i ? ", " : "") << r.support[i];
  os << "}\n";
  os << "h_tail = " << tuple_text(r.h_tail, r.dim - 1) << "\n";
  for (const auto& [y, h] : r.h_slices) os << "h_" << y << " = " << tuple_text(h, r.dim) << "\n";
  for (const auto& d : r.diagnostics) os << "note: " << d << "\n";
  return os.str();
}

inline Json validation_json(const ValidationReport& rep) {
  Json j;
  j["valid"] = rep.ok();
  j["degenerate"] = rep.degenerate;
  j["violations"] = Json::array();
  for (const auto& v : rep.violations) {
    Json vj;
    vj["kind"] = violation_name(v.kind);
    vj["divisors"] = v.divisors;
    vj["point"] = v.point;
    vj["message"] = v.message;
    j["violations"].push_back(vj);
  }
  return j;
}

inline std::string validation_text(const ValidationReport& rep) {
  std::ostringstream os;
  if (rep.ok()) os << "valid" << (rep.degenerate ? " (degenerate: no divisors)" : "") << "\n";
  else os << "invalid: " << rep.violations.size() << " violation" << (rep.violations.size() == 1 ? "" : "s") << "\n";
  for (const auto& v : rep.violations) os << "  [" << violation_name(v.kind) << "] " << v.message << "\n";
  return os.str();
}

}  // namespace tvb::io
