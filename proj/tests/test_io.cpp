#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "corpus.hpp"
#include "fixtures.hpp"
#include "tvbetti/io.hpp"

using namespace tvb;
namespace fs = std::filesystem;

namespace {

const fs::path corpus_dir = TVB_CORPUS_DIR;

std::string corpus_file(const std::string& name) { return io::read_file((corpus_dir / name).string()); }

/// The error raised by parsing and building; fails the test when nothing is thrown.
Error parse_error(const std::string& text) {
  try {
    io::to_divisorial_fan(io::parse_input(text));
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return Error(ErrorCategory::Invariant, "");
}

void expect_parse_error(const std::string& text, const std::string& fragment) {
  const Error e = parse_error(text);
  EXPECT_EQ(e.category(), ErrorCategory::Parse) << e.what();
  EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
}

/// Rank-1 document over P1 with one divisor; the divisor object is spliced in.
std::string one_divisor(const std::string& divisor, const std::string& extra = "") {
  return R"({"rank": 1, "genus": 0, "points": ["0", "inf"], "divisors": [)" + divisor +
         R"(], "assert_projective": false)" + extra + "}";
}

std::vector<fs::path> documents() {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(corpus_dir))
    if (entry.path().extension() == ".json") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Input, TwoDivisorSurface) {
  const auto doc = io::parse_input(corpus_file("two_divisor_surface.json"));
  EXPECT_EQ(doc.rank, 1u);
  EXPECT_EQ(doc.genus, 0u);
  EXPECT_EQ(doc.divisors.size(), 6u);
  EXPECT_TRUE(doc.assert_projective);
  EXPECT_FALSE(doc.assert_smooth.has_value());
  const auto e = io::to_divisorial_fan(doc);
  EXPECT_EQ(e.divisors, corpus::two_divisor_surface().divisors);
}

TEST(Input, CorpusFilesAreCanonical) {
  const auto docs = documents();
  ASSERT_GE(docs.size(), 8u);
  for (const auto& p : docs) {
    SCOPED_TRACE(p.string());
    const std::string text = io::read_file(p.string());
    const auto doc = io::parse_input(text);
    EXPECT_EQ(io::serialize(doc), text);
    EXPECT_EQ(io::parse_input(io::serialize(doc)), doc);
  }
}

TEST(Input, RoundTripIsIdentity) {
  // Non-canonical spellings: reordered keys, "+3/6", missing optional fields.
  const std::string text = R"({"points": ["a", "b"], "genus": 1, "rank": 2,
    "divisors": [{"coefficients": {"a": {"rays": [[0, 1], [1, 0]], "vertices": [["+3/6", "-2/4"], [1, 0]]}},
                  "tail": [[1, 0], [0, 1]]}],
    "assert_proper": true, "assert_projective": true, "assert_smooth": false})";
  const auto doc = io::parse_input(text);
  EXPECT_EQ(doc.divisors[0].coefficients.at("a").vertices[0], (Vector{Rational(1, 2), Rational(-1, 2)}));
  const auto again = io::parse_input(io::serialize(doc));
  EXPECT_EQ(again, doc);
  EXPECT_EQ(io::serialize(again), io::serialize(doc));
}

TEST(Input, DivisorialFansSurviveSerialization) {
  for (const auto& en : corpus::divisorial_corpus()) {
    SCOPED_TRACE(en.name);
    const auto doc = io::to_document(en.e);
    const auto back = io::to_divisorial_fan(io::parse_input(io::serialize(doc)));
    EXPECT_EQ(back.divisors, en.e.divisors);
    EXPECT_EQ(back.curve.points, en.e.curve.points);
    EXPECT_EQ(back.curve.genus, en.e.curve.genus);
    EXPECT_EQ(back.assert_smooth, en.e.assert_smooth);
    EXPECT_EQ(io::to_document(back), doc);
  }
}

TEST(Input, FloatsAreRejected) {
  const std::string half_string = one_divisor(R"({"tail": [[1]], "excluded": ["inf"], "coefficients": {"0": {"vertices": [["0.5"]]}}})");
  expect_parse_error(half_string, "floating point literal rejected; write 1/2");
  const std::string half_number = one_divisor(R"({"tail": [[1]], "excluded": ["inf"], "coefficients": {"0": {"vertices": [[0.5]]}}})");
  expect_parse_error(half_number, "floating point literal rejected; write 1/2");
  expect_parse_error(half_number, "divisors[0].coefficients.0.vertices[0][0]");
  expect_parse_error(one_divisor(R"({"tail": [[1.0]]})"), "write 1");
  expect_parse_error(one_divisor(R"({"tail": [["-1.25"]]})"), "write -5/4");
  expect_parse_error(one_divisor(R"({"tail": [["1e2"]]})"), "write 100");
}

TEST(Input, UnknownLabelsAreNamed) {
  expect_parse_error(one_divisor(R"({"tail": [[1]], "coefficients": {"zero": {"vertices": [[1]]}}})"), "\"zero\"");
  expect_parse_error(one_divisor(R"({"tail": [[1]], "excluded": ["infinity"]})"), "\"infinity\"");
}

TEST(Input, MalformedDocuments) {
  expect_parse_error("{", "malformed JSON");
  expect_parse_error(R"({"rank": 1})", "missing field \"genus\"");
  expect_parse_error(one_divisor(R"({"tail": [[1]]})", R"(, "colour": "red")"), "unknown field \"colour\"");
  expect_parse_error(one_divisor(R"({"tail": [[1]], "weight": 2})"), "divisors[0]: unknown field \"weight\"");
  expect_parse_error(one_divisor(R"({"tail": [[1, 0]]})"), "divisors[0].tail[0]: expected 1 entries, found 2");
  expect_parse_error(one_divisor(R"({"tail": [["1/0"]]})"), "zero denominator");
  expect_parse_error(one_divisor(R"({"tail": [["1/-2"]]})"), "malformed rational");
  expect_parse_error(one_divisor(R"({"tail": [["x"]]})"), "malformed rational");
  expect_parse_error(one_divisor(R"({"tail": [[true]]})"), "expected a rational");
  expect_parse_error(R"({"rank": 0, "genus": 0, "points": [], "divisors": [], "assert_projective": true})",
                     "rank: expected a positive integer");
  expect_parse_error(R"({"rank": 1, "genus": 0, "points": ["a", "a"], "divisors": [], "assert_projective": true})",
                     "points[1]: duplicate point label \"a\"");
  expect_parse_error(one_divisor(R"({"tail": [[1]], "coefficients": {"0": {"vertices": []}}})"), "at least one vertex");
}

TEST(Input, SemanticErrorsCarryFieldPaths) {
  // Coefficient at an excluded point.
  expect_parse_error(one_divisor(R"({"tail": [[1]], "excluded": ["0"], "coefficients": {"0": {"vertices": [[1]]}}})"),
                     "divisors[0]: coefficient given at excluded point 0");
  expect_parse_error(one_divisor(R"({"tail": [[1], [-1]]})"), "divisors[0].tail: cone");
  expect_parse_error(one_divisor(R"({"tail": [[1]], "coefficients": {"0": {"vertices": [[1]], "rays": [[-1]]}}})"),
                     "divisors[0].coefficients.0.rays: rays do not generate the tail");
  // Semantic problems are not parse problems: this document parses and builds.
  EXPECT_NO_THROW(io::to_divisorial_fan(io::parse_input(one_divisor(R"({"tail": [[1]]})"))));
}

TEST(FanFile, ToricHOfCorpusFans) {
  const std::vector<std::pair<std::string, IntPolynomial>> expected = {
      {"p1.json", IntPolynomial{1, 1}},
      {"p2.json", IntPolynomial{1, 1, 1}},
      {"p1xp1.json", IntPolynomial{1, 2, 1}},
      {"cube_dual.json", IntPolynomial{1, 3, 3, 1}},
      {"square_pyramid_dual.json", IntPolynomial{1, 2, 2, 1}},
  };
  for (const auto& [name, h] : expected) {
    SCOPED_TRACE(name);
    const std::string text = corpus_file("fans/" + name);
    const Fan f = io::parse_fan(text);
    EXPECT_EQ(toric_h(f), h);
    EXPECT_EQ(io::serialize(f), text);
  }
}

TEST(FanFile, RoundTrip) {
  for (const auto& [name, f] : corpus::fan_corpus()) {
    SCOPED_TRACE(name);
    const std::string text = io::serialize(f);
    EXPECT_EQ(io::parse_fan(text), f);
    EXPECT_EQ(io::serialize(io::parse_fan(text)), text);
  }
}

TEST(FanFile, Errors) {
  auto category = [](const std::string& text) -> std::optional<ErrorCategory> {
    try {
      io::parse_fan(text);
    } catch (const Error& e) {
      return e.category();
    }
    return std::nullopt;
  };
  EXPECT_EQ(category(R"({"rank": 2, "rays": [[1, 0]], "cones": [[1]]})"), ErrorCategory::Parse);
  EXPECT_EQ(category(R"({"rank": 2, "rays": [[0, 0]], "cones": [[0]]})"), ErrorCategory::Parse);
  EXPECT_EQ(category(R"({"rank": 2, "rays": [[1, 0]], "cones": [[0]], "name": "x"})"), ErrorCategory::Parse);
  // The same cone listed twice is one cone; overlapping cones violate the fan axioms.
  EXPECT_EQ(category(R"({"rank": 1, "rays": [[1], [2]], "cones": [[0], [1]]})"), std::nullopt);
  EXPECT_EQ(category(R"({"rank": 2, "rays": [[1, 0], [0, 1], [1, 1]], "cones": [[0, 1], [1, 2]]})"), ErrorCategory::Axiom);
}

TEST(Report, MachineFieldsAreExactlyTheReport) {
  const BettiReport r = betti_report(corpus::two_divisor_surface());
  const io::Json j = io::report_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"poincare", "dim", "h_tail", "h_slices", "genus", "support_size", "support",
                                             "pipeline", "diagnostics"}));
  EXPECT_EQ(j["poincare"], io::Json::parse("[1, 0, 2, 0, 1]"));
  EXPECT_EQ(j["h_tail"], io::Json::parse("[1, 1]"));
  EXPECT_EQ(j["h_slices"]["0"], io::Json::parse("[1, 2, 1]"));
  EXPECT_EQ(j.dump().find(": "), std::string::npos);
}

TEST(Report, TextStartsWithThePoincarePolynomial) {
  const std::string text = io::report_text(betti_report(corpus::two_divisor_surface()));
  EXPECT_EQ(text.substr(0, text.find('\n')), "P(t) = 1 + 2t^2 + t^4");
}

TEST(Report, CanonicalLayout) {
  const io::Json j = io::Json::parse(R"({"a": [1, [2, 3]], "b": {}, "c": [], "d": {"e": ["x"]}})");
  EXPECT_EQ(io::detail::canonical_text(j),
            "{\n  \"a\": [\n    1,\n    [2, 3]\n  ],\n  \"b\": {},\n  \"c\": [],\n  \"d\": {\n    \"e\": [\"x\"]\n  }\n}\n");
}
