#include "doctest.h"
#include "testkit.hpp"
#include "ugkit/error.hpp"

using namespace ugkit;
using testkit::fixture;

namespace {

std::vector<Issue> issues_of(std::string_view text) {
  try {
    parse_document(text);
  } catch (const ValidationError& e) {
    return e.issues();
  }
  return {};
}

}  // namespace

TEST_SUITE("document") {

TEST_CASE("canonical round trip over the corpus") {
  for (const auto& name : testkit::corpus_documents()) {
    const std::string text = testkit::slurp(testkit::corpus_path(name + ".ug"));
    CHECK_MESSAGE(print_document(parse_document(text)) == text, name);
  }
}

TEST_CASE("non-canonical input prints canonically") {
  const std::string messy =
      "# comment\n"
      "ultragraph   UG1\n"
      "vertices: v w x   # trailing\n"
      "\n"
      "edge e: v -> { x v w }\n"
      "edge f: w -> {x}\n"
      "edge g: x -> { w } + { v }\n";
  CHECK(print_document(parse_document(messy)) == testkit::slurp(testkit::corpus_path("UG1.ug")));
}

TEST_CASE("empty range is reported with its position") {
  auto issues = issues_of("ultragraph bad\nvertices: v\nedge e: v -> { }\n");
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].code == ErrorCode::EmptyRange);
  CHECK(issues[0].line == 3);
  CHECK(issues[0].column == 14);
}

TEST_CASE("cofinite ranges") {
  Ultragraph g = fixture("UG6");
  VertexSet r = g.range(EdgeId::named(0));
  CHECK_FALSE(r.is_finite());
  CHECK_FALSE(r.contains(VertexId::on_ray(0, 1)));
  CHECK(r.contains(VertexId::on_ray(0, 2)));
  CHECK_FALSE(r.contains(VertexId::core(0)));
}

TEST_CASE("validation issues") {
  auto unknown = issues_of("ultragraph bad\nvertices: v\nedge e: v -> { q }\n");
  // The unresolved member also leaves the range empty.
  REQUIRE(unknown.size() == 2);
  CHECK(unknown[0].code == ErrorCode::UnknownVertex);

  auto dup = issues_of("ultragraph bad\nvertices: v v\n");
  REQUIRE_FALSE(dup.empty());
  CHECK(dup[0].code == ErrorCode::DuplicateId);

  auto cyc = issues_of("ultragraph bad\nvertices: v\nfamily g at v: prefix [ ] cycle [ ]\n");
  REQUIRE_FALSE(cyc.empty());
  CHECK(cyc[0].code == ErrorCode::EmptyCycle);

  // All problems are reported together.
  auto many = issues_of("ultragraph bad\nvertices: v\nedge e: v -> { }\nedge f: q -> { v }\n");
  CHECK(many.size() == 2);
}

TEST_CASE("syntax errors carry positions") {
  auto missing = issues_of("ultragraph bad\nvertices: v\nedge e v -> { v }\n");
  REQUIRE(missing.size() == 1);
  CHECK(missing[0].code == ErrorCode::Syntax);
  CHECK(missing[0].line == 3);
  CHECK(missing[0].column == 8);

  auto junk = issues_of("ultragraph bad\nvertices: v\nedge e: v -> { v } ?\n");
  REQUIRE(junk.size() == 1);
  CHECK(junk[0].code == ErrorCode::Syntax);
  CHECK(junk[0].line == 3);
  CHECK(issues_of("vertices: v\n").at(0).code == ErrorCode::Syntax);
}

TEST_CASE("sets parse against a universe") {
  Ultragraph g = fixture("two_rays");
  const Universe& u = g.universe();
  VertexSet s = parse_set(u, "{ c } + ray(s) \\ { s1 }");
  CHECK(s.contains(VertexId::core(0)));
  CHECK_FALSE(s.contains(VertexId::on_ray(1, 1)));
  CHECK(s.contains(VertexId::on_ray(1, 2)));
  CHECK(format_set(u, s) == "{ c } + ray(s) \\ { s1 }");
  CHECK_THROWS_AS(parse_set(u, "{ nowhere }"), ValidationError);
}

TEST_CASE("identifiers") {
  CHECK(is_identifier("v0"));
  CHECK(is_identifier("v'"));
  CHECK(is_identifier("_x.y/z"));
  CHECK_FALSE(is_identifier(""));
  CHECK_FALSE(is_identifier("'v"));
  CHECK_FALSE(is_identifier("a b"));
}

TEST_CASE("matrix files") {
  const std::string text = testkit::slurp(testkit::corpus_path("UG2.mat"));
  Matrix01 a = parse_matrix(text);
  CHECK(a.same_entries(Matrix01::from_rows({{1, 1}, {1, 0}})));
  CHECK(print_matrix(a) == text);
  Matrix01 plain = parse_matrix("2\n0 1\n1 1\n");
  CHECK(plain.at(1, 0) == 1);
  CHECK_THROWS_AS(parse_matrix("2\n0 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_matrix("2\n0 2\n1 1\n"), ValidationError);
}

TEST_CASE("graph files") {
  const std::string text = testkit::slurp(testkit::corpus_path("cycle3.graph"));
  DirectedGraph h = parse_graph(text);
  CHECK(h.vertices.size() == 3);
  CHECK(h.edges.size() == 4);
  CHECK(print_graph(h) == text);
  CHECK_THROWS_AS(parse_graph("vertices: a\nedge x: a -> b\n"), ValidationError);
}

TEST_CASE("dot output draws one arrow per range vertex") {
  const std::string dot = to_dot(fixture("UG1"));
  std::size_t arrows = 0;
  for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 2)) ++arrows;
  CHECK(arrows == 6);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(to_dot(fixture("UG1")) == dot);
}

TEST_CASE("documents with tails are not printable") {
  CHECK_THROWS_AS(print_document(desingularize(fixture("UG3")).result), Error);
}

}  // TEST_SUITE
