#include "doctest.h"
#include "testkit.hpp"
#include "ugkit/desing.hpp"
#include "ugkit/error.hpp"
#include "ugkit/lattice.hpp"

using namespace ugkit;
using testkit::fixture;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Usage;
}

std::vector<std::string> vertex_names(const Ultragraph& g) {
  std::vector<std::string> out;
  for (std::uint32_t i = 0; i < g.universe().core_size(); ++i) {
    out.push_back(g.vertex_name(VertexId::core(i)));
  }
  return out;
}

std::vector<std::string> edge_names(const Ultragraph& g) {
  std::vector<std::string> out;
  for (auto e : g.edges()) out.push_back(g.edge_name(e));
  return out;
}

}  // namespace

TEST_SUITE("desing") {

TEST_CASE("tail at a sink") {
  Ultragraph g = fixture("UG3");
  DesingMap m = add_tail_sink(g, *g.find_vertex("w"));
  const Ultragraph& f = m.result;
  REQUIRE(f.tails().size() == 1);
  EdgeId e1 = EdgeId::tail_e(0, 1), e2 = EdgeId::tail_e(0, 2);
  CHECK(f.source(e1) == *f.find_vertex("w"));
  CHECK(f.range(e1) == f.singleton(VertexId::on_ray(m.tails[0].ray, 1)));
  CHECK(f.source(e2) == VertexId::on_ray(m.tails[0].ray, 1));
  CHECK(singular_vertices(f).none());
  CHECK(code_of([] {
          Ultragraph u = fixture("UG1");
          add_tail_sink(u, *u.find_vertex("v"));
        }) == ErrorCode::NotASink);
}

TEST_CASE("tail at an infinite emitter") {
  Ultragraph g = fixture("UG7");
  VertexId v0 = *g.find_vertex("v0");
  DesingMap m = add_tail_infinite_emitter(g, v0);
  const Ultragraph& f = m.result;
  CHECK(singular_vertices(f).none());
  CHECK(f.families().empty());
  for (std::uint64_t j = 1; j <= 6; ++j) {
    CHECK(f.range(EdgeId::tail_f(0, j)) == f.singleton(v0));
    VertexId vi = VertexId::on_ray(m.tails[0].ray, j);
    Emissions em = f.emissions(vi);
    CHECK(em.edges == std::vector<EdgeId>{EdgeId::tail_e(0, j + 1), EdgeId::tail_f(0, j + 1)});
  }
  CHECK(code_of([] {
          Ultragraph u = fixture("UG1");
          add_tail_infinite_emitter(u, *u.find_vertex("v"));
        }) == ErrorCode::NotInfiniteEmitter);
}

TEST_CASE("desingularize") {
  DesingMap m4 = desingularize(fixture("UG4"));
  CHECK(m4.tails.size() == 2);
  CHECK(m4.result.sinks().is_empty());
  DesingMap m1 = desingularize(fixture("UG1"));
  CHECK(m1.tails.empty());
  CHECK(print_document(m1.result) == print_document(fixture("UG1")));
  CHECK(code_of([] { desingularize(fixture("UG6")); }) == ErrorCode::Unbounded);
}

TEST_CASE("alpha paths") {
  Ultragraph g = fixture("UG7");
  DesingMap m = desingularize(g);
  CHECK(alpha_path(m, EdgeId::family(0, 1)) == Path{EdgeId::tail_f(0, 1)});
  CHECK(alpha_path(m, EdgeId::family(0, 3)) ==
        Path{EdgeId::tail_e(0, 1), EdgeId::tail_e(0, 2), EdgeId::tail_f(0, 3)});
  for (std::uint64_t j = 1; j <= 10; ++j) {
    Path a = alpha_path(m, EdgeId::family(0, j));
    CHECK(a.size() == j);
    CHECK(is_path(m.result, a));
    CHECK(m.result.range(a.back()) == lift_set(m, g.range(EdgeId::family(0, j))));
  }
  CHECK(code_of([&] { alpha_path(m, EdgeId::family(0, 0)); }) == ErrorCode::UnknownEdge);
}

TEST_CASE("alpha ranges on mixed emitters") {
  Ultragraph g = fixture("mixed");
  DesingMap m = add_tail_infinite_emitter(g, *g.find_vertex("v"));
  for (const auto& t : m.tails) {
    if (!t.emitter) continue;
    for (std::uint64_t j = 1; j <= 12; ++j) {
      auto gj = t.g(j);
      if (!gj) break;
      CHECK(m.result.range(alpha_path(m, *gj).back()) == lift_set(m, g.range(*gj)));
    }
  }
}

TEST_CASE("truncations") {
  Truncation t3 = truncate(desingularize(fixture("UG3")).result, 2);
  CHECK(vertex_names(t3.graph) == std::vector<std::string>{"w", "w_t1", "w_t2"});
  CHECK(edge_names(t3.graph) == std::vector<std::string>{"w_t.e1", "w_t.e2"});
  CHECK(t3.graph.is_sink(*t3.graph.find_vertex("w_t2")));

  Truncation t7 = truncate(desingularize(fixture("UG7")).result, 1);
  CHECK(vertex_names(t7.graph) == std::vector<std::string>{"v0", "v0_t1"});
  CHECK(edge_names(t7.graph) == std::vector<std::string>{"v0_t.e1", "v0_t.f1"});

  // The truncation is a finite document.
  CHECK(print_document(parse_document(print_document(t7.graph))) == print_document(t7.graph));
}

TEST_CASE("alpha paths survive truncation") {
  DesingMap m = desingularize(fixture("UG7"));
  for (std::uint64_t n = 1; n <= 6; ++n) {
    Truncation t = truncate(m.result, n);
    for (std::uint64_t j = 1; j <= n; ++j) {
      Path mapped;
      for (auto e : alpha_path(m, EdgeId::family(0, j))) mapped.push_back(*t.edge(m.result, e));
      CHECK(is_path(t.graph, mapped));
    }
  }
}

TEST_CASE("f0 decomposition") {
  Ultragraph g = fixture("UG7");
  DesingMap m = desingularize(g);
  const Ultragraph& f = m.result;
  const std::uint32_t ray = m.tails[0].ray;
  F0Split a = f0_decompose(m, f.range(EdgeId::tail_f(0, 4)));
  CHECK(a.original_part == g.singleton(*g.find_vertex("v0")));
  CHECK(a.tail_part.empty());

  VertexSet b = VertexSet::of(f.universe(), {VertexId::on_ray(ray, 1), VertexId::on_ray(ray, 2)});
  F0Split split = f0_decompose(m, b);
  CHECK(split.original_part.is_empty());
  CHECK(split.tail_part.size() == 2);

  VertexSet c = f.range(EdgeId::tail_f(0, 1));
  c.insert(VertexId::on_ray(ray, 3));
  F0Split cs = f0_decompose(m, c);
  CHECK(cs.original_part == g.range(EdgeId::family(0, 1)));
  CHECK(cs.tail_part == std::vector<VertexId>{VertexId::on_ray(ray, 3)});

  // Recombining gives back the input.
  VertexSet back = lift_set(m, cs.original_part);
  for (auto v : cs.tail_part) back.insert(v);
  CHECK(back == c);

  CHECK(code_of([&] { f0_decompose(m, VertexSet::whole_ray(f.universe(), ray)); }) ==
        ErrorCode::NotInLattice);
}

TEST_CASE("desingularization preserves condition L") {
  testkit::Rng rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    Ultragraph g = testkit::random_finite(rng, {});
    DesingMap m = desingularize(g);
    CHECK(singular_vertices(m.result).none());
    CHECK(condition_l(g).holds == condition_l(m.result).holds);
  }
  for (const char* name : {"UG5", "UG7", "UG7_window", "exits", "chain"}) {
    Ultragraph g = fixture(name);
    CHECK(condition_l(g).holds == condition_l(desingularize(g).result).holds);
  }
}

TEST_CASE("truncation agrees with the desingularization inside the window") {
  Ultragraph g = fixture("mixed");
  DesingMap m = add_tail_infinite_emitter(g, *g.find_vertex("v"));
  for (std::uint64_t n = 1; n <= 5; ++n) {
    Truncation t = truncate(m.result, n);
    for (auto e : m.result.edges_up_to(n)) {
      auto te = t.edge(m.result, e);
      REQUIRE(te);
      CHECK(*t.vertex(m.result, m.result.source(e)) == t.graph.source(*te));
      CHECK(t.set(m.result, m.result.range(e)) == t.graph.range(*te));
    }
  }
}

}  // TEST_SUITE
