#include "doctest.h"
#include "testkit.hpp"
#include "ugkit/algebra.hpp"
#include "ugkit/cyclotomic.hpp"
#include "ugkit/desing.hpp"
#include "ugkit/error.hpp"
#include "ugkit/repr.hpp"

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

// Random element over g built from generator products.
AlgebraElement random_element(const Ultragraph& g, testkit::Rng& rng) {
  const auto edges = g.edges();
  const int n = static_cast<int>(g.universe().core_size());
  AlgebraElement out;
  for (int i = rng.uniform(1, 3); i > 0; --i) {
    AlgebraElement x = gen_p(g, VertexId::core(static_cast<std::uint32_t>(rng.uniform(0, n - 1))));
    if (!edges.empty() && rng.coin()) x = mul(g, gen_s(g, edges[rng.uniform(0, static_cast<int>(edges.size()) - 1)]), x);
    if (!edges.empty() && rng.coin()) x = mul(g, x, gen_s_star(g, edges[rng.uniform(0, static_cast<int>(edges.size()) - 1)]));
    out += x.scaled(Rational(rng.uniform(-2, 2)));
  }
  return out;
}

}  // namespace

TEST_SUITE("repr") {

TEST_CASE("path space representation of UG4") {
  Ultragraph g = fixture("UG4");
  MatrixCKFamily fam = path_space_rep(g);
  CHECK(fam.labels == std::vector<std::string>{"(w1)", "(w2)", "(e, w1)", "(e, w2)"});
  EdgeId e = EdgeId::named(0);
  CHECK(rank(fam.s_of(e)) == 2);
  CHECK(fam.s_of(e) * fam.s_of(e).adjoint() == fam.p(*g.find_vertex("v")));
  CHECK(ck_check(g, fam).passed());
}

TEST_CASE("path space representation edge cases") {
  MatrixCKFamily f3 = path_space_rep(fixture("UG3"));
  CHECK(f3.dim() == 1);
  CHECK(f3.s.empty());
  CHECK(code_of([] { path_space_rep(fixture("UG5")); }) == ErrorCode::HasLoop);
  CHECK(code_of([] { path_space_rep(fixture("UG7")); }) == ErrorCode::Unsupported);
  CHECK_THROWS_AS(f3.s_of(EdgeId::named(0)), Error);
}

TEST_CASE("ck_check flags defects") {
  Ultragraph g = fixture("UG4");
  MatrixCKFamily fam = path_space_rep(g);
  RationalMatrix& s = fam.s.at(EdgeId::named(0));
  // Zero the column of (w1).
  for (std::size_t i = 0; i < s.rows(); ++i) s.set(i, 0, Rational(0));
  CkCheckReport r = ck_check(g, fam);
  CHECK_FALSE(r.passed());
  bool range_axiom = false;
  for (const auto& d : r.defects) range_axiom |= d.axiom == "range";
  CHECK(range_axiom);

  MatrixCKFamily empty;
  CkCheckReport z = ck_check(fixture("UG3"), empty);
  REQUIRE(z.defects.size() == 1);
  CHECK(z.defects[0].axiom == "nonvanishing");
}

TEST_CASE("evaluation") {
  Ultragraph g = fixture("UG4");
  MatrixCKFamily fam = path_space_rep(g);
  EdgeId e = EdgeId::named(0);
  AlgebraElement range = gen_p(g, g.range(e)) - mul(g, gen_s_star(g, e), gen_s(g, e));
  CHECK(evaluate(g, range, fam).is_zero_matrix());
  AlgebraElement diff = gen_p(g, *g.find_vertex("v")) - gen_p(g, *g.find_vertex("w1"));
  CHECK_FALSE(evaluate(g, diff, fam).is_zero_matrix());
  CHECK(evaluate(g, AlgebraElement::one(), fam) == RationalMatrix::identity(4, Rational(1)));

  Ultragraph nonunital = fixture("ray_finite");
  CHECK(code_of([&] { evaluate(nonunital, AlgebraElement::one(), MatrixCKFamily{}); }) ==
        ErrorCode::NonUnitalUnit);
}

TEST_CASE("evaluation is a *-homomorphism") {
  testkit::Rng rng(61);
  for (const char* name : {"UG4", "chain"}) {
    Ultragraph g = fixture(name);
    MatrixCKFamily fam = path_space_rep(g);
    for (int trial = 0; trial < 60; ++trial) {
      AlgebraElement a = random_element(g, rng), b = random_element(g, rng);
      CHECK(evaluate(g, mul(g, a, b), fam) == evaluate(g, a, fam) * evaluate(g, b, fam));
      CHECK(evaluate(g, a.adjoint(), fam) == evaluate(g, a, fam).adjoint());
      CHECK(evaluate(g, a + b, fam) == evaluate(g, a, fam) + evaluate(g, b, fam));
    }
  }
}

TEST_CASE("complement products evaluate to zero residual on UG4") {
  Ultragraph g = fixture("UG4");
  MatrixCKFamily fam = path_space_rep(g);
  AlgebraElement a = gen_p(g, g.all_vertices());
  AlgebraElement y = gen_p(g, g.range(EdgeId::named(0)));
  AlgebraElement residual = (a - mul(g, a, y)) - mul(g, a, AlgebraElement::one() - y);
  CHECK(evaluate(g, residual, fam).is_zero_matrix());
}

TEST_CASE("gauge unitaries") {
  Ultragraph g = fixture("UG4");
  MatrixCKFamily fam = path_space_rep(g);
  auto f2 = std::make_shared<const CyclotomicField>(2);
  CyclotomicMatrix u = gauge_unitary(fam, f2);
  const Cyclotomic one = Cyclotomic::from_rational(f2, 1);
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(u.find(i, i));
    CHECK(*u.find(i, i) == (i < 2 ? one : -one));
  }
  CHECK(gauge_check(g, fam, 2).passed());
  CHECK(gauge_check(g, fam, 4).passed());
  auto f1 = std::make_shared<const CyclotomicField>(1);
  CHECK(gauge_unitary(fam, f1) == CyclotomicMatrix::identity(4, Cyclotomic::from_rational(f1, 1)));
  for (unsigned k = 1; k <= 12; ++k) CHECK(gauge_check(fixture("chain"), path_space_rep(fixture("chain")), k).passed());
}

TEST_CASE("cyclotomic arithmetic") {
  for (unsigned k = 1; k <= 12; ++k) {
    auto f = std::make_shared<const CyclotomicField>(k);
    Cyclotomic z = Cyclotomic::zeta(f, 1);
    Cyclotomic p = Cyclotomic::from_rational(f, 1);
    for (unsigned i = 0; i < k; ++i) p = p * z;
    CHECK(p == Cyclotomic::from_rational(f, 1));
    CHECK(z * z.conjugate() == Cyclotomic::from_rational(f, 1));
    CHECK(Cyclotomic::zeta(f, -1) == z.conjugate());
  }
  CHECK(cyclotomic_polynomial(4) == std::vector<Rational>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Rational>{1, -1, 1});
}

TEST_CASE("matrix rank") {
  RationalMatrix m(3, 3);
  m.set(0, 0, 1);
  m.set(1, 1, 2);
  m.set(2, 0, 3);
  CHECK(rank(m) == 2);
  CHECK(rank(RationalMatrix::identity(5, Rational(1))) == 5);
  CHECK(format_matrix(m) == "1 0 0\n0 2 0\n3 0 0\n");
}

TEST_CASE("extension along a sink tail") {
  Ultragraph g = fixture("UG3");
  MatrixCKFamily fam = path_space_rep(g);
  DesingMap m = desingularize(g);
  ExtendedFamily ext = extend_family(fam, m, 3);
  CHECK(ext.family.dim() == 4);
  CHECK(ck_check(ext.truncation.graph, ext.family).passed());
}

TEST_CASE("extension along an emitter tail") {
  Ultragraph g = fixture("UG7_window");
  MatrixCKFamily fam = testkit::window_family(g, 8);
  REQUIRE(ck_check(g, fam).passed());
  DesingMap m = desingularize(g);
  for (std::uint64_t n = 1; n <= 8; ++n) {
    ExtendedFamily ext = extend_family(fam, m, n);
    CHECK(ck_check(ext.truncation.graph, ext.family).passed());
    const Ultragraph& tg = ext.truncation.graph;
    // Q_v0 splits as T_e1 T_e1^* + T_f1 T_f1^*.
    const RationalMatrix& te = ext.family.s_of(*tg.find_edge("v0_t.e1"));
    const RationalMatrix& tf = ext.family.s_of(*tg.find_edge("v0_t.f1"));
    CHECK(te * te.adjoint() + tf * tf.adjoint() == ext.family.p(*tg.find_vertex("v0")));
    for (std::uint64_t j = 1; j <= n; ++j) {
      Path mapped;
      for (auto e : alpha_path(m, EdgeId::family(0, j))) mapped.push_back(*ext.truncation.edge(m.result, e));
      CHECK(evaluate_path(ext.family, mapped).block(fam.dim()) == fam.s_of(EdgeId::family(0, j)));
    }
    RestrictedFamily back = restrict_family(ext.family, m, ext.truncation);
    CHECK(agrees_with(fam, leading_block(back.family, fam.dim())));
    CHECK(ck_check(g, back.family, back.check_options).passed());
  }
}

TEST_CASE("an isometry at the emitter exhausts the truncation") {
  MatrixCKFamily fam;
  fam.labels = {"(v0)"};
  fam.anchors = {VertexId::core(0)};
  fam.degrees = {0};
  RationalMatrix s(1, 1);
  s.set(0, 0, Rational(1));
  fam.s.emplace(EdgeId::family(0, 1), s);
  DesingMap m = desingularize(fixture("UG7"));
  CHECK(code_of([&] { extend_family(fam, m, 1); }) == ErrorCode::TruncationEmpty);
}

TEST_CASE("restriction of an empty family") {
  Ultragraph g = fixture("UG3");
  DesingMap m = desingularize(g);
  Truncation t = truncate(m.result, 2);
  RestrictedFamily r = restrict_family(MatrixCKFamily{}, m, t);
  CHECK(r.family.dim() == 0);
  CHECK_FALSE(r.notices.empty());
}

TEST_CASE("relations hold on random loop-free ultragraphs") {
  testkit::Rng rng(62);
  for (int trial = 0; trial < 150; ++trial) {
    Ultragraph g = testkit::random_finite(rng, {.loop_free = true});
    MatrixCKFamily fam = path_space_rep(g);
    CHECK(ck_check(g, fam).passed());
    CHECK(gauge_check(g, fam, 3).passed());
  }
}

}  // TEST_SUITE
