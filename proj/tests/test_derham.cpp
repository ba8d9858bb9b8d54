#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffeocalc/derham.hpp"
#include "diffeocalc/expr_parser.hpp"
#include "test_helpers.hpp"

using namespace diffeocalc;
namespace dt = diffeocalc::testing;

namespace {

GluedSection lift(const GluedSpace& s, std::map<std::string, ExtElement> comps) {
  GluedSection out;
  for (const EuclideanPiece& p : s.pieces()) out.components[p.id] = ExtElement(p.dim);
  for (auto& [pid, v] : comps) out.components[pid] = std::move(v);
  return out;
}

std::pair<GluedPseudoMetric, GluedConnection> standard_structure(const GluedSpace& s) {
  std::vector<PieceCotangentMetric> metrics;
  std::vector<ChristoffelData> gammas;
  for (const EuclideanPiece& p : s.pieces()) {
    metrics.push_back(PieceCotangentMetric::standard(p));
    gammas.push_back(christoffel(s, metrics.back()));
  }
  return {induced_metric(s, metrics), glued_connection(s, gammas)};
}

}  // namespace

TEST_CASE("bounded dimension of the Lambda^1 pseudo-bundle") {
  CHECK(bounded_dimension(dt::wedge_two_planes()).N == 4);
  for (int m = 2; m <= 6; ++m) CHECK(bounded_dimension(dt::wedge_of_lines(m)).N == m);
  CHECK(bounded_dimension(dt::single_piece(3)).N == 3);
  CHECK(bounded_dimension(dt::wedge_two_planes()).bounded);

  // never less than the space dimension
  dt::Rng rng(151);
  for (int iter = 0; iter < 20; ++iter) {
    const GluedSpace s = dt::rand_space(rng);
    CHECK(bounded_dimension(s).N >= dimension(s));
  }
}

TEST_CASE("flat worked examples of the operator") {
  const GluedSpace plane = dt::single_piece(2);
  const auto [g, conn] = standard_structure(plane);

  // 0-form: D f = df
  const GluedSection f = lift(plane, {{"P", ExtElement::scalar(2, parse_expr("x1*x2"))}});
  const GluedSection df = derham_apply(plane, f, g, conn);
  ExtElement expected(2);
  expected.add_term(MultiIndex({0}), parse_expr("x2"));
  expected.add_term(MultiIndex({1}), parse_expr("x1"));
  CHECK(df.component("P") == expected);

  // x dy: D = dx ^ dy
  ExtElement xdy(2);
  xdy.add_term(MultiIndex({1}), parse_expr("x1"));
  const GluedSection s1 = lift(plane, {{"P", xdy}});
  ExtElement vol(2);
  vol.add_term(MultiIndex({0, 1}), ScalarExpr(1));
  CHECK(derham_apply(plane, s1, g, conn).component("P") == vol);

  // x dx: D = -1
  ExtElement xdx(2);
  xdx.add_term(MultiIndex({0}), parse_expr("x1"));
  const GluedSection s2 = lift(plane, {{"P", xdx}});
  CHECK(derham_apply(plane, s2, g, conn).component("P") ==
        ExtElement::scalar(2, ScalarExpr(-1)));
}

TEST_CASE("oracle: d + d* on the worked examples") {
  const GluedSpace plane = dt::single_piece(2);
  const EuclideanPiece& p = plane.piece("P");

  // on 0-forms the codifferential contributes nothing
  ExtElement grad(2);
  grad.add_term(MultiIndex({0}), parse_expr("x2"));
  grad.add_term(MultiIndex({1}), parse_expr("x1"));
  CHECK(euclidean_dplusdstar(p, ExtElement::scalar(2, parse_expr("x1*x2"))) == grad);

  ExtElement xdy(2);
  xdy.add_term(MultiIndex({1}), parse_expr("x1"));
  ExtElement vol(2);
  vol.add_term(MultiIndex({0, 1}), ScalarExpr(1));
  CHECK(euclidean_dplusdstar(p, xdy) == vol);

  // x dx^dy: d* only, giving -dy
  ExtElement top(2);
  top.add_term(MultiIndex({0, 1}), parse_expr("x1"));
  ExtElement mdy(2);
  mdy.add_term(MultiIndex({1}), ScalarExpr(-1));
  CHECK(euclidean_dplusdstar(p, top) == mdy);
}

TEST_CASE("the operator equals d + d* on flat pieces, 30 random sections each") {
  dt::Rng rng(157);
  for (int n = 1; n <= 3; ++n) {
    const GluedSpace s = dt::single_piece(n);
    for (int iter = 0; iter < 30; ++iter) {
      const GluedSection sec = dt::rand_section(rng, s, 3);
      const OracleComparison cmp = compare_with_oracle(s, sec);
      CHECK(cmp.symbolically_zero);
      if (!cmp.symbolically_zero) FAIL(cmp.first_mismatch);
    }
  }
}

TEST_CASE("oracle identity with exp coefficients on the flat plane") {
  dt::Rng rng(163);
  const GluedSpace s = dt::single_piece(2);
  for (int iter = 0; iter < 10; ++iter) {
    const GluedSection sec = dt::rand_section(rng, s, 2, /*allow_exp=*/true);
    CHECK(compare_with_oracle(s, sec).symbolically_zero);
  }
}

TEST_CASE("gluing locality: pieces compute as if standalone, wedge values direct-sum") {
  dt::Rng rng(167);
  const GluedSpace s = dt::wedge_two_planes();
  const auto [g, conn] = standard_structure(s);

  // the standalone piece must carry the same coordinate names
  const GluedSpace x1_named({{"X1", 2, {"x1", "y1"}}}, {});
  const auto [g1, conn1] = standard_structure(x1_named);

  for (int iter = 0; iter < 20; ++iter) {
    const GluedSection sec = dt::rand_section(rng, s, 3);
    const GluedSection d = derham_apply(s, sec, g, conn);

    // per-piece equality with the standalone computation
    const GluedSection sec1 = lift(x1_named, {{"X1", sec.component("X1")}});
    const GluedSection d1 = derham_apply(x1_named, sec1, g1, conn1);
    CHECK(d.component("X1") == d1.component("X1"));

    // the wedge value is the direct sum of the piece values
    const WedgeSectionValue v = section_wedge_value(s, "w0", d);
    const auto binding1 = s.bind_coords("X1", {Rational(0), Rational(0)});
    const auto binding2 = s.bind_coords("X2", {Rational(0), Rational(0)});
    ExtElement expected(4);
    for (const auto& [I, c] : d.component("X1").coefficients())
      expected.add_term(I, c.substitute(binding1));
    for (const auto& [I, c] : d.component("X2").coefficients()) {
      std::vector<int> shifted = I.indices();
      for (int& i : shifted) i += 2;
      expected.add_term(MultiIndex(shifted), c.substitute(binding2));
    }
    CHECK(v.value == expected);
  }
}

TEST_CASE("grade structure: D of a pure grade lands in the two neighbours") {
  dt::Rng rng(173);
  for (int n = 2; n <= 3; ++n) {
    const GluedSpace s = dt::single_piece(n);
    const auto [g, conn] = standard_structure(s);
    for (int k = 0; k <= n; ++k)
      for (int iter = 0; iter < 10; ++iter) {
        const ExtElement w = dt::rand_piece_element(rng, s.pieces()[0], k, 3);
        const GluedSection sec = lift(s, {{"P", w}});
        const ExtElement out = derham_apply(s, sec, g, conn).component("P");
        for (const auto& [I, c] : out.coefficients()) {
          const bool neighbour = static_cast<int>(I.grade()) == k - 1 ||
                                 static_cast<int>(I.grade()) == k + 1;
          CHECK(neighbour);
        }
      }
  }
}

TEST_CASE("section wedge values follow the direct-sum correspondence") {
  const GluedSpace s = dt::wedge_two_planes();
  GluedSection sec = lift(
      s, {{"X1", ExtElement::scalar(2, parse_expr("1 + x1"))},
          {"X2", ExtElement::basis(2, 0).scaled(parse_expr("2 + x2"))}});
  const WedgeSectionValue v = section_wedge_value(s, "w0", sec);
  REQUIRE(v.basis.dim() == 4);
  ExtElement expected(4);
  expected.add_term(MultiIndex(), ScalarExpr(1));                      // value of 1 + x1
  expected.add_term(MultiIndex({2}), ScalarExpr(2));                   // (2 + x2) dx2
  CHECK(v.value == expected);
}

TEST_CASE("mismatched structures are rejected") {
  const GluedSpace s = dt::wedge_two_planes();
  const auto [g, conn] = standard_structure(s);
  const GluedSpace other = dt::single_piece(3, "Q");
  const auto [g3, conn3] = standard_structure(other);

  GluedSection sec;
  sec.components["X1"] = ExtElement(2);
  sec.components["X2"] = ExtElement(2);
  CHECK_THROWS_AS(derham_apply(s, sec, g3, conn), Error);
}
