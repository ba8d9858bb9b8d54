#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffeocalc/cohomology.hpp"
#include "diffeocalc/expr_parser.hpp"
#include "test_helpers.hpp"

using namespace diffeocalc;
namespace dt = diffeocalc::testing;

TEST_CASE("slice bases and the differential on R^1") {
  const GluedSpace line = dt::single_piece(1, "L");
  const PolyComplexSlice s0 = PolyComplexSlice::build(line, 0, 2);
  CHECK(s0.dim() == 3);  // 1, x, x^2

  const PolyComplexSlice s1 = PolyComplexSlice::build(line, 1, 1);
  const RationalMatrix d = differential_matrix(line, s0, s1);
  CHECK(d.rows() == 2);  // dx, x dx
  CHECK(d.cols() == 3);
  CHECK(d.rank() == 2);  // the image {0, dx, 2x dx} spans both

  // column of x^2 maps to 2x dx
  const GluedForm xsq = s0.basis_form(line, 2);
  CHECK(xsq.component("L").coefficient(MultiIndex()) == parse_expr("x1^2"));
}

TEST_CASE("compatible 0-form pairs on the wedge of two lines") {
  const GluedSpace s = dt::wedge_of_lines(2);
  const PolyComplexSlice s0 = PolyComplexSlice::build(s, 0, 1);
  CHECK(s0.ambient_dim() == 4);  // {1, t} per line
  CHECK(s0.dim() == 3);          // matching at the wedge: {(1,1), (t1,0), (0,t2)}

  // every basis element is a compatible tuple
  for (std::size_t j = 0; j < s0.dim(); ++j) {
    const GluedForm w = s0.basis_form(s, j);
    CHECK(check_compatibility(s, w.components(), 0).ok);
  }

  const PolyComplexSlice s1 = PolyComplexSlice::build(s, 1, 0);
  CHECK(differential_matrix(s, s0, s1).rank() == 2);
}

TEST_CASE("the slice spans exactly the compatible polynomial tuples") {
  dt::Rng rng(97);
  for (int iter = 0; iter < 20; ++iter) {
    const GluedSpace s = dt::rand_space(rng, 3, 2, 2);

    // a random compatible tuple must lie in the row space of the slice
    // that covers its coefficient degrees
    const auto tuple = dt::rand_form_tuple(rng, s, 0, 2);
    unsigned deg = 2;
    for (const auto& [pid, v] : tuple)
      for (const auto& [I, c] : v.coefficients())
        deg = std::max(deg, c.as_polynomial().total_degree());
    const PolyComplexSlice s0 = PolyComplexSlice::build(s, 0, deg);
    std::vector<Rational> coords(s0.ambient_dim(), Rational(0));
    for (std::size_t e = 0; e < s0.ambient_dim(); ++e) {
      const auto& entry = s0.ambient()[e];
      const ScalarExpr c = tuple.at(entry.piece).coefficient(entry.index);
      if (c.is_zero()) continue;
      const Polynomial p = c.as_polynomial();
      auto it = p.terms().find(entry.mono);
      if (it != p.terms().end()) coords[e] = it->second;
    }
    RationalMatrix stacked = s0.basis();
    const std::size_t base_rank = stacked.rank();
    stacked.append_row(coords);
    CHECK(stacked.rank() == base_rank);
  }
}

TEST_CASE("consecutive differential matrices compose to zero") {
  dt::Rng rng(101);
  for (int iter = 0; iter < 15; ++iter) {
    const GluedSpace s = dt::rand_space(rng, 3, 3, 2);
    std::uniform_int_distribution<int> grade(0, dimension(s));
    const int k = grade(rng);
    const unsigned D = 4;
    const PolyComplexSlice a = PolyComplexSlice::build(s, k, D);
    const PolyComplexSlice b = PolyComplexSlice::build(s, k + 1, D - 1);
    const PolyComplexSlice c = PolyComplexSlice::build(s, k + 2, D - 2);
    const RationalMatrix d1 = differential_matrix(s, a, b);
    const RationalMatrix d2 = differential_matrix(s, b, c);
    CHECK((d2 * d1).is_zero());
  }
}

TEST_CASE("Koszul homotopy on the worked monomials") {
  const GluedSpace line = dt::single_piece(1, "L");
  ExtElement dx(1);
  dx.add_term(MultiIndex({0}), ScalarExpr(1));
  const ExtElement hdx = koszul_homotopy(line.piece("L"), dx);
  CHECK(hdx.coefficient(MultiIndex()) == parse_expr("x1"));

  const GluedSpace plane = dt::single_piece(2);
  ExtElement dxdy(2);
  dxdy.add_term(MultiIndex({0, 1}), ScalarExpr(1));
  const ExtElement h2 = koszul_homotopy(plane.piece("P"), dxdy);
  CHECK(h2.coefficient(MultiIndex({1})) == parse_expr("1/2*x1"));
  CHECK(h2.coefficient(MultiIndex({0})) == parse_expr("-1/2*x2"));
  CHECK(piece_exterior_derivative(plane.piece("P"), h2) == dxdy);

  ExtElement expsec(1);
  expsec.add_term(MultiIndex({0}), parse_expr("exp(x1)"));
  CHECK_THROWS_WITH_AS(koszul_homotopy(line.piece("L"), expsec),
                       doctest::Contains("polynomial"), Error);
}

TEST_CASE("homotopy identity on 100 random polynomial forms") {
  dt::Rng rng(103);
  std::uniform_int_distribution<int> dim(1, 3);
  for (int iter = 0; iter < 100; ++iter) {
    const GluedSpace s = dt::single_piece(dim(rng));
    const EuclideanPiece& p = s.pieces()[0];
    std::uniform_int_distribution<int> grade(0, p.dim);
    const int k = grade(rng);
    const ExtElement w = dt::rand_piece_element(rng, p, k, 4);

    const ExtElement dhw = piece_exterior_derivative(p, koszul_homotopy(p, w));
    const ExtElement hdw = koszul_homotopy(p, piece_exterior_derivative(p, w));
    if (k >= 1) {
      CHECK(dhw + hdw == w);
    } else {
      // d(h w) + h(d w) = w - w(0)
      std::map<std::string, Rational> origin;
      for (const std::string& c : p.coords) origin[c] = 0;
      const ScalarExpr w0 = w.coefficient(MultiIndex()).substitute(origin);
      CHECK(dhw + hdw == w - ExtElement::scalar(p.dim, w0));
    }
  }
}

TEST_CASE("cohomology dimensions against the splitting expectations") {
  // single Euclidean pieces: the Poincare lemma in every positive grade
  for (int n = 1; n <= 3; ++n)
    for (int k = 1; k <= n; ++k)
      CHECK(cohomology_dims(dt::single_piece(n), k, 4).dim_H == 0);

  // wedges of contractible pieces
  CHECK(cohomology_dims(dt::wedge_two_planes(), 1, 4).dim_H == 0);
  CHECK(cohomology_dims(dt::wedge_two_planes(), 2, 4).dim_H == 0);
  CHECK(cohomology_dims(dt::wedge_of_lines(3), 1, 3).dim_H == 0);
  CHECK(cohomology_dims(dt::wedge_of_lines(5), 1, 3).dim_H == 0);

  // H^0 counts connected components, not pieces
  CHECK(cohomology_dims(dt::wedge_of_lines(2), 0, 3).dim_H == 1);
  CHECK(cohomology_dims(dt::single_piece(2), 0, 3).dim_H == 1);

  // two disjoint pieces
  const GluedSpace disjoint({{"A", 1, {"x"}}, {"B", 1, {"u"}}}, {});
  CHECK(cohomology_dims(disjoint, 0, 3).dim_H == 2);

  // the circle has one honest 1-cocycle that is not exact
  CHECK(cohomology_dims(dt::circle_of_two_lines(), 1, 3).dim_H == 1);
  CHECK(cohomology_dims(dt::circle_of_two_lines(), 0, 3).dim_H == 1);
}

TEST_CASE("rank identity: dim Z + rank d = dim slice") {
  dt::Rng rng(107);
  for (int iter = 0; iter < 10; ++iter) {
    const GluedSpace s = dt::rand_space(rng, 3, 2, 2);
    std::uniform_int_distribution<int> grade(0, 2);
    const int k = grade(rng);
    const unsigned D = 3;
    const CohomologyEntry e = cohomology_dims(s, k, D);
    const PolyComplexSlice slice = PolyComplexSlice::build(s, k, D);
    const PolyComplexSlice above = PolyComplexSlice::build(s, k + 1, D - 1);
    CHECK(e.dim_cocycles + differential_matrix(s, slice, above).rank() == slice.dim());
  }
}

TEST_CASE("the Koszul route and the rank route agree") {
  const std::vector<GluedSpace> spaces{dt::wedge_two_planes(), dt::wedge_of_lines(3),
                                       dt::single_piece(2), dt::single_piece(3),
                                       dt::circle_of_two_lines()};
  for (const GluedSpace& s : spaces)
    for (int k = 1; k <= 2; ++k)
      for (unsigned D = 3; D <= 4; ++D)
        CHECK(cohomology_dim_via_koszul(s, k, D) == cohomology_dims(s, k, D).dim_H);
}

TEST_CASE("truncated dimensions are stable in the degree bound") {
  const std::vector<GluedSpace> spaces{dt::wedge_two_planes(), dt::wedge_of_lines(3),
                                       dt::circle_of_two_lines()};
  for (const GluedSpace& s : spaces)
    for (int k = 0; k <= 2; ++k)
      CHECK(cohomology_dims(s, k, 4).dim_H == cohomology_dims(s, k, 5).dim_H);
}

TEST_CASE("splitting reports") {
  const SplittingReport r2 = verify_splitting(dt::wedge_two_planes(), 2, 4);
  CHECK(r2.agree);
  CHECK(r2.direct == 0);
  CHECK(r2.pieces_sum == 0);

  const SplittingReport r1 = verify_splitting(dt::wedge_two_planes(), 1, 4);
  CHECK(r1.agree);
  CHECK(!r1.note.empty());

  const SplittingReport r0 = verify_splitting(dt::wedge_of_lines(2), 0, 3);
  CHECK(!r0.agree);
  CHECK(r0.pieces_sum == 2);
  CHECK(r0.direct == 1);
  CHECK(r0.note.find("connected component") != std::string::npos);
}
