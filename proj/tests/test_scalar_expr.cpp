#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffeocalc/expr_parser.hpp"
#include "diffeocalc/scalar_expr.hpp"
#include "test_helpers.hpp"

using namespace diffeocalc;
namespace dt = diffeocalc::testing;

namespace {

ScalarExpr var(const std::string& n) { return ScalarExpr::variable(n); }

}  // namespace

TEST_CASE("differentiation of the basic shapes") {
  const ScalarExpr x = var("x"), y = var("y");

  CHECK(x.pow(2) * y == parse_expr("x^2*y"));
  CHECK((x.pow(2) * y).differentiate("x") == parse_expr("2*x*y"));
  CHECK(ScalarExpr::exp_of(x * y).differentiate("x") == parse_expr("y*exp(x*y)"));
  CHECK(ScalarExpr(7).differentiate("x").is_zero());
}

TEST_CASE("evaluation: exact on the exp-free fragment") {
  const ScalarExpr e = parse_expr("x^2*y");
  const ScalarValue v = e.evaluate({{"x", Rational(2)}, {"y", Rational(3)}});
  CHECK(v.exact);
  CHECK(v.rational == 12);

  CHECK(ScalarExpr::exp_of(ScalarExpr()) == ScalarExpr(1));

  const ScalarValue ev =
      parse_expr("exp(x*y)").evaluate({{"x", Rational(1)}, {"y", Rational(1)}});
  CHECK(!ev.exact);
  CHECK(std::abs(ev.as_double() - 2.718281828459045) < 1e-12);
}

TEST_CASE("evaluation errors name the unbound coordinate") {
  CHECK_THROWS_WITH_AS(parse_expr("x*y").evaluate({{"x", Rational(1)}}),
                       doctest::Contains("'y'"), Error);
}

TEST_CASE("zero test by normal form") {
  CHECK((parse_expr("x*y") - parse_expr("y*x")).is_zero());
  CHECK((parse_expr("exp(x)") - parse_expr("exp(x)")).is_zero());
  CHECK(!(parse_expr("exp(x)") - parse_expr("1 + x")).is_zero());
  CHECK((parse_expr("exp(2*x)") - parse_expr("exp(x)*exp(x)")).is_zero());
}

TEST_CASE("grammar: literals, precedence, errors") {
  CHECK(parse_expr("1/2*x + x") == parse_expr("3/2*x"));
  CHECK(parse_expr("-x^2") == -var("x").pow(2));
  CHECK(parse_expr("(x + y)^2") == parse_expr("x^2 + 2*x*y + y^2"));
  CHECK(parse_expr("exp(0)") == ScalarExpr(1));

  CHECK_THROWS_AS(parse_expr("x^-1"), Error);
  CHECK_THROWS_AS(parse_expr("x +"), Error);
  CHECK_THROWS_AS(parse_expr("exp(exp(x))"), Error);
  CHECK_THROWS_AS(parse_expr("2x"), Error);

  const std::set<std::string> allowed{"x"};
  CHECK_THROWS_AS(parse_expr("x + y", &allowed), Error);
}

TEST_CASE("rendering round-trips through the grammar") {
  dt::Rng rng(7);
  const std::vector<std::string> coords{"x", "y", "z"};
  for (int i = 0; i < 200; ++i) {
    const ScalarExpr e = dt::rand_scalar_expr(rng, coords);
    CHECK(parse_expr(e.str()) == e);
  }
}

TEST_CASE("normal form does not depend on the construction order") {
  dt::Rng rng(11);
  const std::vector<std::string> coords{"x", "y"};
  for (int i = 0; i < 100; ++i) {
    const ScalarExpr a = dt::rand_scalar_expr(rng, coords);
    const ScalarExpr b = dt::rand_scalar_expr(rng, coords);
    const ScalarExpr c = dt::rand_scalar_expr(rng, coords);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("differentiation is additive and satisfies the Leibniz rule") {
  dt::Rng rng(13);
  const std::vector<std::string> coords{"x", "y"};
  for (int i = 0; i < 100; ++i) {
    const ScalarExpr a = dt::rand_scalar_expr(rng, coords);
    const ScalarExpr b = dt::rand_scalar_expr(rng, coords);
    CHECK((a + b).differentiate("x") == a.differentiate("x") + b.differentiate("x"));
    CHECK((a * b).differentiate("x") ==
          a.differentiate("x") * b + a * b.differentiate("x"));
    // mixed partials commute
    CHECK(a.differentiate("x").differentiate("y") ==
          a.differentiate("y").differentiate("x"));
  }
}

TEST_CASE("derivative matches central finite differences on polynomials") {
  dt::Rng rng(17);
  const std::vector<std::string> coords{"x", "y"};
  const Rational h(1, 10000);
  int checked = 0;
  for (int i = 0; checked < 100; ++i) {
    const ScalarExpr e(dt::rand_polynomial(rng, coords, 4, 5));
    const ScalarExpr de = e.differentiate("x");

    std::map<std::string, Rational> pt{{"x", dt::rand_rational(rng, 3, 2)},
                                       {"y", dt::rand_rational(rng, 3, 2)}};
    auto up = pt, dn = pt;
    up["x"] += h;
    dn["x"] -= h;
    const Rational numeric =
        (e.evaluate(up).rational - e.evaluate(dn).rational) / (2 * h);
    const Rational exact = de.evaluate(pt).rational;
    if (exact == 0) continue;  // relative tolerance needs a scale
    const Real rel = to_real((numeric - exact) / exact);
    CHECK(abs(rel) < Real("1e-6"));
    ++checked;
  }
}

TEST_CASE("partial substitution stays in the ring") {
  const ScalarExpr e = parse_expr("x*exp(x*y) + y^2");
  const ScalarExpr at_x1 = e.substitute({{"x", Rational(1)}});
  CHECK(at_x1 == parse_expr("exp(y) + y^2"));
  CHECK(e.substitute({{"x", Rational(0)}}) == parse_expr("y^2"));
  CHECK(e.free_coordinates() == std::set<std::string>{"x", "y"});
}

TEST_CASE("units of the ring invert exactly") {
  const ScalarExpr u = parse_expr("3*exp(x*y)");
  CHECK((u * u.unit_inverse()) == ScalarExpr(1));
  CHECK_THROWS_AS(parse_expr("1 + x").unit_inverse(), Error);
  CHECK_THROWS_AS(parse_expr("x*exp(y)").unit_inverse(), Error);
}

TEST_CASE("structural nonvanishing recognizes c*exp(p) and nothing else") {
  CHECK(parse_expr("2/3").is_structurally_nonvanishing());
  CHECK(parse_expr("exp(x*y)").is_structurally_nonvanishing());
  CHECK(parse_expr("-5*exp(x^2)").is_structurally_nonvanishing());
  CHECK(!parse_expr("x").is_structurally_nonvanishing());
  CHECK(!parse_expr("exp(x) + 1").is_structurally_nonvanishing());
  CHECK(!ScalarExpr().is_structurally_nonvanishing());
}
