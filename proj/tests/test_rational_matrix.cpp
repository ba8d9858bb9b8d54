#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diffeocalc/rational_matrix.hpp"
#include "test_helpers.hpp"

using namespace diffeocalc;
namespace dt = diffeocalc::testing;

TEST_CASE("rank and rref on a known matrix") {
  RationalMatrix m(3, 3);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(0, 2) = 3;
  m.at(1, 0) = 2;
  m.at(1, 1) = 4;
  m.at(1, 2) = 6;
  m.at(2, 0) = 0;
  m.at(2, 1) = 1;
  m.at(2, 2) = 1;
  CHECK(m.rank() == 2);

  const auto ns = m.nullspace_basis();
  REQUIRE(ns.size() == 1);
  for (const Rational& v : m.apply(ns[0])) CHECK(v == 0);
}

TEST_CASE("solvable distinguishes column span membership") {
  RationalMatrix a(2, 1);
  a.at(0, 0) = 1;
  a.at(1, 0) = 2;
  CHECK(a.solvable({Rational(2), Rational(4)}));
  CHECK(!a.solvable({Rational(1), Rational(1)}));
}

TEST_CASE("rank-nullity holds on random matrices") {
  dt::Rng rng(23);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  for (int iter = 0; iter < 50; ++iter) {
    const std::size_t r = size(rng), c = size(rng);
    RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = dt::rand_rational(rng);
    const auto ns = m.nullspace_basis();
    CHECK(m.rank() + ns.size() == c);
    for (const auto& v : ns)
      for (const Rational& y : m.apply(v)) CHECK(y == 0);
    CHECK(m.rank() == m.transposed().rank());
  }
}

TEST_CASE("identity behaves as the unit of the product") {
  dt::Rng rng(29);
  RationalMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m.at(i, j) = dt::rand_rational(rng);
  const RationalMatrix i4 = RationalMatrix::identity(4);
  CHECK((m * i4).rank() == m.rank());
  CHECK(i4.rank() == 4);
}
