#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "diffeocalc/space.hpp"
#include "test_helpers.hpp"

using namespace diffeocalc;
namespace dt = diffeocalc::testing;

TEST_CASE("dimension is the max of the piece dimensions") {
  CHECK(dimension(dt::wedge_of_lines(2)) == 1);
  CHECK(dimension(dt::wedge_two_planes()) == 2);
  CHECK(dimension(dt::single_piece(3)) == 3);
}

TEST_CASE("validation catches the wedge invariants") {
  CHECK(validate(dt::single_piece(2)).empty());  // no wedges: a disjoint union is fine
  CHECK(validate(dt::wedge_of_lines(4)).empty());

  // one participant
  GluedSpace bad1({{"A", 1, {"x"}}, {"B", 1, {"u"}}}, {{"w0", {{"A", {Rational(0)}}}}});
  const auto v1 = validate(bad1);
  CHECK(std::any_of(v1.begin(), v1.end(), [](const Violation& v) {
    return v.where == "w0" && v.message.find("at least 2") != std::string::npos;
  }));

  // two wedges sharing a point of one piece
  GluedSpace bad2({{"A", 1, {"x"}}, {"B", 1, {"u"}}, {"C", 1, {"v"}}},
                  {{"w0", {{"A", {Rational(0)}}, {"B", {Rational(0)}}}},
                   {"w1", {{"A", {Rational(0)}}, {"C", {Rational(0)}}}}});
  const auto v2 = validate(bad2);
  CHECK(std::any_of(v2.begin(), v2.end(), [](const Violation& v) {
    return v.where == "w1" && v.message.find("already identified") != std::string::npos;
  }));

  // same piece twice within one wedge
  GluedSpace bad3({{"A", 1, {"x"}}},
                  {{"w0", {{"A", {Rational(0)}}, {"A", {Rational(1)}}}}});
  const auto v3 = validate(bad3);
  CHECK(std::any_of(v3.begin(), v3.end(), [](const Violation& v) {
    return v.message.find("appears twice") != std::string::npos;
  }));

  // unknown piece reference
  GluedSpace bad4({{"A", 1, {"x"}}, {"B", 1, {"u"}}},
                  {{"w0", {{"A", {Rational(0)}}, {"Z", {Rational(0)}}}}});
  const auto v4 = validate(bad4);
  CHECK(std::any_of(v4.begin(), v4.end(), [](const Violation& v) {
    return v.message.find("unknown piece") != std::string::npos;
  }));
}

TEST_CASE("pieces_at and point normalization") {
  const GluedSpace s = dt::wedge_of_lines(3);

  const auto interior = pieces_at(s, SpacePoint::interior("L1", {Rational(1)}));
  REQUIRE(interior.size() == 1);
  CHECK(interior[0].first == "L1");
  CHECK(interior[0].second == std::vector<Rational>{Rational(1)});

  const auto at_wedge = pieces_at(s, SpacePoint::wedge("w0"));
  CHECK(at_wedge.size() == 3);

  // a piece point lying on the wedge normalizes to the wedge point
  const SpacePoint n = normalize_point(s, SpacePoint::interior("L2", {Rational(0)}));
  CHECK(n.is_wedge());
  CHECK(n.wedge_id() == "w0");

  const GluedSpace planes = dt::wedge_two_planes();
  CHECK(pieces_at(planes, SpacePoint::interior("X1", {Rational(0), Rational(0)})).size() ==
        2);

  CHECK_THROWS_AS(pieces_at(s, SpacePoint::interior("L1", {Rational(0), Rational(0)})),
                  Error);
  CHECK_THROWS_AS(pieces_at(s, SpacePoint::wedge("nope")), Error);
}

TEST_CASE("dimension is invariant under reordering and extra wedges") {
  dt::Rng rng(59);
  for (int iter = 0; iter < 40; ++iter) {
    const GluedSpace s = dt::rand_space(rng);
    REQUIRE(validate(s).empty());
    const int d = dimension(s);

    std::vector<EuclideanPiece> shuffled = s.pieces();
    std::vector<WedgePoint> wshuffled = s.wedges();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::shuffle(wshuffled.begin(), wshuffled.end(), rng);
    CHECK(dimension(GluedSpace(shuffled, wshuffled)) == d);

    // gluing one more point never changes the dimension
    if (s.pieces().size() >= 2) {
      WedgePoint extra;
      extra.id = "extra";
      for (const EuclideanPiece& p : s.pieces()) {
        std::vector<Rational> pt(static_cast<std::size_t>(p.dim), Rational(77));
        extra.participants.push_back({p.id, pt});
      }
      std::vector<WedgePoint> w2 = s.wedges();
      w2.push_back(extra);
      const GluedSpace s2(s.pieces(), w2);
      if (validate(s2).empty()) CHECK(dimension(s2) == d);
    }
  }
}
