#ifndef DIFFEOCALC_SPACE_HPP
#define DIFFEOCALC_SPACE_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diffeocalc/rational.hpp"

namespace diffeocalc {

/// A copy of R^n with named coordinates.
struct EuclideanPiece {
  std::string id;
  int dim = 0;
  std::vector<std::string> coords;
};

/// One identification of a single point from each of >= 2 pieces.
struct WedgePoint {
  struct Participant {
    std::string piece;
    std::vector<Rational> point;
  };
  std::string id;
  std::vector<Participant> participants;
};

/// Finitely many Euclidean pieces glued at finitely many wedge points.
/// Iterated point gluings are stored flat: the order in which wedges were
/// formed does not matter.
class GluedSpace {
 public:
  GluedSpace() = default;
  GluedSpace(std::vector<EuclideanPiece> pieces, std::vector<WedgePoint> wedges);

  const std::vector<EuclideanPiece>& pieces() const { return pieces_; }
  const std::vector<WedgePoint>& wedges() const { return wedges_; }

  bool has_piece(const std::string& id) const;
  const EuclideanPiece& piece(const std::string& id) const;
  const WedgePoint& wedge_point(const std::string& id) const;

  /// Local coordinates of wedge `w` in piece `p`, if p participates.
  std::optional<std::vector<Rational>> wedge_coords_in(const std::string& wedge_id,
                                                       const std::string& piece_id) const;

  /// Binding of a piece's coordinate names to a coordinate tuple.
  std::map<std::string, Rational> bind_coords(const std::string& piece_id,
                                              const std::vector<Rational>& point) const;

 private:
  std::vector<EuclideanPiece> pieces_;
  std::vector<WedgePoint> wedges_;
};

/// Point of the glued space: either an interior point of one piece or a
/// wedge point referenced by id.
struct SpacePoint {
  struct Interior {
    std::string piece;
    std::vector<Rational> coords;
  };
  std::variant<Interior, std::string> value;  // alternative: wedge id

  static SpacePoint interior(std::string piece, std::vector<Rational> coords);
  static SpacePoint wedge(std::string id);
  bool is_wedge() const { return std::holds_alternative<std::string>(value); }
  const std::string& wedge_id() const { return std::get<std::string>(value); }
  const Interior& as_interior() const { return std::get<Interior>(value); }
};

struct Violation {
  std::string where;  // piece or wedge id
  std::string message;
};

/// Checks all structural invariants; empty result means the space is valid.
std::vector<Violation> validate(const GluedSpace& s);

/// max of the piece dimensions (gluing at points never raises it).
int dimension(const GluedSpace& s);

/// A piece point that coincides with a wedge participant is normalized to
/// the wedge-point form.
SpacePoint normalize_point(const GluedSpace& s, const SpacePoint& x);

/// The pieces meeting x with the local coordinates of x in each: one
/// entry for an interior point, one per participant for a wedge point.
std::vector<std::pair<std::string, std::vector<Rational>>> pieces_at(const GluedSpace& s,
                                                                     const SpacePoint& x);

}  // namespace diffeocalc

#endif
