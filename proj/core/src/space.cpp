#include "diffeocalc/space.hpp"

#include <algorithm>
#include <set>

namespace diffeocalc {

GluedSpace::GluedSpace(std::vector<EuclideanPiece> pieces, std::vector<WedgePoint> wedges)
    : pieces_(std::move(pieces)), wedges_(std::move(wedges)) {}

bool GluedSpace::has_piece(const std::string& id) const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [&](const EuclideanPiece& p) { return p.id == id; });
}

const EuclideanPiece& GluedSpace::piece(const std::string& id) const {
  for (const EuclideanPiece& p : pieces_)
    if (p.id == id) return p;
  throw Error("unknown piece '" + id + "'");
}

const WedgePoint& GluedSpace::wedge_point(const std::string& id) const {
  for (const WedgePoint& w : wedges_)
    if (w.id == id) return w;
  throw Error("unknown wedge point '" + id + "'");
}

std::optional<std::vector<Rational>> GluedSpace::wedge_coords_in(
    const std::string& wedge_id, const std::string& piece_id) const {
  for (const auto& part : wedge_point(wedge_id).participants)
    if (part.piece == piece_id) return part.point;
  return std::nullopt;
}

std::map<std::string, Rational> GluedSpace::bind_coords(
    const std::string& piece_id, const std::vector<Rational>& point) const {
  const EuclideanPiece& p = piece(piece_id);
  if (point.size() != p.coords.size())
    throw Error("coordinate tuple length mismatch for piece '" + piece_id + "'");
  std::map<std::string, Rational> out;
  for (std::size_t i = 0; i < point.size(); ++i) out[p.coords[i]] = point[i];
  return out;
}

SpacePoint SpacePoint::interior(std::string piece, std::vector<Rational> coords) {
  SpacePoint x;
  x.value = Interior{std::move(piece), std::move(coords)};
  return x;
}

SpacePoint SpacePoint::wedge(std::string id) {
  SpacePoint x;
  x.value = std::move(id);
  return x;
}

std::vector<Violation> validate(const GluedSpace& s) {
  std::vector<Violation> out;

  std::set<std::string> piece_ids;
  for (const EuclideanPiece& p : s.pieces()) {
    if (!piece_ids.insert(p.id).second)
      out.push_back({p.id, "duplicate piece id"});
    if (p.dim < 1) out.push_back({p.id, "piece dimension must be >= 1"});
    if (static_cast<int>(p.coords.size()) != p.dim)
      out.push_back({p.id, "coordinate name count does not match dimension"});
    std::set<std::string> names(p.coords.begin(), p.coords.end());
    if (names.size() != p.coords.size())
      out.push_back({p.id, "coordinate names are not distinct"});
  }

  std::set<std::string> wedge_ids;
  // (piece, point) pairs already used by some wedge
  std::set<std::pair<std::string, std::vector<Rational>>> used_points;
  for (const WedgePoint& w : s.wedges()) {
    if (!wedge_ids.insert(w.id).second) out.push_back({w.id, "duplicate wedge id"});
    if (w.participants.size() < 2)
      out.push_back({w.id, "a wedge point needs at least 2 participants"});
    std::set<std::string> seen_pieces;
    for (const auto& part : w.participants) {
      if (!piece_ids.count(part.piece)) {
        out.push_back({w.id, "references unknown piece '" + part.piece + "'"});
        continue;
      }
      if (!seen_pieces.insert(part.piece).second)
        out.push_back({w.id, "piece '" + part.piece + "' appears twice in one wedge"});
      const EuclideanPiece& p = s.piece(part.piece);
      if (static_cast<int>(part.point.size()) != p.dim)
        out.push_back({w.id, "point in piece '" + part.piece + "' has wrong length"});
      else if (!used_points.insert({part.piece, part.point}).second)
        out.push_back({w.id, "point of piece '" + part.piece +
                                 "' already identified by another wedge"});
    }
  }
  return out;
}

int dimension(const GluedSpace& s) {
  int n = 0;
  for (const EuclideanPiece& p : s.pieces()) n = std::max(n, p.dim);
  return n;
}

SpacePoint normalize_point(const GluedSpace& s, const SpacePoint& x) {
  if (x.is_wedge()) {
    s.wedge_point(x.wedge_id());  // existence check
    return x;
  }
  const auto& in = x.as_interior();
  const EuclideanPiece& p = s.piece(in.piece);
  if (static_cast<int>(in.coords.size()) != p.dim)
    throw Error("point in piece '" + in.piece + "' has wrong coordinate count");
  for (const WedgePoint& w : s.wedges())
    for (const auto& part : w.participants)
      if (part.piece == in.piece && part.point == in.coords)
        return SpacePoint::wedge(w.id);
  return x;
}

std::vector<std::pair<std::string, std::vector<Rational>>> pieces_at(const GluedSpace& s,
                                                                     const SpacePoint& x) {
  const SpacePoint n = normalize_point(s, x);
  std::vector<std::pair<std::string, std::vector<Rational>>> out;
  if (n.is_wedge()) {
    for (const auto& part : s.wedge_point(n.wedge_id()).participants)
      out.emplace_back(part.piece, part.point);
  } else {
    out.emplace_back(n.as_interior().piece, n.as_interior().coords);
  }
  return out;
}

}  // namespace diffeocalc
