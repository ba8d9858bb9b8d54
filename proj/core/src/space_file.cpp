#include "diffeocalc/space_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "diffeocalc/expr_parser.hpp"
#include "diffeocalc/metric.hpp"

namespace diffeocalc {

namespace {

using nlohmann::json;

std::vector<Rational> parse_point(const json& arr, const std::string& context) {
  if (!arr.is_array()) throw ValidationError(context + ": point must be an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : arr) {
    if (v.is_number_integer()) {
      out.push_back(Rational(v.get<long long>()));
    } else if (v.is_string()) {
      out.push_back(parse_rational(v.get<std::string>()));
    } else {
      throw ValidationError(context + ": coordinates must be integers or rational strings");
    }
  }
  return out;
}

MultiIndex parse_multi_index_key(const EuclideanPiece& piece, const std::string& key) {
  if (key == "1") return MultiIndex();
  std::vector<int> indices;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, '^')) {
    if (part.size() < 2 || part[0] != 'd')
      throw ValidationError("bad multi-index key '" + key + "' on piece '" + piece.id +
                  "' (expected d<coord> components)");
    const std::string coord = part.substr(1);
    int pos = -1;
    for (int i = 0; i < piece.dim; ++i)
      if (piece.coords[static_cast<std::size_t>(i)] == coord) pos = i;
    if (pos < 0)
      throw ValidationError("multi-index key '" + key + "' names unknown coordinate '" + coord +
                  "' of piece '" + piece.id + "'");
    indices.push_back(pos);
  }
  for (std::size_t i = 0; i + 1 < indices.size(); ++i)
    if (indices[i] >= indices[i + 1])
      throw ValidationError("multi-index key '" + key + "' is not in ascending coordinate order");
  return MultiIndex(indices);
}

ExtElement parse_piece_element(const EuclideanPiece& piece, const json& obj,
                               const std::string& context) {
  if (!obj.is_object()) throw ValidationError(context + ": expected an object of multi-index keys");
  const std::set<std::string> allowed(piece.coords.begin(), piece.coords.end());
  ExtElement out(piece.dim);
  for (const auto& [key, value] : obj.items()) {
    if (!value.is_string()) throw ValidationError(context + "." + key + ": expression must be a string");
    const MultiIndex I = parse_multi_index_key(piece, key);
    ScalarExpr c;
    try {
      c = parse_expr(value.get<std::string>(), &allowed);
    } catch (const Error& e) {
      throw ValidationError(context + "." + key + ": " + e.what());
    }
    out.add_term(I, c);
  }
  return out;
}

}  // namespace

std::string multi_index_key(const EuclideanPiece& piece, const MultiIndex& I) {
  if (I.grade() == 0) return "1";
  std::string out;
  for (std::size_t j = 0; j < I.grade(); ++j) {
    if (j) out += "^";
    out += "d" + piece.coords[static_cast<std::size_t>(I.indices()[j])];
  }
  return out;
}

std::vector<PieceCotangentMetric> SpaceDescription::piece_metrics() const {
  std::vector<PieceCotangentMetric> out;
  for (const EuclideanPiece& p : space.pieces()) {
    auto it = metrics.find(p.id);
    if (it != metrics.end())
      out.push_back({p.id, it->second});
    else
      out.push_back(PieceCotangentMetric::standard(p));
  }
  return out;
}

SpaceDescription parse_space_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("space file: top level must be an object");

  std::vector<EuclideanPiece> pieces;
  if (!doc.contains("pieces") || !doc["pieces"].is_array())
    throw ValidationError("space file: missing 'pieces' array");
  for (const auto& pj : doc["pieces"]) {
    EuclideanPiece p;
    p.id = pj.value("id", "");
    if (p.id.empty()) throw ValidationError("space file: piece without id");
    p.dim = pj.value("dim", 0);
    if (!pj.contains("coords") || !pj["coords"].is_array())
      throw ValidationError("piece '" + p.id + "': missing 'coords' array");
    for (const auto& c : pj["coords"]) p.coords.push_back(c.get<std::string>());
    pieces.push_back(std::move(p));
  }

  std::vector<WedgePoint> wedges;
  if (doc.contains("wedges")) {
    for (const auto& wj : doc["wedges"]) {
      WedgePoint w;
      w.id = wj.value("id", "");
      if (w.id.empty()) throw ValidationError("space file: wedge without id");
      if (!wj.contains("at") || !wj["at"].is_array())
        throw ValidationError("wedge '" + w.id + "': missing 'at' array");
      for (const auto& aj : wj["at"]) {
        WedgePoint::Participant part;
        part.piece = aj.value("piece", "");
        part.point = parse_point(aj.value("point", json::array()), "wedge '" + w.id + "'");
        w.participants.push_back(std::move(part));
      }
      wedges.push_back(std::move(w));
    }
  }

  SpaceDescription out;
  out.space = GluedSpace(std::move(pieces), std::move(wedges));
  const std::vector<Violation> violations = validate(out.space);
  if (!violations.empty()) {
    std::string msg = "space file: invalid space:";
    for (const Violation& v : violations) msg += "\n  [" + v.where + "] " + v.message;
    throw ValidationError(msg);
  }

  if (doc.contains("metrics")) {
    if (!doc["metrics"].is_object()) throw ValidationError("space file: 'metrics' must be an object");
    for (const auto& [pid, mj] : doc["metrics"].items()) {
      const EuclideanPiece& p = out.space.piece(pid);
      const std::set<std::string> allowed(p.coords.begin(), p.coords.end());
      if (!mj.is_array() || static_cast<int>(mj.size()) != p.dim)
        throw ValidationError("metric of piece '" + pid + "': expected a " + std::to_string(p.dim) +
                    "x" + std::to_string(p.dim) + " matrix");
      FibreBilinearForm g(p.dim);
      std::vector<std::vector<ScalarExpr>> raw(static_cast<std::size_t>(p.dim));
      for (int i = 0; i < p.dim; ++i) {
        const auto& row = mj[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != p.dim)
          throw ValidationError("metric of piece '" + pid + "': row " + std::to_string(i) +
                      " has wrong length");
        for (int j = 0; j < p.dim; ++j)
          raw[static_cast<std::size_t>(i)].push_back(
              parse_expr(row[static_cast<std::size_t>(j)].get<std::string>(), &allowed));
      }
      for (int i = 0; i < p.dim; ++i)
        for (int j = i; j < p.dim; ++j) {
          if (!(raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                raw[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                   .is_zero())
            throw ValidationError("metric of piece '" + pid + "' is not symmetric at (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
          g.set(i, j, raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
      out.metrics[pid] = std::move(g);
    }
  }

  if (doc.contains("forms")) {
    if (!doc["forms"].is_object()) throw ValidationError("space file: 'forms' must be an object");
    for (const auto& [name, fj] : doc["forms"].items()) {
      FormEntry entry;
      if (!fj.contains("grade") || !fj["grade"].is_number_integer())
        throw ValidationError("form '" + name + "': missing integer 'grade'");
      entry.grade = fj["grade"].get<int>();
      if (entry.grade < 0) throw ValidationError("form '" + name + "': negative grade");
      for (const EuclideanPiece& p : out.space.pieces()) entry.tuple[p.id] = ExtElement(p.dim);
      const json piece_map = fj.value("pieces", json::object());
      for (const auto& [pid, comp] : piece_map.items()) {
        const EuclideanPiece& p = out.space.piece(pid);
        const ExtElement v = parse_piece_element(p, comp, "form '" + name + "'.pieces." + pid);
        for (const auto& [I, c] : v.coefficients())
          if (static_cast<int>(I.grade()) != entry.grade)
            throw ValidationError("form '" + name + "' on piece '" + pid +
                        "': key of grade " + std::to_string(I.grade()) +
                        " does not match declared grade " + std::to_string(entry.grade));
        entry.tuple[pid] = v;
      }
      out.forms[name] = std::move(entry);
    }
  }

  if (doc.contains("sections")) {
    if (!doc["sections"].is_object()) throw ValidationError("space file: 'sections' must be an object");
    for (const auto& [name, sj] : doc["sections"].items()) {
      GluedSection sec;
      for (const EuclideanPiece& p : out.space.pieces())
        sec.components[p.id] = ExtElement(p.dim);
      const json piece_map = sj.value("pieces", json::object());
      for (const auto& [pid, comp] : piece_map.items()) {
        const EuclideanPiece& p = out.space.piece(pid);
        sec.components[pid] =
            parse_piece_element(p, comp, "section '" + name + "'.pieces." + pid);
      }
      out.sections[name] = std::move(sec);
    }
  }

  return out;
}

SpaceDescription parse_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open space file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("space file '" + path + "': " + e.what());
  }
  return parse_space_json(doc);
}

}  // namespace diffeocalc
