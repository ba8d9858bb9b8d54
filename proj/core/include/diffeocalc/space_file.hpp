#ifndef DIFFEOCALC_SPACE_FILE_HPP
#define DIFFEOCALC_SPACE_FILE_HPP

#include <nlohmann/json.hpp>

#include <map>
#include <string>

#include "diffeocalc/clifford.hpp"
#include "diffeocalc/derham.hpp"
#include "diffeocalc/forms.hpp"
#include "diffeocalc/space.hpp"

namespace diffeocalc {

/// A named form read from a space file, kept as a raw per-piece tuple so
/// the compatibility check remains an explicit operation.
struct FormEntry {
  int grade = 0;
  std::map<std::string, ExtElement> tuple;
};

/// Parsed content of a space-description file: the glued space plus the
/// optional metrics, forms and sections declared alongside it.
struct SpaceDescription {
  GluedSpace space;
  std::map<std::string, FibreBilinearForm> metrics;  // keyed by piece id
  std::map<std::string, FormEntry> forms;
  std::map<std::string, GluedSection> sections;

  bool has_metrics() const { return !metrics.empty(); }
  /// Declared metrics, falling back to the standard one per piece.
  std::vector<PieceCotangentMetric> piece_metrics() const;
};

/// Reads and validates a space-description file (JSON, UTF-8). Structural
/// violations and grammar errors throw with the offending key or wedge in
/// the message.
SpaceDescription parse_space(const std::string& path);
SpaceDescription parse_space_json(const nlohmann::json& doc);

/// Renders a multi-index in file-key syntax, e.g. "dx1^dy1" (grade 0: "1").
std::string multi_index_key(const EuclideanPiece& piece, const MultiIndex& I);

}  // namespace diffeocalc

#endif
