#ifndef DIFFEOCALC_METRIC_HPP
#define DIFFEOCALC_METRIC_HPP

#include <map>
#include <string>
#include <vector>

#include "diffeocalc/clifford.hpp"
#include "diffeocalc/forms.hpp"
#include "diffeocalc/space.hpp"

namespace diffeocalc {

/// Pseudo-metric on Lambda^1 over one piece: the symmetric matrix of
/// g(dx_a, dx_b) with ScalarExpr entries in the piece's coordinates.
struct PieceCotangentMetric {
  std::string piece;
  FibreBilinearForm form;

  static PieceCotangentMetric standard(const EuclideanPiece& p);
};

struct MetricCheck {
  bool ok = true;
  std::string detail;
};

/// Symmetry is structural; positive definiteness is checked numerically
/// at each sample point through the leading principal minors.
MetricCheck check_pseudometric(const GluedSpace& s, const PieceCotangentMetric& g,
                               const std::vector<std::vector<Rational>>& samples);

struct MetricCompatibility {
  bool compatible = true;
  std::string note;
};

/// For gluings along single points every compatibility condition is
/// vacuous; the result records that fact.
MetricCompatibility compatible_metrics(const GluedSpace& s,
                                       const std::vector<PieceCotangentMetric>& gs);

/// Per-piece pseudo-metrics plus, at each wedge point, the induced block
/// form on the doubled fibre: one half of the direct sum of the
/// participant metrics evaluated at the glue point.
class GluedPseudoMetric {
 public:
  GluedPseudoMetric() = default;

  const PieceCotangentMetric& piece_metric(const std::string& piece_id) const;
  const std::map<std::string, PieceCotangentMetric>& piece_metrics() const {
    return pieces_;
  }
  /// Block form over the wedge fibre basis (participant order).
  const FibreBilinearForm& wedge_block(const std::string& wedge_id) const;
  const std::map<std::string, FibreBilinearForm>& wedge_blocks() const { return blocks_; }

  friend GluedPseudoMetric induced_metric(const GluedSpace& s,
                                          const std::vector<PieceCotangentMetric>& gs);

 private:
  std::map<std::string, PieceCotangentMetric> pieces_;
  std::map<std::string, FibreBilinearForm> blocks_;
};

GluedPseudoMetric induced_metric(const GluedSpace& s,
                                 const std::vector<PieceCotangentMetric>& gs);

}  // namespace diffeocalc

#endif
