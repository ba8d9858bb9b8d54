#include "diffeocalc/metric.hpp"

namespace diffeocalc {

PieceCotangentMetric PieceCotangentMetric::standard(const EuclideanPiece& p) {
  return {p.id, FibreBilinearForm::identity(p.dim)};
}

MetricCheck check_pseudometric(const GluedSpace& s, const PieceCotangentMetric& g,
                               const std::vector<std::vector<Rational>>& samples) {
  const EuclideanPiece& p = s.piece(g.piece);
  if (g.form.dimension() != p.dim)
    return {false, "metric dimension does not match piece '" + p.id + "'"};

  for (const auto& sample : samples) {
    const auto binding = s.bind_coords(p.id, sample);
    // numeric leading principal minors
    const int n = p.dim;
    std::vector<Real> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m[static_cast<std::size_t>(i * n + j)] = g.form.at(i, j).evaluate(binding).real;
    for (int lead = 1; lead <= n; ++lead) {
      // determinant of the lead x lead corner by Gaussian elimination
      std::vector<Real> a(m);
      Real det(1);
      for (int c = 0; c < lead; ++c) {
        int pivot = -1;
        for (int r = c; r < lead; ++r)
          if (a[static_cast<std::size_t>(r * n + c)] != 0) {
            pivot = r;
            break;
          }
        if (pivot < 0) {
          det = 0;
          break;
        }
        if (pivot != c) {
          for (int cc = 0; cc < lead; ++cc)
            std::swap(a[static_cast<std::size_t>(pivot * n + cc)],
                      a[static_cast<std::size_t>(c * n + cc)]);
          det = -det;
        }
        det *= a[static_cast<std::size_t>(c * n + c)];
        for (int r = c + 1; r < lead; ++r) {
          const Real f = a[static_cast<std::size_t>(r * n + c)] /
                         a[static_cast<std::size_t>(c * n + c)];
          for (int cc = c; cc < lead; ++cc)
            a[static_cast<std::size_t>(r * n + cc)] -=
                f * a[static_cast<std::size_t>(c * n + cc)];
        }
      }
      if (det <= 0) {
        std::string pt = "(";
        for (std::size_t i = 0; i < sample.size(); ++i)
          pt += (i ? "," : "") + rational_to_string(sample[i]);
        pt += ")";
        return {false, "leading principal minor " + std::to_string(lead) +
                           " is not positive at " + pt + " on piece '" + p.id + "'"};
      }
    }
  }
  return {};
}

MetricCompatibility compatible_metrics(const GluedSpace& s,
                                       const std::vector<PieceCotangentMetric>& gs) {
  if (gs.size() != s.pieces().size())
    throw Error("one metric per piece required: got " + std::to_string(gs.size()) +
                " for " + std::to_string(s.pieces().size()) + " pieces");
  for (const EuclideanPiece& p : s.pieces()) {
    const bool found = std::any_of(gs.begin(), gs.end(), [&](const auto& g) {
      return g.piece == p.id && g.form.dimension() == p.dim;
    });
    if (!found) throw Error("no metric of matching dimension for piece '" + p.id + "'");
  }
  MetricCompatibility out;
  out.compatible = true;
  out.note = s.wedges().empty()
                 ? "no gluing, nothing to check"
                 : "compatibility conditions are empty for gluings along single points";
  return out;
}

const PieceCotangentMetric& GluedPseudoMetric::piece_metric(
    const std::string& piece_id) const {
  auto it = pieces_.find(piece_id);
  if (it == pieces_.end()) throw Error("no metric for piece '" + piece_id + "'");
  return it->second;
}

const FibreBilinearForm& GluedPseudoMetric::wedge_block(const std::string& wedge_id) const {
  auto it = blocks_.find(wedge_id);
  if (it == blocks_.end()) throw Error("no wedge block for '" + wedge_id + "'");
  return it->second;
}

GluedPseudoMetric induced_metric(const GluedSpace& s,
                                 const std::vector<PieceCotangentMetric>& gs) {
  compatible_metrics(s, gs);  // also validates the per-piece coverage
  GluedPseudoMetric out;
  for (const PieceCotangentMetric& g : gs) out.pieces_[g.piece] = g;

  for (const WedgePoint& w : s.wedges()) {
    const FibreBasis fb = fibre_basis(s, SpacePoint::wedge(w.id), 1);
    FibreBilinearForm block(fb.dim());
    int offset = 0;
    for (const auto& part : w.participants) {
      const EuclideanPiece& p = s.piece(part.piece);
      const auto binding = s.bind_coords(part.piece, part.point);
      const FibreBilinearForm local = out.pieces_.at(part.piece).form.substituted(binding);
      for (int a = 0; a < p.dim; ++a)
        for (int b = a; b < p.dim; ++b)
          block.set(offset + a, offset + b,
                    ScalarExpr(Rational(1, 2)) * local.at(a, b));
      offset += p.dim;
    }
    out.blocks_[w.id] = std::move(block);
  }
  return out;
}

}  // namespace diffeocalc
