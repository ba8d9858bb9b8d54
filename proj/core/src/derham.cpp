#include "diffeocalc/derham.hpp"

#include <algorithm>

namespace diffeocalc {

const ExtElement& GluedSection::component(const std::string& piece) const {
  auto it = components.find(piece);
  if (it == components.end()) throw Error("no section component for piece '" + piece + "'");
  return it->second;
}

bool GluedSection::is_zero() const {
  return std::all_of(components.begin(), components.end(),
                     [](const auto& kv) { return kv.second.is_zero(); });
}

GluedSection GluedSection::operator-(const GluedSection& other) const {
  GluedSection out = *this;
  for (const auto& [pid, v] : other.components) out.components.at(pid) = out.components.at(pid) - v;
  return out;
}

BoundedDimension bounded_dimension(const GluedSpace& s) {
  BoundedDimension out;
  for (const EuclideanPiece& p : s.pieces()) out.N = std::max(out.N, p.dim);
  for (const WedgePoint& w : s.wedges()) {
    int sum = 0;
    for (const auto& part : w.participants) sum += s.piece(part.piece).dim;
    out.N = std::max(out.N, sum);
  }
  return out;
}

namespace {

ExtElement reindexed(const ExtElement& e, int new_dim, int offset) {
  ExtElement out(new_dim);
  for (const auto& [I, c] : e.coefficients()) {
    std::vector<int> idx = I.indices();
    for (int& i : idx) i += offset;
    out.add_term(MultiIndex(idx), c);
  }
  return out;
}

}  // namespace

WedgeSectionValue section_wedge_value(const GluedSpace& s, const std::string& wedge_id,
                                      const GluedSection& sec) {
  const WedgePoint& w = s.wedge_point(wedge_id);
  WedgeSectionValue out;
  out.basis = fibre_basis(s, SpacePoint::wedge(wedge_id), 1);
  out.value = ExtElement(out.basis.dim());
  int offset = 0;
  for (const auto& part : w.participants) {
    const auto binding = s.bind_coords(part.piece, part.point);
    const ExtElement local = sec.component(part.piece).map_coefficients(
        [&](const ScalarExpr& c) { return c.substitute(binding); });
    out.value = out.value + reindexed(local, out.basis.dim(), offset);
    offset += s.piece(part.piece).dim;
  }
  return out;
}

GluedSection derham_apply(const GluedSpace& s, const GluedSection& sec,
                          const GluedPseudoMetric& g, const GluedConnection& conn) {
  GluedSection out;
  for (const EuclideanPiece& p : s.pieces()) {
    const PieceCotangentMetric& gp = g.piece_metric(p.id);
    const ChristoffelData& cp = conn.piece(p.id);
    if (gp.form.dimension() != p.dim || cp.dim() != p.dim)
      throw Error("metric/connection mismatch on piece '" + p.id + "'");

    const TensorSection t = nabla_exterior(s, sec.component(p.id), cp);
    ExtElement acc(p.dim);
    for (int a = 0; a < p.dim; ++a)
      acc = acc + clifford_action(ExtElement::basis(p.dim, a),
                                  t.components[static_cast<std::size_t>(a)], gp.form);
    out.components[p.id] = acc;
  }
  return out;
}

ExtElement euclidean_dplusdstar(const EuclideanPiece& piece, const ExtElement& w) {
  ExtElement out = piece_exterior_derivative(piece, w);
  for (const auto& [I, c] : w.coefficients()) {
    for (std::size_t j = 0; j < I.grade(); ++j) {
      const int a = I.indices()[j];
      const ScalarExpr dc = c.differentiate(piece.coords[static_cast<std::size_t>(a)]);
      if (dc.is_zero()) continue;
      const Rational sign = (j % 2 == 0) ? Rational(-1) : Rational(1);
      out.add_term(I.erased_at(j), ScalarExpr(sign) * dc);
    }
  }
  return out;
}

OracleComparison compare_with_oracle(const GluedSpace& s, const GluedSection& sec) {
  std::vector<PieceCotangentMetric> metrics;
  std::vector<ChristoffelData> gammas;
  for (const EuclideanPiece& p : s.pieces()) {
    metrics.push_back(PieceCotangentMetric::standard(p));
    gammas.push_back(christoffel(s, metrics.back()));
  }
  const GluedPseudoMetric g = induced_metric(s, metrics);
  const GluedConnection conn = glued_connection(s, gammas);
  const GluedSection d = derham_apply(s, sec, g, conn);

  OracleComparison out;
  for (const EuclideanPiece& p : s.pieces()) {
    const ExtElement diff =
        d.component(p.id) - euclidean_dplusdstar(p, sec.component(p.id));
    if (!diff.is_zero()) {
      out.symbolically_zero = false;
      if (out.first_mismatch.empty())
        out.first_mismatch = "piece '" + p.id + "': " + diff.str();
    }
  }
  return out;
}

DeRhamReport derham_report(const GluedSpace& s, const GluedSection& sec,
                           const GluedPseudoMetric& g, const GluedConnection& conn) {
  DeRhamReport out;
  out.input = sec;
  out.output = derham_apply(s, sec, g, conn);
  for (const EuclideanPiece& p : s.pieces()) {
    const PieceCotangentMetric& gp = g.piece_metric(p.id);
    if (!(gp.form.dimension() == p.dim)) continue;
    bool standard = true;
    for (int i = 0; i < p.dim && standard; ++i)
      for (int j = 0; j < p.dim && standard; ++j) {
        const ScalarExpr expect = (i == j) ? ScalarExpr(1) : ScalarExpr();
        if (gp.form.at(i, j) != expect) standard = false;
      }
    if (!standard) continue;
    const ExtElement diff =
        out.output.component(p.id) - euclidean_dplusdstar(p, sec.component(p.id));
    out.oracle_residuals[p.id] = diff.is_zero() ? "0" : diff.str();
  }
  return out;
}

}  // namespace diffeocalc
