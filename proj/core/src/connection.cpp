#include "diffeocalc/connection.hpp"

#include <algorithm>

namespace diffeocalc {

ChristoffelData::ChristoffelData(std::string piece, int dim)
    : piece_(std::move(piece)),
      dim_(dim),
      data_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim) *
            static_cast<std::size_t>(dim)) {}

const ScalarExpr& ChristoffelData::at(int c, int a, int b) const {
  if (c < 0 || a < 0 || b < 0 || c >= dim_ || a >= dim_ || b >= dim_)
    throw Error("Christoffel index out of range");
  const auto n = static_cast<std::size_t>(dim_);
  return data_[(static_cast<std::size_t>(c) * n + static_cast<std::size_t>(a)) * n +
               static_cast<std::size_t>(b)];
}

void ChristoffelData::set(int c, int a, int b, const ScalarExpr& v) {
  if (c < 0 || a < 0 || b < 0 || c >= dim_ || a >= dim_ || b >= dim_)
    throw Error("Christoffel index out of range");
  const auto n = static_cast<std::size_t>(dim_);
  data_[(static_cast<std::size_t>(c) * n + static_cast<std::size_t>(a)) * n +
        static_cast<std::size_t>(b)] = v;
  data_[(static_cast<std::size_t>(c) * n + static_cast<std::size_t>(b)) * n +
        static_cast<std::size_t>(a)] = v;
}

namespace {

using Matrix = std::vector<std::vector<ScalarExpr>>;

Matrix to_matrix(const FibreBilinearForm& g) {
  const int n = g.dimension();
  Matrix m(static_cast<std::size_t>(n), std::vector<ScalarExpr>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.at(i, j);
  return m;
}

Matrix minor_of(const Matrix& m, std::size_t row, std::size_t col) {
  Matrix out;
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (r == row) continue;
    std::vector<ScalarExpr> line;
    for (std::size_t c = 0; c < m.size(); ++c)
      if (c != col) line.push_back(m[r][c]);
    out.push_back(std::move(line));
  }
  return out;
}

ScalarExpr determinant(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return ScalarExpr(1);
  if (n == 1) return m[0][0];
  ScalarExpr det;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    const ScalarExpr cofactor = determinant(minor_of(m, 0, c));
    const Rational sign = (c % 2 == 0) ? Rational(1) : Rational(-1);
    det += ScalarExpr(sign) * m[0][c] * cofactor;
  }
  return det;
}

}  // namespace

FibreBilinearForm invert_symmetric(const FibreBilinearForm& g) {
  const int n = g.dimension();
  const Matrix m = to_matrix(g);
  const ScalarExpr det = determinant(m);
  if (det.is_zero()) throw Error("matrix is singular");
  ScalarExpr det_inv;
  try {
    det_inv = det.unit_inverse();
  } catch (const Error&) {
    throw Error("determinant is not a unit of the coefficient ring: " + det.str());
  }
  FibreBilinearForm out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const ScalarExpr cofactor =
          determinant(minor_of(m, static_cast<std::size_t>(j), static_cast<std::size_t>(i)));
      const Rational sign = ((i + j) % 2 == 0) ? Rational(1) : Rational(-1);
      out.set(i, j, ScalarExpr(sign) * cofactor * det_inv);
    }
  return out;
}

ChristoffelData christoffel(const GluedSpace& s, const PieceCotangentMetric& g) {
  const EuclideanPiece& p = s.piece(g.piece);
  const int n = p.dim;
  if (g.form.dimension() != n) throw Error("metric dimension does not match piece");

  const FibreBilinearForm tangent = invert_symmetric(g.form);

  // precompute partials of the tangent metric
  std::vector<std::vector<std::vector<ScalarExpr>>> dg(
      static_cast<std::size_t>(n),
      std::vector<std::vector<ScalarExpr>>(static_cast<std::size_t>(n),
                                           std::vector<ScalarExpr>(static_cast<std::size_t>(n))));
  for (int d = 0; d < n; ++d)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        dg[static_cast<std::size_t>(d)][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            tangent.at(a, b).differentiate(p.coords[static_cast<std::size_t>(d)]);

  ChristoffelData out(p.id, n);
  const ScalarExpr half(Rational(1, 2));
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        ScalarExpr acc;
        for (int d = 0; d < n; ++d) {
          const auto da = static_cast<std::size_t>(a);
          const auto db = static_cast<std::size_t>(b);
          const auto dd = static_cast<std::size_t>(d);
          acc += g.form.at(c, d) * (dg[da][db][dd] + dg[db][da][dd] - dg[dd][da][db]);
        }
        out.set(c, a, b, half * acc);
      }
  return out;
}

bool TensorSection::is_zero() const {
  return std::all_of(components.begin(), components.end(),
                     [](const ExtElement& e) { return e.is_zero(); });
}

TensorSection nabla_oneform(const GluedSpace& s, const ExtElement& omega,
                            const ChristoffelData& gamma) {
  const EuclideanPiece& p = s.piece(gamma.piece());
  const int n = p.dim;
  if (omega.dimension() != n) throw Error("nabla: section dimension mismatch");
  if (!omega.is_zero()) {
    const auto grade = omega.homogeneous_grade();
    if (!grade || *grade != 1) throw Error("nabla_oneform expects a grade-1 section");
  }

  std::vector<ScalarExpr> w(static_cast<std::size_t>(n));
  for (const auto& [I, c] : omega.coefficients())
    w[static_cast<std::size_t>(I.indices()[0])] = c;

  TensorSection out;
  out.piece = p.id;
  out.components.assign(static_cast<std::size_t>(n), ExtElement(n));
  for (int a = 0; a < n; ++a) {
    ExtElement comp(n);
    for (int b = 0; b < n; ++b) {
      ScalarExpr entry = w[static_cast<std::size_t>(b)].differentiate(
          p.coords[static_cast<std::size_t>(a)]);
      for (int c = 0; c < n; ++c)
        entry = entry - gamma.at(c, a, b) * w[static_cast<std::size_t>(c)];
      comp.add_term(MultiIndex({b}), entry);
    }
    out.components[static_cast<std::size_t>(a)] = comp;
  }
  return out;
}

TensorSection nabla_exterior(const GluedSpace& s, const ExtElement& section,
                             const ChristoffelData& gamma) {
  const EuclideanPiece& p = s.piece(gamma.piece());
  const int n = p.dim;
  if (section.dimension() != n) throw Error("nabla: section dimension mismatch");

  TensorSection out;
  out.piece = p.id;
  out.components.assign(static_cast<std::size_t>(n), ExtElement(n));

  for (int a = 0; a < n; ++a) {
    ExtElement comp(n);
    for (const auto& [I, c] : section.coefficients()) {
      // coefficient derivative
      comp.add_term(I, c.differentiate(p.coords[static_cast<std::size_t>(a)]));
      // Leibniz over the factors: nabla_a dx^e = -Gamma^e_{ab} dx^b
      for (std::size_t j = 0; j < I.grade(); ++j) {
        const int e = I.indices()[j];
        const MultiIndex rest = I.erased_at(j);
        for (int b = 0; b < n; ++b) {
          const ScalarExpr coeff = gamma.at(e, a, b);
          if (coeff.is_zero()) continue;
          // reinsert dx^b at position j: sign of the sorting shuffle
          auto merged = MultiIndex::merge(MultiIndex({b}), rest);
          if (!merged) continue;
          const int pos_sign = (j % 2 == 0) ? 1 : -1;  // move to front costs (-1)^j
          comp.add_term(merged->second,
                        ScalarExpr(Rational(-pos_sign * merged->first)) * coeff * c);
        }
      }
    }
    out.components[static_cast<std::size_t>(a)] = comp;
  }
  return out;
}

namespace {

std::vector<ScalarExpr> grade1_coeffs(const ExtElement& w) {
  std::vector<ScalarExpr> out(static_cast<std::size_t>(w.dimension()));
  for (const auto& [I, c] : w.coefficients()) {
    if (I.grade() != 1) throw Error("expected a grade-1 section");
    out[static_cast<std::size_t>(I.indices()[0])] = c;
  }
  return out;
}

ResidualReport report_from(const GluedSpace& s, const EuclideanPiece& p,
                           const std::vector<ScalarExpr>& residuals,
                           const std::vector<std::vector<Rational>>& samples) {
  ResidualReport out;
  for (const ScalarExpr& r : residuals) {
    if (!r.is_zero()) {
      out.symbolically_zero = false;
      if (out.first_mismatch.empty()) out.first_mismatch = r.str();
    }
  }
  for (const auto& sample : samples) {
    const auto binding = s.bind_coords(p.id, sample);
    for (const ScalarExpr& r : residuals) {
      const Real v = r.evaluate(binding).real;
      const Real a = v < 0 ? Real(-v) : v;
      if (a > out.numeric_max) out.numeric_max = a;
    }
  }
  return out;
}

}  // namespace

ResidualReport verify_metric_compatibility(
    const GluedSpace& s, const PieceCotangentMetric& g, const ChristoffelData& gamma,
    const ExtElement& sec_s, const ExtElement& sec_t,
    const std::vector<std::vector<Rational>>& samples) {
  const EuclideanPiece& p = s.piece(g.piece);
  const int n = p.dim;
  const auto sv = grade1_coeffs(sec_s);
  const auto tv = grade1_coeffs(sec_t);

  ScalarExpr pairing = g.form.pair(sv, tv);
  const TensorSection ns = nabla_oneform(s, sec_s, gamma);
  const TensorSection nt = nabla_oneform(s, sec_t, gamma);

  std::vector<ScalarExpr> residuals;
  for (int a = 0; a < n; ++a) {
    const ScalarExpr lhs = pairing.differentiate(p.coords[static_cast<std::size_t>(a)]);
    const auto nsa = grade1_coeffs(ns.components[static_cast<std::size_t>(a)]);
    const auto nta = grade1_coeffs(nt.components[static_cast<std::size_t>(a)]);
    const ScalarExpr rhs = g.form.pair(nsa, tv) + g.form.pair(sv, nta);
    residuals.push_back(lhs - rhs);
  }
  return report_from(s, p, residuals, samples);
}

ResidualReport verify_torsion_free(const GluedSpace& s, const PieceCotangentMetric& g,
                                   const ChristoffelData& gamma, const ExtElement& sec_s,
                                   const ExtElement& sec_t,
                                   const std::vector<std::vector<Rational>>& samples) {
  const EuclideanPiece& p = s.piece(g.piece);
  const int n = p.dim;
  const auto sv = grade1_coeffs(sec_s);
  const auto tv = grade1_coeffs(sec_t);

  // raise through the pairing map of g^Lambda
  const auto S = pairing_map(g.form, sv);
  const auto T = pairing_map(g.form, tv);

  const TensorSection ns = nabla_oneform(s, sec_s, gamma);
  const TensorSection nt = nabla_oneform(s, sec_t, gamma);

  // covariant derivatives along the raised fields
  std::vector<ScalarExpr> lhs(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    const auto nta = grade1_coeffs(nt.components[static_cast<std::size_t>(a)]);
    const auto nsa = grade1_coeffs(ns.components[static_cast<std::size_t>(a)]);
    for (int b = 0; b < n; ++b)
      lhs[static_cast<std::size_t>(b)] +=
          S[static_cast<std::size_t>(a)] * nta[static_cast<std::size_t>(b)] -
          T[static_cast<std::size_t>(a)] * nsa[static_cast<std::size_t>(b)];
  }

  // vector-field bracket of the raised fields, carried back down
  const FibreBilinearForm tangent = invert_symmetric(g.form);
  std::vector<ScalarExpr> bracket(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    ScalarExpr acc;
    for (int a = 0; a < n; ++a) {
      const std::string& xa = p.coords[static_cast<std::size_t>(a)];
      acc += S[static_cast<std::size_t>(a)] * T[static_cast<std::size_t>(c)].differentiate(xa) -
             T[static_cast<std::size_t>(a)] * S[static_cast<std::size_t>(c)].differentiate(xa);
    }
    bracket[static_cast<std::size_t>(c)] = acc;
  }
  std::vector<ScalarExpr> residuals(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) {
    ScalarExpr flat;
    for (int c = 0; c < n; ++c) flat += tangent.at(b, c) * bracket[static_cast<std::size_t>(c)];
    residuals[static_cast<std::size_t>(b)] = lhs[static_cast<std::size_t>(b)] - flat;
  }
  return report_from(s, p, residuals, samples);
}

const ChristoffelData& GluedConnection::piece(const std::string& id) const {
  auto it = by_piece.find(id);
  if (it == by_piece.end()) throw Error("no connection for piece '" + id + "'");
  return it->second;
}

GluedConnection glued_connection(const GluedSpace& s,
                                 const std::vector<ChristoffelData>& per_piece) {
  GluedConnection out;
  for (const ChristoffelData& c : per_piece) {
    const EuclideanPiece& p = s.piece(c.piece());
    if (c.dim() != p.dim) throw Error("connection dimension mismatch on '" + p.id + "'");
    out.by_piece[c.piece()] = c;
  }
  for (const EuclideanPiece& p : s.pieces())
    if (!out.by_piece.count(p.id)) throw Error("no connection for piece '" + p.id + "'");
  return out;
}

std::map<std::string, TensorSection> glued_nabla_apply(
    const GluedSpace& s, const GluedConnection& conn,
    const std::map<std::string, ExtElement>& sections) {
  std::map<std::string, TensorSection> out;
  for (const EuclideanPiece& p : s.pieces()) {
    auto it = sections.find(p.id);
    if (it == sections.end()) throw Error("no section for piece '" + p.id + "'");
    out[p.id] = nabla_exterior(s, it->second, conn.piece(p.id));
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

WedgeTensorValue wedge_tensor_value(const GluedSpace& s, const std::string& wedge_id,
                                    const std::map<std::string, TensorSection>& per_piece) {
  const WedgePoint& w = s.wedge_point(wedge_id);
  WedgeTensorValue out;
  out.basis = fibre_basis(s, SpacePoint::wedge(wedge_id), 1);
  const int N = out.basis.dim();
  out.components.assign(static_cast<std::size_t>(N), ExtElement(N));

  int offset = 0;
  for (const auto& part : w.participants) {
    const EuclideanPiece& p = s.piece(part.piece);
    auto it = per_piece.find(part.piece);
    if (it == per_piece.end()) throw Error("no tensor value for piece '" + part.piece + "'");
    const auto binding = s.bind_coords(part.piece, part.point);
    for (int a = 0; a < p.dim; ++a) {
      const ExtElement local = it->second.components[static_cast<std::size_t>(a)]
                                   .map_coefficients([&](const ScalarExpr& c) {
                                     return c.substitute(binding);
                                   });
      out.components[static_cast<std::size_t>(offset + a)] = reindexed(local, N, offset);
    }
    offset += p.dim;
  }
  return out;
}

}  // namespace diffeocalc
