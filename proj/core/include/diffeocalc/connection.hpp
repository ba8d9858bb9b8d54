#ifndef DIFFEOCALC_CONNECTION_HPP
#define DIFFEOCALC_CONNECTION_HPP

#include <map>
#include <string>
#include <vector>

#include "diffeocalc/metric.hpp"

namespace diffeocalc {

/// Christoffel symbols Gamma^c_{ab} of one piece, symmetric in (a, b).
class ChristoffelData {
 public:
  ChristoffelData() = default;
  ChristoffelData(std::string piece, int dim);

  const std::string& piece() const { return piece_; }
  int dim() const { return dim_; }
  const ScalarExpr& at(int c, int a, int b) const;
  void set(int c, int a, int b, const ScalarExpr& v);  // keeps (a, b) symmetry

 private:
  std::string piece_;
  int dim_ = 0;
  std::vector<ScalarExpr> data_;
};

/// Symbolic inverse of a ScalarExpr matrix via the adjugate; the
/// determinant must be a unit of the coefficient ring (c * exp(p)).
FibreBilinearForm invert_symmetric(const FibreBilinearForm& g);

/// Levi-Civita symbols of a cotangent pseudo-metric: the matrix g^Lambda
/// is inverted to the tangent metric, then
/// Gamma^c_{ab} = 1/2 g^{cd} (d_a g_{bd} + d_b g_{ad} - d_d g_{ab}).
ChristoffelData christoffel(const GluedSpace& s, const PieceCotangentMetric& g);

/// Section of Lambda^1 tensor wedge(Lambda^1) on one piece: component a
/// is the (possibly mixed-grade) exterior value paired with dx_a.
struct TensorSection {
  std::string piece;
  std::vector<ExtElement> components;

  bool is_zero() const;
};

/// Covariant derivative of a 1-form: (nabla w)_{ab} = d_a w_b - Gamma^c_{ab} w_c.
TensorSection nabla_oneform(const GluedSpace& s, const ExtElement& omega,
                            const ChristoffelData& gamma);

/// Leibniz extension of nabla to mixed-grade exterior sections; grade 0
/// reduces to the differential.
TensorSection nabla_exterior(const GluedSpace& s, const ExtElement& section,
                             const ChristoffelData& gamma);

struct ResidualReport {
  bool symbolically_zero = true;
  std::string first_mismatch;
  Real numeric_max{0};  // max |residual| over the supplied sample points
};

/// d(g(s,t)) = g(nabla s, t) + g(s, nabla t), checked symbolically and,
/// when sample points are given, numerically.
ResidualReport verify_metric_compatibility(const GluedSpace& s,
                                           const PieceCotangentMetric& g,
                                           const ChristoffelData& gamma,
                                           const ExtElement& sec_s, const ExtElement& sec_t,
                                           const std::vector<std::vector<Rational>>& samples = {});

/// nabla_s t - nabla_t s = [s, t], with sections turned into vector
/// fields through the pairing map of g and the bracket carried back the
/// same way.
ResidualReport verify_torsion_free(const GluedSpace& s, const PieceCotangentMetric& g,
                                   const ChristoffelData& gamma, const ExtElement& sec_s,
                                   const ExtElement& sec_t,
                                   const std::vector<std::vector<Rational>>& samples = {});

/// One Levi-Civita connection per piece.
struct GluedConnection {
  std::map<std::string, ChristoffelData> by_piece;

  const ChristoffelData& piece(const std::string& id) const;
};

GluedConnection glued_connection(const GluedSpace& s,
                                 const std::vector<ChristoffelData>& per_piece);

/// Applies the glued connection componentwise to a compatible per-piece
/// tuple of exterior sections.
std::map<std::string, TensorSection> glued_nabla_apply(
    const GluedSpace& s, const GluedConnection& conn,
    const std::map<std::string, ExtElement>& sections);

/// Value of a per-piece tensor tuple at a wedge point: the direct sum of
/// the participant values, expressed over the wedge fibre basis.
struct WedgeTensorValue {
  FibreBasis basis;                    // grade-1 fibre basis at the wedge
  std::vector<ExtElement> components;  // one per fibre covector, over dim = basis.dim()
};

WedgeTensorValue wedge_tensor_value(const GluedSpace& s, const std::string& wedge_id,
                                    const std::map<std::string, TensorSection>& per_piece);

}  // namespace diffeocalc

#endif
