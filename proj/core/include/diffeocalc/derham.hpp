#ifndef DIFFEOCALC_DERHAM_HPP
#define DIFFEOCALC_DERHAM_HPP

#include <map>
#include <string>
#include <vector>

#include "diffeocalc/connection.hpp"
#include "diffeocalc/metric.hpp"

namespace diffeocalc {

/// Section of wedge(Lambda^1) over a glued space: one mixed-grade
/// exterior value per piece; wedge-point values are the direct sums of
/// the piece values.
struct GluedSection {
  std::map<std::string, ExtElement> components;

  const ExtElement& component(const std::string& piece) const;
  bool is_zero() const;
  GluedSection operator-(const GluedSection& other) const;
};

struct BoundedDimension {
  bool bounded = true;  // always true on this space class; mirrors the API
  int N = 0;            // max over x of dim Lambda^1_x
};

/// max fibre dimension of Lambda^1: piece dimensions at interior points,
/// sums of participant dimensions at wedge points.
BoundedDimension bounded_dimension(const GluedSpace& s);

/// Value of a glued section at a wedge point: the direct sum over the
/// participants in the wedge fibre basis.
struct WedgeSectionValue {
  FibreBasis basis;
  ExtElement value;
};

WedgeSectionValue section_wedge_value(const GluedSpace& s, const std::string& wedge_id,
                                      const GluedSection& sec);

/// The De Rham operator D = c o nabla: per piece, the Leibniz extension
/// of the Levi-Civita connection followed by Clifford contraction of the
/// Lambda^1 leg; wedge-point values are direct sums of the piece values.
GluedSection derham_apply(const GluedSpace& s, const GluedSection& sec,
                          const GluedPseudoMetric& g, const GluedConnection& conn);

/// Independent flat-space oracle: d + d* with the flat codifferential
///   (d* w)(I drop j) = -sum_j (-1)^j d_{i_j} c_I,
/// computed without the connection or the Clifford action.
ExtElement euclidean_dplusdstar(const EuclideanPiece& piece, const ExtElement& w);

struct OracleComparison {
  bool symbolically_zero = true;
  std::string first_mismatch;  // piece and expression when nonzero
};

/// derham_apply with the standard metric vs the d + d* oracle, as an
/// exact symbolic difference. Meaningful on flat pieces only.
OracleComparison compare_with_oracle(const GluedSpace& s, const GluedSection& sec);

struct DeRhamReport {
  GluedSection input;
  GluedSection output;
  /// piece -> symbolic residual against the oracle ("0" when it matches);
  /// only pieces carrying the standard metric are compared.
  std::map<std::string, std::string> oracle_residuals;
};

DeRhamReport derham_report(const GluedSpace& s, const GluedSection& sec,
                           const GluedPseudoMetric& g, const GluedConnection& conn);

}  // namespace diffeocalc

#endif
