#ifndef DIFFEOCALC_CLIFFORD_HPP
#define DIFFEOCALC_CLIFFORD_HPP

#include <map>
#include <string>
#include <vector>

#include "diffeocalc/ext_element.hpp"
#include "diffeocalc/multi_index.hpp"
#include "diffeocalc/scalar_expr.hpp"

namespace diffeocalc {

/// Symmetric bilinear form on a fibre, possibly degenerate. Entries are
/// ScalarExpr so the same type serves both constant fibre forms and
/// coordinate-dependent pseudo-metrics.
class FibreBilinearForm {
 public:
  FibreBilinearForm() = default;
  explicit FibreBilinearForm(int dimension);
  static FibreBilinearForm identity(int dimension);
  static FibreBilinearForm zero(int dimension) { return FibreBilinearForm(dimension); }

  int dimension() const { return dimension_; }
  const ScalarExpr& at(int i, int j) const;
  void set(int i, int j, const ScalarExpr& v);  // keeps the matrix symmetric

  bool is_symmetric() const { return true; }  // maintained by construction

  /// g(v, w) for coefficient vectors of length N.
  ScalarExpr pair(const std::vector<ScalarExpr>& v, const std::vector<ScalarExpr>& w) const;

  FibreBilinearForm substituted(const std::map<std::string, Rational>& bindings) const;

 private:
  int dimension_ = 0;
  std::vector<ScalarExpr> entries_;  // row-major, symmetry enforced by set()
};

/// The pairing map Phi_g: the covector g(v, .) of a fibre vector v, as a
/// coefficient vector in the dual basis. Linear; its kernel is the
/// radical of g.
std::vector<ScalarExpr> pairing_map(const FibreBilinearForm& g,
                                    const std::vector<ScalarExpr>& v);

/// Element of the Clifford algebra Cl(V, g): sum of ordered generator
/// products e_{i1}...e_{ik} (i1 < ... < ik) with ScalarExpr coefficients.
class CliffordElement {
 public:
  CliffordElement() = default;
  explicit CliffordElement(int dimension) : dimension_(dimension) {}

  static CliffordElement scalar(int dimension, const ScalarExpr& c);
  static CliffordElement generator(int dimension, int i);

  int dimension() const { return dimension_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<MultiIndex, ScalarExpr>& coefficients() const { return coeffs_; }
  void add_term(const MultiIndex& I, const ScalarExpr& c);

  CliffordElement operator+(const CliffordElement& other) const;
  CliffordElement operator-(const CliffordElement& other) const;
  CliffordElement scaled(const ScalarExpr& c) const;

  bool operator==(const CliffordElement& other) const;
  std::string str(const std::vector<std::string>& basis_names = {}) const;

 private:
  int dimension_ = 0;
  std::map<MultiIndex, ScalarExpr> coeffs_;
};

/// Product in Cl(V, g) under the convention v.v = -g(v, v).
CliffordElement clifford_mul(const CliffordElement& a, const CliffordElement& b,
                             const FibreBilinearForm& g);

/// Standard Clifford action of a grade-1 element on the exterior algebra:
/// c(alpha) w = alpha ^ w - interior(Phi_g(alpha), w).
ExtElement clifford_action(const ExtElement& alpha, const ExtElement& w,
                           const FibreBilinearForm& g);

/// Action of a full algebra element, generator products acting as
/// composites of grade-1 actions.
ExtElement clifford_action(const CliffordElement& a, const ExtElement& w,
                           const FibreBilinearForm& g);

}  // namespace diffeocalc

#endif
