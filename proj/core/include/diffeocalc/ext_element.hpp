#ifndef DIFFEOCALC_EXT_ELEMENT_HPP
#define DIFFEOCALC_EXT_ELEMENT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diffeocalc/multi_index.hpp"
#include "diffeocalc/scalar_expr.hpp"

namespace diffeocalc {

/// Element of the exterior algebra of a fibre of dimension N, with
/// ScalarExpr coefficients. Mixed grades are allowed in one value; a
/// homogeneous element has all multi-indices of one length.
class ExtElement {
 public:
  ExtElement() = default;
  explicit ExtElement(int dimension) : dimension_(dimension) {}

  static ExtElement scalar(int dimension, const ScalarExpr& c);
  /// The basis covector e_i as a grade-1 element.
  static ExtElement basis(int dimension, int i);

  int dimension() const { return dimension_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Homogeneous grade, when all terms share one; grade 0 for the zero
  /// element.
  std::optional<std::size_t> homogeneous_grade() const;
  std::size_t max_grade() const;

  /// The component of a single grade.
  ExtElement grade_part(std::size_t k) const;

  const std::map<MultiIndex, ScalarExpr>& coefficients() const { return coeffs_; }
  ScalarExpr coefficient(const MultiIndex& I) const;
  void set_coefficient(const MultiIndex& I, const ScalarExpr& c);
  void add_term(const MultiIndex& I, const ScalarExpr& c);

  ExtElement operator+(const ExtElement& other) const;
  ExtElement operator-(const ExtElement& other) const;
  ExtElement operator-() const;
  ExtElement scaled(const ScalarExpr& c) const;

  /// Applies a map to every coefficient, dropping resulting zeros.
  template <typename F>
  ExtElement map_coefficients(F&& f) const {
    ExtElement out(dimension_);
    for (const auto& [I, c] : coeffs_) out.add_term(I, f(c));
    return out;
  }

  bool operator==(const ExtElement& other) const;

  std::string str(const std::vector<std::string>& basis_names = {}) const;

 private:
  int dimension_ = 0;
  std::map<MultiIndex, ScalarExpr> coeffs_;  // no zero coefficients stored
};

/// Graded-antisymmetric product; grades add, ambient dimensions must match.
ExtElement wedge(const ExtElement& a, const ExtElement& b);

/// Interior product against a covector-coefficient vector of length N:
/// the antiderivation with iota(e_I) pairing vec against each slot.
ExtElement interior(const std::vector<ScalarExpr>& vec, const ExtElement& w);

/// Formal basis-complement Hodge star in the fibre's own dimension N:
/// e_I -> sgn(I, I^c) e_{I^c}, taken relative to the given basis order
/// (a permutation of 0..N-1; empty means the identity order). The input
/// must be homogeneous; the output has grade N - k.
ExtElement hodge_star_fibre(const ExtElement& w, const std::vector<int>& basis_order = {});

}  // namespace diffeocalc

#endif
