#ifndef DIFFEOCALC_FORMS_HPP
#define DIFFEOCALC_FORMS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "diffeocalc/ext_element.hpp"
#include "diffeocalc/space.hpp"

namespace diffeocalc {

/// Homogeneous differential form on a single piece: an exterior element
/// over the piece's coordinate covectors, coefficients in the piece's
/// coordinates.
struct PieceForm {
  std::string piece;
  ExtElement value;
};

/// Differential form on a glued space: one piece form per piece, subject
/// to the compatibility condition at wedge points. For point gluings the
/// condition is value matching for 0-forms and vacuous in positive grade.
class GluedForm {
 public:
  GluedForm() = default;
  GluedForm(int grade, std::map<std::string, ExtElement> components)
      : grade_(grade), components_(std::move(components)) {}

  int grade() const { return grade_; }
  const std::map<std::string, ExtElement>& components() const { return components_; }
  const ExtElement& component(const std::string& piece) const;

  bool is_zero() const;
  GluedForm operator+(const GluedForm& other) const;
  GluedForm operator-(const GluedForm& other) const;
  bool operator==(const GluedForm& other) const;

 private:
  int grade_ = 0;
  std::map<std::string, ExtElement> components_;
};

struct CompatibilityResult {
  bool ok = true;
  std::string wedge_id;  // first offending wedge when !ok
  std::string detail;
};

/// Checks the compatibility condition of a tuple of piece forms (one per
/// piece of s, each homogeneous of grade k). Structural defects (missing
/// piece, mixed grades, foreign coordinates) throw; incompatibility is a
/// negative result.
CompatibilityResult check_compatibility(const GluedSpace& s,
                                        const std::map<std::string, ExtElement>& tuple,
                                        int k);

/// Builds the GluedForm with the given pullback tuple; throws (naming the
/// wedge point) when the tuple is incompatible.
GluedForm assemble(const GluedSpace& s, const std::map<std::string, ExtElement>& tuple,
                   int k);

/// Exterior derivative, componentwise per piece. The output tuple of a
/// compatible input is compatible (positive grade at point gluings).
GluedForm exterior_derivative(const GluedSpace& s, const GluedForm& w);

/// d on a single piece form.
ExtElement piece_exterior_derivative(const EuclideanPiece& piece, const ExtElement& w);

/// Componentwise exterior product; grades add.
GluedForm wedge_forms(const GluedSpace& s, const GluedForm& a, const GluedForm& b);

/// True iff every coefficient of every piece meeting x evaluates to zero
/// at the local coordinates of x.
bool vanishes_at(const GluedSpace& s, const GluedForm& w, const SpacePoint& x);

/// Basis label of a fibre of Lambda^k: a coordinate multi-index of one
/// participating piece. Grade 0 uses the single constant-class label
/// with an empty piece id.
struct FibreLabel {
  std::string piece;
  MultiIndex index;
  bool operator==(const FibreLabel& other) const {
    return piece == other.piece && index == other.index;
  }
};

/// Explicit basis of Lambda^k_x: at an interior point of a piece of
/// dimension n it has C(n, k) labels; at a wedge point, the concatenation
/// over the participants.
struct FibreBasis {
  SpacePoint point;
  int grade = 0;
  std::vector<FibreLabel> labels;

  int dim() const { return static_cast<int>(labels.size()); }
  int position_of(const FibreLabel& label) const;  // -1 when absent
  std::string label_str(std::size_t i, const GluedSpace& s) const;
};

/// Element of Lambda^k_x in a FibreBasis: exact rational coordinates.
struct FibreElement {
  FibreBasis basis;
  std::vector<Rational> coords;

  bool is_zero() const;
  bool operator==(const FibreElement& other) const;
};

FibreBasis fibre_basis(const GluedSpace& s, const SpacePoint& x, int k);
int fibre_dim(const GluedSpace& s, const SpacePoint& x, int k);

/// Quotient projection of a k-form to the fibre at x: each label picks
/// the corresponding piece coefficient evaluated at x. Zero exactly on
/// the forms vanishing at x. Coefficients whose exact value at x is not
/// rational (a nonzero exp value) are rejected.
FibreElement project_to_fibre(const GluedSpace& s, const GluedForm& w, const SpacePoint& x,
                              int k);

/// Canonical representative of a Lambda^1 fibre basis label: the constant
/// coordinate form on its piece, zero elsewhere (all-ones for the grade-0
/// class).
GluedForm canonical_representative(const GluedSpace& s, const FibreLabel& label);

/// The map wedge^{1,k}: an exterior element over the Lambda^1_x fibre
/// basis is sent to Lambda^k_x by wedging canonical representatives and
/// projecting. Representatives may be supplied explicitly (one per
/// Lambda^1 label) to exercise well-definedness.
FibreElement wedge_1k_map(const GluedSpace& s, const SpacePoint& x, int k,
                          const ExtElement& w);
FibreElement wedge_1k_map(const GluedSpace& s, const SpacePoint& x, int k,
                          const ExtElement& w,
                          const std::vector<GluedForm>& representatives);

enum class VolumeVerdict : std::uint8_t { yes, no, indeterminate };

struct VolumeReport {
  VolumeVerdict verdict = VolumeVerdict::indeterminate;
  std::string detail;  // witness zero or reason, when relevant
};

/// Volume-form test for a top-grade form on a space whose pieces all have
/// the full dimension n. "yes" is the structural certificate (each top
/// coefficient a nonzero constant, possibly times exp); "no" exhibits an
/// identically zero coefficient or a rational zero found by search;
/// everything else is "indeterminate".
VolumeReport is_volume_form(const GluedSpace& s, const GluedForm& w,
                            std::uint64_t seed = 0);

/// Dimension of the degree-bounded reduced fibre at x: polynomial k-forms
/// of coefficient degree <= D modulo the span of the forms vanishing at x
/// and the coboundaries of degree-(D+1) potentials.
std::size_t reduced_fibre_dimension(const GluedSpace& s, const SpacePoint& x, int k,
                                    unsigned D);

}  // namespace diffeocalc

#endif
