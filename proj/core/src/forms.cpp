#include "diffeocalc/forms.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "diffeocalc/cohomology.hpp"

namespace diffeocalc {

namespace {

int coord_position(const EuclideanPiece& p, const std::string& name) {
  for (int i = 0; i < p.dim; ++i)
    if (p.coords[static_cast<std::size_t>(i)] == name) return i;
  return -1;
}

void check_piece_component(const GluedSpace& s, const std::string& piece_id,
                           const ExtElement& v, int k) {
  const EuclideanPiece& p = s.piece(piece_id);
  if (v.dimension() != p.dim)
    throw Error("component of piece '" + piece_id + "' has wrong fibre dimension");
  if (v.is_zero()) return;
  const auto grade = v.homogeneous_grade();
  if (!grade) throw Error("component of piece '" + piece_id + "' has mixed grades");
  if (static_cast<int>(*grade) != k)
    throw Error("component of piece '" + piece_id + "' has grade " +
                std::to_string(*grade) + ", expected " + std::to_string(k));
  for (const auto& [I, c] : v.coefficients())
    for (const std::string& name : c.free_coordinates())
      if (coord_position(p, name) < 0)
        throw Error("coefficient on piece '" + piece_id + "' uses foreign coordinate '" +
                    name + "'");
}

}  // namespace

const ExtElement& GluedForm::component(const std::string& piece) const {
  auto it = components_.find(piece);
  if (it == components_.end()) throw Error("no component for piece '" + piece + "'");
  return it->second;
}

bool GluedForm::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const auto& kv) { return kv.second.is_zero(); });
}

GluedForm GluedForm::operator+(const GluedForm& other) const {
  if (grade_ != other.grade_) throw Error("form sum: grade mismatch");
  std::map<std::string, ExtElement> out = components_;
  for (const auto& [p, v] : other.components_) out.at(p) = out.at(p) + v;
  return GluedForm(grade_, std::move(out));
}

GluedForm GluedForm::operator-(const GluedForm& other) const {
  if (grade_ != other.grade_) throw Error("form sum: grade mismatch");
  std::map<std::string, ExtElement> out = components_;
  for (const auto& [p, v] : other.components_) out.at(p) = out.at(p) - v;
  return GluedForm(grade_, std::move(out));
}

bool GluedForm::operator==(const GluedForm& other) const {
  return grade_ == other.grade_ && components_ == other.components_;
}

CompatibilityResult check_compatibility(const GluedSpace& s,
                                        const std::map<std::string, ExtElement>& tuple,
                                        int k) {
  for (const EuclideanPiece& p : s.pieces()) {
    auto it = tuple.find(p.id);
    if (it == tuple.end()) throw Error("tuple is missing piece '" + p.id + "'");
    check_piece_component(s, p.id, it->second, k);
  }

  if (k > 0) return {};  // constant plots pull positive-degree forms back to 0

  for (const WedgePoint& w : s.wedges()) {
    // 0-forms: all participants must take the same value at the wedge
    std::vector<ScalarExpr> values;
    for (const auto& part : w.participants) {
      const ExtElement& h = tuple.at(part.piece);
      values.push_back(
          h.coefficient(MultiIndex()).substitute(s.bind_coords(part.piece, part.point)));
    }
    for (std::size_t j = 1; j < values.size(); ++j) {
      if (!(values[j] - values[0]).is_zero()) {
        return {false, w.id,
                "0-form values disagree at wedge '" + w.id + "': " + values[0].str() +
                    " vs " + values[j].str()};
      }
    }
  }
  return {};
}

GluedForm assemble(const GluedSpace& s, const std::map<std::string, ExtElement>& tuple,
                   int k) {
  const CompatibilityResult r = check_compatibility(s, tuple, k);
  if (!r.ok) throw Error("incompatible tuple: " + r.detail);
  return GluedForm(k, tuple);
}

ExtElement piece_exterior_derivative(const EuclideanPiece& piece, const ExtElement& w) {
  ExtElement out(piece.dim);
  for (const auto& [I, c] : w.coefficients()) {
    for (int a = 0; a < piece.dim; ++a) {
      const ScalarExpr dc = c.differentiate(piece.coords[static_cast<std::size_t>(a)]);
      if (dc.is_zero()) continue;
      auto merged = MultiIndex::merge(MultiIndex({a}), I);
      if (!merged) continue;
      out.add_term(merged->second, ScalarExpr(Rational(merged->first)) * dc);
    }
  }
  return out;
}

GluedForm exterior_derivative(const GluedSpace& s, const GluedForm& w) {
  std::map<std::string, ExtElement> out;
  for (const auto& [pid, v] : w.components())
    out[pid] = piece_exterior_derivative(s.piece(pid), v);
  return GluedForm(w.grade() + 1, std::move(out));
}

GluedForm wedge_forms(const GluedSpace& s, const GluedForm& a, const GluedForm& b) {
  std::map<std::string, ExtElement> out;
  for (const EuclideanPiece& p : s.pieces())
    out[p.id] = wedge(a.component(p.id), b.component(p.id));
  return GluedForm(a.grade() + b.grade(), std::move(out));
}

bool vanishes_at(const GluedSpace& s, const GluedForm& w, const SpacePoint& x) {
  for (const auto& [pid, coords] : pieces_at(s, x)) {
    const auto binding = s.bind_coords(pid, coords);
    for (const auto& [I, c] : w.component(pid).coefficients())
      if (!c.substitute(binding).is_zero()) return false;
  }
  return true;
}

int FibreBasis::position_of(const FibreLabel& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

std::string FibreBasis::label_str(std::size_t i, const GluedSpace& s) const {
  const FibreLabel& l = labels.at(i);
  if (l.piece.empty()) return "const";
  const EuclideanPiece& p = s.piece(l.piece);
  std::vector<std::string> names;
  names.reserve(p.coords.size());
  for (const std::string& c : p.coords) names.push_back("d" + c);
  return l.piece + ":" + l.index.str(names);
}

bool FibreElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return c == 0; });
}

bool FibreElement::operator==(const FibreElement& other) const {
  return basis.grade == other.basis.grade && coords == other.coords;
}

FibreBasis fibre_basis(const GluedSpace& s, const SpacePoint& x, int k) {
  if (k < 0) throw Error("negative grade");
  FibreBasis out;
  out.point = normalize_point(s, x);
  out.grade = k;
  if (k == 0) {
    out.labels.push_back(FibreLabel{"", MultiIndex()});
    return out;
  }
  for (const auto& [pid, coords] : pieces_at(s, out.point)) {
    const EuclideanPiece& p = s.piece(pid);
    for (const MultiIndex& I : MultiIndex::all(p.dim, static_cast<std::size_t>(k)))
      out.labels.push_back(FibreLabel{pid, I});
  }
  return out;
}

int fibre_dim(const GluedSpace& s, const SpacePoint& x, int k) {
  return fibre_basis(s, x, k).dim();
}

namespace {

Rational rational_value_at(const ScalarExpr& c,
                           const std::map<std::string, Rational>& binding,
                           const std::string& piece_id) {
  const ScalarExpr v = c.substitute(binding);
  if (!v.is_rational_constant())
    throw Error("coefficient on piece '" + piece_id +
                "' does not evaluate rationally at the point: " + v.str());
  return v.as_rational();
}

}  // namespace

FibreElement project_to_fibre(const GluedSpace& s, const GluedForm& w, const SpacePoint& x,
                              int k) {
  if (w.grade() != k) throw Error("project_to_fibre: grade mismatch");
  FibreElement out;
  out.basis = fibre_basis(s, x, k);
  out.coords.reserve(out.basis.labels.size());
  if (k == 0) {
    const auto at = pieces_at(s, out.basis.point);
    const auto& [pid, coords] = at.front();
    out.coords.push_back(rational_value_at(w.component(pid).coefficient(MultiIndex()),
                                           s.bind_coords(pid, coords), pid));
    return out;
  }
  for (const FibreLabel& label : out.basis.labels) {
    const auto coords = [&] {
      for (const auto& [pid, c] : pieces_at(s, out.basis.point))
        if (pid == label.piece) return c;
      throw Error("fibre label references a piece not meeting the point");
    }();
    out.coords.push_back(rational_value_at(w.component(label.piece).coefficient(label.index),
                                           s.bind_coords(label.piece, coords), label.piece));
  }
  return out;
}

GluedForm canonical_representative(const GluedSpace& s, const FibreLabel& label) {
  std::map<std::string, ExtElement> tuple;
  for (const EuclideanPiece& p : s.pieces()) tuple[p.id] = ExtElement(p.dim);
  if (label.piece.empty()) {
    for (const EuclideanPiece& p : s.pieces())
      tuple[p.id] = ExtElement::scalar(p.dim, ScalarExpr(1));
    return assemble(s, tuple, 0);
  }
  ExtElement v(s.piece(label.piece).dim);
  v.add_term(label.index, ScalarExpr(1));
  tuple[label.piece] = v;
  return assemble(s, tuple, static_cast<int>(label.index.grade()));
}

FibreElement wedge_1k_map(const GluedSpace& s, const SpacePoint& x, int k,
                          const ExtElement& w) {
  const FibreBasis basis1 = fibre_basis(s, x, 1);
  std::vector<GluedForm> reps;
  reps.reserve(basis1.labels.size());
  for (const FibreLabel& l : basis1.labels) reps.push_back(canonical_representative(s, l));
  return wedge_1k_map(s, x, k, w, reps);
}

FibreElement wedge_1k_map(const GluedSpace& s, const SpacePoint& x, int k,
                          const ExtElement& w,
                          const std::vector<GluedForm>& representatives) {
  if (k < 1) throw Error("wedge_1k_map: grade must be at least 1");
  const FibreBasis basis1 = fibre_basis(s, x, 1);
  if (w.dimension() != basis1.dim())
    throw Error("wedge_1k_map: element does not live over the Lambda^1 fibre");
  const auto grade = w.homogeneous_grade();
  if (!grade || (static_cast<int>(*grade) != k && !w.is_zero()))
    throw Error("wedge_1k_map: input must be homogeneous of grade k");
  if (representatives.size() != basis1.labels.size())
    throw Error("wedge_1k_map: one representative per Lambda^1 label required");

  std::map<std::string, ExtElement> acc;
  for (const EuclideanPiece& p : s.pieces()) acc[p.id] = ExtElement(p.dim);

  for (const auto& [I, c] : w.coefficients()) {
    if (!c.is_rational_constant())
      throw Error("wedge_1k_map: fibre coefficients must be rational constants");
    GluedForm prod = representatives[static_cast<std::size_t>(I.indices()[0])];
    for (std::size_t j = 1; j < I.grade(); ++j)
      prod = wedge_forms(s, prod,
                         representatives[static_cast<std::size_t>(I.indices()[j])]);
    for (const auto& [pid, v] : prod.components()) acc[pid] = acc[pid] + v.scaled(c);
  }
  return project_to_fibre(s, GluedForm(k, std::move(acc)), x, k);
}

VolumeReport is_volume_form(const GluedSpace& s, const GluedForm& w, std::uint64_t seed) {
  const int n = dimension(s);
  for (const EuclideanPiece& p : s.pieces())
    if (p.dim != n)
      throw Error("volume forms need all pieces of the same dimension " +
                  std::to_string(n) + "; piece '" + p.id + "' has " +
                  std::to_string(p.dim));
  if (w.grade() != n) throw Error("volume candidate must have top grade");

  std::vector<int> top(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) top[static_cast<std::size_t>(i)] = i;
  const MultiIndex top_index(top);

  bool all_certified = true;
  for (const EuclideanPiece& p : s.pieces()) {
    const ScalarExpr c = w.component(p.id).coefficient(top_index);
    if (c.is_zero())
      return {VolumeVerdict::no, "top coefficient on piece '" + p.id + "' is 0"};
    if (c.is_structurally_nonvanishing()) continue;
    all_certified = false;

    // no structural certificate: search for a rational zero
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<int> num(-8, 8);
    std::uniform_int_distribution<int> den(1, 4);
    const auto try_point = [&](const std::map<std::string, Rational>& pt) {
      return c.substitute(pt).is_zero();
    };

    // small half-integer grid first, then random rationals
    std::vector<Rational> grid;
    for (int v = -4; v <= 4; ++v) grid.push_back(Rational(v, 2));
    std::vector<std::size_t> idx(p.coords.size(), 0);
    const std::size_t grid_cap = 20000;
    std::size_t visited = 0;
    bool done = false;
    while (!done && visited < grid_cap) {
      std::map<std::string, Rational> pt;
      for (std::size_t i = 0; i < p.coords.size(); ++i) pt[p.coords[i]] = grid[idx[i]];
      ++visited;
      if (try_point(pt))
        return {VolumeVerdict::no, "top coefficient on piece '" + p.id +
                                       "' vanishes at a rational point"};
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == grid.size()) idx[i++] = 0;
      done = (i == idx.size());
    }
    for (int t = 0; t < 200; ++t) {
      std::map<std::string, Rational> pt;
      for (const std::string& name : p.coords) pt[name] = Rational(num(rng), den(rng));
      if (try_point(pt))
        return {VolumeVerdict::no, "top coefficient on piece '" + p.id +
                                       "' vanishes at a rational point"};
    }
  }

  if (all_certified) return {VolumeVerdict::yes, ""};
  return {VolumeVerdict::indeterminate,
          "no structural certificate and no rational zero found"};
}

std::size_t reduced_fibre_dimension(const GluedSpace& s, const SpacePoint& x, int k,
                                    unsigned D) {
  if (k < 0) throw Error("negative grade");
  if (static_cast<unsigned>(k) > D) throw Error("degree bound must be at least k");
  const PolyComplexSlice slice = PolyComplexSlice::build(s, k, D);
  const SpacePoint xn = normalize_point(s, x);

  // evaluation of slice elements in the fibre at x
  const FibreBasis fb = fibre_basis(s, xn, k);
  RationalMatrix eval(static_cast<std::size_t>(fb.dim()), slice.dim());
  for (std::size_t j = 0; j < slice.dim(); ++j) {
    const GluedForm w = slice.basis_form(s, j);
    const FibreElement e = project_to_fibre(s, w, xn, k);
    for (std::size_t r = 0; r < e.coords.size(); ++r) eval.at(r, j) = e.coords[r];
  }

  RationalMatrix span;  // rows: vanishing-at-x subspace, then coboundaries
  for (const auto& v : eval.nullspace_basis()) span.append_row(v);
  if (span.rows() == 0) span = RationalMatrix(0, slice.dim());

  if (k >= 1) {
    const PolyComplexSlice below = PolyComplexSlice::build(s, k - 1, D + 1);
    const RationalMatrix d = differential_matrix(s, below, slice);
    // columns of d are coboundaries in the ambient basis of `slice`
    // (identical to slice coordinates since k >= 1)
    const RationalMatrix dt = d.transposed();
    for (std::size_t r = 0; r < dt.rows(); ++r) span.append_row(dt.row(r));
  }

  return slice.dim() - span.rank();
}

}  // namespace diffeocalc
