#include "diffeocalc/ext_element.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace diffeocalc {

ExtElement ExtElement::scalar(int dimension, const ScalarExpr& c) {
  ExtElement out(dimension);
  out.add_term(MultiIndex(), c);
  return out;
}

ExtElement ExtElement::basis(int dimension, int i) {
  if (i < 0 || i >= dimension) throw Error("basis index out of range");
  ExtElement out(dimension);
  out.add_term(MultiIndex({i}), ScalarExpr(1));
  return out;
}

std::optional<std::size_t> ExtElement::homogeneous_grade() const {
  if (coeffs_.empty()) return 0;
  const std::size_t k = coeffs_.begin()->first.grade();
  for (const auto& [I, c] : coeffs_)
    if (I.grade() != k) return std::nullopt;
  return k;
}

std::size_t ExtElement::max_grade() const {
  std::size_t k = 0;
  for (const auto& [I, c] : coeffs_) k = std::max(k, I.grade());
  return k;
}

ExtElement ExtElement::grade_part(std::size_t k) const {
  ExtElement out(dimension_);
  for (const auto& [I, c] : coeffs_)
    if (I.grade() == k) out.coeffs_[I] = c;
  return out;
}

ScalarExpr ExtElement::coefficient(const MultiIndex& I) const {
  auto it = coeffs_.find(I);
  return it == coeffs_.end() ? ScalarExpr() : it->second;
}

void ExtElement::set_coefficient(const MultiIndex& I, const ScalarExpr& c) {
  if (I.max_index() >= dimension_) throw Error("multi-index exceeds fibre dimension");
  if (c.is_zero())
    coeffs_.erase(I);
  else
    coeffs_[I] = c;
}

void ExtElement::add_term(const MultiIndex& I, const ScalarExpr& c) {
  if (I.max_index() >= dimension_) throw Error("multi-index exceeds fibre dimension");
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.emplace(I, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

ExtElement ExtElement::operator+(const ExtElement& other) const {
  if (dimension_ != other.dimension_) throw Error("exterior sum: dimension mismatch");
  ExtElement out = *this;
  for (const auto& [I, c] : other.coeffs_) out.add_term(I, c);
  return out;
}

ExtElement ExtElement::operator-(const ExtElement& other) const {
  if (dimension_ != other.dimension_) throw Error("exterior sum: dimension mismatch");
  ExtElement out = *this;
  for (const auto& [I, c] : other.coeffs_) out.add_term(I, -c);
  return out;
}

ExtElement ExtElement::operator-() const {
  ExtElement out(dimension_);
  for (const auto& [I, c] : coeffs_) out.coeffs_[I] = -c;
  return out;
}

ExtElement ExtElement::scaled(const ScalarExpr& c) const {
  ExtElement out(dimension_);
  for (const auto& [I, v] : coeffs_) out.add_term(I, v * c);
  return out;
}

bool ExtElement::operator==(const ExtElement& other) const {
  return dimension_ == other.dimension_ && coeffs_ == other.coeffs_;
}

std::string ExtElement::str(const std::vector<std::string>& basis_names) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [I, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (I.grade() > 0) os << "*" << I.str(basis_names);
  }
  return os.str();
}

ExtElement wedge(const ExtElement& a, const ExtElement& b) {
  if (a.dimension() != b.dimension()) throw Error("wedge: ambient dimension mismatch");
  ExtElement out(a.dimension());
  for (const auto& [I, ca] : a.coefficients())
    for (const auto& [J, cb] : b.coefficients()) {
      auto merged = MultiIndex::merge(I, J);
      if (!merged) continue;
      out.add_term(merged->second, ScalarExpr(Rational(merged->first)) * ca * cb);
    }
  return out;
}

ExtElement interior(const std::vector<ScalarExpr>& vec, const ExtElement& w) {
  if (static_cast<int>(vec.size()) != w.dimension())
    throw Error("interior: vector length must equal fibre dimension");
  ExtElement out(w.dimension());
  for (const auto& [I, c] : w.coefficients()) {
    const auto& idx = I.indices();
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      const ScalarExpr& v = vec[static_cast<std::size_t>(idx[pos])];
      if (v.is_zero()) continue;
      const Rational sign = (pos % 2 == 0) ? Rational(1) : Rational(-1);
      out.add_term(I.erased_at(pos), ScalarExpr(sign) * v * c);
    }
  }
  return out;
}

ExtElement hodge_star_fibre(const ExtElement& w, const std::vector<int>& basis_order) {
  const int n = w.dimension();
  if (!w.homogeneous_grade())
    throw Error("hodge star: input must be homogeneous");

  std::vector<int> order = basis_order;
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
  }
  if (static_cast<int>(order.size()) != n) throw Error("hodge star: bad basis order");
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int p = 0; p < n; ++p) {
    const int idx = order[static_cast<std::size_t>(p)];
    if (idx < 0 || idx >= n || pos[static_cast<std::size_t>(idx)] != -1)
      throw Error("hodge star: basis order is not a permutation");
    pos[static_cast<std::size_t>(idx)] = p;
  }

  // Sorting a relabeled index list back into ascending order costs the
  // sign of the sorting permutation (counted as inversions).
  const auto sort_sign = [](std::vector<int>& v) {
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        if (v[i] > v[j]) sign = -sign;
    std::sort(v.begin(), v.end());
    return sign;
  };

  ExtElement out(n);
  for (const auto& [I, c] : w.coefficients()) {
    std::vector<int> relabeled;
    relabeled.reserve(I.grade());
    for (int i : I.indices()) relabeled.push_back(pos[static_cast<std::size_t>(i)]);
    const int s_in = sort_sign(relabeled);

    auto [s_comp, comp] = MultiIndex(relabeled).complement(n);

    std::vector<int> mapped;
    mapped.reserve(comp.grade());
    for (int p : comp.indices()) mapped.push_back(order[static_cast<std::size_t>(p)]);
    const int s_out = sort_sign(mapped);

    out.add_term(MultiIndex(mapped),
                 ScalarExpr(Rational(s_in * s_comp * s_out)) * c);
  }
  return out;
}

}  // namespace diffeocalc
