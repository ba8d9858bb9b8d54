#include "diffeocalc/clifford.hpp"

#include <sstream>

namespace diffeocalc {

FibreBilinearForm::FibreBilinearForm(int dimension)
    : dimension_(dimension),
      entries_(static_cast<std::size_t>(dimension) * static_cast<std::size_t>(dimension)) {
  if (dimension < 0) throw Error("negative fibre dimension");
}

FibreBilinearForm FibreBilinearForm::identity(int dimension) {
  FibreBilinearForm g(dimension);
  for (int i = 0; i < dimension; ++i) g.set(i, i, ScalarExpr(1));
  return g;
}

const ScalarExpr& FibreBilinearForm::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= dimension_ || j >= dimension_)
    throw Error("bilinear form index out of range");
  return entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(dimension_) +
                  static_cast<std::size_t>(j)];
}

void FibreBilinearForm::set(int i, int j, const ScalarExpr& v) {
  if (i < 0 || j < 0 || i >= dimension_ || j >= dimension_)
    throw Error("bilinear form index out of range");
  const auto n = static_cast<std::size_t>(dimension_);
  entries_[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = v;
  entries_[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)] = v;
}

ScalarExpr FibreBilinearForm::pair(const std::vector<ScalarExpr>& v,
                                   const std::vector<ScalarExpr>& w) const {
  if (static_cast<int>(v.size()) != dimension_ || static_cast<int>(w.size()) != dimension_)
    throw Error("pair: vector length mismatch");
  ScalarExpr out;
  for (int i = 0; i < dimension_; ++i)
    for (int j = 0; j < dimension_; ++j) out += v[static_cast<std::size_t>(i)] * at(i, j) * w[static_cast<std::size_t>(j)];
  return out;
}

FibreBilinearForm FibreBilinearForm::substituted(
    const std::map<std::string, Rational>& bindings) const {
  FibreBilinearForm out(dimension_);
  for (int i = 0; i < dimension_; ++i)
    for (int j = i; j < dimension_; ++j) out.set(i, j, at(i, j).substitute(bindings));
  return out;
}

std::vector<ScalarExpr> pairing_map(const FibreBilinearForm& g,
                                    const std::vector<ScalarExpr>& v) {
  const int n = g.dimension();
  if (static_cast<int>(v.size()) != n) throw Error("pairing map: dimension mismatch");
  std::vector<ScalarExpr> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    ScalarExpr acc;
    for (int i = 0; i < n; ++i) acc += g.at(j, i) * v[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

CliffordElement CliffordElement::scalar(int dimension, const ScalarExpr& c) {
  CliffordElement out(dimension);
  out.add_term(MultiIndex(), c);
  return out;
}

CliffordElement CliffordElement::generator(int dimension, int i) {
  if (i < 0 || i >= dimension) throw Error("generator index out of range");
  CliffordElement out(dimension);
  out.add_term(MultiIndex({i}), ScalarExpr(1));
  return out;
}

void CliffordElement::add_term(const MultiIndex& I, const ScalarExpr& c) {
  if (I.max_index() >= dimension_) throw Error("index exceeds algebra dimension");
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.emplace(I, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

CliffordElement CliffordElement::operator+(const CliffordElement& other) const {
  if (dimension_ != other.dimension_) throw Error("clifford sum: dimension mismatch");
  CliffordElement out = *this;
  for (const auto& [I, c] : other.coeffs_) out.add_term(I, c);
  return out;
}

CliffordElement CliffordElement::operator-(const CliffordElement& other) const {
  if (dimension_ != other.dimension_) throw Error("clifford sum: dimension mismatch");
  CliffordElement out = *this;
  for (const auto& [I, c] : other.coeffs_) out.add_term(I, -c);
  return out;
}

CliffordElement CliffordElement::scaled(const ScalarExpr& c) const {
  CliffordElement out(dimension_);
  for (const auto& [I, v] : coeffs_) out.add_term(I, v * c);
  return out;
}

bool CliffordElement::operator==(const CliffordElement& other) const {
  return dimension_ == other.dimension_ && coeffs_ == other.coeffs_;
}

std::string CliffordElement::str(const std::vector<std::string>& basis_names) const {
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

namespace {

// e_i * (ordered blade J), reducing with e_i e_j + e_j e_i = -2 g(i, j)
// and e_i e_i = -g(i, i).
CliffordElement mul_generator(int i, const MultiIndex& J, const ScalarExpr& coeff,
                              const FibreBilinearForm& g) {
  const int n = g.dimension();
  const auto& idx = J.indices();
  if (idx.empty()) {
    CliffordElement out(n);
    out.add_term(MultiIndex({i}), coeff);
    return out;
  }
  const int j1 = idx.front();
  if (i < j1) {
    std::vector<int> merged;
    merged.reserve(idx.size() + 1);
    merged.push_back(i);
    merged.insert(merged.end(), idx.begin(), idx.end());
    CliffordElement out(n);
    out.add_term(MultiIndex(merged), coeff);
    return out;
  }
  const MultiIndex rest = J.erased_at(0);
  if (i == j1) {
    CliffordElement out(n);
    out.add_term(rest, -g.at(i, i) * coeff);
    return out;
  }
  // i > j1: e_i e_J = -e_{j1} (e_i e_rest) - 2 g(i, j1) e_rest
  const CliffordElement inner = mul_generator(i, rest, coeff, g);
  CliffordElement out(n);
  for (const auto& [I, c] : inner.coefficients()) {
    const CliffordElement swapped = mul_generator(j1, I, -c, g);
    for (const auto& [I2, c2] : swapped.coefficients()) out.add_term(I2, c2);
  }
  out.add_term(rest, ScalarExpr(Rational(-2)) * g.at(i, j1) * coeff);
  return out;
}

CliffordElement mul_blade(const MultiIndex& I, const MultiIndex& J, const ScalarExpr& coeff,
                          const FibreBilinearForm& g) {
  CliffordElement acc(g.dimension());
  acc.add_term(J, coeff);
  const auto& idx = I.indices();
  for (std::size_t p = idx.size(); p > 0; --p) {
    CliffordElement next(g.dimension());
    for (const auto& [K, c] : acc.coefficients()) {
      const CliffordElement piece = mul_generator(idx[p - 1], K, c, g);
      for (const auto& [K2, c2] : piece.coefficients()) next.add_term(K2, c2);
    }
    acc = next;
  }
  return acc;
}

}  // namespace

CliffordElement clifford_mul(const CliffordElement& a, const CliffordElement& b,
                             const FibreBilinearForm& g) {
  if (a.dimension() != b.dimension() || a.dimension() != g.dimension())
    throw Error("clifford_mul: dimension mismatch");
  CliffordElement out(a.dimension());
  for (const auto& [I, ca] : a.coefficients())
    for (const auto& [J, cb] : b.coefficients()) {
      const CliffordElement prod = mul_blade(I, J, ca * cb, g);
      for (const auto& [K, c] : prod.coefficients()) out.add_term(K, c);
    }
  return out;
}

ExtElement clifford_action(const ExtElement& alpha, const ExtElement& w,
                           const FibreBilinearForm& g) {
  if (alpha.dimension() != w.dimension() || alpha.dimension() != g.dimension())
    throw Error("clifford_action: dimension mismatch");
  const auto grade = alpha.homogeneous_grade();
  if (!grade || *grade != 1) {
    if (alpha.is_zero()) return ExtElement(w.dimension());
    throw Error("clifford_action: alpha must be a grade-1 element");
  }
  std::vector<ScalarExpr> coeffs(static_cast<std::size_t>(alpha.dimension()));
  for (const auto& [I, c] : alpha.coefficients())
    coeffs[static_cast<std::size_t>(I.indices()[0])] = c;
  return wedge(alpha, w) - interior(pairing_map(g, coeffs), w);
}

ExtElement clifford_action(const CliffordElement& a, const ExtElement& w,
                           const FibreBilinearForm& g) {
  if (a.dimension() != w.dimension()) throw Error("clifford_action: dimension mismatch");
  ExtElement out(w.dimension());
  for (const auto& [I, c] : a.coefficients()) {
    ExtElement acted = w;
    const auto& idx = I.indices();
    for (std::size_t p = idx.size(); p > 0; --p)
      acted = clifford_action(ExtElement::basis(w.dimension(), idx[p - 1]), acted, g);
    out = out + acted.scaled(c);
  }
  return out;
}

}  // namespace diffeocalc
