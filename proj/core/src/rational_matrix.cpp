#include "diffeocalc/rational_matrix.hpp"

#include <utility>

namespace diffeocalc {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

void RationalMatrix::append_row(const std::vector<Rational>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw Error("append_row: column count mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<Rational> RationalMatrix::row(std::size_t r) const {
  return std::vector<Rational>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw Error("matrix product: shape mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) out.at(r, c) += a * other.at(k, c);
    }
  return out;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& x) const {
  if (x.size() != cols_) throw Error("matrix apply: size mismatch");
  std::vector<Rational> out(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != 0) out[r] += at(r, c) * x[c];
  return out;
}

RationalMatrix RationalMatrix::augmented(const RationalMatrix& other) const {
  if (rows_ != other.rows_) throw Error("augment: row count mismatch");
  RationalMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) out.at(r, cols_ + c) = other.at(r, c);
  }
  return out;
}

bool RationalMatrix::is_zero() const {
  for (const Rational& v : data_)
    if (v != 0) return false;
  return true;
}

std::vector<std::size_t> RationalMatrix::reduce() {
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < cols_ && pr < rows_; ++pc) {
    std::size_t sel = pr;
    while (sel < rows_ && at(sel, pc) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != pr)
      for (std::size_t c = 0; c < cols_; ++c) std::swap(at(sel, c), at(pr, c));
    const Rational inv = Rational(1) / at(pr, pc);
    for (std::size_t c = pc; c < cols_; ++c) at(pr, c) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr || at(r, pc) == 0) continue;
      const Rational f = at(r, pc);
      for (std::size_t c = pc; c < cols_; ++c) at(r, c) -= f * at(pr, c);
    }
    pivots.push_back(pc);
    ++pr;
  }
  return pivots;
}

std::size_t RationalMatrix::rank() const {
  RationalMatrix copy = *this;
  return copy.reduce().size();
}

std::vector<std::vector<Rational>> RationalMatrix::nullspace_basis() const {
  RationalMatrix rref = *this;
  const std::vector<std::size_t> pivots = rref.reduce();
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t p : pivots) is_pivot[p] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t fc = 0; fc < cols_; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Rational> v(cols_, Rational(0));
    v[fc] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rref.at(i, fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool RationalMatrix::solvable(const std::vector<Rational>& b) const {
  if (b.size() != rows_) throw Error("solvable: size mismatch");
  RationalMatrix rhs(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) rhs.at(r, 0) = b[r];
  return augmented(rhs).rank() == rank();
}

}  // namespace diffeocalc
