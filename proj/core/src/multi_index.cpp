#include "diffeocalc/multi_index.hpp"

#include <algorithm>
#include <sstream>

namespace diffeocalc {

MultiIndex::MultiIndex(std::vector<int> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 0; i + 1 < indices_.size(); ++i)
    if (indices_[i] >= indices_[i + 1])
      throw Error("multi-index is not strictly increasing");
  if (!indices_.empty() && indices_.front() < 0) throw Error("negative index");
}

bool MultiIndex::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::optional<std::pair<int, MultiIndex>> MultiIndex::merge(const MultiIndex& a,
                                                            const MultiIndex& b) {
  std::vector<int> out;
  out.reserve(a.indices_.size() + b.indices_.size());
  std::size_t i = 0, j = 0;
  int sign = 1;
  while (i < a.indices_.size() && j < b.indices_.size()) {
    if (a.indices_[i] == b.indices_[j]) return std::nullopt;
    if (a.indices_[i] < b.indices_[j]) {
      out.push_back(a.indices_[i++]);
    } else {
      // b[j] jumps over the remaining entries of a
      if ((a.indices_.size() - i) % 2 == 1) sign = -sign;
      out.push_back(b.indices_[j++]);
    }
  }
  while (i < a.indices_.size()) out.push_back(a.indices_[i++]);
  while (j < b.indices_.size()) out.push_back(b.indices_[j++]);
  MultiIndex m;
  m.indices_ = std::move(out);
  return std::make_pair(sign, m);
}

MultiIndex MultiIndex::erased_at(std::size_t pos) const {
  MultiIndex out = *this;
  out.indices_.erase(out.indices_.begin() + static_cast<std::ptrdiff_t>(pos));
  return out;
}

std::pair<int, MultiIndex> MultiIndex::complement(int n) const {
  std::vector<int> comp;
  comp.reserve(static_cast<std::size_t>(n) - indices_.size());
  for (int i = 0; i < n; ++i)
    if (!contains(i)) comp.push_back(i);
  // sign of the permutation (I, I^c): count inversions between the blocks
  long inversions = 0;
  for (int a : indices_)
    for (int b : comp)
      if (b < a) ++inversions;
  MultiIndex m;
  m.indices_ = std::move(comp);
  return {inversions % 2 == 0 ? 1 : -1, m};
}

std::vector<MultiIndex> MultiIndex::all(int n, std::size_t k) {
  std::vector<MultiIndex> out;
  if (k > static_cast<std::size_t>(n)) return out;
  std::vector<int> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<int>(i);
  while (true) {
    out.push_back(MultiIndex(cur));
    // advance the rightmost advanceable position
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (cur[i] < n - static_cast<int>(k - i)) {
        ++cur[i];
        for (std::size_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

bool MultiIndex::operator<(const MultiIndex& other) const {
  if (indices_.size() != other.indices_.size())
    return indices_.size() < other.indices_.size();
  return indices_ < other.indices_;
}

std::string MultiIndex::str(const std::vector<std::string>& basis_names) const {
  if (indices_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) os << "^";
    const int idx = indices_[i];
    if (idx < static_cast<int>(basis_names.size()))
      os << basis_names[static_cast<std::size_t>(idx)];
    else
      os << "e" << idx;
  }
  return os.str();
}

}  // namespace diffeocalc
