#pragma once

#include <vector>

#include "qth/error.hpp"

namespace qth {

/// Row-major dense matrix over an exact field K.
template <class K>
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols, const K& zero)
      : rows_(rows), cols_(cols), zero_(zero), a_(rows * cols, zero) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  /// In-place reduced row echelon form; returns the pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c).is_zero()) ++p;
      if (p == rows_) continue;
      if (p != r) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
      }
      const K inv = (*this)(r, c).inverse();
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c).is_zero()) continue;
        const K f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j) {
          if (!(*this)(r, j).is_zero()) (*this)(i, j) -= f * (*this)(r, j);
        }
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    DenseMatrix copy(*this);
    return copy.rref().size();
  }

  /// Basis of {v : A v = 0}, one vector per free column.
  std::vector<std::vector<K>> nullspace() const {
    DenseMatrix m(*this);
    const auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<K>> basis;
    const K one = zero_.one_like();
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<K> v(cols_, zero_);
      v[free] = one;
      for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  K zero_;
  std::vector<K> a_;
};

}  // namespace qth
