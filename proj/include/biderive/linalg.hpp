#pragma once

#include <vector>

#include "biderive/scalar.hpp"

namespace biderive {

/// Dense exact matrix over the rationals, row-major.
struct QMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Scalar> data;

  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Scalar(0)) {}

  Scalar& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// In-place reduced row echelon form; returns the pivot column of each
/// pivot row (in order).
inline std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t sel = row;
    while (sel < m.rows && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols; ++c)
        std::swap(m.at(sel, c), m.at(row, c));
    Scalar inv = 1 / m.at(row, col);
    for (std::size_t c = col; c < m.cols; ++c) m.at(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Scalar f = m.at(r, col);
      for (std::size_t c = col; c < m.cols; ++c)
        m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(QMatrix m) { return rref(m).size(); }

/// Basis of the right nullspace of m (solutions of m v = 0).
inline std::vector<std::vector<Scalar>> nullspace(QMatrix m) {
  std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Scalar> v(m.cols, Scalar(0));
    v[free_col] = 1;
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      v[pivots[pr]] = -m.at(pr, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Does m v = b admit a solution? (rank test on the augmented matrix.)
inline bool solvable(const QMatrix& m, const std::vector<Scalar>& b) {
  QMatrix aug(m.rows, m.cols + 1);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols) = b[r];
  }
  QMatrix plain = m;
  return rref(plain).size() == rref(aug).size();
}

}  // namespace biderive
