#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "commvar/matrix.hpp"

namespace commvar {

template <class S>
struct Rref {
  Mat<S> reduced;
  Index rank = 0;
  std::vector<Index> pivot_cols;
};

// Gauss-Jordan to reduced row echelon form.  Pivot choice is pinned:
// leftmost candidate column, topmost nonzero row, no magnitude heuristics,
// so the output is bit-identical across runs and platforms.
template <class S>
Rref<S> rref(Mat<S> m) {
  const Index rows = m.rows(), cols = m.cols();
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index pr = -1;
    for (Index r = row; r < rows; ++r) {
      if (!is_zero_scalar(m(r, col))) { pr = r; break; }
    }
    if (pr < 0) continue;
    if (pr != row) m.row(row).swap(m.row(pr));
    const S pivot = m(row, col);
    if (!(pivot == S(1))) {
      const S inv = S(1) / pivot;
      m.row(row) *= inv;
    }
    for (Index r = 0; r < rows; ++r) {
      if (r == row) continue;
      if (is_zero_scalar(m(r, col))) continue;
      const S f = m(r, col);
      m.row(r) -= f * m.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return Rref<S>{std::move(m), row, std::move(pivots)};
}

template <class S>
Index rank_of(const Mat<S>& m) {
  return rref(m).rank;
}

// Kernel basis in the standard echelon parametrization: one vector per free
// column, with a 1 in that coordinate.  Vectors come out in increasing free
// column order.
template <class S>
std::vector<Vec<S>> nullspace(const Mat<S>& m) {
  const Rref<S> rr = rref(m);
  const Index cols = m.cols();
  const S zero = make_zero_like(m);
  const S one = zero + S(1);
  std::vector<bool> is_pivot(cols, false);
  for (Index c : rr.pivot_cols) is_pivot[c] = true;
  std::vector<Vec<S>> basis;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec<S> v(cols);
    for (Index i = 0; i < cols; ++i) v(i) = zero;
    v(free) = one;
    for (Index k = 0; k < rr.rank; ++k) {
      const Index pc = rr.pivot_cols[k];
      v(pc) = -rr.reduced(k, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// One solution of m x = b with every free variable set to zero; nullopt when
// the system is inconsistent.
template <class S>
std::optional<Vec<S>> solve(const Mat<S>& m, const Vec<S>& b) {
  if (m.rows() != b.size()) throw std::invalid_argument("solve: shape mismatch");
  Mat<S> aug(m.rows(), m.cols() + 1);
  aug.block(0, 0, m.rows(), m.cols()) = m;
  aug.col(m.cols()) = b;
  const Rref<S> rr = rref(std::move(aug));
  for (Index c : rr.pivot_cols)
    if (c == m.cols()) return std::nullopt;
  const S zero = make_zero_like(m);
  Vec<S> x(m.cols());
  for (Index i = 0; i < m.cols(); ++i) x(i) = zero;
  for (Index k = 0; k < rr.rank; ++k) x(rr.pivot_cols[k]) = rr.reduced(k, m.cols());
  return x;
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  const Index n = m.rows();
  const auto F = field_of(m);
  Mat<S> aug(n, 2 * n);
  aug.block(0, 0, n, n) = m;
  aug.block(0, n, n, n) = identity<S>(n, F);
  const Rref<S> rr = rref(std::move(aug));
  if (rr.rank < n || rr.pivot_cols[n - 1] != n - 1) return std::nullopt;
  return Mat<S>(rr.reduced.block(0, n, n, n));
}

// Dimension of the span of equally shaped matrices.
template <class S>
Index span_dim(const std::vector<Mat<S>>& mats) {
  if (mats.empty()) return 0;
  check_same_shape_and_field(mats);
  const Index w = mats[0].rows() * mats[0].cols();
  Mat<S> stacked(static_cast<Index>(mats.size()), w);
  for (Index i = 0; i < static_cast<Index>(mats.size()); ++i)
    stacked.row(i) = flatten_row_major(mats[static_cast<std::size_t>(i)]).row(0);
  return rank_of(stacked);
}

}  // namespace commvar
