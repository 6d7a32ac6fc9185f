#pragma once

#include <utility>
#include <vector>

#include "commvar/matrix.hpp"
#include "commvar/rref.hpp"

namespace commvar {

// Ordered tuple (x_1, ..., x_r) of n x n matrices over one field.
template <class S>
struct MatTuple {
  std::vector<Mat<S>> mats;

  MatTuple() = default;
  explicit MatTuple(std::vector<Mat<S>> ms) : mats(std::move(ms)) {
    if (mats.empty()) throw std::invalid_argument("empty tuple");
    for (const auto& m : mats)
      if (m.rows() != m.cols()) throw std::invalid_argument("tuple entries must be square");
    check_same_shape_and_field(mats);
  }

  Index n() const { return mats.empty() ? 0 : mats[0].rows(); }
  Index r() const { return static_cast<Index>(mats.size()); }
  const Mat<S>& operator[](Index i) const { return mats[static_cast<std::size_t>(i)]; }
};

template <class S>
Mat<S> commutator(const Mat<S>& x, const Mat<S>& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
    throw std::invalid_argument("commutator: shape mismatch");
  return x * y - y * x;
}

template <class S>
bool is_nilpotent(const Mat<S>& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("is_nilpotent: not square");
  const Index n = x.rows();
  Mat<S> pow = x;
  for (Index k = 2; k <= n && !is_zero_mat(pow); ++k) pow = Mat<S>(pow * x);
  return is_zero_mat(pow);
}

template <class S>
bool is_commuting_tuple(const MatTuple<S>& t) {
  for (Index i = 0; i < t.r(); ++i)
    for (Index j = i + 1; j < t.r(); ++j)
      if (!is_zero_mat(Mat<S>(commutator(t[i], t[j])))) return false;
  return true;
}

template <class S>
bool is_nilpotent_tuple(const MatTuple<S>& t) {
  for (Index i = 0; i < t.r(); ++i)
    if (!is_nilpotent(t[i])) return false;
  return true;
}

// Single Jordan block with eigenvalue 0: ones on the superdiagonal.
template <class S>
Mat<S> regular_nilpotent(Index n, const FieldContext<S>& F) {
  if (n < 1) throw std::invalid_argument("regular_nilpotent: n < 1");
  Mat<S> m = zeros<S>(n, n, F);
  for (Index i = 0; i + 1 < n; ++i) m(i, i + 1) = F.one();
  return m;
}

// Matrix of Y |-> x Y - Y x on n x n matrices, rows and columns indexed by
// the row-major flattening.  Entry at (row (i,j), col (k,l)) is
// x(i,k) [j==l] - x(l,j) [i==k].
template <class S>
Mat<S> ad_matrix(const Mat<S>& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("ad_matrix: not square");
  const Index n = x.rows();
  Mat<S> a = zeros<S>(n * n, n * n, field_of(x));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Index row = i * n + j;
      for (Index k = 0; k < n; ++k) a(row, k * n + j) += x(i, k);
      for (Index l = 0; l < n; ++l) a(row, i * n + l) -= x(l, j);
    }
  }
  return a;
}

template <class S>
struct CentralizerBasis {
  std::vector<Mat<S>> basis;
  Index dim = 0;
};

namespace detail {

template <class S>
CentralizerBasis<S> unflatten_kernel(const std::vector<Vec<S>>& ns, Index n) {
  CentralizerBasis<S> out;
  out.dim = static_cast<Index>(ns.size());
  out.basis.reserve(ns.size());
  for (const auto& v : ns) {
    Mat<S> flat(1, n * n);
    for (Index i = 0; i < n * n; ++i) flat(0, i) = v(i);
    out.basis.push_back(unflatten_row_major(flat, n, n));
  }
  return out;
}

}  // namespace detail

template <class S>
CentralizerBasis<S> centralizer(const Mat<S>& x) {
  return detail::unflatten_kernel(nullspace(ad_matrix(x)), x.rows());
}

// Joint kernel of all ad(x_i): matrices commuting with every tuple entry.
template <class S>
CentralizerBasis<S> simultaneous_centralizer(const MatTuple<S>& t) {
  const Index n = t.n();
  Mat<S> stacked = zeros<S>(t.r() * n * n, n * n, field_of(t[0]));
  for (Index i = 0; i < t.r(); ++i)
    stacked.block(i * n * n, 0, n * n, n * n) = ad_matrix(t[i]);
  return detail::unflatten_kernel(nullspace(stacked), n);
}

template <class S>
bool is_regular_nilpotent(const Mat<S>& x) {
  return is_nilpotent(x) && centralizer(x).dim == x.rows();
}

template <class S>
struct AlgebraClosure {
  std::vector<Mat<S>> basis;  // echelon-canonical for the given generators
  Index dim = 0;
  int generations = 0;
};

// Smallest subspace containing the tuple entries and closed under products;
// the algebra the entries generate, without adjoining the identity.  Each
// round multiplies all current basis pairs and re-reduces, so the dimension
// is monotone and capped by n^2.
template <class S>
AlgebraClosure<S> algebra_closure(const MatTuple<S>& t) {
  const Index n = t.n();
  const auto F = field_of(t[0]);

  auto reduce = [&](const std::vector<Mat<S>>& mats) {
    Mat<S> stacked = zeros<S>(static_cast<Index>(mats.size()), n * n, F);
    for (Index i = 0; i < static_cast<Index>(mats.size()); ++i)
      stacked.row(i) = flatten_row_major(mats[static_cast<std::size_t>(i)]).row(0);
    Rref<S> rr = rref(std::move(stacked));
    std::vector<Mat<S>> basis;
    basis.reserve(static_cast<std::size_t>(rr.rank));
    for (Index k = 0; k < rr.rank; ++k)
      basis.push_back(unflatten_row_major(Mat<S>(rr.reduced.row(k)), n, n));
    return basis;
  };

  AlgebraClosure<S> cur;
  cur.basis = reduce(t.mats);
  cur.dim = static_cast<Index>(cur.basis.size());

  for (;;) {
    std::vector<Mat<S>> augmented = cur.basis;
    for (const auto& a : cur.basis)
      for (const auto& b : cur.basis) augmented.push_back(Mat<S>(a * b));
    std::vector<Mat<S>> next = reduce(augmented);
    ++cur.generations;
    if (static_cast<Index>(next.size()) == cur.dim) break;
    cur.basis = std::move(next);
    cur.dim = static_cast<Index>(cur.basis.size());
  }
  return cur;
}

// g t g^{-1} entrywise; throws when g is singular.
template <class S>
MatTuple<S> conjugate(const Mat<S>& g, const MatTuple<S>& t) {
  if (g.rows() != g.cols() || g.rows() != t.n())
    throw std::invalid_argument("conjugate: shape mismatch");
  auto gi = inverse(g);
  if (!gi) throw std::invalid_argument("conjugate: singular matrix");
  std::vector<Mat<S>> out;
  out.reserve(t.mats.size());
  for (const auto& x : t.mats) out.push_back(Mat<S>(g * x * *gi));
  return MatTuple<S>(std::move(out));
}

// Dimension of the conjugation orbit of the tuple: n^2 minus the dimension
// of the joint centralizer.
template <class S>
Index orbit_dim(const MatTuple<S>& t) {
  return t.n() * t.n() - simultaneous_centralizer(t).dim;
}

}  // namespace commvar
