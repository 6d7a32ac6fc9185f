#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "commvar/field.hpp"
#include "commvar/fp.hpp"
#include "commvar/rational.hpp"
#include "commvar/rng.hpp"

namespace commvar {

using Index = Eigen::Index;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// Constructs scalars and matrices of one concrete field.  Every Fp matrix in
// the library is built through a context, so all its entries carry the
// modulus; expression results inherit it.
template <class S>
struct FieldContext;

template <>
struct FieldContext<Rat> {
  FieldSpec spec() const { return FieldSpec::rationals(); }
  Rat zero() const { return Rat(0); }
  Rat one() const { return Rat(1); }
  Rat from_int(std::int64_t v) const { return Rat(static_cast<long>(v)); }
  // Sampling over the rationals draws integers in [-9, 9].
  Rat sample(SeededRng& rng) const { return Rat(static_cast<long>(rng.int_in(-9, 9))); }
};

template <>
struct FieldContext<Fp> {
  std::uint64_t p = kDefaultPrime;

  FieldContext() = default;
  explicit FieldContext(std::uint64_t p_) : p(p_) {}

  FieldSpec spec() const { return FieldSpec::prime_field(p); }
  Fp zero() const { return Fp::make(0, p); }
  Fp one() const { return Fp::make(1, p); }
  Fp from_int(std::int64_t v) const { return Fp::from_int(v, p); }
  Fp sample(SeededRng& rng) const { return Fp::make(rng.below(p), p); }
};

template <class S>
Mat<S> zeros(Index rows, Index cols, const FieldContext<S>& F) {
  Mat<S> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = F.zero();
  return m;
}

template <class S>
Mat<S> identity(Index n, const FieldContext<S>& F) {
  Mat<S> m = zeros<S>(n, n, F);
  for (Index i = 0; i < n; ++i) m(i, i) = F.one();
  return m;
}

// Recovers the context a nonempty matrix was built under.
template <class S>
FieldContext<S> field_of(const Mat<S>& m) {
  if constexpr (std::is_same_v<S, Fp>) {
    if (m.size() == 0 || !m(0, 0).bound())
      throw std::invalid_argument("cannot infer modulus from matrix");
    return FieldContext<Fp>(m(0, 0).modulus());
  } else {
    (void)m;
    return FieldContext<S>{};
  }
}

// Zero scalar carrying the field of m (for Fp, its modulus).
template <class S>
S make_zero_like(const Mat<S>& m) {
  if constexpr (std::is_same_v<S, Fp>) {
    if (m.size() > 0 && m(0, 0).bound()) return Fp::make(0, m(0, 0).modulus());
    return Fp();
  } else {
    (void)m;
    return S(0);
  }
}

template <class S>
bool is_zero_scalar(const S& x) {
  if constexpr (std::is_same_v<S, Fp>) return x.is_zero();
  else return sgn(x) == 0;
}

template <class S>
bool is_zero_mat(const Mat<S>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!is_zero_scalar(m(i, j))) return false;
  return true;
}

template <class S>
bool mats_equal(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

// Row-major flattening fixes the vec() convention used by every operator
// matrix in the library: entry (i, j) of an n x c matrix sits at i*c + j.
template <class S>
Mat<S> flatten_row_major(const Mat<S>& m) {
  Mat<S> row(1, m.rows() * m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) row(0, i * m.cols() + j) = m(i, j);
  return row;
}

template <class S>
Mat<S> unflatten_row_major(const Mat<S>& flat, Index rows, Index cols) {
  if (flat.size() != rows * cols) throw std::invalid_argument("unflatten: size mismatch");
  Mat<S> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = flat(i * cols + j);
  return m;
}

template <class S>
void check_same_shape_and_field(const std::vector<Mat<S>>& mats) {
  if (mats.empty()) return;
  const Index r = mats[0].rows(), c = mats[0].cols();
  for (const auto& m : mats) {
    if (m.rows() != r || m.cols() != c) throw std::invalid_argument("shape mismatch");
    if constexpr (std::is_same_v<S, Fp>) {
      if (m.size() > 0 && m(0, 0).modulus() != mats[0](0, 0).modulus())
        throw std::invalid_argument("field mismatch");
    }
  }
}

}  // namespace commvar
