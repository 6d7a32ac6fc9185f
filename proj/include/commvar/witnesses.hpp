#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "commvar/nilcore.hpp"
#include "commvar/rng.hpp"

namespace commvar {

// Two-block flag shape: top = ceil(n/2) rows, bottom = floor(n/2).
struct ParabolicShape {
  Index n = 0;
  Index top = 0;
  Index bottom = 0;

  Index dim_u() const { return top * bottom; }  // == floor(n^2/4)
};

inline ParabolicShape parabolic_shape(Index n) {
  if (n < 2) throw std::invalid_argument("parabolic_shape: n < 2");
  ParabolicShape s;
  s.n = n;
  s.top = (n + 1) / 2;
  s.bottom = n / 2;
  return s;
}

template <class S>
struct ParabolicNilradical {
  ParabolicShape shape;
  std::vector<Mat<S>> basis;  // unit matrices of the lower-left block, row-major
};

// Abelian square-zero subalgebra: all matrices supported on the bottom x top
// lower-left block.  Its dimension floor(n^2/4) exceeds n-1 exactly when
// n >= 4.
template <class S>
ParabolicNilradical<S> parabolic_nilradical(Index n, const FieldContext<S>& F) {
  ParabolicNilradical<S> out;
  out.shape = parabolic_shape(n);
  for (Index i = out.shape.top; i < n; ++i) {
    for (Index j = 0; j < out.shape.top; ++j) {
      Mat<S> e = zeros<S>(n, n, F);
      e(i, j) = F.one();
      out.basis.push_back(std::move(e));
    }
  }
  return out;
}

// Coordinates (A1, A2, A3, A4) of an element of the block family in gl_{4s}.
// A1 fills 1-indexed blocks (1,2) and (2,4), A2 block (1,3), A3 block (1,4),
// A4 block (3,4); every other block is zero.  The family is linear of
// dimension 4s^2, strictly block upper triangular, and centralizes
// gamma_v(s).
template <class S>
struct GammaCoords {
  Index s = 0;
  std::array<Mat<S>, 4> a;
};

// The anchor element v: identity blocks at positions (1,2) and (2,4).
template <class S>
Mat<S> gamma_v(Index s, const FieldContext<S>& F) {
  if (s < 1) throw std::invalid_argument("gamma_v: s < 1");
  const Index n = 4 * s;
  Mat<S> v = zeros<S>(n, n, F);
  for (Index i = 0; i < s; ++i) {
    v(i, s + i) = F.one();          // block (1,2)
    v(s + i, 3 * s + i) = F.one();  // block (2,4)
  }
  return v;
}

template <class S>
Mat<S> gamma_element(const GammaCoords<S>& c) {
  const Index s = c.s;
  const Index n = 4 * s;
  const auto F = field_of(c.a[0]);
  Mat<S> m = zeros<S>(n, n, F);
  m.block(0, s, s, s) = c.a[0];          // A1 at block (1,2)
  m.block(s, 3 * s, s, s) = c.a[0];      // A1 again at block (2,4)
  m.block(0, 2 * s, s, s) = c.a[1];      // A2 at block (1,3)
  m.block(0, 3 * s, s, s) = c.a[2];      // A3 at block (1,4)
  m.block(2 * s, 3 * s, s, s) = c.a[3];  // A4 at block (3,4)
  return m;
}

// For X, Y in the block family the commutator [X^, Y^] vanishes outside
// block (1,4); this is that block.  X^ and Y^ commute iff it is zero.
template <class S>
Mat<S> gamma_commutator_block(const GammaCoords<S>& x, const GammaCoords<S>& y) {
  if (x.s != y.s) throw std::invalid_argument("gamma_commutator_block: size mismatch");
  return x.a[0] * y.a[0] + x.a[1] * y.a[3] - y.a[0] * x.a[0] - y.a[1] * x.a[3];
}

template <class S>
struct GammaPartnerSpace {
  std::vector<GammaCoords<S>> basis;
  Index dim = 0;
};

namespace detail {

template <class S>
GammaCoords<S> gamma_coords_from_flat(Index s, const Vec<S>& v, const FieldContext<S>& F) {
  GammaCoords<S> c;
  c.s = s;
  for (int blk = 0; blk < 4; ++blk) {
    c.a[static_cast<std::size_t>(blk)] = zeros<S>(s, s, F);
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s; ++j)
        c.a[static_cast<std::size_t>(blk)](i, j) = v(blk * s * s + i * s + j);
  }
  return c;
}

}  // namespace detail

// All Y in the block family commuting with X^: kernel of the linear map
// Y |-> gamma_commutator_block(X, Y).  Generic X gives dimension 3s^2.
template <class S>
GammaPartnerSpace<S> gamma_partner_space(Index s, const GammaCoords<S>& x) {
  if (x.s != s) throw std::invalid_argument("gamma_partner_space: size mismatch");
  const auto F = field_of(x.a[0]);
  const Index dims = 4 * s * s;
  Mat<S> sys = zeros<S>(s * s, dims, F);
  for (Index col = 0; col < dims; ++col) {
    GammaCoords<S> unit;
    unit.s = s;
    for (int blk = 0; blk < 4; ++blk) unit.a[static_cast<std::size_t>(blk)] = zeros<S>(s, s, F);
    unit.a[static_cast<std::size_t>(col / (s * s))]((col / s) % s, col % s) = F.one();
    Mat<S> b = gamma_commutator_block(x, unit);
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s; ++j) sys(i * s + j, col) = b(i, j);
  }
  GammaPartnerSpace<S> out;
  for (const auto& v : nullspace(sys)) out.basis.push_back(detail::gamma_coords_from_flat(s, v, F));
  out.dim = static_cast<Index>(out.basis.size());
  return out;
}

template <class S>
Mat<S> random_matrix(Index rows, Index cols, const FieldContext<S>& F, SeededRng& rng) {
  Mat<S> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = F.sample(rng);
  return m;
}

template <class S>
GammaCoords<S> random_gamma_coords(Index s, const FieldContext<S>& F, SeededRng& rng) {
  GammaCoords<S> c;
  c.s = s;
  for (auto& blk : c.a) blk = random_matrix<S>(s, s, F, rng);
  return c;
}

// Bounded retries, then an error; callers that need a fresh start use a new
// seed rather than silently drawing more.
template <class S>
Mat<S> random_invertible(Index n, const FieldContext<S>& F, SeededRng& rng, int max_tries = 64) {
  for (int t = 0; t < max_tries; ++t) {
    Mat<S> g = random_matrix<S>(n, n, F, rng);
    if (inverse(g).has_value()) return g;
  }
  throw std::runtime_error("random_invertible: retries exhausted");
}

// Conjugate of (x, p_2(x), ..., p_r(x)) for the regular nilpotent x and
// random polynomials with zero constant term.  Every entry of the result is
// nilpotent and the tuple commutes.
template <class S>
MatTuple<S> sample_regular_tuple(Index n, Index r, const FieldContext<S>& F, std::uint64_t seed) {
  if (n < 1 || r < 1) throw std::invalid_argument("sample_regular_tuple: bad size");
  if (F.spec().kind == FieldKind::PrimeField && F.spec().p <= static_cast<std::uint64_t>(n))
    throw std::invalid_argument("sample_regular_tuple: needs p > n");
  SeededRng rng(seed);
  const Mat<S> x = regular_nilpotent<S>(n, F);

  std::vector<Mat<S>> powers;  // x^1 .. x^{n-1}
  Mat<S> p = x;
  for (Index k = 1; k < n; ++k) {
    powers.push_back(p);
    p = Mat<S>(p * x);
  }

  std::vector<Mat<S>> mats{x};
  for (Index i = 1; i < r; ++i) {
    Mat<S> z = zeros<S>(n, n, F);
    for (const auto& pk : powers) {
      const S c = F.sample(rng);
      z += c * pk;
    }
    mats.push_back(std::move(z));
  }
  const Mat<S> g = random_invertible<S>(n, F, rng);
  return conjugate(g, MatTuple<S>(std::move(mats)));
}

}  // namespace commvar
