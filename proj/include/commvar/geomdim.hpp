#pragma once

#include <cstdint>
#include <vector>

#include "commvar/nilcore.hpp"
#include "commvar/witnesses.hpp"

namespace commvar {

// Matrix of xi |-> [xi, c] in the row-major flattening; the differential of
// conjugation g c g^{-1} in the group direction at g = e.
template <class S>
Mat<S> comm_action_matrix(const Mat<S>& c) {
  return Mat<S>(-ad_matrix(c));
}

// Dimension of the solution space of the linearized commuting constraints
// [xi_i, x_j] + [x_i, xi_j] = 0 for i < j at a commuting tuple: the tangent
// space of the pairwise-commuting variety at that point.
template <class S>
Index commuting_tangent_dim(const MatTuple<S>& t) {
  if (!is_commuting_tuple(t)) throw std::invalid_argument("commuting_tangent_dim: tuple does not commute");
  const Index n = t.n(), r = t.r();
  const Index pairs = r * (r - 1) / 2;
  if (pairs == 0) return n * n;
  const auto F = field_of(t[0]);
  Mat<S> sys = zeros<S>(pairs * n * n, r * n * n, F);
  Index blk = 0;
  for (Index i = 0; i < r; ++i) {
    for (Index j = i + 1; j < r; ++j) {
      sys.block(blk * n * n, i * n * n, n * n, n * n) = comm_action_matrix(t[j]);
      sys.block(blk * n * n, j * n * n, n * n, n * n) = ad_matrix(t[i]);
      ++blk;
    }
  }
  return r * n * n - rank_of(sys);
}

// Linearizations at x of the n coefficient equations cutting out the
// nilpotent cone: row k has the coefficients of tr(x^k) differentiated,
// k (x^{k-1})_{ji} at column (i,j).  Over F_p the scale factors k need
// p > n to be nonzero.
template <class S>
Mat<S> nilpotent_tangent_rows(const Mat<S>& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("nilpotent_tangent_rows: not square");
  const Index n = x.rows();
  const auto F = field_of(x);
  if (F.spec().kind == FieldKind::PrimeField && F.spec().p <= static_cast<std::uint64_t>(n))
    throw std::invalid_argument("nilpotent_tangent_rows: needs p > n");
  Mat<S> rows = zeros<S>(n, n * n, F);
  Mat<S> pow = identity<S>(n, F);  // x^{k-1}
  for (Index k = 1; k <= n; ++k) {
    const S kc = F.from_int(k);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) rows(k - 1, i * n + j) = kc * pow(j, i);
    pow = Mat<S>(pow * x);
  }
  return rows;
}

enum class FamilyKind { OrbitOfTuple, ParabolicFamily, GammaFamily };

inline const char* family_kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::OrbitOfTuple: return "orbit";
    case FamilyKind::ParabolicFamily: return "parabolic";
    case FamilyKind::GammaFamily: return "gamma";
  }
  return "?";
}

// Rank witness for one conjugation-and-family chart.
template <class S>
struct ParamRank {
  FamilyKind kind = FamilyKind::OrbitOfTuple;
  Index n = 0, r = 0, s = 0;
  MatTuple<S> base;          // realized base point of the chart
  Index jac_rows = 0, jac_cols = 0;
  Index rank = 0;
  Index expected = 0;        // generic value for this chart
  bool generic = false;      // rank == expected
  std::uint64_t seed = 0;
  int reseeds = 0;
  Index linearization_rank = 0;  // gamma chart only
  Index partner_dim = 0;         // gamma chart only
};

// Rank of the differential of (g, lambda) |-> g (base + sum lambda_k dir_k) g^{-1}
// at (e, 0): the group block stacks [xi, base_i] per slot, one extra column
// per direction tuple.  The rank bounds the closure of the chart image from
// below at smooth points.
template <class S>
Index family_map_rank(const MatTuple<S>& base, const std::vector<MatTuple<S>>& directions) {
  const Index n = base.n(), r = base.r();
  const auto F = field_of(base[0]);
  const Index dcols = static_cast<Index>(directions.size());
  Mat<S> jac = zeros<S>(r * n * n, n * n + dcols, F);
  for (Index i = 0; i < r; ++i)
    jac.block(i * n * n, 0, n * n, n * n) = comm_action_matrix(base[i]);
  for (Index d = 0; d < dcols; ++d) {
    const MatTuple<S>& dir = directions[static_cast<std::size_t>(d)];
    if (dir.n() != n || dir.r() != r) throw std::invalid_argument("family_map_rank: direction shape mismatch");
    for (Index i = 0; i < r; ++i) {
      const Mat<S> flat = flatten_row_major(dir[i]);
      for (Index k = 0; k < n * n; ++k) jac(i * n * n + k, n * n + d) = flat(0, k);
    }
  }
  return rank_of(jac);
}

template <class S>
ParamRank<S> param_rank_orbit(const MatTuple<S>& t) {
  ParamRank<S> out;
  out.kind = FamilyKind::OrbitOfTuple;
  out.n = t.n();
  out.r = t.r();
  out.base = t;
  out.jac_rows = t.r() * t.n() * t.n();
  out.jac_cols = t.n() * t.n();
  out.rank = family_map_rank(t, {});
  out.expected = orbit_dim(t);
  out.generic = out.rank == out.expected;
  return out;
}

// Chart at a concrete tuple of lower-left block matrices; directions move
// each slot independently through the whole block.
template <class S>
ParamRank<S> param_rank_parabolic_at(const MatTuple<S>& w) {
  const Index n = w.n(), r = w.r();
  const auto F = field_of(w[0]);
  const auto u = parabolic_nilradical<S>(n, F);
  std::vector<MatTuple<S>> dirs;
  for (Index i = 0; i < r; ++i) {
    for (const auto& b : u.basis) {
      std::vector<Mat<S>> d;
      for (Index j = 0; j < r; ++j) d.push_back(j == i ? b : zeros<S>(n, n, F));
      dirs.emplace_back(std::move(d));
    }
  }
  ParamRank<S> out;
  out.kind = FamilyKind::ParabolicFamily;
  out.n = n;
  out.r = r;
  out.base = w;
  out.jac_rows = r * n * n;
  out.jac_cols = n * n + static_cast<Index>(dirs.size());
  out.rank = family_map_rank(w, dirs);
  out.expected = (r + 1) * u.shape.dim_u();
  out.generic = out.rank == out.expected;
  return out;
}

// Samples the base tuple inside the block; a rank below the expected
// (r+1) floor(n^2/4) marks a degenerate draw and triggers a reseed rather
// than silent acceptance.
template <class S>
ParamRank<S> param_rank_parabolic(Index n, Index r, const FieldContext<S>& F,
                                  std::uint64_t seed, int max_reseeds = 3) {
  const auto u = parabolic_nilradical<S>(n, F);
  ParamRank<S> best;
  for (int attempt = 0; ; ++attempt) {
    SeededRng rng(seed + static_cast<std::uint64_t>(attempt));
    std::vector<Mat<S>> w;
    for (Index i = 0; i < r; ++i) {
      Mat<S> m = zeros<S>(n, n, F);
      for (const auto& b : u.basis) m += F.sample(rng) * b;
      w.push_back(std::move(m));
    }
    ParamRank<S> cur = param_rank_parabolic_at(MatTuple<S>(std::move(w)));
    cur.seed = seed + static_cast<std::uint64_t>(attempt);
    cur.reseeds = attempt;
    if (attempt == 0 || cur.rank > best.rank) best = cur;
    if (best.generic || attempt >= max_reseeds) return best;
  }
}

// Chart at (v, X^, Y^) with directions spanning the tangent space of the
// commuting-pair incidence inside the block family.
template <class S>
ParamRank<S> param_rank_gamma_at(Index s, const GammaCoords<S>& x, const GammaCoords<S>& y) {
  const auto F = field_of(x.a[0]);
  const Index n = 4 * s;

  // linearized pair condition: block(dX, Y) + block(X, dY) = 0,
  // unknowns (dX, dY) in 8s^2 coordinates
  const Index coords = 4 * s * s;
  Mat<S> lin = zeros<S>(s * s, 2 * coords, F);
  for (Index col = 0; col < 2 * coords; ++col) {
    GammaCoords<S> unit;
    unit.s = s;
    for (int blk = 0; blk < 4; ++blk) unit.a[static_cast<std::size_t>(blk)] = zeros<S>(s, s, F);
    const Index local = col % coords;
    unit.a[static_cast<std::size_t>(local / (s * s))]((local / s) % s, local % s) = F.one();
    const Mat<S> b = col < coords ? gamma_commutator_block(unit, y) : gamma_commutator_block(x, unit);
    for (Index i = 0; i < s; ++i)
      for (Index j = 0; j < s; ++j) lin(i * s + j, col) = b(i, j);
  }
  const Rref<S> linr = rref(lin);

  const Mat<S> v = gamma_v<S>(s, F);
  MatTuple<S> base({v, gamma_element(x), gamma_element(y)});
  std::vector<MatTuple<S>> dirs;
  for (const auto& tv : nullspace(lin)) {
    Vec<S> dx(coords), dy(coords);
    for (Index i = 0; i < coords; ++i) { dx(i) = tv(i); dy(i) = tv(coords + i); }
    GammaCoords<S> cdx = detail::gamma_coords_from_flat(s, dx, F);
    GammaCoords<S> cdy = detail::gamma_coords_from_flat(s, dy, F);
    dirs.push_back(MatTuple<S>({zeros<S>(n, n, F), gamma_element(cdx), gamma_element(cdy)}));
  }

  ParamRank<S> out;
  out.kind = FamilyKind::GammaFamily;
  out.n = n;
  out.r = 3;
  out.s = s;
  out.base = base;
  out.jac_rows = 3 * n * n;
  out.jac_cols = n * n + static_cast<Index>(dirs.size());
  out.rank = family_map_rank(base, dirs);
  out.expected = n * n + s * s;
  out.linearization_rank = linr.rank;
  out.partner_dim = gamma_partner_space(s, x).dim;
  out.generic = out.linearization_rank == s * s && out.partner_dim == 3 * s * s;
  return out;
}

template <class S>
ParamRank<S> param_rank_gamma(Index s, const FieldContext<S>& F, std::uint64_t seed,
                              int max_reseeds = 3) {
  ParamRank<S> best;
  for (int attempt = 0; ; ++attempt) {
    SeededRng rng(seed + static_cast<std::uint64_t>(attempt));
    GammaCoords<S> x = random_gamma_coords<S>(s, F, rng);
    auto partner = gamma_partner_space(s, x);
    GammaCoords<S> y;
    y.s = s;
    for (auto& blk : y.a) blk = zeros<S>(s, s, F);
    for (const auto& p : partner.basis) {
      const S c = F.sample(rng);
      for (int blk = 0; blk < 4; ++blk)
        y.a[static_cast<std::size_t>(blk)] += c * p.a[static_cast<std::size_t>(blk)];
    }
    ParamRank<S> cur = param_rank_gamma_at(s, x, y);
    cur.seed = seed + static_cast<std::uint64_t>(attempt);
    cur.reseeds = attempt;
    if (attempt == 0 || cur.rank > best.rank || (cur.generic && !best.generic)) best = cur;
    if (best.generic || attempt >= max_reseeds) return best;
  }
}

template <class S>
ParamRank<S> param_rank(FamilyKind kind, Index n, Index r, const FieldContext<S>& F,
                        std::uint64_t seed) {
  switch (kind) {
    case FamilyKind::OrbitOfTuple:
      return param_rank_orbit(sample_regular_tuple<S>(n, r, F, seed));
    case FamilyKind::ParabolicFamily:
      return param_rank_parabolic(n, r, F, seed);
    case FamilyKind::GammaFamily: {
      if (n % 4 != 0 || r != 3) throw std::invalid_argument("gamma chart needs r = 3 and 4 | n");
      return param_rank_gamma(n / 4, F, seed);
    }
  }
  throw std::logic_error("unreachable");
}

struct GammaFamilyDim {
  Index s = 0;
  Index total = 0;          // orbit_of_v + family_dim + partner_dim
  Index orbit_of_v = 0;     // n^2 - dim z(v), computed
  Index family_dim = 0;     // 4 s^2
  Index partner_dim = 0;    // kernel dimension at the sampled X
  bool partner_generic = false;  // partner_dim == 3 s^2
  std::uint64_t seed = 0;
  int reseeds = 0;
};

// Lower bound for the closure of the conjugated pair family through v:
// orbit of v plus the incidence dimension over a generic first coordinate.
// The partner dimension is recomputed at the sampled X and only a generic
// sample (exactly 3s^2) is accepted without a reseed.
template <class S>
GammaFamilyDim gamma_family_dim(Index s, const FieldContext<S>& F, std::uint64_t seed,
                                int max_reseeds = 8) {
  if (s < 1) throw std::invalid_argument("gamma_family_dim: s < 1");
  const Mat<S> v = gamma_v<S>(s, F);
  const Index n = 4 * s;
  const Index zv = centralizer(v).dim;

  GammaFamilyDim out;
  out.s = s;
  out.orbit_of_v = n * n - zv;
  out.family_dim = 4 * s * s;
  for (int attempt = 0; ; ++attempt) {
    SeededRng rng(seed + static_cast<std::uint64_t>(attempt));
    GammaCoords<S> x = random_gamma_coords<S>(s, F, rng);
    out.partner_dim = gamma_partner_space(s, x).dim;
    out.partner_generic = out.partner_dim == 3 * s * s;
    out.seed = seed + static_cast<std::uint64_t>(attempt);
    out.reseeds = attempt;
    if (out.partner_generic || attempt >= max_reseeds) break;
  }
  out.total = out.orbit_of_v + out.family_dim + out.partner_dim;
  return out;
}

}  // namespace commvar
