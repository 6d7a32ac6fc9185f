#include "doctest.h"

#include "commvar/geomdim.hpp"

using namespace commvar;

TEST_CASE("tangent dimension of the commuting variety") {
  FieldContext<Rat> Q;

  SUBCASE("regular first entry, zero partners") {
    for (Index n = 2; n <= 4; ++n) {
      for (Index r = 2; r <= 3; ++r) {
        std::vector<Mat<Rat>> mats{regular_nilpotent<Rat>(n, Q)};
        for (Index i = 1; i < r; ++i) mats.push_back(zeros<Rat>(n, n, Q));
        CHECK(commuting_tangent_dim(MatTuple<Rat>(std::move(mats))) == n * n + (r - 1) * n);
      }
    }
  }

  SUBCASE("repeated regular entry at n = 2") {
    auto x = regular_nilpotent<Rat>(2, Q);
    CHECK(commuting_tangent_dim(MatTuple<Rat>({x, x})) == 6);
  }

  SUBCASE("single entry has no constraints") {
    CHECK(commuting_tangent_dim(MatTuple<Rat>({regular_nilpotent<Rat>(3, Q)})) == 9);
  }

  SUBCASE("non-commuting input throws") {
    Mat<Rat> e21 = zeros<Rat>(2, 2, Q);
    e21(1, 0) = Rat(1);
    CHECK_THROWS_AS(commuting_tangent_dim(MatTuple<Rat>({regular_nilpotent<Rat>(2, Q), e21})),
                    std::invalid_argument);
  }
}

TEST_CASE("nilpotent cone tangent rows") {
  FieldContext<Rat> Q;
  for (Index n = 2; n <= 5; ++n) {
    auto rows = nilpotent_tangent_rows(regular_nilpotent<Rat>(n, Q));
    CHECK(rows.rows() == n);
    CHECK(rows.cols() == n * n);
    // independent at a regular point: the cone is smooth there with
    // codimension n, so the cone dimension reads off as n^2 - n
    CHECK(rank_of(rows) == n);
  }

  // first row is d tr(x) = identity coefficients regardless of x
  auto rows = nilpotent_tangent_rows(regular_nilpotent<Rat>(3, Q));
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) CHECK(rows(0, i * 3 + j) == (i == j ? Rat(1) : Rat(0)));

  SUBCASE("characteristic guard") {
    FieldContext<Fp> F5(5);
    CHECK_THROWS_AS(nilpotent_tangent_rows(regular_nilpotent<Fp>(5, F5)), std::invalid_argument);
    CHECK_NOTHROW(nilpotent_tangent_rows(regular_nilpotent<Fp>(4, F5)));
  }
}

TEST_CASE("orbit chart rank equals orbit dimension") {
  FieldContext<Fp> F(1000003);
  for (std::uint64_t seed : {1ull, 5ull}) {
    auto t = sample_regular_tuple<Fp>(4, 2, F, seed);
    auto pr = param_rank_orbit(t);
    CHECK(pr.rank == orbit_dim(t));
    CHECK(pr.rank == 12);  // regular tuples: n^2 - n
    CHECK(pr.generic);
    CHECK(pr.jac_cols == 16);
  }
}

TEST_CASE("parabolic chart rank") {
  FieldContext<Fp> F(1000003);

  SUBCASE("generic draws hit (r+1) floor(n^2/4)") {
    auto p46 = param_rank_parabolic<Fp>(4, 6, F, 7);
    CHECK(p46.rank == 28);
    CHECK(p46.generic);
    CHECK(p46.reseeds == 0);

    auto p53 = param_rank_parabolic<Fp>(5, 3, F, 7);
    CHECK(p53.rank == 24);
    CHECK(p53.generic);
  }

  SUBCASE("rank never exceeds the expected value") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
      auto pr = param_rank_parabolic<Fp>(4, 4, F, seed);
      CHECK(pr.rank <= pr.expected);
    }
  }

  SUBCASE("over the rationals") {
    FieldContext<Rat> Q;
    auto pr = param_rank_parabolic<Rat>(4, 6, Q, 7);
    CHECK(pr.rank == 28);
    CHECK(pr.generic);
  }

  SUBCASE("fixed degenerate base point: the zero tuple only spans the group block") {
    FieldContext<Rat> Q;
    std::vector<Mat<Rat>> zero_mats;
    for (Index i = 0; i < 3; ++i) zero_mats.push_back(zeros<Rat>(4, 4, Q));
    auto pr = param_rank_parabolic_at(MatTuple<Rat>(std::move(zero_mats)));
    // group columns vanish at the zero tuple; only the 3 * 4 direction
    // columns contribute
    CHECK(pr.rank == 12);
    CHECK_FALSE(pr.generic);
  }
}

TEST_CASE("gamma chart rank and family dimension parts") {
  FieldContext<Fp> F(1000003);

  SUBCASE("chart rank equals n^2 + s^2 at generic points") {
    auto g1 = param_rank_gamma<Fp>(1, F, 5);
    CHECK(g1.rank == 17);
    CHECK(g1.generic);
    CHECK(g1.linearization_rank == 1);
    CHECK(g1.partner_dim == 3);
    CHECK(g1.jac_rows == 48);
    CHECK(g1.jac_cols == 23);

    auto g2 = param_rank_gamma<Fp>(2, F, 5);
    CHECK(g2.rank == 68);
    CHECK(g2.generic);
  }

  SUBCASE("parts breakdown matches the closed forms") {
    for (Index s = 1; s <= 3; ++s) {
      auto gd = gamma_family_dim<Fp>(s, F, 11);
      CHECK(gd.orbit_of_v == 16 * s * s - 6 * s * s);
      CHECK(gd.family_dim == 4 * s * s);
      CHECK(gd.partner_dim == 3 * s * s);
      CHECK(gd.partner_generic);
      CHECK(gd.total == 17 * s * s);
      CHECK(gd.total == gd.orbit_of_v + gd.family_dim + gd.partner_dim);
    }
  }

  SUBCASE("dispatch validates the gamma chart") {
    CHECK_THROWS_AS(param_rank(FamilyKind::GammaFamily, 6, 3, F, 1), std::invalid_argument);
    CHECK_THROWS_AS(param_rank(FamilyKind::GammaFamily, 8, 2, F, 1), std::invalid_argument);
  }
}

TEST_CASE("second tangent row of the cone at x_reg(2) is 2 xi_21") {
  FieldContext<Rat> Q;
  auto rows = nilpotent_tangent_rows(regular_nilpotent<Rat>(2, Q));
  // row 2 carries 2 (x^1)_{ji}: x_reg(2) has its only 1 at (0,1), so the
  // sole nonzero coefficient sits at column (1,0)
  CHECK(rows(1, 0 * 2 + 0) == Rat(0));
  CHECK(rows(1, 0 * 2 + 1) == Rat(0));
  CHECK(rows(1, 1 * 2 + 0) == Rat(2));
  CHECK(rows(1, 1 * 2 + 1) == Rat(0));

  // x = 0 keeps only the trace row
  CHECK(rank_of(nilpotent_tangent_rows(zeros<Rat>(3, 3, Q))) == 1);
}

TEST_CASE("tangent dimension dominates the parabolic chart rank at r = 2") {
  FieldContext<Fp> F(kDefaultPrime);
  for (Index n = 4; n <= 6; ++n) {
    const auto pr = param_rank_parabolic<Fp>(n, 2, F, 7);
    REQUIRE(is_commuting_tuple(pr.base));
    CHECK(commuting_tangent_dim(pr.base) >= pr.rank);
  }
}
