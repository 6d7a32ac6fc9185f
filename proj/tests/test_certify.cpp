#include <doctest.h>

#include <commvar/certify.hpp>

using namespace commvar;

namespace {
FieldContext<Fp> default_field() { return FieldContext<Fp>(kDefaultPrime); }
}  // namespace

TEST_CASE("formula ledger instantiates the closed forms") {
  const DimReport a = formula_dims(4, 4);
  CHECK(a.dim_N_component == 21);
  CHECK(a.dim_G_component == 28);
  CHECK(a.dim_uP == 4);
  CHECK(a.dim_VP == 20);
  CHECK(a.lower_bound_nilpotent == 21);
  CHECK(a.lower_bound_general == 28);

  const DimReport b = formula_dims(4, 6);
  CHECK(b.dim_N_component == 27);
  CHECK(b.dim_VP == 28);
  CHECK(b.lower_bound_nilpotent == 28);

  const DimReport c = formula_dims(8, 4);
  CHECK(c.dim_N_component == 77);
  CHECK(c.dim_VP == 80);

  const DimReport d = formula_dims(1, 1);
  CHECK(d.dim_N_component == 0);
  CHECK(d.dim_G_component == 1);
  CHECK(d.dim_uP == 0);
  CHECK(d.dim_VP == 0);
  CHECK(d.lower_bound_nilpotent == 0);
  CHECK(d.lower_bound_general == 1);

  CHECK(formula_dims(2, 2).dim_N_component == 3);
  CHECK_THROWS_AS(formula_dims(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(formula_dims(1, 0), std::invalid_argument);
}

TEST_CASE("dims report serializes every ledger field") {
  const Json j = dim_report_to_json(formula_dims(4, 6));
  CHECK(j.at("format_version") == kFormatVersion);
  CHECK(j.at("dim_N_component") == 27);
  CHECK(j.at("dim_VP") == 28);
  CHECK(j.at("lower_bound_general") == 36);  // max(16 + 5*4, 28 + 6)
}

TEST_CASE("algebra certificate: deterministic catalog for r >= n >= 4") {
  const auto F = default_field();
  const Certificate c = certify_algebra<Fp>(4, 4, F, 7);
  CHECK(c.verdict == Verdict::Reducible);
  CHECK(c.quantity == 4);
  CHECK(c.threshold == 3);
  CHECK(c.witness.at("construction") == "block-basis");
  CHECK(c.witness.at("search_draws") == 0);

  // the pinned witness is the first n block units: e31, e32, e41, e42
  const MatTuple<Fp> t = tuple_from_json<Fp>(c.witness.at("tuple"), F);
  const auto u = parabolic_nilradical<Fp>(4, F);
  REQUIRE(t.r() == 4);
  for (Index i = 0; i < 4; ++i)
    CHECK(mats_equal(t[i], u.basis[static_cast<std::size_t>(i)]));

  const VerifyResult v = verify_certificate(c);
  CHECK(v.ok);
}

TEST_CASE("algebra certificate: n=5, r=5 uses five block units") {
  const Certificate c = certify_algebra<Fp>(5, 5, default_field(), 0);
  CHECK(c.verdict == Verdict::Reducible);
  CHECK(c.quantity == 5);
  CHECK(c.threshold == 4);
  CHECK(verify_certificate(c).ok);
}

TEST_CASE("algebra certificate: padding repeats the last unit when r > n") {
  const Certificate c = certify_algebra<Fp>(4, 6, default_field(), 0);
  CHECK(c.verdict == Verdict::Reducible);
  CHECK(c.quantity == 4);
  const MatTuple<Fp> t = tuple_from_json<Fp>(c.witness.at("tuple"), default_field());
  CHECK(t.r() == 6);
  CHECK(mats_equal(t[4], t[3]));
  CHECK(mats_equal(t[5], t[3]));
  CHECK(verify_certificate(c).ok);
}

TEST_CASE("algebra certificate over the rationals") {
  FieldContext<Rat> F;
  const Certificate c = certify_algebra<Rat>(4, 4, F, 0);
  CHECK(c.verdict == Verdict::Reducible);
  CHECK(c.quantity == 4);
  CHECK(c.field.is_rational());
  CHECK(verify_certificate(c).ok);
}

TEST_CASE("algebra search reports NOT_FOUND honestly") {
  const auto F = default_field();
  const Certificate c = certify_algebra<Fp>(3, 5, F, 1, 64);
  CHECK(c.verdict == Verdict::NotFound);
  CHECK(c.threshold == 2);
  CHECK(c.quantity <= 2);
  CHECK(c.witness.at("construction") == "span-search");
  CHECK(verify_certificate(c).ok);
}

TEST_CASE("algebra search never certifies n <= 3") {
  const auto F = default_field();
  for (Index n = 2; n <= 3; ++n)
    for (Index r = 2; r <= 5; ++r) {
      const Certificate c = certify_algebra<Fp>(n, r, F, 11, 32);
      CHECK(c.verdict == Verdict::NotFound);
      CHECK(c.quantity <= n - 1);
    }
}

TEST_CASE("component certificate at the crossover points") {
  const auto F = default_field();

  const Certificate a = certify_component_dim<Fp>(4, 6, F, 0);
  CHECK(a.verdict == Verdict::Reducible);
  CHECK(a.quantity == 28);
  CHECK(a.threshold == 27);
  CHECK(a.witness.at("generic") == true);
  CHECK(verify_certificate(a).ok);

  const Certificate b = certify_component_dim<Fp>(8, 4, F, 0);
  CHECK(b.verdict == Verdict::Reducible);
  CHECK(b.quantity == 80);
  CHECK(b.threshold == 77);
  CHECK(verify_certificate(b).ok);

  const Certificate c = certify_component_dim<Fp>(4, 4, F, 0);
  CHECK(c.verdict == Verdict::NotFound);
  CHECK(c.quantity == 20);
  CHECK(c.threshold == 21);
  CHECK(verify_certificate(c).ok);
}

TEST_CASE("component quantity never exceeds (r+1) floor(n^2/4)") {
  const auto F = default_field();
  const std::pair<Index, Index> cases[] = {{3, 2}, {4, 4}, {5, 3}, {6, 4}};
  for (const auto& [n, r] : cases) {
    const Certificate c = certify_component_dim<Fp>(n, r, F, 2);
    CHECK(c.quantity <= (r + 1) * (n * n / 4));
  }
}

TEST_CASE("gamma certificate thresholds across the transition") {
  const auto F = default_field();
  const struct {
    Index s;
    Index quantity;
    Index threshold;
    bool reducible;
  } cases[] = {
      {1, 17, 18, false},
      {2, 68, 70, false},
      {3, 153, 154, false},
      {4, 272, 270, true},
  };
  for (const auto& k : cases) {
    const Certificate c = certify_gamma<Fp>(k.s, F, 3);
    CHECK(c.n == 4 * k.s);
    CHECK(c.r == 3);
    CHECK(c.quantity == k.quantity);
    CHECK(c.threshold == k.threshold);
    CHECK((c.verdict == Verdict::Reducible) == k.reducible);
    CHECK(c.witness.at("partner_generic") == true);
    CHECK(verify_certificate(c).ok);
  }
}

TEST_CASE("dispatcher picks the expected method per regime") {
  const auto F = default_field();
  CertifyOptions opt;
  opt.seed = 5;
  opt.algebra_draws = 16;

  const Certificate a = certify<Fp>(4, 4, F, opt);
  CHECK(a.verdict == Verdict::Reducible);
  CHECK(a.kind == CertKind::AlgebraDim);

  const Certificate b = certify<Fp>(4, 6, F, opt);
  CHECK(b.verdict == Verdict::Reducible);
  CHECK(b.kind == CertKind::ComponentDim);

  const Certificate c = certify<Fp>(16, 3, F, opt);
  CHECK(c.verdict == Verdict::Reducible);
  CHECK(c.kind == CertKind::GammaDim);
  CHECK(c.quantity == 272);
  CHECK(verify_certificate(c).ok);
}

TEST_CASE("dispatcher aggregates NOT_FOUND attempts") {
  const auto F = default_field();
  CertifyOptions opt;
  opt.seed = 4;
  opt.algebra_draws = 16;

  const Certificate c = certify<Fp>(10, 3, F, opt);
  CHECK(c.verdict == Verdict::NotFound);
  REQUIRE(c.witness.contains("attempts"));
  CHECK(c.witness.at("attempts").size() == 2);  // 10 is not a multiple of 4, no gamma attempt
  CHECK(verify_certificate(c).ok);

  const Certificate d = certify<Fp>(3, 3, F, opt);
  CHECK(d.verdict == Verdict::NotFound);
  CHECK(verify_certificate(d).ok);

  const Certificate e = certify<Fp>(2, 5, F, opt);
  CHECK(e.verdict == Verdict::NotFound);
  CHECK(verify_certificate(e).ok);

  const Certificate g = certify<Fp>(8, 3, F, opt);  // gamma attempt present at s=2
  CHECK(g.verdict == Verdict::NotFound);
  CHECK(g.witness.at("attempts").size() == 3);
  CHECK(verify_certificate(g).ok);
}

TEST_CASE("verdicts are monotone in the search budget") {
  const auto F = default_field();
  const std::pair<Index, Index> cases[] = {{4, 4}, {5, 4}, {3, 3}};
  for (const auto& [n, r] : cases) {
    CertifyOptions small;
    small.seed = 9;
    small.algebra_draws = 4;
    CertifyOptions large = small;
    large.algebra_draws = 64;
    const Certificate cs = certify<Fp>(n, r, F, small);
    const Certificate cl = certify<Fp>(n, r, F, large);
    if (cs.verdict == Verdict::Reducible) {
      CHECK(cl.verdict == Verdict::Reducible);
      CHECK(cl.quantity == cs.quantity);
    }
  }
}

TEST_CASE("certificates round-trip through JSON") {
  const auto F = default_field();
  const Certificate c = certify_component_dim<Fp>(4, 6, F, 0);
  const Certificate back = certificate_from_json(certificate_to_json(c));
  CHECK(back.kind == c.kind);
  CHECK(back.n == c.n);
  CHECK(back.r == c.r);
  CHECK(back.field == c.field);
  CHECK(back.quantity == c.quantity);
  CHECK(back.threshold == c.threshold);
  CHECK(back.verdict == c.verdict);
  CHECK(back.paper_basis == c.paper_basis);
  CHECK(back.seed == c.seed);
  CHECK(back.budget == c.budget);
  CHECK(back.witness == c.witness);
  CHECK(verify_certificate(back).ok);
}

TEST_CASE("malformed certificate JSON is rejected at parse time") {
  const Json j = certificate_to_json(certify_algebra<Fp>(4, 4, default_field(), 0));
  CHECK_NOTHROW(certificate_from_json(j));
  for (const char* key : {"kind", "witness", "quantity", "verdict", "seed"}) {
    Json bad = j;
    bad.erase(key);
    CHECK_THROWS_AS(certificate_from_json(bad), std::invalid_argument);
  }
  Json bad = j;
  bad["verdict"] = "MAYBE";
  CHECK_THROWS_AS(certificate_from_json(bad), std::invalid_argument);
  bad = j;
  bad["format_version"] = 999;
  CHECK_THROWS_AS(certificate_from_json(bad), std::invalid_argument);
}

TEST_CASE("tampered certificates fail verification") {
  const auto F = default_field();
  const Json j = certificate_to_json(certify_algebra<Fp>(4, 4, F, 0));

  {
    Json bad = j;
    bad["quantity"] = 5;
    const VerifyResult v = verify_certificate(certificate_from_json(bad));
    CHECK_FALSE(v.ok);
  }
  {
    Json bad = j;
    bad["threshold"] = 2;
    CHECK_FALSE(verify_certificate(certificate_from_json(bad)).ok);
  }
  {
    Json bad = j;
    bad["verdict"] = "NOT_FOUND";
    CHECK_FALSE(verify_certificate(certificate_from_json(bad)).ok);
  }
  {
    Json bad = j;
    bad["witness"]["tuple"]["mats"][0][0][1] = 1;  // the altered tuple no longer commutes
    CHECK_FALSE(verify_certificate(certificate_from_json(bad)).ok);
  }

  const Json g = certificate_to_json(certify_gamma<Fp>(4, F, 3));
  {
    Json bad = g;
    bad["witness"]["partner_dim"] = 49;
    CHECK_FALSE(verify_certificate(certificate_from_json(bad)).ok);
  }
  {
    Json bad = g;
    bad["quantity"] = 273;
    CHECK_FALSE(verify_certificate(certificate_from_json(bad)).ok);
  }

  const Json comp = certificate_to_json(certify_component_dim<Fp>(4, 6, F, 0));
  {
    Json bad = comp;
    // moving the base point outside the lower-left block must be caught even
    // if the rank happens to stay the same
    bad["witness"]["base_tuple"]["mats"][0][0][3] = 1;
    CHECK_FALSE(verify_certificate(certificate_from_json(bad)).ok);
  }
}

TEST_CASE("bounds ledger rows carry the pinned intervals") {
  const auto rows = bounds_ledger();
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].variety == "nilpotent");
  CHECK(rows[0].r_range == "r>=4");
  CHECK(rows[0].lo == 4);
  CHECK(rows[0].hi == 4);
  CHECK(rows[1].r_range == "r=3");
  CHECK(rows[1].lo == 4);
  CHECK(rows[1].hi == 16);
  CHECK(rows[2].variety == "general-linear");
  CHECK(rows[2].lo == 4);
  CHECK(rows[2].hi == 4);
  CHECK(rows[3].lo == 11);
  CHECK(rows[3].hi == 29);

  const Json j = bounds_ledger_to_json();
  CHECK(j.at("rows").size() == 4);
  CHECK(j.at("rows")[1].at("interval") == Json::array({4, 16}));
}
