#include <doctest.h>

#include <commvar/io.hpp>
#include <commvar/witnesses.hpp>

using namespace commvar;

TEST_CASE("field specs round-trip through JSON") {
  const FieldSpec q = FieldSpec::rationals();
  const FieldSpec f7 = FieldSpec::prime_field(7);
  CHECK(field_from_json(field_to_json(q)) == q);
  CHECK(field_from_json(field_to_json(f7)) == f7);
  CHECK(field_to_json(q) == Json{{"kind", "Q"}});
  CHECK(field_to_json(f7) == Json{{"kind", "Fp"}, {"p", 7}});
}

TEST_CASE("malformed field tags are rejected") {
  CHECK_THROWS_AS(field_from_json(Json::array()), std::invalid_argument);
  CHECK_THROWS_AS(field_from_json(Json{{"kind", "R"}}), std::invalid_argument);
  CHECK_THROWS_AS(field_from_json(Json{{"p", 7}}), std::invalid_argument);
  CHECK_THROWS_AS(field_from_json(Json{{"kind", "Q"}, {"p", 7}}), std::invalid_argument);
  CHECK_THROWS_AS(field_from_json(Json{{"kind", "Fp"}}), std::invalid_argument);
  CHECK_THROWS_AS(field_from_json(Json{{"kind", "Fp"}, {"p", 6}}), std::invalid_argument);
  CHECK_THROWS_AS(field_from_json(Json{{"kind", "Fp"}, {"p", -7}}), std::invalid_argument);
}

TEST_CASE("rational matrices round-trip with canonical entry strings") {
  FieldContext<Rat> F;
  Mat<Rat> m = zeros<Rat>(2, 3, F);
  m(0, 0) = Rat(5, 3);
  m(0, 2) = Rat(-1, 2);
  m(1, 1) = Rat(4);

  const Json j = mat_to_json(m);
  CHECK(j.at("rows") == 2);
  CHECK(j.at("cols") == 3);
  CHECK(j.at("entries")[0][0] == "5/3");
  CHECK(j.at("entries")[0][1] == "0/1");
  CHECK(j.at("entries")[0][2] == "-1/2");
  CHECK(j.at("entries")[1][1] == "4/1");

  const Mat<Rat> back = mat_from_json<Rat>(j, F);
  CHECK(mats_equal(m, back));
}

TEST_CASE("prime-field matrices round-trip with residue entries") {
  FieldContext<Fp> F(11);
  SeededRng rng(3);
  const Mat<Fp> m = random_matrix<Fp>(3, 3, F, rng);
  const Json j = mat_to_json(m);
  CHECK(j.at("field") == Json{{"kind", "Fp"}, {"p", 11}});
  for (const auto& row : j.at("entries"))
    for (const auto& e : row) {
      CHECK(e.is_number_unsigned());
      CHECK(e.get<std::uint64_t>() < 11);
    }
  CHECK(mats_equal(m, mat_from_json<Fp>(j, F)));
}

TEST_CASE("non-canonical rational entries are rejected") {
  FieldContext<Rat> F;
  auto mat_with_entry = [](const Json& e) {
    return Json{{"field", {{"kind", "Q"}}}, {"rows", 1}, {"cols", 1},
                {"entries", Json::array({Json::array({e})})}};
  };
  CHECK_NOTHROW(mat_from_json<Rat>(mat_with_entry(Json("3/4")), F));
  CHECK_THROWS_AS(mat_from_json<Rat>(mat_with_entry(Json("2/4")), F), std::invalid_argument);
  CHECK_THROWS_AS(mat_from_json<Rat>(mat_with_entry(Json("1/-2")), F), std::invalid_argument);
  CHECK_THROWS_AS(mat_from_json<Rat>(mat_with_entry(Json("1/0")), F), std::invalid_argument);
  CHECK_THROWS_AS(mat_from_json<Rat>(mat_with_entry(Json("x")), F), std::invalid_argument);
  CHECK_THROWS_AS(mat_from_json<Rat>(mat_with_entry(Json(5)), F), std::invalid_argument);
}

TEST_CASE("out-of-range prime-field entries are rejected") {
  FieldContext<Fp> F(5);
  auto mat_with_entry = [](const Json& e) {
    return Json{{"field", {{"kind", "Fp"}, {"p", 5}}}, {"rows", 1}, {"cols", 1},
                {"entries", Json::array({Json::array({e})})}};
  };
  CHECK_NOTHROW(mat_from_json<Fp>(mat_with_entry(Json(4)), F));
  CHECK_THROWS_AS(mat_from_json<Fp>(mat_with_entry(Json(5)), F), std::invalid_argument);
  CHECK_THROWS_AS(mat_from_json<Fp>(mat_with_entry(Json(-1)), F), std::invalid_argument);
  CHECK_THROWS_AS(mat_from_json<Fp>(mat_with_entry(Json(1.5)), F), std::invalid_argument);
  CHECK_THROWS_AS(mat_from_json<Fp>(mat_with_entry(Json("3")), F), std::invalid_argument);
}

TEST_CASE("matrix parsing checks shape and field tag") {
  FieldContext<Rat> F;
  FieldContext<Fp> F7(7);
  const Json j = mat_to_json(identity<Rat>(2, F));
  CHECK_THROWS_AS(mat_from_json<Fp>(j, F7), std::invalid_argument);

  Json bad = j;
  bad["rows"] = 3;
  CHECK_THROWS_AS(mat_from_json<Rat>(bad, F), std::invalid_argument);
  bad = j;
  bad["entries"][0] = Json::array({"1/1"});
  CHECK_THROWS_AS(mat_from_json<Rat>(bad, F), std::invalid_argument);
  bad = j;
  bad.erase("entries");
  CHECK_THROWS_AS(mat_from_json<Rat>(bad, F), std::invalid_argument);
}

TEST_CASE("tuples round-trip over both fields") {
  FieldContext<Rat> FQ;
  const MatTuple<Rat> t = sample_regular_tuple<Rat>(3, 2, FQ, 1);
  const Json j = tuple_to_json(t);
  CHECK(j.at("n") == 3);
  CHECK(j.at("r") == 2);
  const MatTuple<Rat> back = tuple_from_json<Rat>(j, FQ);
  REQUIRE(back.r() == 2);
  CHECK(mats_equal(t[0], back[0]));
  CHECK(mats_equal(t[1], back[1]));

  FieldContext<Fp> Fp11(11);
  const MatTuple<Fp> tf = sample_regular_tuple<Fp>(4, 3, Fp11, 9);
  const MatTuple<Fp> backf = tuple_from_json<Fp>(tuple_to_json(tf), Fp11);
  for (Index i = 0; i < 3; ++i) CHECK(mats_equal(tf[i], backf[i]));
}

TEST_CASE("tuple parsing validates counts against n and r") {
  FieldContext<Rat> F;
  const Json j = tuple_to_json(MatTuple<Rat>({identity<Rat>(2, F), zeros<Rat>(2, 2, F)}));
  Json bad = j;
  bad["r"] = 3;
  CHECK_THROWS_AS(tuple_from_json<Rat>(bad, F), std::invalid_argument);
  bad = j;
  bad["n"] = 3;
  CHECK_THROWS_AS(tuple_from_json<Rat>(bad, F), std::invalid_argument);
  bad = j;
  bad["mats"][0][0][0] = "2/4";
  CHECK_THROWS_AS(tuple_from_json<Rat>(bad, F), std::invalid_argument);
}

TEST_CASE("JSON dumps are byte-stable with sorted keys") {
  FieldContext<Rat> F;
  const Json j = mat_to_json(identity<Rat>(2, F));
  const std::string a = dump_json(j);
  const std::string b = dump_json(mat_to_json(identity<Rat>(2, F)));
  CHECK(a == b);
  CHECK(a.back() == '\n');
  CHECK(a.find("\"cols\"") < a.find("\"entries\""));
  CHECK(a.find("\"entries\"") < a.find("\"field\""));
  CHECK(a.find("\"field\"") < a.find("\"rows\""));
}
