#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "commvar/matrix.hpp"
#include "commvar/nilcore.hpp"

namespace commvar {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// Nonnegative integer regardless of whether the JSON value was stored
// signed or unsigned.
inline bool json_is_uint(const Json& j) {
  return j.is_number_unsigned() ||
         (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

// Field tag: {"kind":"Q"} or {"kind":"Fp","p":<prime>}.
inline Json field_to_json(const FieldSpec& f) {
  if (f.is_rational()) return Json{{"kind", "Q"}};
  return Json{{"kind", "Fp"}, {"p", f.p}};
}

inline FieldSpec field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw std::invalid_argument("field: expected object with string \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "Q") {
    if (j.contains("p")) throw std::invalid_argument("field: \"Q\" takes no modulus");
    return FieldSpec::rationals();
  }
  if (kind == "Fp") {
    if (!j.contains("p") || !json_is_uint(j.at("p")))
      throw std::invalid_argument("field: \"Fp\" needs a positive integer \"p\"");
    return FieldSpec::prime_field(j.at("p").get<std::uint64_t>());
  }
  throw std::invalid_argument("field: unknown kind " + kind);
}

namespace detail {

inline Json entry_to_json(const Rat& x) { return Json(rat_to_string(x)); }
inline Json entry_to_json(const Fp& x) { return Json(x.residue()); }

inline Rat entry_from_json_rat(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("rational entry must be a string \"a/b\"");
  return rat_from_string(j.get<std::string>());
}

inline Fp entry_from_json_fp(const Json& j, std::uint64_t p) {
  if (!j.is_number_integer())
    throw std::invalid_argument("prime-field entry must be an integer");
  if (!json_is_uint(j)) throw std::invalid_argument("prime-field entry out of range [0, p)");
  const std::uint64_t v = j.get<std::uint64_t>();
  if (v >= p) throw std::invalid_argument("prime-field entry out of range [0, p)");
  return Fp::make(v, p);
}

template <class S>
S entry_from_json(const Json& j, const FieldContext<S>& F) {
  if constexpr (std::is_same_v<S, Fp>) return entry_from_json_fp(j, F.p);
  else return entry_from_json_rat(j);
}

}  // namespace detail

// Bare entries array [[...row...], ...]; the piece shared by matrix and
// tuple serialization.
template <class S>
Json entries_to_json(const Mat<S>& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(detail::entry_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
Mat<S> entries_from_json(const Json& j, Index rows, Index cols, const FieldContext<S>& F) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    throw std::invalid_argument("entries: wrong row count");
  Mat<S> m = zeros<S>(rows, cols, F);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw std::invalid_argument("entries: wrong column count");
    for (Index k = 0; k < cols; ++k)
      m(i, k) = detail::entry_from_json<S>(row.at(static_cast<std::size_t>(k)), F);
  }
  return m;
}

template <class S>
Json mat_to_json(const Mat<S>& m) {
  return Json{{"field", field_to_json(field_of(m).spec())},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", entries_to_json(m)}};
}

// The caller dispatches on field_from_json(j.at("field")) and instantiates
// the matching scalar; the context must agree with the embedded tag.
template <class S>
Mat<S> mat_from_json(const Json& j, const FieldContext<S>& F) {
  if (!j.is_object()) throw std::invalid_argument("matrix: expected object");
  for (const char* key : {"field", "rows", "cols", "entries"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("matrix: missing ") + key);
  if (!(field_from_json(j.at("field")) == F.spec()))
    throw std::invalid_argument("matrix: field tag does not match requested field");
  if (!json_is_uint(j.at("rows")) || !json_is_uint(j.at("cols")))
    throw std::invalid_argument("matrix: rows/cols must be nonnegative integers");
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  return entries_from_json<S>(j.at("entries"), rows, cols, F);
}

template <class S>
Json tuple_to_json(const MatTuple<S>& t) {
  Json mats = Json::array();
  for (const auto& m : t.mats) mats.push_back(entries_to_json(m));
  return Json{{"field", field_to_json(field_of(t[0]).spec())},
              {"n", t.n()},
              {"r", t.r()},
              {"mats", std::move(mats)}};
}

template <class S>
MatTuple<S> tuple_from_json(const Json& j, const FieldContext<S>& F) {
  if (!j.is_object()) throw std::invalid_argument("tuple: expected object");
  for (const char* key : {"field", "n", "r", "mats"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("tuple: missing ") + key);
  if (!(field_from_json(j.at("field")) == F.spec()))
    throw std::invalid_argument("tuple: field tag does not match requested field");
  if (!json_is_uint(j.at("n")) || !json_is_uint(j.at("r")))
    throw std::invalid_argument("tuple: n/r must be nonnegative integers");
  const Index n = j.at("n").get<Index>();
  const Index r = j.at("r").get<Index>();
  const Json& mats = j.at("mats");
  if (!mats.is_array() || static_cast<Index>(mats.size()) != r)
    throw std::invalid_argument("tuple: mats length must equal r");
  if (r < 1) throw std::invalid_argument("tuple: r < 1");
  std::vector<Mat<S>> out;
  out.reserve(static_cast<std::size_t>(r));
  for (Index i = 0; i < r; ++i)
    out.push_back(entries_from_json<S>(mats.at(static_cast<std::size_t>(i)), n, n, F));
  return MatTuple<S>(std::move(out));
}

// Serialization used for every JSON artifact the tools emit: 2-space
// indent, alphabetical key order, trailing newline.  Byte-stable for equal
// inputs, which the output-determinism contract depends on.
inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace commvar
