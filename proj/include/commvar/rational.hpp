#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace commvar {

using Rat = mpq_class;

// Canonical wire form: "num/den" with den > 0 and gcd(num, den) == 1,
// zero included ("0/1").
inline std::string rat_to_string(const Rat& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  mpq_class x;
  if (x.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (cmp(x.get_den(), 0) <= 0) throw std::invalid_argument("bad rational: " + s);
  x.canonicalize();
  const std::string back = rat_to_string(x);
  const std::string want = s.find('/') != std::string::npos ? s : s + "/1";
  if (back != want) throw std::invalid_argument("rational not in canonical form: " + s);
  return x;
}

}  // namespace commvar

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen
