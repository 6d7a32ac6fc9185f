#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <ostream>
#include <stdexcept>

#include "commvar/field.hpp"

namespace commvar {

// Prime-field scalar with a runtime modulus.
//
// A value is either bound to a modulus p, or an integer literal (mod_ == 0).
// Literals exist so that Scalar(0) / Scalar(1), as produced inside Eigen
// kernels and written in generic code, are constructible without a modulus;
// they adopt the modulus of the first bound operand they meet.  Mixing two
// different moduli in one expression is a logic error and throws.
class Fp {
 public:
  Fp() = default;
  Fp(int v) : val_(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))) {}
  Fp(long v) : val_(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))) {}
  Fp(long long v) : val_(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))) {}

  static Fp make(std::uint64_t residue, std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("Fp::make needs p >= 2");
    Fp x;
    x.val_ = residue % p;
    x.mod_ = p;
    return x;
  }

  static Fp from_int(std::int64_t v, std::uint64_t p) {
    std::int64_t t = v % static_cast<std::int64_t>(p);
    if (t < 0) t += static_cast<std::int64_t>(p);
    return make(static_cast<std::uint64_t>(t), p);
  }

  bool bound() const { return mod_ != 0; }
  std::uint64_t modulus() const { return mod_; }

  // Residue in [0, p); valid only on bound values.
  std::uint64_t residue() const {
    if (!bound()) throw std::logic_error("residue() on unbound Fp literal");
    return val_;
  }

  std::int64_t literal() const { return static_cast<std::int64_t>(val_); }

  bool is_zero() const { return bound() ? val_ == 0 : literal() == 0; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint64_t m = join(a, b);
    if (!m) return lit(a.literal() + b.literal());
    std::uint64_t s = a.as(m) + b.as(m);
    if (s >= m) s -= m;
    return raw(s, m);
  }

  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint64_t m = join(a, b);
    if (!m) return lit(a.literal() - b.literal());
    std::uint64_t x = a.as(m), y = b.as(m);
    return raw(x >= y ? x - y : x + (m - y), m);
  }

  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint64_t m = join(a, b);
    if (!m) return lit(a.literal() * b.literal());
    return raw(mul_mod(a.as(m), b.as(m), m), m);
  }

  friend Fp operator/(const Fp& a, const Fp& b) {
    std::uint64_t m = join(a, b);
    if (!m) {
      if (b.literal() == 1) return a;
      if (b.literal() == -1) return -a;
      throw std::logic_error("division of unbound Fp literals");
    }
    std::uint64_t d = b.as(m);
    if (d == 0) throw std::domain_error("division by zero in F_p");
    return raw(mul_mod(a.as(m), pow_mod(d, m - 2, m), m), m);
  }

  Fp operator-() const {
    if (!bound()) return lit(-literal());
    return raw(val_ == 0 ? 0 : mod_ - val_, mod_);
  }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::uint64_t m = join(a, b);
    if (!m) return a.literal() == b.literal();
    return a.as(m) == b.as(m);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) {
    if (x.bound()) return os << x.val_ << " (mod " << x.mod_ << ")";
    return os << x.literal() << " (lit)";
  }

 private:
  static Fp raw(std::uint64_t v, std::uint64_t m) {
    Fp x;
    x.val_ = v;
    x.mod_ = m;
    return x;
  }
  static Fp lit(std::int64_t v) {
    Fp x;
    x.val_ = static_cast<std::uint64_t>(v);
    return x;
  }
  static std::uint64_t join(const Fp& a, const Fp& b) {
    if (a.mod_ && b.mod_ && a.mod_ != b.mod_)
      throw std::logic_error("Fp modulus mismatch");
    return a.mod_ ? a.mod_ : b.mod_;
  }
  std::uint64_t as(std::uint64_t m) const {
    if (bound()) return val_;
    std::int64_t t = literal() % static_cast<std::int64_t>(m);
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
  }

  std::uint64_t val_ = 0;  // residue when bound, two's-complement literal otherwise
  std::uint64_t mod_ = 0;  // 0 marks a literal
};

inline Fp inverse(const Fp& x) {
  return Fp(1) / x;
}

}  // namespace commvar

namespace Eigen {

template <>
struct NumTraits<commvar::Fp> : GenericNumTraits<commvar::Fp> {
  typedef commvar::Fp Real;
  typedef commvar::Fp NonInteger;
  typedef commvar::Fp Nested;

  static inline Real epsilon() { return commvar::Fp(0); }
  static inline Real dummy_precision() { return commvar::Fp(0); }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 0,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 6
  };
};

}  // namespace Eigen
