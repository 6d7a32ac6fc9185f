#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace commvar {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) acc = mul_mod(acc, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

// Deterministic Miller-Rabin; the witness set below is exact for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

enum class FieldKind { Rationals, PrimeField };

inline constexpr std::uint64_t kDefaultPrime = 2147483647;

// Scalar domain tag: the rationals, or F_p for a prime machine-word p.
struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t p = 0;

  static FieldSpec rationals() { return {FieldKind::Rationals, 0}; }

  static FieldSpec prime_field(std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("modulus is not prime: " + std::to_string(p));
    if (p >= (1ull << 62)) throw std::invalid_argument("modulus too large");
    return {FieldKind::PrimeField, p};
  }

  bool is_rational() const { return kind == FieldKind::Rationals; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind == b.kind && a.p == b.p;
  }

  std::string to_string() const {
    return is_rational() ? "q" : "fp:" + std::to_string(p);
  }

  // Accepts "q" or "fp:<prime>".
  static FieldSpec parse(const std::string& s) {
    if (s == "q" || s == "Q") return rationals();
    if (s.rfind("fp:", 0) == 0) {
      const std::string digits = s.substr(3);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad field spec: " + s);
      return prime_field(std::stoull(digits));
    }
    throw std::invalid_argument("bad field spec: " + s);
  }
};

}  // namespace commvar
