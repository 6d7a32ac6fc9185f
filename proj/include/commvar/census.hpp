#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "commvar/nilcore.hpp"

namespace commvar {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cap on the number of field points any single enumeration pass may visit.
struct Budget {
  std::uint64_t max_points = 1ull << 20;
};

// q^e if it stays within the budget, BudgetExceeded otherwise.
inline std::uint64_t checked_pow(std::uint64_t q, std::uint64_t e, const Budget& budget,
                                 const char* what) {
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    acc *= q;
    if (acc > budget.max_points)
      throw BudgetExceeded(std::string(what) + ": " + std::to_string(q) + "^" +
                           std::to_string(e) + " exceeds budget " +
                           std::to_string(budget.max_points));
  }
  return static_cast<std::uint64_t>(acc);
}

namespace detail {

// Visits every F_q combination of the basis exactly once, maintaining the
// running sum incrementally: a digit bump adds the basis element once, and a
// carry reset also adds it once since -(q-1) = 1 mod q.
template <class Visitor>
void for_each_in_span(const std::vector<Mat<Fp>>& basis, std::uint64_t q,
                      Visitor&& visit) {
  if (basis.empty()) return;
  const auto F = field_of(basis[0]);
  Mat<Fp> y = zeros<Fp>(basis[0].rows(), basis[0].cols(), F);
  std::vector<std::uint32_t> digits(basis.size(), 0);
  visit(static_cast<const Mat<Fp>&>(y));
  for (;;) {
    std::size_t k = 0;
    while (k < digits.size() && digits[k] == q - 1) {
      digits[k] = 0;
      y += basis[k];
      ++k;
    }
    if (k == digits.size()) break;
    ++digits[k];
    y += basis[k];
    visit(static_cast<const Mat<Fp>&>(y));
  }
}

inline bool trace_is_zero(const Mat<Fp>& m) {
  Fp t = make_zero_like(m);
  for (Index i = 0; i < m.rows(); ++i) t += m(i, i);
  return t.is_zero();
}

inline int census_threads() {
  const char* env = std::getenv("COMMVAR_THREADS");
  if (!env) return 1;
  int t = std::atoi(env);
  if (t < 1) t = 1;
  if (t > 64) t = 64;
  return t;
}

}  // namespace detail

// All nilpotent n x n matrices over F_q, in odometer order of the unit
// matrix coordinates.  Their number is q^(n^2 - n).
inline std::vector<Mat<Fp>> enumerate_nilpotent(Index n, std::uint64_t q,
                                                const Budget& budget = {}) {
  if (!is_prime_u64(q)) throw std::invalid_argument("enumerate_nilpotent: q must be prime");
  if (n < 1) throw std::invalid_argument("enumerate_nilpotent: n < 1");
  checked_pow(q, static_cast<std::uint64_t>(n * n), budget, "enumerate_nilpotent");
  FieldContext<Fp> F(q);
  std::vector<Mat<Fp>> basis;
  basis.reserve(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      Mat<Fp> e = zeros<Fp>(n, n, F);
      e(i, j) = F.one();
      basis.push_back(std::move(e));
    }
  }
  std::vector<Mat<Fp>> out;
  detail::for_each_in_span(basis, q, [&](const Mat<Fp>& m) {
    if (detail::trace_is_zero(m) && is_nilpotent(m)) out.push_back(m);
  });
  return out;
}

struct CountResult {
  Index n = 0, r = 0;
  std::uint64_t q = 0;
  std::uint64_t count = 0;
  std::string method;
  std::int64_t elapsed_ms = 0;
};

namespace detail {

// Number of ways to extend the commuting nilpotent prefix by `depth` more
// entries: enumerate the nilpotent part of the joint centralizer span.
inline std::uint64_t count_extensions(const std::vector<Mat<Fp>>& prefix, Index depth,
                                      std::uint64_t q, const Budget& budget) {
  const auto z = simultaneous_centralizer(MatTuple<Fp>(prefix));
  checked_pow(q, static_cast<std::uint64_t>(z.dim), budget, "count_commuting_nilpotent");
  std::uint64_t total = 0;
  for_each_in_span(z.basis, q, [&](const Mat<Fp>& y) {
    if (!trace_is_zero(y) || !is_nilpotent(y)) return;
    if (depth == 1) {
      ++total;
    } else {
      auto next = prefix;
      next.push_back(y);
      total += count_extensions(next, depth - 1, q, budget);
    }
  });
  return total;
}

}  // namespace detail

// |C_r(N_n)(F_q)| by summing, over every nilpotent first entry, the number
// of commuting nilpotent extensions found inside successive centralizers.
inline CountResult count_commuting_nilpotent(Index n, Index r, std::uint64_t q,
                                             const Budget& budget = {}) {
  if (r < 1) throw std::invalid_argument("count_commuting_nilpotent: r < 1");
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Mat<Fp>> nil = enumerate_nilpotent(n, q, budget);

  std::uint64_t count = 0;
  if (r == 1) {
    count = nil.size();
  } else {
    const int threads = detail::census_threads();
    if (threads <= 1) {
      for (const auto& x : nil) count += detail::count_extensions({x}, r - 1, q, budget);
    } else {
      std::vector<std::uint64_t> partial(static_cast<std::size_t>(threads), 0);
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
          std::uint64_t local = 0;
          for (std::size_t i = static_cast<std::size_t>(t); i < nil.size();
               i += static_cast<std::size_t>(threads))
            local += detail::count_extensions({nil[i]}, r - 1, q, budget);
          partial[static_cast<std::size_t>(t)] = local;
        });
      }
      for (auto& th : pool) th.join();
      for (std::uint64_t p : partial) count += p;
    }
  }

  const auto t1 = std::chrono::steady_clock::now();
  CountResult res;
  res.n = n;
  res.r = r;
  res.q = q;
  res.count = count;
  res.method = "centralizer-pruned";
  res.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return res;
}

// Same count by brute force over all r-fold products of the nilpotent list,
// checking pairwise commutation; the cross-check oracle for the pruned path.
inline CountResult count_commuting_nilpotent_full(Index n, Index r, std::uint64_t q,
                                                  const Budget& budget = {}) {
  if (r < 1) throw std::invalid_argument("count_commuting_nilpotent_full: r < 1");
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Mat<Fp>> nil = enumerate_nilpotent(n, q, budget);
  unsigned __int128 tuples = 1;
  for (Index i = 0; i < r; ++i) {
    tuples *= nil.size();
    if (tuples > budget.max_points)
      throw BudgetExceeded("count_commuting_nilpotent_full: tuple space exceeds budget");
  }

  std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
  std::uint64_t count = 0;
  for (;;) {
    bool ok = true;
    for (Index i = 0; ok && i < r; ++i)
      for (Index j = i + 1; ok && j < r; ++j)
        if (!is_zero_mat(Mat<Fp>(commutator(nil[idx[static_cast<std::size_t>(i)]],
                                            nil[idx[static_cast<std::size_t>(j)]]))))
          ok = false;
    if (ok) ++count;
    Index k = 0;
    while (k < r && idx[static_cast<std::size_t>(k)] + 1 == nil.size()) {
      idx[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == r) break;
    ++idx[static_cast<std::size_t>(k)];
  }

  const auto t1 = std::chrono::steady_clock::now();
  CountResult res;
  res.n = n;
  res.r = r;
  res.q = q;
  res.count = count;
  res.method = "full-enumeration";
  res.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return res;
}

struct GrowthRow {
  std::uint64_t q = 0;
  std::uint64_t count = 0;
  double log_q_count = 0.0;
};

// Point counts over several primes; log_q count approaches the dimension of
// the counted variety as q grows.
inline std::vector<GrowthRow> growth_probe(Index n, Index r, const std::vector<std::uint64_t>& qs,
                                           const Budget& budget = {}) {
  std::vector<GrowthRow> rows;
  for (std::uint64_t q : qs) {
    GrowthRow row;
    row.q = q;
    row.count = count_commuting_nilpotent(n, r, q, budget).count;
    row.log_q_count = row.count == 0 ? 0.0 : std::log(static_cast<double>(row.count)) /
                                                 std::log(static_cast<double>(q));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace commvar
