#pragma once

#include <cstdint>
#include <vector>

namespace smallf {

/// Default cap on 2n for primes_in_window; overridable through the
/// SMALLF_SIEVE_BUDGET environment variable.
inline constexpr std::int64_t kDefaultSieveBudget = 100'000'000;

std::int64_t sieve_budget();

/// Ascending primes p with n <= p < 2n, by a segmented sieve over the window.
std::vector<std::int64_t> primes_in_window(std::int64_t n);

/// Plain sieve of Eratosthenes with prefix counts, for bulk window queries.
class PrimeTable {
 public:
  explicit PrimeTable(std::int64_t limit);

  std::int64_t limit() const { return limit_; }
  bool is_prime(std::int64_t v) const;
  /// Number of primes in [lo, hi).
  std::int64_t count(std::int64_t lo, std::int64_t hi) const;

 private:
  std::int64_t limit_;
  std::vector<std::uint32_t> prefix_;  // prefix_[v] = #primes < v
};

/// Smallest n0 >= 2 such that #primes in [n, 2n) >= n / (2 ln n) for every
/// n in [n0, nmax].
std::int64_t prime_window_threshold(const PrimeTable& table, std::int64_t nmax);

/// Measured threshold for nmax = 10^6, frozen as a regression value.
inline constexpr std::int64_t kPrimeWindowThreshold = 2;

}  // namespace smallf
