#include "smallf/primes.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "smallf/rational.hpp"

namespace smallf {

namespace {

std::vector<std::int64_t> small_primes(std::int64_t limit) {
  std::vector<char> composite(static_cast<std::size_t>(limit + 1), 0);
  std::vector<std::int64_t> out;
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = 1;
  }
  return out;
}

}  // namespace

std::int64_t sieve_budget() {
  if (const char* env = std::getenv("SMALLF_SIEVE_BUDGET")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw Error(std::string("SMALLF_SIEVE_BUDGET is not an integer: ") + env);
    }
  }
  return kDefaultSieveBudget;
}

std::vector<std::int64_t> primes_in_window(std::int64_t n) {
  if (n < 2) throw PreconditionError("primes_in_window: n must be >= 2");
  if (2 * n > sieve_budget())
    throw PreconditionError("primes_in_window: 2n = " + std::to_string(2 * n) +
                            " exceeds the sieve budget; raise SMALLF_SIEVE_BUDGET or sieve in "
                            "segments with PrimeTable over sub-windows");
  const std::int64_t hi = 2 * n;  // exclusive
  auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(hi)));
  while (root * root < hi) ++root;
  const auto base = small_primes(root);
  std::vector<char> composite(static_cast<std::size_t>(hi - n), 0);
  for (auto p : base) {
    std::int64_t start = std::max(p * p, ((n + p - 1) / p) * p);
    for (std::int64_t j = start; j < hi; j += p) composite[static_cast<std::size_t>(j - n)] = 1;
  }
  std::vector<std::int64_t> out;
  for (std::int64_t v = n; v < hi; ++v)
    if (v >= 2 && !composite[static_cast<std::size_t>(v - n)]) out.push_back(v);
  return out;
}

PrimeTable::PrimeTable(std::int64_t limit) : limit_(limit) {
  if (limit < 2) throw PreconditionError("PrimeTable: limit must be >= 2");
  if (limit > sieve_budget()) throw PreconditionError("PrimeTable: limit exceeds the sieve budget");
  std::vector<char> composite(static_cast<std::size_t>(limit + 1), 0);
  prefix_.assign(static_cast<std::size_t>(limit + 2), 0);
  for (std::int64_t i = 2; i * i <= limit; ++i)
    if (!composite[static_cast<std::size_t>(i)])
      for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = 1;
  std::uint32_t running = 0;
  for (std::int64_t v = 0; v <= limit; ++v) {
    prefix_[static_cast<std::size_t>(v)] = running;
    if (v >= 2 && !composite[static_cast<std::size_t>(v)]) ++running;
  }
  prefix_[static_cast<std::size_t>(limit + 1)] = running;
}

bool PrimeTable::is_prime(std::int64_t v) const {
  if (v < 2 || v > limit_) return false;
  return prefix_[static_cast<std::size_t>(v + 1)] != prefix_[static_cast<std::size_t>(v)];
}

std::int64_t PrimeTable::count(std::int64_t lo, std::int64_t hi) const {
  if (lo < 0 || hi > limit_ + 1 || lo > hi) throw PreconditionError("PrimeTable::count: range outside table");
  return static_cast<std::int64_t>(prefix_[static_cast<std::size_t>(hi)]) -
         static_cast<std::int64_t>(prefix_[static_cast<std::size_t>(lo)]);
}

std::int64_t prime_window_threshold(const PrimeTable& table, std::int64_t nmax) {
  if (2 * nmax > table.limit() + 1) throw PreconditionError("prime_window_threshold: table too small");
  // Scan down from nmax; the threshold is one past the last failing n.
  std::int64_t threshold = 2;
  for (std::int64_t n = nmax; n >= 2; --n) {
    const double bound = static_cast<double>(n) / (2.0 * std::log(static_cast<double>(n)));
    if (static_cast<double>(table.count(n, 2 * n)) < bound) {
      threshold = n + 1;
      break;
    }
  }
  return threshold;
}

}  // namespace smallf
