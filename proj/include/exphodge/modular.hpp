/**
 * @file modular.hpp
 * @brief Arithmetic in F_p for word-size primes p < 2^32, plus seeded prime
 * selection.
 */
#ifndef EXPHODGE_MODULAR_HPP
#define EXPHODGE_MODULAR_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace exphodge::modular {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a + b) % p; }
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a + p - b) % p; }

inline std::uint64_t pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

inline std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
  return pow(a, p - 2, p);
}

/// Deterministic Miller-Rabin; exact for n < 3.4e14, which covers every
/// modulus used here.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u}) {
    // n < 2^32 here, so products fit in 64 bits.
    std::uint64_t x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Draws primes uniformly from [2^30, 2^31) with a seeded generator; the same
/// seed yields the same sequence.
class PrimeSource {
 public:
  explicit PrimeSource(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t next() {
    std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t{1} << 30, (std::uint64_t{1} << 31) - 1);
    for (;;) {
      const std::uint64_t candidate = dist(rng_) | 1;
      if (is_prime(candidate)) return candidate;
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace exphodge::modular

#endif  // EXPHODGE_MODULAR_HPP
