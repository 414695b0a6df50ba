#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "collatz_lab/nat.hpp"

namespace collatz_lab {

inline constexpr unsigned kDefaultPrimalityRounds = 40;
inline constexpr std::size_t kDefaultFactorBits = 96;

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

struct Primality {
  bool prime = false;
  /// True when n >= 2^64 and the answer "prime" rests on random-base
  /// Miller-Rabin rounds. Composite answers are always certain.
  bool probabilistic = false;
};

Primality primality(const Nat& n, unsigned rounds = kDefaultPrimalityRounds);

inline bool is_prime(const Nat& n, unsigned rounds = kDefaultPrimalityRounds) {
  return primality(n, rounds).prime;
}

/// p and 2p + 1 both prime.
bool is_sophie_germain(const Nat& p);

/// Length of the run p, 2p+1, 2(2p+1)+1, ... of primes. Throws DomainError
/// when p itself is not prime.
std::size_t cunningham_length(const Nat& p);

/// Indices i such that chain[i] and chain[i + 1] are both prime.
std::vector<std::size_t> consecutive_prime_pairs(std::span<const Nat> chain);

struct PrimePower {
  Nat prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct FactorMultiset {
  std::vector<PrimePower> factors;  // strictly increasing primes

  /// Omega(n): prime factors counted with multiplicity.
  unsigned big_omega() const;
  /// Moebius mu(n).
  int mobius() const;
  Nat product() const;
};

/// Complete factorization by trial division and Pollard-Brent rho. Inputs of
/// max_bits bits or more are refused with ResourceError, as is a rho search
/// that runs out of iterations.
FactorMultiset factorize(const Nat& n, std::size_t max_bits = kDefaultFactorBits);

}  // namespace collatz_lab
