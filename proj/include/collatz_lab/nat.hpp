#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace collatz_lab {

/// Arbitrary-precision non-negative integer used for every process value.
using Nat = mpz_class;

/// Raised when an operation is called outside its mathematical domain
/// (a zero argument to the Collatz map, j == k in a speed, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a configured budget (node count, factoring size) is exhausted.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a non-negative decimal integer. Throws DomainError on anything else.
Nat parse_nat(std::string_view text);

std::string to_string(const Nat& n);

inline bool fits_u64(const Nat& n) {
  return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

/// Value of n as uint64_t, or nullopt when it does not fit.
std::optional<std::uint64_t> to_u64(const Nat& n);

Nat from_u64(std::uint64_t v);

inline std::size_t bit_length(const Nat& n) {
  return sgn(n) == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

}  // namespace collatz_lab

namespace collatz_lab {

struct NatHash {
  std::size_t operator()(const Nat& n) const noexcept {
    const mpz_srcptr z = n.get_mpz_t();
    const std::size_t limbs = mpz_size(z);
    std::size_t h = 0xcbf29ce484222325ull ^ limbs;
    for (std::size_t i = 0; i < limbs; ++i) {
      h ^= static_cast<std::size_t>(mpz_getlimbn(z, i));
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return h;
  }
};

}  // namespace collatz_lab
