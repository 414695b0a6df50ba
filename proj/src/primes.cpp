#include "collatz_lab/primes.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace collatz_lab {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1u << 16;
constexpr u64 kRhoIterationCap = u64{1} << 26;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit, false);
    std::vector<std::uint32_t> out;
    for (u64 i = 2; i < kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (u64 j = i * i; j < kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// One strong-probable-prime round; n odd, n - 1 = d * 2^r.
bool strong_probable_prime(u64 n, u64 a, u64 d, unsigned r) {
  a %= n;
  if (a == 0) return true;
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

u64 rho_u64(u64 n, u64 c) {
  // Brent's cycle detection with batched gcds.
  auto g = [&](u64 x) { return static_cast<u64>((static_cast<u128>(x) * x + c) % n); };
  u64 y = 2, x = 2, ys = 2, q = 1, d = 1;
  u64 r = 1;
  constexpr u64 m = 128;
  u64 iterations = 0;
  do {
    x = y;
    for (u64 i = 0; i < r; ++i) y = g(y);
    u64 k = 0;
    while (k < r && d == 1) {
      ys = y;
      const u64 lim = std::min(m, r - k);
      for (u64 i = 0; i < lim; ++i) {
        y = g(y);
        q = mul_mod(q, x > y ? x - y : y - x, n);
      }
      d = std::gcd(q, n);
      k += m;
    }
    r <<= 1;
    iterations += r;
    if (iterations > kRhoIterationCap) return n;
  } while (d == 1);
  if (d == n) {
    do {
      ys = g(ys);
      d = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (d == 1);
  }
  return d;
}

Nat rho_big(const Nat& n, unsigned long c) {
  auto g = [&](Nat& v) {
    v *= v;
    v += c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  Nat y = 2, x = 2, ys = 2, q = 1, d = 1, diff;
  u64 r = 1;
  constexpr u64 m = 128;
  u64 iterations = 0;
  do {
    x = y;
    for (u64 i = 0; i < r; ++i) g(y);
    u64 k = 0;
    while (k < r && d == 1) {
      ys = y;
      const u64 lim = std::min(m, r - k);
      for (u64 i = 0; i < lim; ++i) {
        g(y);
        diff = abs(x - y);
        q *= diff;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r <<= 1;
    iterations += r;
    if (iterations > kRhoIterationCap) return n;
  } while (d == 1);
  if (d == n) {
    do {
      g(ys);
      diff = abs(x - ys);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (d == 1);
  }
  return d;
}

// Splits composite n (no prime factor below the trial limit) into primes.
void split(const Nat& n, std::vector<Nat>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Nat root = sqrt(n);
    split(root, out);
    split(root, out);
    return;
  }
  for (unsigned long c = 1; c < 64; ++c) {
    Nat d;
    if (auto small = to_u64(n)) {
      d = from_u64(rho_u64(*small, c));
    } else {
      d = rho_big(n, c);
    }
    if (d != 1 && d != n) {
      split(d, out);
      split(n / d, out);
      return;
    }
  }
  throw ResourceError("factorize: Pollard rho did not split " + to_string(n));
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These twelve bases are a proof for every n < 3.3 * 10^24.
  return std::all_of(kBases.begin(), kBases.end(),
                     [&](u64 a) { return strong_probable_prime(n, a, d, r); });
}

Primality primality(const Nat& n, unsigned rounds) {
  if (auto small = to_u64(n)) return {is_prime_u64(*small), false};
  const int verdict = mpz_probab_prime_p(n.get_mpz_t(), static_cast<int>(rounds));
  return {verdict != 0, verdict == 1};
}

bool is_sophie_germain(const Nat& p) {
  if (!is_prime(p)) return false;
  Nat q = 2 * p + 1;
  return is_prime(q);
}

std::size_t cunningham_length(const Nat& p) {
  if (!is_prime(p)) throw DomainError("cunningham_length: " + to_string(p) + " is not prime");
  std::size_t length = 1;
  Nat x = 2 * p + 1;
  while (is_prime(x)) {
    ++length;
    x = 2 * x + 1;
  }
  return length;
}

std::vector<std::size_t> consecutive_prime_pairs(std::span<const Nat> chain) {
  std::vector<std::size_t> out;
  bool previous = false;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const bool current = is_prime(chain[i]);
    if (i > 0 && previous && current) out.push_back(i - 1);
    previous = current;
  }
  return out;
}

unsigned FactorMultiset::big_omega() const {
  unsigned total = 0;
  for (const auto& f : factors) total += f.exponent;
  return total;
}

int FactorMultiset::mobius() const {
  for (const auto& f : factors) {
    if (f.exponent >= 2) return 0;
  }
  return factors.size() % 2 == 0 ? 1 : -1;
}

Nat FactorMultiset::product() const {
  Nat out = 1;
  for (const auto& f : factors) {
    Nat power;
    mpz_pow_ui(power.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    out *= power;
  }
  return out;
}

FactorMultiset factorize(const Nat& n, std::size_t max_bits) {
  if (sgn(n) <= 0) throw DomainError("factorize: argument must be >= 1");
  if (bit_length(n) > max_bits) {
    throw ResourceError("factorize: " + std::to_string(bit_length(n)) +
                        "-bit input exceeds the " + std::to_string(max_bits) +
                        "-bit factoring budget");
  }

  std::map<Nat, unsigned> counts;
  if (auto small = to_u64(n)) {
    u64 rest = *small;
    for (std::uint32_t p : small_primes()) {
      if (static_cast<u64>(p) * p > rest) break;
      while (rest % p == 0) {
        rest /= p;
        ++counts[Nat(p)];
      }
    }
    if (rest != 1) {
      std::vector<Nat> primes;
      split(from_u64(rest), primes);
      for (const Nat& p : primes) ++counts[p];
    }
  } else {
    Nat rest = n;
    for (std::uint32_t p : small_primes()) {
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++counts[Nat(p)];
      }
    }
    if (rest != 1) {
      std::vector<Nat> primes;
      split(rest, primes);
      for (const Nat& p : primes) ++counts[p];
    }
  }

  FactorMultiset out;
  for (auto& [p, e] : counts) out.factors.push_back({p, e});
  return out;
}

}  // namespace collatz_lab
