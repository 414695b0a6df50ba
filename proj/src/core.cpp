#include "collatz_lab/core.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace collatz_lab {
namespace {

// Largest odd x for which 3x + 1 still fits in 64 bits.
constexpr std::uint64_t kMaxTripleInput = (UINT64_MAX - 1) / 3;

void require_positive(const Nat& a, const char* what) {
  if (sgn(a) <= 0) throw DomainError(std::string(what) + ": argument must be >= 1");
}

void step_in_place(Nat& x) {
  if (x == 1) return;
  if (mpz_even_p(x.get_mpz_t())) {
    mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
  } else {
    x *= 3;
    x += 1;
  }
}

const Nat kOne{1};

}  // namespace

Nat collatz_f(const Nat& a) {
  require_positive(a, "collatz_f");
  Nat out = a;
  step_in_place(out);
  return out;
}

const Nat& Trajectory::at_step(std::size_t s) const {
  if (s == 0) return start;
  if (s <= elements.size()) return elements[s - 1];
  if (!converged()) throw DomainError("trajectory step beyond the computed budget");
  return kOne;
}

Trajectory trajectory(const Nat& a, std::uint64_t max_steps, std::size_t max_bits) {
  require_positive(a, "trajectory");
  if (max_steps == 0) throw DomainError("trajectory: max_steps must be >= 1");

  Trajectory t;
  t.start = a;
  t.peak = a;
  Nat x = a;
  for (std::uint64_t s = 0; s < max_steps; ++s) {
    step_in_place(x);
    if (bit_length(x) > max_bits) break;
    if (x > t.peak) t.peak = x;
    t.elements.push_back(x);
    if (x == 1) {
      t.halted = Halt::ReachedFixedPoint;
      return t;
    }
  }
  t.halted = Halt::CapExceeded;
  return t;
}

std::optional<std::uint64_t> is_power_of_two(const Nat& n) {
  if (sgn(n) <= 0) return std::nullopt;
  if (mpz_popcount(n.get_mpz_t()) != 1) return std::nullopt;
  return mpz_scan1(n.get_mpz_t(), 0);
}

namespace {

// Scans f^m(a), f^(m+1)(a), ... where x == f^m(a) on entry.
OrderIndex scan_order(Nat x, std::uint64_t m, std::uint64_t max_steps, std::size_t max_bits) {
  // 64-bit fast path; drops to exact arithmetic once 3x + 1 would overflow.
  if (auto small = to_u64(x)) {
    std::uint64_t v = *small;
    while (true) {
      if (auto k = is_power_of_two(v)) return OrderIndex::converged(m, *k);
      if (m == max_steps) return OrderIndex::cap_exceeded();
      if ((v & 1) == 0) {
        v >>= 1;
      } else if (v <= kMaxTripleInput) {
        v = 3 * v + 1;
      } else {
        break;
      }
      ++m;
      if (static_cast<std::size_t>(std::bit_width(v)) > max_bits) {
        return OrderIndex::cap_exceeded();
      }
    }
    x = from_u64(v);
    step_in_place(x);
    ++m;
    if (bit_length(x) > max_bits) return OrderIndex::cap_exceeded();
  }

  while (true) {
    if (auto k = is_power_of_two(x)) return OrderIndex::converged(m, *k);
    if (m == max_steps) return OrderIndex::cap_exceeded();
    step_in_place(x);
    ++m;
    if (bit_length(x) > max_bits) return OrderIndex::cap_exceeded();
  }
}

}  // namespace

OrderIndex order_index(const Nat& a, std::uint64_t max_steps, std::size_t max_bits,
                       OrderOrigin origin) {
  require_positive(a, "order_index");
  if (max_steps == 0) throw DomainError("order_index: max_steps must be >= 1");
  if (origin == OrderOrigin::FromOne) return scan_order(collatz_f(a), 1, max_steps, max_bits);
  return scan_order(a, 0, max_steps, max_bits);
}

std::string SpeedValue::to_string() const {
  std::string out = collatz_lab::to_string(numerator);
  if (denominator != 1) out += "/" + std::to_string(denominator);
  return out;
}

SpeedValue relative_speed(const Nat& a, std::uint64_t j, std::uint64_t k) {
  require_positive(a, "relative_speed");
  if (j == 0 || k == 0) throw DomainError("relative_speed: j and k must be >= 1");
  if (j == k) throw DomainError("relative_speed: undefined for j == k");

  const std::uint64_t lo = std::min(j, k);
  const std::uint64_t hi = std::max(j, k);
  Nat x = a;
  Nat at_lo{1};
  // The orbit is constant once it reaches 1, so the walk can stop there.
  for (std::uint64_t s = 1; s <= hi && x != 1; ++s) {
    step_in_place(x);
    if (s == lo) at_lo = x;
  }
  Nat diff = abs(x - at_lo);

  mpq_class q(diff, Nat(static_cast<unsigned long>(hi - lo)));
  q.canonicalize();
  SpeedValue out;
  out.numerator = q.get_num();
  out.denominator = *to_u64(q.get_den());
  return out;
}

double nat_log(const Nat& n) {
  if (auto small = to_u64(n)) return std::log(static_cast<double>(*small));
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::numbers::ln2;
}

std::vector<double> log_sum_partial(const Nat& a, std::uint64_t terms) {
  require_positive(a, "log_sum_partial");
  if (terms == 0) throw DomainError("log_sum_partial: terms must be >= 1");

  std::vector<double> sums;
  sums.reserve(terms);
  Nat x = a;
  double acc = 0.0;
  bool at_fixed_point = false;
  for (std::uint64_t t = 0; t < terms; ++t) {
    if (!at_fixed_point) {
      step_in_place(x);
      if (x == 1) {
        at_fixed_point = true;
      } else {
        acc += nat_log(x);
      }
    }
    sums.push_back(acc);
  }
  return sums;
}

}  // namespace collatz_lab
