#pragma once

// The modified Collatz map and the quantities read off its forward orbit:
// trajectories, order/index, relative speed and log partial sums.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collatz_lab/nat.hpp"

namespace collatz_lab {

inline constexpr std::uint64_t kDefaultMaxSteps = 100'000;
inline constexpr std::size_t kDefaultMaxBits = 10'000;

/// f(a) = a/2 for even a > 1, 3a + 1 for odd a > 1, and f(1) = 1.
/// Throws DomainError for a == 0.
Nat collatz_f(const Nat& a);

enum class Halt { ReachedFixedPoint, CapExceeded };

/// Forward orbit f^1(a), f^2(a), ... stopped at the first 1 (the constant
/// tail is not materialized) or when the step/bit budget runs out.
struct Trajectory {
  Nat start;
  std::vector<Nat> elements;  // elements[i] == f^(i+1)(start)
  Halt halted = Halt::CapExceeded;
  Nat peak;

  std::size_t steps_taken() const { return elements.size(); }
  bool converged() const { return halted == Halt::ReachedFixedPoint; }
  /// f^s(start) for s >= 1, extending the truncated tail with 1s.
  /// Only valid for s <= steps_taken() unless the trajectory converged.
  const Nat& at_step(std::size_t s) const;
};

Trajectory trajectory(const Nat& a, std::uint64_t max_steps,
                      std::size_t max_bits = kDefaultMaxBits);

enum class OrderStatus { Converged, CapExceeded };

/// Order tau (least m with f^m(a) a power of two) and index Ind (that exponent).
/// A CapExceeded result carries neither.
struct OrderIndex {
  std::optional<std::uint64_t> tau;
  std::optional<std::uint64_t> ind;
  OrderStatus status = OrderStatus::CapExceeded;

  static OrderIndex converged(std::uint64_t tau, std::uint64_t ind) {
    return {tau, ind, OrderStatus::Converged};
  }
  static OrderIndex cap_exceeded() { return {}; }

  bool is_converged() const { return status == OrderStatus::Converged; }
  friend bool operator==(const OrderIndex&, const OrderIndex&) = default;
};

/// Which iterate the order search starts from. The default admits m = 0, so a
/// power of two has order 0; FromOne is the alternative reading kept for the
/// claims that are sensitive to it.
enum class OrderOrigin { FromZero, FromOne };

OrderIndex order_index(const Nat& a, std::uint64_t max_steps = kDefaultMaxSteps,
                       std::size_t max_bits = kDefaultMaxBits,
                       OrderOrigin origin = OrderOrigin::FromZero);

/// Exact non-negative rational in lowest terms.
struct SpeedValue {
  Nat numerator;
  std::uint64_t denominator = 1;

  /// "p/q", or just "p" when q == 1.
  std::string to_string() const;
  friend bool operator==(const SpeedValue&, const SpeedValue&) = default;
};

/// nu = |f^k(a) - f^j(a)| / |k - j|. Requires j, k >= 1 and j != k.
SpeedValue relative_speed(const Nat& a, std::uint64_t j, std::uint64_t k);

/// S_t = sum_{s=1..t} ln f^s(a) for t = 1..terms.
std::vector<double> log_sum_partial(const Nat& a, std::uint64_t terms);

/// k when n == 2^k, nullopt otherwise (including n == 0).
std::optional<std::uint64_t> is_power_of_two(const Nat& n);

inline std::optional<std::uint64_t> is_power_of_two(std::uint64_t n) {
  if (n == 0 || (n & (n - 1)) != 0) return std::nullopt;
  return static_cast<std::uint64_t>(__builtin_ctzll(n));
}

/// Natural log of a positive Nat, accurate for values far beyond double range.
double nat_log(const Nat& n);

}  // namespace collatz_lab
