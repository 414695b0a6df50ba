#include <doctest.h>

#include <cmath>

#include "collatz_lab/core.hpp"
#include "oracle.hpp"

using namespace collatz_lab;

TEST_CASE("f on small values") {
  CHECK(collatz_f(Nat(1)) == 1);
  CHECK(collatz_f(Nat(2)) == 1);
  CHECK(collatz_f(Nat(3)) == 10);
  CHECK(collatz_f(Nat(10)) == 5);
  CHECK_THROWS_AS(collatz_f(Nat(0)), DomainError);
}

TEST_CASE("f agrees with the oracle and stays exact past 64 bits") {
  for (std::uint64_t n = 1; n <= 10000; ++n) CHECK(collatz_f(from_u64(n)) == from_u64(oracle::step(n)));
  const Nat big = parse_nat("36893488147419103231");  // 2^65 - 1
  CHECK(collatz_f(big) == 3 * big + 1);
  CHECK(collatz_f(2 * big) == big);
}

TEST_CASE("trajectory of 1 stops at f(1)") {
  const Trajectory t = trajectory(Nat(1), 10);
  CHECK(t.elements == std::vector<Nat>{1});
  CHECK(t.converged());
  CHECK(t.at_step(5) == 1);
}

TEST_CASE("trajectory matches the oracle orbit") {
  for (std::uint64_t n : {2u, 3u, 7u, 21u, 27u, 97u, 871u}) {
    const Trajectory t = trajectory(from_u64(n), kDefaultMaxSteps);
    const auto expected = oracle::orbit(n);
    REQUIRE(t.elements.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(t.elements[i] == from_u64(expected[i]));
    CHECK(t.converged());
    CHECK(t.elements.back() == 1);
  }
  CHECK(trajectory(Nat(27), kDefaultMaxSteps).peak == 9232);
}

TEST_CASE("trajectory caps") {
  const Trajectory t = trajectory(Nat(27), 10);
  CHECK(t.elements.size() == 10);
  CHECK_FALSE(t.converged());
  CHECK_THROWS_AS(t.at_step(11), DomainError);
  CHECK_FALSE(trajectory(Nat(27), kDefaultMaxSteps, 8).converged());
  CHECK_THROWS_AS(trajectory(Nat(5), 0), DomainError);
}

TEST_CASE("order/index anchors") {
  CHECK(order_index(Nat(3)) == OrderIndex::converged(3, 4));
  CHECK(order_index(Nat(16)) == OrderIndex::converged(0, 4));
  CHECK(order_index(Nat(9)) == OrderIndex::converged(15, 4));
  CHECK(order_index(Nat(27)) == OrderIndex::converged(107, 4));
  CHECK(order_index(Nat(1)) == OrderIndex::converged(0, 0));
  CHECK(order_index(Nat(2)) == OrderIndex::converged(0, 1));
}

TEST_CASE("order/index agrees with the oracle up to 10^5") {
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    const auto expected = oracle::order(n);
    const OrderIndex got = order_index(from_u64(n));
    REQUIRE(got.is_converged());
    CHECK(*got.tau == expected->first);
    CHECK(*got.ind == expected->second);
  }
}

TEST_CASE("order/index from one skips m = 0") {
  CHECK(order_index(Nat(16), kDefaultMaxSteps, kDefaultMaxBits, OrderOrigin::FromOne) ==
        OrderIndex::converged(1, 3));
  CHECK(order_index(Nat(3), kDefaultMaxSteps, kDefaultMaxBits, OrderOrigin::FromOne) ==
        OrderIndex::converged(3, 4));
  CHECK(order_index(Nat(1), kDefaultMaxSteps, kDefaultMaxBits, OrderOrigin::FromOne) ==
        OrderIndex::converged(1, 0));
}

TEST_CASE("order/index cap and big inputs") {
  CHECK(order_index(Nat(27), 50) == OrderIndex::cap_exceeded());
  CHECK(order_index(Nat(27), 107) == OrderIndex::converged(107, 4));
  Nat p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, 200);
  CHECK(order_index(p) == OrderIndex::converged(0, 200));
  // 3 * 2^100 reaches 3 after 100 halvings.
  Nat q;
  mpz_ui_pow_ui(q.get_mpz_t(), 2, 100);
  CHECK(order_index(3 * q) == OrderIndex::converged(103, 4));
  CHECK_THROWS_AS(order_index(Nat(0)), DomainError);
}

TEST_CASE("f^tau(n) is the power 2^Ind") {
  for (std::uint64_t n = 1; n <= 3000; ++n) {
    const OrderIndex oi = order_index(from_u64(n));
    CHECK(oracle::iterate(n, *oi.tau) == (std::uint64_t{1} << *oi.ind));
  }
}

TEST_CASE("relative speed") {
  CHECK(relative_speed(Nat(3), 1, 3).to_string() == "3");
  CHECK(relative_speed(Nat(3), 3, 1).to_string() == "3");
  CHECK(relative_speed(Nat(3), 1, 2).to_string() == "5");
  // 7 -> 22, 11, 34, 17
  CHECK(relative_speed(Nat(7), 1, 3) == SpeedValue{Nat(6), 1});
  CHECK(relative_speed(Nat(7), 1, 4).to_string() == "5/3");
  // |4 - 10| / 4
  CHECK(relative_speed(Nat(3), 1, 5).to_string() == "3/2");
  // Past the first 1 the orbit is constant.
  CHECK(relative_speed(Nat(2), 1, 50).to_string() == "0");
  CHECK_THROWS_AS(relative_speed(Nat(3), 0, 2), DomainError);
  CHECK_THROWS_AS(relative_speed(Nat(3), 2, 2), DomainError);
}

TEST_CASE("relative speed against the oracle") {
  for (std::uint64_t n = 2; n <= 200; ++n) {
    for (std::uint64_t j = 1; j <= 8; ++j) {
      for (std::uint64_t k = j + 1; k <= 12; ++k) {
        const std::uint64_t a = oracle::iterate(n, j), b = oracle::iterate(n, k);
        const std::uint64_t diff = a > b ? a - b : b - a;
        const SpeedValue v = relative_speed(from_u64(n), j, k);
        CHECK(v.numerator * (k - j) == from_u64(diff) * v.denominator);
      }
    }
  }
}

TEST_CASE("log partial sums") {
  const auto s = log_sum_partial(Nat(3), 9);
  REQUIRE(s.size() == 9);
  CHECK(s[0] == doctest::Approx(std::log(10.0)));
  CHECK(s[6] == doctest::Approx(std::log(10.0 * 5 * 16 * 8 * 4 * 2)));
  CHECK(s[7] == s[6]);
  CHECK(s[8] == s[6]);
  CHECK(log_sum_partial(Nat(1), 3) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK_THROWS_AS(log_sum_partial(Nat(3), 0), DomainError);
}

TEST_CASE("partial sums are monotone") {
  for (std::uint64_t n = 1; n <= 500; ++n) {
    const auto s = log_sum_partial(from_u64(n), 200);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] >= s[i - 1]);
  }
}

TEST_CASE("nat_log beyond double range") {
  Nat p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, 5000);
  CHECK(nat_log(p) == doctest::Approx(5000 * std::log(2.0)));
  CHECK(nat_log(Nat(1)) == 0.0);
}

TEST_CASE("power of two") {
  CHECK(is_power_of_two(Nat(1)) == 0u);
  CHECK(is_power_of_two(Nat(64)) == 6u);
  CHECK_FALSE(is_power_of_two(Nat(0)));
  CHECK_FALSE(is_power_of_two(Nat(12)));
  CHECK(is_power_of_two(std::uint64_t{1} << 63) == 63u);
}
