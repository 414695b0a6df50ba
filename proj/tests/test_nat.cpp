#include <doctest.h>

#include "collatz_lab/nat.hpp"

using namespace collatz_lab;

TEST_CASE("parse and print") {
  CHECK(parse_nat("0") == 0);
  CHECK(parse_nat("123456789012345678901234567890") * 10 == parse_nat("1234567890123456789012345678900"));
  CHECK(to_string(parse_nat("98765432109876543210")) == "98765432109876543210");
  CHECK_THROWS_AS(parse_nat(""), DomainError);
  CHECK_THROWS_AS(parse_nat("-4"), DomainError);
  CHECK_THROWS_AS(parse_nat("12a"), DomainError);
  CHECK_THROWS_AS(parse_nat(" 12"), DomainError);
}

TEST_CASE("64-bit conversions") {
  CHECK(to_u64(parse_nat("18446744073709551615")) == 18446744073709551615ull);
  CHECK_FALSE(to_u64(parse_nat("18446744073709551616")));
  CHECK(fits_u64(from_u64(42)));
  CHECK(from_u64(18446744073709551615ull) == parse_nat("18446744073709551615"));
  CHECK(bit_length(Nat(0)) == 0);
  CHECK(bit_length(Nat(1)) == 1);
  CHECK(bit_length(Nat(256)) == 9);
}

TEST_CASE("hash is value based") {
  NatHash h;
  CHECK(h(parse_nat("123456789012345678901234567890")) == h(parse_nat("123456789012345678901234567890")));
  CHECK(h(Nat(1)) != h(Nat(2)));
}
