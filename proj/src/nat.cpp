#include "collatz_lab/nat.hpp"

#include <algorithm>
#include <cctype>

namespace collatz_lab {

Nat parse_nat(std::string_view text) {
  if (text.empty() ||
      !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw DomainError("not a non-negative decimal integer: '" + std::string(text) + "'");
  }
  return Nat(std::string(text), 10);
}

std::string to_string(const Nat& n) { return n.get_str(10); }

std::optional<std::uint64_t> to_u64(const Nat& n) {
  if (!fits_u64(n)) return std::nullopt;
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

Nat from_u64(std::uint64_t v) {
  Nat out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

}  // namespace collatz_lab
