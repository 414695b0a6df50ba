#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "collatz_lab/cache.hpp"
#include "collatz_lab/core.hpp"

using namespace collatz_lab;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("collatz_lab_test_" + std::to_string(::getpid()) + "_" + name);
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("memo results equal direct results up to 10^5") {
  MemoTable table;
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    const OrderIndex memo = order_index_memo(from_u64(n), kDefaultMaxSteps, table);
    const OrderIndex direct = order_index(from_u64(n));
    if (!(memo == direct)) FAIL("mismatch at " << n);
  }
  CHECK(table.size() > 100000);
  CHECK(audit(table, kDefaultMaxSteps).empty());
}

TEST_CASE("memo respects the step cap after a splice") {
  MemoTable table;
  CHECK(order_index_memo(Nat(27), kDefaultMaxSteps, table) == OrderIndex::converged(107, 4));
  // 54 -> 27 costs one extra step.
  CHECK(order_index_memo(Nat(54), 107, table) == OrderIndex::cap_exceeded());
  CHECK(order_index_memo(Nat(54), 108, table) == OrderIndex::converged(108, 4));
}

TEST_CASE("capped walks publish nothing") {
  MemoTable table;
  CHECK(order_index_memo(Nat(27), 10, table) == OrderIndex::cap_exceeded());
  CHECK(table.size() == 0);
}

TEST_CASE("ceiling limits what is stored") {
  MemoTable table(100);
  CHECK(order_index_memo(Nat(27), kDefaultMaxSteps, table) == OrderIndex::converged(107, 4));
  for (const auto& [n, e] : table.snapshot()) CHECK(n < 100);
  CHECK_FALSE(table.lookup(9232));
}

TEST_CASE("inputs past 64 bits") {
  MemoTable table;
  Nat q;
  mpz_ui_pow_ui(q.get_mpz_t(), 2, 100);
  CHECK(order_index_memo(3 * q, kDefaultMaxSteps, table) == order_index(3 * q));
  CHECK(order_index_memo(q + 1, kDefaultMaxSteps, table) == order_index(q + 1));
  CHECK(audit(table, kDefaultMaxSteps).empty());
}

TEST_CASE("save and load round trip") {
  MemoTable table;
  for (std::uint64_t n = 1; n <= 5000; ++n) order_index_memo(from_u64(n), kDefaultMaxSteps, table);
  const fs::path p = temp_file("roundtrip.memo");
  save(table, p);
  const MemoTable loaded = load(p);
  CHECK(loaded == table);
  CHECK(loaded.ceiling() == table.ceiling());
  const std::string text = read_text(p);
  CHECK(text.rfind("collatz-lab-memo v1 ceiling=4294967296 entries=", 0) == 0);
  fs::remove(p);
}

TEST_CASE("empty table round trip") {
  const fs::path p = temp_file("empty.memo");
  save(MemoTable(64), p);
  CHECK(read_text(p) == "collatz-lab-memo v1 ceiling=64 entries=0\n");
  CHECK(load(p).size() == 0);
  fs::remove(p);
}

TEST_CASE("load rejects damaged files") {
  const fs::path p = temp_file("bad.memo");
  const std::string good = "collatz-lab-memo v1 ceiling=100 entries=2\n3,3,4\n5,1,4\n";
  write_text(p, good);
  CHECK(load(p).size() == 2);

  write_text(p, good.substr(0, good.size() - 3));
  CHECK_THROWS_AS(load(p), CacheCorruptError);  // truncated
  write_text(p, "");
  CHECK_THROWS_AS(load(p), CacheCorruptError);
  write_text(p, "collatz-lab-memo v2 ceiling=100 entries=0\n");
  CHECK_THROWS_AS(load(p), CacheVersionError);
  write_text(p, "something-else v1 ceiling=100 entries=0\n");
  CHECK_THROWS_AS(load(p), CacheCorruptError);
  write_text(p, "collatz-lab-memo v1 ceiling=100 entries=3\n3,3,4\n5,1,4\n");
  CHECK_THROWS_AS(load(p), CacheCorruptError);  // count mismatch
  write_text(p, "collatz-lab-memo v1 ceiling=100 entries=2\n5,1,4\n3,3,4\n");
  CHECK_THROWS_AS(load(p), CacheCorruptError);  // not increasing
  write_text(p, "collatz-lab-memo v1 ceiling=100 entries=1\n300,1,4\n");
  CHECK_THROWS_AS(load(p), CacheCorruptError);  // beyond ceiling
  write_text(p, "collatz-lab-memo v1 ceiling=100 entries=1\n3,x,4\n");
  CHECK_THROWS_AS(load(p), CacheCorruptError);
  write_text(p, "collatz-lab-memo v1 ceiling=100 entries=1\n03,3,4\n");
  CHECK_THROWS_AS(load(p), CacheCorruptError);
  write_text(p, "collatz-lab-memo v1 ceiling=0 entries=0\n");
  CHECK_THROWS_AS(load(p), CacheCorruptError);
  fs::remove(p);
  CHECK_THROWS_AS(load(p), CacheError);  // missing
}

TEST_CASE("audit reports tampered entries") {
  const fs::path p = temp_file("tampered.memo");
  write_text(p, "collatz-lab-memo v1 ceiling=100 entries=2\n3,3,4\n9,14,4\n");
  const MemoTable t = load(p);
  CHECK(audit(t, kDefaultMaxSteps) == std::vector<std::uint64_t>{9});
  fs::remove(p);
}
