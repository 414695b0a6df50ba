#include <doctest.h>

#include <set>

#include "collatz_lab/claims.hpp"
#include "collatz_lab/core.hpp"
#include "collatz_lab/format.hpp"
#include "collatz_lab/primes.hpp"
#include "oracle.hpp"

using namespace collatz_lab;
using namespace collatz_lab::claims;

namespace {

ClaimReport run(const std::string& id, std::uint64_t lo, std::uint64_t hi, unsigned threads = 1) {
  RunOptions options;
  options.threads = threads;
  return run_claim(id, Range{lo, hi}, Budget{}, options);
}

bool lists(const ClaimReport& r, const std::string& input) {
  for (const auto& f : r.counterexamples) {
    if (f.input == input) return true;
  }
  return false;
}

const Finding& entry(const ClaimReport& r, const std::string& input) {
  for (const auto& f : r.counterexamples) {
    if (f.input == input) return f;
  }
  throw std::runtime_error("no entry for " + input);
}

std::uint64_t u(const Nat& n) { return *to_u64(n); }

}  // namespace

TEST_CASE("registry") {
  const auto& all = list_claims();
  CHECK(all.size() == 20);
  std::set<std::string> ids;
  for (const auto& c : all) {
    ids.insert(c.id);
    CHECK_FALSE(c.anchor.empty());
    CHECK_FALSE(c.bounded_semantics.empty());
  }
  CHECK(ids.size() == 20);
  CHECK(find_claim("C-P7"));
  CHECK(find_claim("C-P11")->policy == BackwardPolicy::EvenDoubling);
  CHECK_FALSE(find_claim("C-P99"));
}

TEST_CASE("range parsing and validation") {
  CHECK(parse_range("2..100") == Range{2, 100});
  CHECK(parse_range("5..5").size() == 1);
  CHECK_THROWS_AS(parse_range("2-100"), DomainError);
  CHECK_THROWS_AS(parse_range("..100"), DomainError);
  CHECK_THROWS_AS(parse_range("a..b"), DomainError);
  CHECK_THROWS_AS(run("C-P7", 0, 10), DomainError);
  CHECK_THROWS_AS(run("C-P7", 10, 2), DomainError);
  CHECK_THROWS_AS(run("C-NOPE", 2, 10), UnknownClaimError);
}

TEST_CASE("verifying claims over a small range") {
  for (const std::string id : {"C-P3", "C-P4", "C-P5", "C-P7", "C-T8", "C-P9", "C-P11", "C-T12", "C-MU",
                         "C-TAUFIN", "C-SUMLOG"}) {
    const ClaimReport r = run(id, 2, 3000);
    INFO(id);
    CHECK(r.verdict == Verdict::AllVerified);
    CHECK(r.counterexample_total == 0);
    CHECK(r.checked > 0);
  }
}

TEST_CASE("C-P9: Ind = 1 only at n = 2") {
  const ClaimReport r = run("C-P9", 1, 5000);
  CHECK(std::get<std::uint64_t>(r.statistics.at("ind_eq_1")) == 1);
  CHECK(std::get<std::string>(r.statistics.at("ind_eq_1_inputs")) == "2 (tau = 0)");
}

TEST_CASE("C-ODDPRIME counterexample at 21") {
  const ClaimReport r = run("C-ODDPRIME", 2, 100);
  CHECK(r.verdict == Verdict::CounterexamplesFound);
  REQUIRE(lists(r, "21"));
  CHECK(entry(r, "21").detail.find("64, 32, 16, 8, 4, 2, 1") != std::string::npos);
  for (const auto& f : r.counterexamples) {
    const std::uint64_t b = u(f.inputs[0]);
    CHECK(b % 3 == 0);
    for (std::uint64_t x : oracle::orbit(b)) CHECK_FALSE((x % 2 == 1 && oracle::is_prime(x)));
  }
}

TEST_CASE("C-OMEGA counterexample at 27") {
  const ClaimReport r = run("C-OMEGA", 2, 100);
  REQUIRE(lists(r, "27"));
  CHECK(entry(r, "27").detail == "27 = 3^3, Omega = 3");
  for (const auto& f : r.counterexamples) CHECK(oracle::prime_factors(u(f.inputs[0])).size() > 2);
}

TEST_CASE("C-P6 counterexample at 6") {
  const ClaimReport r = run("C-P6", 2, 100);
  REQUIRE(lists(r, "6"));
  CHECK(r.counterexamples.front().input == "6");
  for (const auto& f : r.counterexamples) {
    const std::uint64_t b = u(f.inputs[0]);
    CHECK(b % 2 == 0);
    CHECK(oracle::first_odd_depth(b, 64) == 0);
  }
}

TEST_CASE("C-P10 counterexample at (3, 9)") {
  const ClaimReport r = run("C-P10", 2, 30);
  REQUIRE(lists(r, "(3, 9)"));
  const auto& f = entry(r, "(3, 9)");
  CHECK(f.detail.find("common value 10") != std::string::npos);
  CHECK(oracle::iterate(3, 1) == 10);
  CHECK(oracle::iterate(9, 13) == 10);
  // 10 generators in 2..30; every pair overlaps at 1 at the latest.
  CHECK(r.checked == 45);
  CHECK(r.counterexample_total == 45);
}

TEST_CASE("speed claims fail only on the constant process") {
  for (const std::string id : {"C-SPEED1", "C-SPEED2"}) {
    const ClaimReport r = run(id, 1, 3000);
    INFO(id);
    CHECK(r.counterexample_total == 2);
    CHECK(lists(r, "1"));
    CHECK(lists(r, "2"));
    CHECK(r.inconclusive_total == 0);
  }
}

TEST_CASE("C-INDTAU counterexamples re-verify") {
  const ClaimReport r = run("C-INDTAU", 2, 20000);
  for (const auto& f : r.counterexamples) {
    const std::uint64_t b = u(f.inputs[0]);
    const auto o = oracle::order(b);
    CHECK(oracle::is_prime(b) != (o->second == o->first + 1));
  }
}

TEST_CASE("C-T13 and C-DENSITY are at best inconclusive") {
  const ClaimReport t13 = run("C-T13", 2, 2000);
  CHECK(t13.counterexample_total == 0);
  const ClaimReport d = run("C-DENSITY", 2, 200);
  CHECK(d.verdict == Verdict::Inconclusive);
  CHECK(d.counterexample_total == 0);
  CHECK(d.statistics.count("prime_ratio_to_depth_64"));
}

TEST_CASE("C-T12 sees the Sophie Germain run from 3") {
  const ClaimReport r = run_claim("C-T12", Range{3, 3}, Budget{kDefaultMaxSteps, 5, 10000});
  CHECK(r.verdict == Verdict::AllVerified);
  CHECK(std::get<std::uint64_t>(r.statistics.at("consecutive_prime_pairs")) == 3);
}

TEST_CASE("budget hits are inconclusive, not counterexamples") {
  const ClaimReport r = run_claim("C-TAUFIN", Range{25, 30}, Budget{20, 64, 10000});
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.counterexample_total == 0);
  CHECK(r.inconclusive_total > 0);
  const ClaimReport s = run_claim("C-SUMLOG", Range{27, 27}, Budget{20, 64, 10000});
  CHECK(s.verdict == Verdict::Inconclusive);
}

TEST_CASE("recorded findings are capped, totals are exact") {
  RunOptions options;
  options.max_recorded = 5;
  const ClaimReport r = run_claim("C-OMEGA", Range{2, 1000}, Budget{}, options);
  CHECK(r.counterexamples.size() == 5);
  CHECK(r.counterexample_total > 5);
}

TEST_CASE("results do not depend on thread count or memo") {
  MemoTable memo;
  RunOptions with_memo;
  with_memo.memo = &memo;
  with_memo.threads = 3;
  for (const auto& spec : list_claims()) {
    INFO(spec.id);
    const auto a = format::without_elapsed(format::report_json(run(spec.id, 2, 2500, 1)));
    const auto b = format::without_elapsed(format::report_json(run(spec.id, 2, 2500, 4)));
    const auto c = format::without_elapsed(format::report_json(run_claim(spec.id, Range{2, 2500}, Budget{}, with_memo)));
    CHECK(a.dump() == b.dump());
    CHECK(a.dump() == c.dump());
  }
}

TEST_CASE("evidence only grows with the range") {
  RunOptions all;
  all.max_recorded = 1'000'000;
  for (const std::string id : {"C-OMEGA", "C-P6", "C-ODDPRIME", "C-TAUFIN", "C-P10", "C-INDTAU"}) {
    const ClaimReport small = run_claim(id, Range{2, 300}, Budget{}, all);
    const ClaimReport large = run_claim(id, Range{2, 1500}, Budget{}, all);
    INFO(id);
    CHECK(large.checked >= small.checked);
    CHECK(large.counterexample_total >= small.counterexample_total);
    for (const auto& f : small.counterexamples) CHECK(lists(large, f.input));
  }
}

TEST_CASE("singleton ranges") {
  const ClaimReport odd = run("C-ODDPRIME", 21, 21);
  CHECK(odd.verdict == Verdict::CounterexamplesFound);
  CHECK(odd.counterexamples.at(0).input == "21");
  const ClaimReport omega = run("C-OMEGA", 27, 27);
  CHECK(omega.counterexamples.at(0).detail == "27 = 3^3, Omega = 3");
  CHECK(run("C-P7", 2, 10000).verdict == Verdict::AllVerified);
  CHECK(run("C-T8", 5, 100000).verdict == Verdict::AllVerified);
}

TEST_CASE("run_all over [3..3] verifies 3 for C-INDTAU") {
  for (const auto& r : run_all(Range{3, 3}, Budget{})) {
    if (r.id != "C-INDTAU") continue;
    CHECK(r.checked == 1);
    CHECK(r.verdict == Verdict::AllVerified);
    CHECK(std::get<std::string>(r.statistics.at("prime_generators_seen")) == "3 (tau = 3, Ind = 4)");
  }
}

TEST_CASE("structural identities hold to depth 30") {
  const ClaimReport t12 = run_claim("C-T12", Range{1, 1000}, Budget{kDefaultMaxSteps, 30, 10000});
  CHECK(t12.verdict == Verdict::AllVerified);
  CHECK(t12.checked == 1000);
  const ClaimReport p11 = run_claim("C-P11", Range{1, 1}, Budget{kDefaultMaxSteps, 30, 10000});
  CHECK(p11.verdict == Verdict::AllVerified);
  CHECK(p11.checked == 30);
}

TEST_CASE("run_all is ordered by id") {
  const auto reports = run_all(Range{2, 60}, Budget{});
  REQUIRE(reports.size() == 20);
  for (std::size_t i = 1; i < reports.size(); ++i) CHECK(reports[i - 1].id < reports[i].id);
}
