#include <doctest.h>

#include "collatz_lab/format.hpp"

using namespace collatz_lab;

TEST_CASE("order json") {
  CHECK(format::order_json(Nat(3), order_index(Nat(3))).dump() ==
        R"({"n":"3","tau":3,"ind":4,"status":"converged"})");
  CHECK(format::order_json(Nat(27), order_index(Nat(27), 5)).dump() ==
        R"({"n":"27","tau":null,"ind":null,"status":"cap_exceeded"})");
}

TEST_CASE("report json has every field, elapsed last") {
  const auto r = claims::run_claim("C-OMEGA", claims::Range{2, 30}, claims::Budget{});
  const auto j = format::report_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"id", "policy", "range", "budget", "checked",
                                         "counterexample_total", "counterexamples",
                                         "inconclusive_total", "inconclusive", "statistics",
                                         "notes", "verdict", "elapsed"});
  CHECK(j["range"]["lo"] == "2");
  CHECK(j["verdict"] == "counterexamples_found");
  CHECK(j["counterexamples"][0].contains("input"));
  CHECK(j["counterexamples"][0].contains("detail"));
  CHECK_FALSE(format::without_elapsed(j).contains("elapsed"));
}

TEST_CASE("csv") {
  const auto r = claims::run_claim("C-P7", claims::Range{2, 100}, claims::Budget{});
  const std::string row = format::csv_row(r);
  CHECK(row.rfind("C-P7,2,100,100000,64,10000,", 0) == 0);
  CHECK(format::csv_escape("a,b") == "\"a,b\"");
  CHECK(format::csv_escape("say \"x\", ok") == "\"say \"\"x\"\", ok\"");
  CHECK(format::csv_escape("plain") == "plain");
}

TEST_CASE("value lists truncate") {
  std::vector<Nat> v;
  for (int i = 1; i <= 25; ++i) v.push_back(i);
  const std::string s = format::join_values(v, 20);
  CHECK(s.substr(s.size() - 7) == "20, ...");
  CHECK(format::join_values(v, 0).substr(format::join_values(v, 0).size() - 2) == "25");
}
