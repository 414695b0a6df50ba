// collatz-lab: command-line front end for the library and the claims harness.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "collatz_lab/backward.hpp"
#include "collatz_lab/cache.hpp"
#include "collatz_lab/claims.hpp"
#include "collatz_lab/core.hpp"
#include "collatz_lab/format.hpp"
#include "collatz_lab/parallel.hpp"
#include "collatz_lab/primes.hpp"

namespace {

using namespace collatz_lab;
using format::Json;
using format::OutputFormat;

constexpr int kExitOk = 0;
constexpr int kExitCounterexamples = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Globals {
  std::uint64_t max_steps = kDefaultMaxSteps;
  std::size_t depth = 64;
  std::uint64_t window = 10'000;
  std::string format = "human";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string cache;
  bool strict = false;
  bool full = false;

  OutputFormat output() const { return *format::parse_format(format); }
};

// Loads the memo named by --cache / COLLATZ_LAB_CACHE, if any.
struct CacheSession {
  std::optional<std::filesystem::path> path;
  MemoTable table;
  std::size_t entries_before = 0;

  explicit CacheSession(const Globals& g) {
    std::string p = g.cache;
    if (p.empty()) {
      if (const char* env = std::getenv("COLLATZ_LAB_CACHE")) p = env;
    }
    if (p.empty()) return;
    path = p;
    if (std::filesystem::exists(*path)) table = load(*path);
    entries_before = table.size();
  }
  MemoTable* memo() { return path ? &table : nullptr; }
  void persist() {
    if (path) save(table, *path);
  }
};

Json json_list(const std::vector<Nat>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

void print_sequence(const Globals& g, const std::string& n_text, const std::string& label,
                    const std::vector<Nat>& values, Json extra) {
  switch (g.output()) {
    case OutputFormat::Json: {
      Json j;
      j["n"] = n_text;
      for (auto& [k, v] : extra.items()) j[k] = v;
      j[label] = json_list(values);
      std::cout << j.dump() << '\n';
      break;
    }
    case OutputFormat::Csv:
      std::cout << "step,value\n";
      for (std::size_t i = 0; i < values.size(); ++i) std::cout << i + 1 << ',' << to_string(values[i]) << '\n';
      break;
    case OutputFormat::HumanTable:
      std::cout << "n        " << n_text << '\n';
      for (auto& [k, v] : extra.items()) {
        std::cout << k << std::string(k.size() < 9 ? 9 - k.size() : 1, ' ')
                  << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      }
      std::cout << label << std::string(label.size() < 9 ? 9 - label.size() : 1, ' ')
                << format::join_values(values, g.full ? 0 : 20) << '\n';
      break;
  }
}

int cmd_traj(const Globals& g, const std::string& n_text) {
  const Nat n = parse_nat(n_text);
  const Trajectory t = trajectory(n, g.max_steps);
  Json extra;
  extra["steps"] = t.steps_taken();
  extra["status"] = t.converged() ? "converged" : "cap_exceeded";
  extra["peak"] = to_string(t.peak);
  print_sequence(g, n_text, "elements", t.elements, extra);
  return kExitOk;
}

int cmd_order(const Globals& g, const std::string& n_text) {
  const Nat n = parse_nat(n_text);
  CacheSession cache(g);
  const OrderIndex oi = cache.memo() ? order_index_memo(n, g.max_steps, *cache.memo())
                                     : order_index(n, g.max_steps);
  cache.persist();
  const std::string tau = oi.tau ? std::to_string(*oi.tau) : "";
  const std::string ind = oi.ind ? std::to_string(*oi.ind) : "";
  const std::string status = oi.is_converged() ? "converged" : "cap_exceeded";
  switch (g.output()) {
    case OutputFormat::Json:
      std::cout << format::order_json(n, oi).dump() << '\n';
      break;
    case OutputFormat::Csv:
      std::cout << "n,tau,ind,status\n" << to_string(n) << ',' << tau << ',' << ind << ',' << status << '\n';
      break;
    case OutputFormat::HumanTable:
      std::cout << "n       " << to_string(n) << "\ntau     " << (tau.empty() ? "-" : tau)
                << "\nInd     " << (ind.empty() ? "-" : ind) << "\nstatus  " << status << '\n';
      break;
  }
  return kExitOk;
}

int cmd_speed(const Globals& g, const std::string& n_text, std::uint64_t j, std::uint64_t k) {
  const Nat n = parse_nat(n_text);
  const SpeedValue nu = relative_speed(n, j, k);
  switch (g.output()) {
    case OutputFormat::Json: {
      Json out;
      out["n"] = to_string(n);
      out["j"] = j;
      out["k"] = k;
      out["nu"] = nu.to_string();
      std::cout << out.dump() << '\n';
      break;
    }
    case OutputFormat::Csv:
      std::cout << "n,j,k,nu\n" << to_string(n) << ',' << j << ',' << k << ',' << nu.to_string() << '\n';
      break;
    case OutputFormat::HumanTable:
      std::cout << nu.to_string() << '\n';
      break;
  }
  return kExitOk;
}

int cmd_backward(const Globals& g, const std::string& n_text, const std::string& policy_text) {
  const auto policy = parse_policy(policy_text);
  if (!policy) throw DomainError("unknown policy '" + policy_text + "' (even, greedy or level)");
  const BackwardChain chain = backward_chain(parse_nat(n_text), g.depth, *policy);
  Json extra;
  extra["policy"] = std::string(to_string(*policy));
  extra["depth"] = chain.depth();
  print_sequence(g, n_text, "elements", chain.elements, extra);
  return kExitOk;
}

int cmd_translate(const Globals& g, const std::string& n_text, const std::string& policy_text) {
  const auto policy = parse_policy(policy_text);
  if (!policy) throw DomainError("unknown policy '" + policy_text + "' (even, greedy or level)");
  const std::vector<Nat> c = translated_chain(parse_nat(n_text), g.depth, *policy);
  Json extra;
  extra["policy"] = std::string(to_string(*policy));
  extra["depth"] = c.size();
  Json pairs = Json::array();
  for (std::size_t i : consecutive_prime_pairs(c)) pairs.push_back(i + 1);
  extra["prime_pairs_at"] = pairs;
  print_sequence(g, n_text, "translate", c, extra);
  return kExitOk;
}

int cmd_generator(const Globals& g, const std::string& n_text) {
  const Nat n = parse_nat(n_text);
  const GeneratorVerdict v = classify_generator(n, g.depth);
  const std::string kind(to_string(v.kind));
  const std::string witness = v.witness ? to_string(*v.witness) : "";
  switch (g.output()) {
    case OutputFormat::Json: {
      Json out;
      out["n"] = to_string(n);
      out["verdict"] = kind;
      out["depth"] = v.depth;
      out["witness"] = v.witness ? Json(witness) : Json(nullptr);
      std::cout << out.dump() << '\n';
      break;
    }
    case OutputFormat::Csv:
      std::cout << "n,verdict,depth,witness\n" << to_string(n) << ',' << kind << ',' << v.depth << ','
                << witness << '\n';
      break;
    case OutputFormat::HumanTable:
      std::cout << "n        " << to_string(n) << "\nverdict  " << kind << "\ndepth    " << v.depth << '\n';
      if (v.witness) std::cout << "witness  " << witness << '\n';
      break;
  }
  return kExitOk;
}

int cmd_sumlog(const Globals& g, const std::string& n_text, std::uint64_t terms) {
  const Nat n = parse_nat(n_text);
  const std::vector<double> sums = log_sum_partial(n, terms);
  auto fixed = [](double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", x);
    return std::string(buf);
  };
  switch (g.output()) {
    case OutputFormat::Json: {
      Json out;
      out["n"] = to_string(n);
      out["terms"] = terms;
      Json arr = Json::array();
      for (double s : sums) arr.push_back(fixed(s));
      out["partial_sums"] = arr;
      std::cout << out.dump() << '\n';
      break;
    }
    case OutputFormat::Csv:
      std::cout << "t,partial_sum\n";
      for (std::size_t i = 0; i < sums.size(); ++i) std::cout << i + 1 << ',' << fixed(sums[i]) << '\n';
      break;
    case OutputFormat::HumanTable: {
      const std::size_t shown = g.full ? sums.size() : std::min<std::size_t>(sums.size(), 20);
      for (std::size_t i = 0; i < shown; ++i) std::cout << "S_" << i + 1 << " = " << fixed(sums[i]) << '\n';
      if (shown < sums.size()) std::cout << "... (" << sums.size() - shown << " more)\n";
      break;
    }
  }
  return kExitOk;
}

int cmd_claims_list(const Globals& g) {
  const auto& specs = claims::list_claims();
  switch (g.output()) {
    case OutputFormat::Json: {
      Json arr = Json::array();
      for (const auto& s : specs) {
        Json j;
        j["id"] = s.id;
        j["statement"] = s.anchor;
        j["policy"] = s.policy ? Json(std::string(to_string(*s.policy))) : Json(nullptr);
        j["predicate_kind"] = std::string(to_string(s.predicate_kind));
        j["bounded_semantics"] = s.bounded_semantics;
        arr.push_back(j);
      }
      std::cout << arr.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv:
      std::cout << "id,policy,predicate_kind,statement\n";
      for (const auto& s : specs) {
        std::cout << s.id << ',' << (s.policy ? std::string(to_string(*s.policy)) : "") << ','
                  << to_string(s.predicate_kind) << ',' << format::csv_escape(s.anchor) << '\n';
      }
      break;
    case OutputFormat::HumanTable:
      for (const auto& s : specs) {
        std::string id = s.id;
        id.resize(std::max<std::size_t>(id.size(), 11), ' ');
        std::string kind(to_string(s.predicate_kind));
        kind.resize(13, ' ');
        std::cout << id << ' ' << kind << ' ' << s.anchor << '\n';
      }
      break;
  }
  return kExitOk;
}

int cmd_claims_run(const Globals& g, const std::string& which, const std::string& range_text) {
  const claims::Range range = claims::parse_range(range_text);
  const claims::Budget budget{g.max_steps, g.depth, g.window};
  CacheSession cache(g);
  claims::RunOptions options;
  options.threads = g.threads;
  options.memo = cache.memo();

  std::vector<claims::ClaimReport> reports;
  if (which == "all") {
    reports = claims::run_all(range, budget, options);
  } else {
    reports.push_back(claims::run_claim(which, range, budget, options));
  }
  cache.persist();

  switch (g.output()) {
    case OutputFormat::Json:
      if (which == "all") {
        std::cout << format::reports_json(reports).dump(2) << '\n';
      } else {
        std::cout << format::report_json(reports.front()).dump(2) << '\n';
      }
      break;
    case OutputFormat::Csv:
      std::cout << format::csv_header() << '\n';
      for (const auto& r : reports) std::cout << format::csv_row(r) << '\n';
      break;
    case OutputFormat::HumanTable:
      for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) std::cout << '\n';
        std::cout << format::human_report(reports[i]);
      }
      break;
  }
  const bool any = std::any_of(reports.begin(), reports.end(),
                               [](const auto& r) { return r.counterexample_total > 0; });
  return g.strict && any ? kExitCounterexamples : kExitOk;
}

struct ScanChunk {
  std::uint64_t converged = 0;
  std::uint64_t capped = 0;
  std::uint64_t max_tau = 0, max_tau_at = 0;
  std::uint64_t max_ind = 0, max_ind_at = 0;
  std::vector<std::pair<std::uint64_t, OrderIndex>> rows;
};

int cmd_scan(const Globals& g, const std::string& range_text) {
  const claims::Range range = claims::parse_range(range_text);
  if (range.lo == 0 || range.hi < range.lo) throw DomainError("range must satisfy 1 <= lo <= hi");
  CacheSession cache(g);
  const bool keep_rows = g.output() == OutputFormat::Csv;
  auto chunks = map_chunks<ScanChunk>(range.lo, range.hi, g.threads, [&](std::uint64_t a, std::uint64_t b) {
    ScanChunk c;
    for (std::uint64_t n = a; n <= b; ++n) {
      const OrderIndex oi = cache.memo() ? order_index_memo(from_u64(n), g.max_steps, *cache.memo())
                                         : order_index(from_u64(n), g.max_steps);
      if (keep_rows) c.rows.emplace_back(n, oi);
      if (!oi.is_converged()) {
        ++c.capped;
        continue;
      }
      ++c.converged;
      if (*oi.tau > c.max_tau) c.max_tau = *oi.tau, c.max_tau_at = n;
      if (*oi.ind > c.max_ind) c.max_ind = *oi.ind, c.max_ind_at = n;
    }
    return c;
  });
  ScanChunk total;
  for (auto& c : chunks) {
    total.converged += c.converged;
    total.capped += c.capped;
    if (c.max_tau > total.max_tau) total.max_tau = c.max_tau, total.max_tau_at = c.max_tau_at;
    if (c.max_ind > total.max_ind) total.max_ind = c.max_ind, total.max_ind_at = c.max_ind_at;
    for (auto& row : c.rows) total.rows.push_back(row);
  }
  cache.persist();

  switch (g.output()) {
    case OutputFormat::Json: {
      Json out;
      out["range"] = Json{{"lo", std::to_string(range.lo)}, {"hi", std::to_string(range.hi)}};
      out["max_steps"] = g.max_steps;
      out["checked"] = range.size();
      out["converged"] = total.converged;
      out["cap_exceeded"] = total.capped;
      out["max_tau"] = total.max_tau;
      out["max_tau_at"] = std::to_string(total.max_tau_at);
      out["max_ind"] = total.max_ind;
      out["max_ind_at"] = std::to_string(total.max_ind_at);
      std::cout << out.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv:
      std::cout << "n,tau,ind,status\n";
      for (const auto& [n, oi] : total.rows) {
        std::cout << n << ',' << (oi.tau ? std::to_string(*oi.tau) : "") << ','
                  << (oi.ind ? std::to_string(*oi.ind) : "") << ','
                  << (oi.is_converged() ? "converged" : "cap_exceeded") << '\n';
      }
      break;
    case OutputFormat::HumanTable:
      std::cout << "range         " << range.lo << ".." << range.hi << '\n'
                << "converged     " << total.converged << '\n'
                << "cap exceeded  " << total.capped << '\n'
                << "max tau       " << total.max_tau << " (n = " << total.max_tau_at << ")\n"
                << "max Ind       " << total.max_ind << " (n = " << total.max_ind_at << ")\n";
      if (cache.path) {
        std::cout << "cache         " << cache.path->string() << ": " << cache.entries_before << " -> "
                  << cache.table.size() << " entries\n";
      }
      break;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collatz process lab"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--max-steps", g.max_steps, "forward step budget")->check(CLI::PositiveNumber);
  app.add_option("--depth", g.depth, "backward depth budget")->check(CLI::PositiveNumber);
  app.add_option("--window", g.window, "orbit window for existential checks")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "human, json or csv")->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache", g.cache, "memo file (default: $COLLATZ_LAB_CACHE)");
  app.add_flag("--strict", g.strict, "exit 1 when a claim reports counterexamples");
  app.add_flag("--full", g.full, "do not truncate sequences in human output");

  std::string n_text, policy = "greedy", range_text, claim_id;
  std::uint64_t j = 0, k = 0, terms = 20;
  std::function<int()> action;

  auto* traj = app.add_subcommand("traj", "forward trajectory")->fallthrough();
  traj->add_option("n", n_text)->required();
  traj->callback([&] { action = [&] { return cmd_traj(g, n_text); }; });

  auto* order = app.add_subcommand("order", "order tau and index Ind")->fallthrough();
  order->add_option("n", n_text)->required();
  order->callback([&] { action = [&] { return cmd_order(g, n_text); }; });

  auto* speed = app.add_subcommand("speed", "relative speed nu(f^j(n), f^k(n))")->fallthrough();
  speed->add_option("n", n_text)->required();
  speed->add_option("j", j)->required();
  speed->add_option("k", k)->required();
  speed->callback([&] { action = [&] { return cmd_speed(g, n_text, j, k); }; });

  auto* backward = app.add_subcommand("backward", "backward chain")->fallthrough();
  backward->add_option("n", n_text)->required();
  backward->add_option("--policy", policy, "even, greedy or level");
  backward->callback([&] { action = [&] { return cmd_backward(g, n_text, policy); }; });

  auto* generator = app.add_subcommand("generator", "generator classification")->fallthrough();
  generator->add_option("n", n_text)->required();
  generator->callback([&] { action = [&] { return cmd_generator(g, n_text); }; });

  auto* translate = app.add_subcommand("translate", "unit left translate of a backward chain")->fallthrough();
  translate->add_option("n", n_text)->required();
  translate->add_option("--policy", policy, "even, greedy or level (default even)");
  translate->callback([&] { action = [&] { return cmd_translate(g, n_text, policy); }; });

  auto* sumlog = app.add_subcommand("sumlog", "partial sums of ln f^s(n)")->fallthrough();
  sumlog->add_option("n", n_text)->required();
  sumlog->add_option("--terms", terms, "number of terms")->check(CLI::PositiveNumber);
  sumlog->callback([&] { action = [&] { return cmd_sumlog(g, n_text, terms); }; });

  auto* claims_cmd = app.add_subcommand("claims", "claim registry and runner")->fallthrough();
  claims_cmd->require_subcommand(1);
  auto* list = claims_cmd->add_subcommand("list", "registered claims")->fallthrough();
  list->callback([&] { action = [&] { return cmd_claims_list(g); }; });
  auto* run = claims_cmd->add_subcommand("run", "run one claim or all")->fallthrough();
  run->add_option("id", claim_id, "claim id or 'all'")->required();
  run->add_option("--range", range_text, "lo..hi")->required();
  run->callback([&] { action = [&] { return cmd_claims_run(g, claim_id, range_text); }; });

  auto* scan = app.add_subcommand("scan", "bulk order/index over a range")->fallthrough();
  scan->add_option("--range", range_text, "lo..hi")->required();
  scan->callback([&] { action = [&] { return cmd_scan(g, range_text); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  // translate defaults to EvenDoubling unless --policy was given.
  if (translate->parsed() && translate->get_option("--policy")->count() == 0) policy = "even";

  try {
    return action();
  } catch (const claims::UnknownClaimError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return kExitResource;
  } catch (const CacheError& e) {
    std::cerr << "cache error: " << e.what() << '\n';
    return kExitResource;
  }
}
