#pragma once

// Registry of executable claims about Collatz processes and the range runner
// that evaluates them.
//
// Every claim quantifies over something infinite (a whole orbit, a whole
// backward chain, all depths). Runs truncate those quantifiers to the budget:
// universal statements that survive the window are AllVerified (within
// budget); existential statements with no witness inside the window are
// Inconclusive unless the whole process is known (it reached 1), in which
// case a missing witness is a genuine counterexample.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "collatz_lab/backward.hpp"
#include "collatz_lab/cache.hpp"
#include "collatz_lab/nat.hpp"

namespace collatz_lab::claims {

enum class PredicateKind { PerInteger, PerPrime, PerGenerator, PerPair, Structural };

std::string_view to_string(PredicateKind kind);

struct ClaimSpec {
  std::string id;
  /// The statement being tested, in formal shorthand.
  std::string anchor;
  std::optional<BackwardPolicy> policy;
  PredicateKind predicate_kind = PredicateKind::PerInteger;
  /// How infinite quantifiers are truncated for this claim.
  std::string bounded_semantics;
};

/// The full registry in stable order.
const std::vector<ClaimSpec>& list_claims();
std::optional<ClaimSpec> find_claim(std::string_view id);

struct Range {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  std::uint64_t size() const { return hi - lo + 1; }
  friend bool operator==(const Range&, const Range&) = default;
};

/// Parses "lo..hi". Throws DomainError on malformed text.
Range parse_range(std::string_view text);

struct Budget {
  std::uint64_t max_steps = kDefaultMaxSteps;
  std::size_t depth = 64;
  std::uint64_t window = 10'000;

  friend bool operator==(const Budget&, const Budget&) = default;
};

struct RunOptions {
  unsigned threads = 1;
  /// Optional shared memo for order/index work; never changes results.
  MemoTable* memo = nullptr;
  /// Counterexamples and inconclusive entries kept verbatim per report; the
  /// totals are always exact.
  std::size_t max_recorded = 1000;
};

/// A counterexample or inconclusive entry. `inputs` holds the raw values so a
/// test can re-verify the entry independently.
struct Finding {
  std::vector<Nat> inputs;
  std::string input;
  std::string detail;
};

enum class Verdict { AllVerified, CounterexamplesFound, Inconclusive };

std::string_view to_string(Verdict verdict);

using Statistic = std::variant<std::uint64_t, std::string>;

struct ClaimReport {
  std::string id;
  std::optional<BackwardPolicy> policy;
  Range range;
  Budget budget;
  std::uint64_t checked = 0;
  std::uint64_t counterexample_total = 0;
  std::vector<Finding> counterexamples;
  std::uint64_t inconclusive_total = 0;
  std::vector<Finding> inconclusive;
  std::map<std::string, Statistic> statistics;
  std::vector<std::string> notes;
  Verdict verdict = Verdict::AllVerified;
  std::chrono::duration<double> elapsed{0};
};

/// Throws UnknownClaimError for an unregistered id and DomainError for an
/// empty or zero-based range.
ClaimReport run_claim(std::string_view id, Range range, const Budget& budget,
                      const RunOptions& options = {});

/// Every registered claim, ordered by id.
std::vector<ClaimReport> run_all(Range range, const Budget& budget,
                                 const RunOptions& options = {});

class UnknownClaimError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace collatz_lab::claims
