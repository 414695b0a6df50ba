#pragma once

// Preimages under the modified Collatz map and the backward processes built
// from them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "collatz_lab/nat.hpp"

namespace collatz_lab {

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

/// Members of f^{-1}(n). The fixed-point self-loop at 1 is excluded.
struct PreimageSet {
  Nat even_pre;                 // always 2n
  std::optional<Nat> odd_pre;   // (n - 1)/3 when integral, odd and > 1

  const Nat& min() const { return odd_pre ? *odd_pre : even_pre; }
};

PreimageSet preimages(const Nat& n);

/// How one element is picked from each backward level.
///  - EvenDoubling: always 2n, so level s is 2^s * base.
///  - GreedyMin: the smaller preimage of the previous pick.
///  - LevelMin: exact minimum of the whole s-th iterated preimage set.
enum class BackwardPolicy { EvenDoubling, GreedyMin, LevelMin };

std::string_view to_string(BackwardPolicy policy);
/// Accepts "even", "greedy", "level" and the enum spellings.
std::optional<BackwardPolicy> parse_policy(std::string_view text);

struct BackwardChain {
  Nat base;
  BackwardPolicy policy = BackwardPolicy::EvenDoubling;
  std::vector<Nat> elements;  // elements[s - 1] is the pick at depth s

  std::size_t depth() const { return elements.size(); }
  const Nat& at_depth(std::size_t s) const { return elements.at(s - 1); }
};

/// Throws ResourceError when LevelMin would expand more than node_budget nodes.
BackwardChain backward_chain(const Nat& base, std::size_t depth, BackwardPolicy policy,
                             std::size_t node_budget = kDefaultNodeBudget);

struct GeneratorVerdict {
  enum class Kind { Proved, Refuted, UndecidedUpToDepth };

  Kind kind = Kind::UndecidedUpToDepth;
  std::size_t depth = 0;       // refutation depth, or the depth searched
  std::optional<Nat> witness;  // first odd chain element when Refuted

  bool is_generator() const { return kind == Kind::Proved; }
};

std::string_view to_string(GeneratorVerdict::Kind kind);

/// Decides whether every backward element of base is even.
///
/// A multiple of 3 never has an odd preimage anywhere in its chain, so it is
/// Proved; the bounded chain scan still runs and must agree (a disagreement is
/// a logic_error). Otherwise the shallowest odd element refutes, and a clean
/// scan is UndecidedUpToDepth. EvenDoubling is rejected since its chains are
/// even by construction.
GeneratorVerdict classify_generator(const Nat& base, std::size_t depth,
                                    BackwardPolicy policy = BackwardPolicy::GreedyMin,
                                    std::size_t node_budget = kDefaultNodeBudget);

/// Unit left translate of the backward chain: each element minus one.
std::vector<Nat> translated_chain(const Nat& base, std::size_t depth, BackwardPolicy policy,
                                  std::size_t node_budget = kDefaultNodeBudget);

/// First common value of the forward processes of a and b, minimizing s and
/// then t, where value == f^s(a) == f^t(b) and s, t <= window.
struct Overlap {
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  Nat value;
};

std::optional<Overlap> process_overlap(const Nat& a, const Nat& b, std::uint64_t window);

}  // namespace collatz_lab
