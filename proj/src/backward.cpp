#include "collatz_lab/backward.hpp"

#include <algorithm>
#include <unordered_map>

#include "collatz_lab/core.hpp"

namespace collatz_lab {
namespace {

void require_positive(const Nat& n, const char* what) {
  if (sgn(n) <= 0) throw DomainError(std::string(what) + ": argument must be >= 1");
}

void require_depth(std::size_t depth, const char* what) {
  if (depth == 0) throw DomainError(std::string(what) + ": depth must be >= 1");
}

bool divisible_by_3(const Nat& n) { return mpz_divisible_ui_p(n.get_mpz_t(), 3) != 0; }

std::vector<Nat> even_doubling(const Nat& base, std::size_t depth) {
  std::vector<Nat> out;
  out.reserve(depth);
  Nat x = base;
  for (std::size_t s = 0; s < depth; ++s) {
    x <<= 1;
    out.push_back(x);
  }
  return out;
}

std::vector<Nat> greedy_min(const Nat& base, std::size_t depth) {
  std::vector<Nat> out;
  out.reserve(depth);
  Nat x = base;
  for (std::size_t s = 0; s < depth; ++s) {
    x = preimages(x).min();
    out.push_back(x);
  }
  return out;
}

// Breadth-first walk of the iterated preimage tree. A node v at level t has
// no descendant at level s below floor(v / 3^(s - t)), since the odd preimage
// (v - 1)/3 equals floor(v / 3) and the even one only grows. Nodes whose bound
// exceeds the best known member of every deeper level are dropped.
std::vector<Nat> level_min(const Nat& base, std::size_t depth, std::size_t node_budget) {
  // best[s - 1] is a known member of level s; seeded by the greedy chain.
  std::vector<Nat> best = greedy_min(base, depth);

  std::vector<Nat> pow3(depth + 1);
  pow3[0] = 1;
  for (std::size_t i = 1; i <= depth; ++i) pow3[i] = pow3[i - 1] * 3;

  std::vector<Nat> frontier{base};
  std::vector<Nat> next;
  std::size_t expanded = 0;
  for (std::size_t level = 1; level <= depth; ++level) {
    next.clear();
    for (const Nat& v : frontier) {
      PreimageSet pre = preimages(v);
      next.push_back(std::move(pre.even_pre));
      if (pre.odd_pre) next.push_back(std::move(*pre.odd_pre));
    }
    expanded += next.size();
    if (expanded > node_budget) {
      throw ResourceError("backward_chain: LevelMin node budget of " +
                          std::to_string(node_budget) + " exceeded at depth " +
                          std::to_string(level));
    }
    for (const Nat& c : next) {
      if (c < best[level - 1]) best[level - 1] = c;
    }
    if (level == depth) break;

    // Keep c iff floor(c / 3^d) <= best at some level + d, i.e.
    // c < (best + 1) * 3^d for some d.
    Nat keep_below = 0;
    for (std::size_t s = level + 1; s <= depth; ++s) {
      Nat bound = (best[s - 1] + 1) * pow3[s - level];
      if (bound > keep_below) keep_below = std::move(bound);
    }
    frontier.clear();
    for (Nat& c : next) {
      if (c < keep_below) frontier.push_back(std::move(c));
    }
  }
  return best;
}

}  // namespace

PreimageSet preimages(const Nat& n) {
  require_positive(n, "preimages");
  PreimageSet out;
  out.even_pre = n * 2;
  Nat m = n - 1;
  if (mpz_divisible_ui_p(m.get_mpz_t(), 3)) {
    Nat q = m / 3;
    if (mpz_odd_p(q.get_mpz_t()) && q > 1) out.odd_pre = std::move(q);
  }
  return out;
}

std::string_view to_string(BackwardPolicy policy) {
  switch (policy) {
    case BackwardPolicy::EvenDoubling:
      return "EvenDoubling";
    case BackwardPolicy::GreedyMin:
      return "GreedyMin";
    case BackwardPolicy::LevelMin:
      return "LevelMin";
  }
  return "?";
}

std::optional<BackwardPolicy> parse_policy(std::string_view text) {
  if (text == "even" || text == "EvenDoubling") return BackwardPolicy::EvenDoubling;
  if (text == "greedy" || text == "GreedyMin") return BackwardPolicy::GreedyMin;
  if (text == "level" || text == "LevelMin") return BackwardPolicy::LevelMin;
  return std::nullopt;
}

BackwardChain backward_chain(const Nat& base, std::size_t depth, BackwardPolicy policy,
                             std::size_t node_budget) {
  require_positive(base, "backward_chain");
  require_depth(depth, "backward_chain");

  BackwardChain chain;
  chain.base = base;
  chain.policy = policy;
  switch (policy) {
    case BackwardPolicy::EvenDoubling:
      chain.elements = even_doubling(base, depth);
      break;
    case BackwardPolicy::GreedyMin:
      chain.elements = greedy_min(base, depth);
      break;
    case BackwardPolicy::LevelMin:
      chain.elements = level_min(base, depth, node_budget);
      break;
  }
  return chain;
}

std::string_view to_string(GeneratorVerdict::Kind kind) {
  switch (kind) {
    case GeneratorVerdict::Kind::Proved:
      return "Proved";
    case GeneratorVerdict::Kind::Refuted:
      return "Refuted";
    case GeneratorVerdict::Kind::UndecidedUpToDepth:
      return "UndecidedUpToDepth";
  }
  return "?";
}

GeneratorVerdict classify_generator(const Nat& base, std::size_t depth, BackwardPolicy policy,
                                    std::size_t node_budget) {
  require_positive(base, "classify_generator");
  require_depth(depth, "classify_generator");
  if (policy == BackwardPolicy::EvenDoubling) {
    throw DomainError("classify_generator: EvenDoubling chains are even by construction");
  }

  const bool shortcut = divisible_by_3(base);

  // First odd element of the chain, scanned depth by depth.
  std::optional<std::pair<std::size_t, Nat>> first_odd;
  if (policy == BackwardPolicy::GreedyMin) {
    Nat x = base;
    for (std::size_t s = 1; s <= depth; ++s) {
      x = preimages(x).min();
      if (mpz_odd_p(x.get_mpz_t())) {
        first_odd.emplace(s, x);
        break;
      }
    }
  } else {
    const BackwardChain chain = backward_chain(base, depth, policy, node_budget);
    for (std::size_t s = 1; s <= chain.depth(); ++s) {
      if (mpz_odd_p(chain.at_depth(s).get_mpz_t())) {
        first_odd.emplace(s, chain.at_depth(s));
        break;
      }
    }
  }

  GeneratorVerdict verdict;
  if (shortcut) {
    if (first_odd) {
      throw std::logic_error("classify_generator: multiple of 3 produced odd element " +
                             collatz_lab::to_string(first_odd->second));
    }
    verdict.kind = GeneratorVerdict::Kind::Proved;
    verdict.depth = depth;
  } else if (first_odd) {
    verdict.kind = GeneratorVerdict::Kind::Refuted;
    verdict.depth = first_odd->first;
    verdict.witness = std::move(first_odd->second);
  } else {
    verdict.kind = GeneratorVerdict::Kind::UndecidedUpToDepth;
    verdict.depth = depth;
  }
  return verdict;
}

std::vector<Nat> translated_chain(const Nat& base, std::size_t depth, BackwardPolicy policy,
                                  std::size_t node_budget) {
  std::vector<Nat> out = backward_chain(base, depth, policy, node_budget).elements;
  for (Nat& x : out) x -= 1;
  return out;
}

std::optional<Overlap> process_overlap(const Nat& a, const Nat& b, std::uint64_t window) {
  if (window == 0) throw DomainError("process_overlap: window must be >= 1");
  const Trajectory ta = trajectory(a, window);
  const Trajectory tb = trajectory(b, window);

  // Truncated trajectories have no repeated values, so each maps to one step.
  std::unordered_map<Nat, std::uint64_t, NatHash> index_b;
  index_b.reserve(tb.elements.size());
  for (std::size_t i = 0; i < tb.elements.size(); ++i) index_b.emplace(tb.elements[i], i + 1);

  for (std::size_t i = 0; i < ta.elements.size(); ++i) {
    auto it = index_b.find(ta.elements[i]);
    if (it != index_b.end()) return Overlap{i + 1, it->second, ta.elements[i]};
  }
  return std::nullopt;
}

}  // namespace collatz_lab
