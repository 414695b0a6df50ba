#include "collatz_lab/claims.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <unordered_set>

#include "collatz_lab/core.hpp"
#include "collatz_lab/parallel.hpp"
#include "collatz_lab/primes.hpp"

namespace collatz_lab::claims {

using collatz_lab::to_string;

namespace {

using u64 = std::uint64_t;

// ---------------------------------------------------------------------------
// Registry

const std::vector<ClaimSpec>& registry() {
  using P = PredicateKind;
  constexpr auto kEven = BackwardPolicy::EvenDoubling;
  constexpr auto kGreedy = BackwardPolicy::GreedyMin;
  static const std::vector<ClaimSpec> specs = {
      {"C-P3", "b generator => every backward element Inf f^-s(b) is even", kGreedy,
       P::PerGenerator, "GreedyMin chain of each multiple of 3 scanned to `depth`"},
      {"C-P4", "b != 1 generator => b not in {f^s(b) : s >= 1}", kGreedy, P::PerGenerator,
       "orbit checked for 1 <= s <= window"},
      {"C-P5", "distinct generators never share a forward process", kGreedy, P::PerPair,
       "generator pairs within the range; processes truncated to window and compared as sets"},
      {"C-P6", "b != 1 generator => b odd", kGreedy, P::PerGenerator,
       "generator status decided by GreedyMin classification to `depth`"},
      {"C-P7", "a > 1 even, a = 2r, r odd, Omega(a) = 2 => f(r) - 1 = 3 f(a)", std::nullopt,
       P::PerInteger, "exact identity, one evaluation per eligible a"},
      {"C-T8", "p > 3 prime, p = 3 (mod 4), Ind(p) > 1 => tau(p) > 1", std::nullopt,
       P::PerPrime, "order/index within max_steps; budget hits are inconclusive"},
      {"C-P9", "b convergent, tau(b) >= 2 => Ind(b) > 1", std::nullopt, P::PerInteger,
       "order/index within max_steps; budget hits are inconclusive"},
      {"C-P10", "full processes that intersect are equal and share their generator", kGreedy,
       P::PerPair,
       "generator pairs within the range; processes truncated to window; any common value "
       "between distinct generators is a counterexample"},
      {"C-P11", "trivial generator: Inf f^-n(1) - 1 = 2^n - 1", kEven, P::Structural,
       "base 1, depths 1..depth (range-independent)"},
      {"C-INDTAU", "full convergent process: b prime <=> Ind(b) = tau(b) + 1", kGreedy,
       P::PerGenerator, "order/index within max_steps; budget hits are inconclusive"},
      {"C-T12",
       "consecutive primes c_k, c_(k+1) in the unit left translate => c_k is Sophie Germain",
       kEven, P::Structural,
       "every base in the range, depths 1..depth; also checks c_(s+1) = 2 c_s + 1"},
      {"C-T13", "the unit left translate of a full process contains a prime", kEven,
       P::PerGenerator, "first prime searched to `depth`; none found is inconclusive"},
      {"C-DENSITY", "primes have density 1 in the unit left translate of a full process", kEven,
       P::PerGenerator, "finite-depth prime ratios only; never more than inconclusive"},
      {"C-MU", "p > 2 prime, p = 3 (mod 4) => some f^s(p) has mu != 0", std::nullopt,
       P::PerPrime,
       "witness searched for s <= window; a fully known orbit without witness is a "
       "counterexample"},
      {"C-ODDPRIME", "a full process contains an odd prime", kGreedy, P::PerGenerator,
       "witness searched for s <= window; a fully known orbit without witness is a "
       "counterexample"},
      {"C-OMEGA", "a full process has generator a with Omega(a) <= 2", kGreedy,
       P::PerGenerator, "exact factorization of each generator"},
      {"C-SPEED1", "some 1 <= j < k has nu(f^j(b), f^k(b)) = 2^r, r >= 0", std::nullopt,
       P::PerInteger,
       "minimal witness by (k, j) with k <= window; a fully known orbit without witness is "
       "a counterexample"},
      {"C-SPEED2", "some k >= 1 has 2^r <= nu(f^(k+1)(b), f^k(b)) <= 2^m", std::nullopt,
       P::PerInteger, "minimal k <= window with nu >= 1 (see report notes)"},
      {"C-TAUFIN", "tau(a) < infinity", std::nullopt, P::PerInteger,
       "convergence within max_steps; budget hits are inconclusive"},
      {"C-SUMLOG", "sum_s ln f^s(b) is finite: partial sums stop growing exactly at the step "
       "the orbit reaches 1", std::nullopt, P::PerInteger,
       "orbit within max_steps; budget hits are inconclusive"},
  };
  return specs;
}

// ---------------------------------------------------------------------------
// Tally: per-chunk accumulator, folded left to right.

struct Extremum {
  Nat key;
  std::string shown;
  std::string at;
};

struct Tally {
  u64 checked = 0;
  u64 counterexample_total = 0;
  std::vector<Finding> counterexamples;
  u64 inconclusive_total = 0;
  std::vector<Finding> inconclusive;
  std::map<std::string, u64> counters;
  std::map<std::string, Extremum> maxima;
  std::map<std::string, std::vector<std::string>> samples;

  std::size_t cap = 1000;

  void counterexample(Finding f) {
    ++counterexample_total;
    if (counterexamples.size() < cap) counterexamples.push_back(std::move(f));
  }
  void undecided(Finding f) {
    ++inconclusive_total;
    if (inconclusive.size() < cap) inconclusive.push_back(std::move(f));
  }
  void count(const std::string& name, u64 by = 1) { counters[name] += by; }
  void maximum(const std::string& name, const Nat& key, std::string shown, std::string at) {
    auto it = maxima.find(name);
    if (it == maxima.end() || key > it->second.key) {
      maxima[name] = Extremum{key, std::move(shown), std::move(at)};
    }
  }
  void sample(const std::string& name, std::string value) {
    auto& list = samples[name];
    if (list.size() < 20) list.push_back(std::move(value));
  }

  void absorb(Tally&& later) {
    checked += later.checked;
    counterexample_total += later.counterexample_total;
    for (auto& f : later.counterexamples) {
      if (counterexamples.size() < cap) counterexamples.push_back(std::move(f));
    }
    inconclusive_total += later.inconclusive_total;
    for (auto& f : later.inconclusive) {
      if (inconclusive.size() < cap) inconclusive.push_back(std::move(f));
    }
    for (auto& [k, v] : later.counters) counters[k] += v;
    for (auto& [k, e] : later.maxima) maximum(k, e.key, std::move(e.shown), std::move(e.at));
    for (auto& [k, list] : later.samples) {
      for (auto& v : list) sample(k, std::move(v));
    }
  }
};

struct Context {
  Range range;
  Budget budget;
  RunOptions options;
};

Finding finding(const Nat& n, std::string detail) {
  return Finding{{n}, to_string(n), std::move(detail)};
}

Finding pair_finding(const Nat& a, const Nat& b, std::string detail) {
  return Finding{{a, b}, "(" + to_string(a) + ", " + to_string(b) + ")", std::move(detail)};
}

std::string join(const std::vector<Nat>& values, std::size_t limit = 40) {
  std::string out;
  const std::size_t shown = std::min(limit, values.size());
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += to_string(values[i]);
  }
  if (values.size() > shown) out += ", ... (" + std::to_string(values.size()) + " elements)";
  return out;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

std::string render_factors(const FactorMultiset& f) {
  if (f.factors.empty()) return "1";
  std::string out;
  for (const auto& pp : f.factors) {
    if (!out.empty()) out += " * ";
    out += to_string(pp.prime);
    if (pp.exponent > 1) out += "^" + std::to_string(pp.exponent);
  }
  return out;
}

OrderIndex order_of(u64 n, const Context& ctx) {
  if (ctx.options.memo) return order_index_memo(from_u64(n), ctx.budget.max_steps, *ctx.options.memo);
  return order_index(from_u64(n), ctx.budget.max_steps);
}

// Generator status under GreedyMin; Undecided is recorded as inconclusive.
std::optional<bool> generator_status(const Nat& n, const Context& ctx, Tally& tally) {
  const GeneratorVerdict v = classify_generator(n, ctx.budget.depth, BackwardPolicy::GreedyMin);
  switch (v.kind) {
    case GeneratorVerdict::Kind::Proved:
      tally.count("generators");
      return true;
    case GeneratorVerdict::Kind::Refuted:
      return false;
    case GeneratorVerdict::Kind::UndecidedUpToDepth:
      tally.undecided(finding(n, "generator status undecided: GreedyMin chain all even to depth " +
                                     std::to_string(ctx.budget.depth)));
      return std::nullopt;
  }
  return std::nullopt;
}

std::string generator_evidence(const Nat& n, std::size_t depth) {
  const auto chain = backward_chain(n, std::min<std::size_t>(depth, 3), BackwardPolicy::GreedyMin);
  return "3 | " + to_string(n) + ", GreedyMin chain " + join(chain.elements) +
         ", ... has no odd element (scanned to depth " + std::to_string(depth) + ")";
}

using PerInput = std::function<void(u64, const Context&, Tally&)>;

Tally scan(const Context& ctx, const PerInput& body) {
  auto chunks = map_chunks<Tally>(ctx.range.lo, ctx.range.hi, ctx.options.threads,
                                  [&](u64 first, u64 last) {
                                    Tally t;
                                    t.cap = ctx.options.max_recorded;
                                    for (u64 n = first; n <= last; ++n) body(n, ctx, t);
                                    return t;
                                  });
  Tally total;
  total.cap = ctx.options.max_recorded;
  for (auto& c : chunks) total.absorb(std::move(c));
  return total;
}

// ---------------------------------------------------------------------------
// Per-claim predicates

void p3(u64 n, const Context& ctx, Tally& t) {
  if (n % 3 != 0) {
    t.count("ineligible");
    return;
  }
  ++t.checked;
  Nat x = from_u64(n);
  for (std::size_t s = 1; s <= ctx.budget.depth; ++s) {
    x = preimages(x).min();
    if (mpz_odd_p(x.get_mpz_t())) {
      t.counterexample(finding(from_u64(n), "GreedyMin element at depth " + std::to_string(s) +
                                                " is odd: " + to_string(x)));
      return;
    }
  }
}

void p4(u64 n, const Context& ctx, Tally& t) {
  const Nat b = from_u64(n);
  auto gen = generator_status(b, ctx, t);
  if (!gen || !*gen || n == 1) return;
  ++t.checked;
  const Trajectory tr = trajectory(b, ctx.budget.window);
  for (std::size_t s = 0; s < tr.elements.size(); ++s) {
    if (tr.elements[s] == b) {
      t.counterexample(finding(b, "f^" + std::to_string(s + 1) + "(b) = b"));
      return;
    }
  }
  if (!tr.converged()) t.count("orbits_truncated_at_window");
}

void p6(u64 n, const Context& ctx, Tally& t) {
  const Nat b = from_u64(n);
  auto gen = generator_status(b, ctx, t);
  if (!gen || !*gen || n == 1) return;
  ++t.checked;
  if (n % 2 == 0) {
    t.counterexample(finding(b, to_string(b) + " is even; " + generator_evidence(b, ctx.budget.depth)));
  }
}

void p7(u64 n, const Context&, Tally& t) {
  if (n <= 1 || n % 2 != 0 || (n / 2) % 2 != 1) {
    t.count("ineligible");
    return;
  }
  const Nat a = from_u64(n);
  if (factorize(a).big_omega() != 2) {
    t.count("ineligible");
    return;
  }
  ++t.checked;
  const Nat r = from_u64(n / 2);
  const Nat lhs = collatz_f(r) - 1;
  const Nat rhs = 3 * collatz_f(a);
  if (lhs != rhs) {
    t.counterexample(finding(a, "r = " + to_string(r) + ": f(r) - 1 = " + to_string(lhs) +
                                    " but 3 f(a) = " + to_string(rhs)));
  }
}

void t8(u64 n, const Context& ctx, Tally& t) {
  if (n <= 3 || n % 4 != 3 || !is_prime_u64(n)) return;
  ++t.checked;
  const Nat p = from_u64(n);
  const OrderIndex oi = order_of(n, ctx);
  if (!oi.is_converged()) {
    t.undecided(finding(p, "order not reached within " + std::to_string(ctx.budget.max_steps) + " steps"));
    return;
  }
  if (*oi.ind > 1) t.count("ind_gt_1");
  if (*oi.tau == 1) t.count("tau_eq_1");
  if (*oi.ind > 1 && *oi.tau <= 1) {
    t.counterexample(finding(p, "tau = " + std::to_string(*oi.tau) + ", Ind = " + std::to_string(*oi.ind)));
  }
  const OrderIndex alt = order_index(p, ctx.budget.max_steps, kDefaultMaxBits, OrderOrigin::FromOne);
  if (alt.is_converged() && *alt.ind > 1 && *alt.tau <= 1) t.count("violations_order_from_one");
}

void p9(u64 n, const Context& ctx, Tally& t) {
  const Nat b = from_u64(n);
  const OrderIndex oi = order_of(n, ctx);
  if (!oi.is_converged()) {
    t.undecided(finding(b, "order not reached within " + std::to_string(ctx.budget.max_steps) + " steps"));
    return;
  }
  ++t.checked;
  if (*oi.ind == 1) {
    t.count("ind_eq_1");
    t.sample("ind_eq_1_inputs", to_string(b) + " (tau = " + std::to_string(*oi.tau) + ")");
  }
  if (*oi.tau >= 2 && *oi.ind <= 1) {
    t.counterexample(finding(b, "tau = " + std::to_string(*oi.tau) + ", Ind = " + std::to_string(*oi.ind)));
  }
  const OrderIndex alt = order_index(b, ctx.budget.max_steps, kDefaultMaxBits, OrderOrigin::FromOne);
  if (alt.is_converged()) {
    if (*alt.ind == 1) t.sample("ind_eq_1_inputs_order_from_one", to_string(b));
    if (*alt.tau >= 2 && *alt.ind <= 1) t.count("violations_order_from_one");
  }
}

void indtau(u64 n, const Context& ctx, Tally& t) {
  const Nat b = from_u64(n);
  auto gen = generator_status(b, ctx, t);
  if (!gen || !*gen) return;
  const OrderIndex oi = order_of(n, ctx);
  if (!oi.is_converged()) {
    t.undecided(finding(b, "order not reached within " + std::to_string(ctx.budget.max_steps) + " steps"));
    return;
  }
  ++t.checked;
  const bool prime = is_prime_u64(n);
  const bool match = *oi.ind == *oi.tau + 1;
  if (prime) {
    t.count("prime_generators");
    t.sample("prime_generators_seen", to_string(b) + " (tau = " + std::to_string(*oi.tau) +
                                          ", Ind = " + std::to_string(*oi.ind) + ")");
  }
  if (match) t.count("ind_eq_tau_plus_1");
  if (prime != match) {
    t.counterexample(finding(b, std::string(prime ? "prime" : "composite") + ", tau = " +
                                    std::to_string(*oi.tau) + ", Ind = " + std::to_string(*oi.ind) +
                                    (match ? " = tau + 1" : " != tau + 1")));
  }
}

// Primality of each translated element; counts probable primes.
std::vector<bool> chain_primality(const std::vector<Nat>& chain, Tally& t, std::size_t limit) {
  std::vector<bool> out;
  out.reserve(limit);
  for (std::size_t i = 0; i < limit && i < chain.size(); ++i) {
    const Primality pr = primality(chain[i]);
    if (pr.prime && pr.probabilistic) t.count("probable_primes");
    out.push_back(pr.prime);
  }
  return out;
}

void t12(u64 n, const Context& ctx, Tally& t) {
  ++t.checked;
  const Nat b = from_u64(n);
  const std::vector<Nat> c = translated_chain(b, ctx.budget.depth, BackwardPolicy::EvenDoubling);
  for (std::size_t s = 0; s + 1 < c.size(); ++s) {
    if (c[s + 1] != 2 * c[s] + 1) {
      t.counterexample(finding(b, "c_" + std::to_string(s + 2) + " = " + to_string(c[s + 1]) +
                                      " != 2 c_" + std::to_string(s + 1) + " + 1"));
      return;
    }
  }
  const std::vector<bool> prime = chain_primality(c, t, c.size());
  for (std::size_t s = 0; s + 1 < c.size(); ++s) {
    if (!prime[s] || !prime[s + 1]) continue;
    t.count("consecutive_prime_pairs");
    if (!is_sophie_germain(c[s])) {
      t.counterexample(finding(b, "c_" + std::to_string(s + 1) + " = " + to_string(c[s]) +
                                      " and its successor are prime but it is not Sophie Germain"));
    }
  }
}

void t13(u64 n, const Context& ctx, Tally& t) {
  const Nat b = from_u64(n);
  auto gen = generator_status(b, ctx, t);
  if (!gen || !*gen) return;
  ++t.checked;
  Nat c = b;
  for (std::size_t s = 1; s <= ctx.budget.depth; ++s) {
    c = 2 * c + 1;  // c_s = 2^s b - 1
    const Primality pr = primality(c);
    if (pr.prime) {
      if (pr.probabilistic) t.count("probable_primes");
      t.maximum("max_first_prime_depth", Nat(static_cast<unsigned long>(s)), std::to_string(s), to_string(b));
      return;
    }
  }
  t.undecided(finding(b, "no prime among 2^s * " + to_string(b) + " - 1 for s <= " +
                             std::to_string(ctx.budget.depth)));
}

std::vector<std::size_t> density_checkpoints(std::size_t depth) {
  std::vector<std::size_t> out;
  for (std::size_t d = 8; d < depth; d *= 2) out.push_back(d);
  out.push_back(depth);
  return out;
}

void density(u64 n, const Context& ctx, Tally& t) {
  const Nat b = from_u64(n);
  auto gen = generator_status(b, ctx, t);
  if (!gen || !*gen) return;
  ++t.checked;
  const std::vector<Nat> c = translated_chain(b, ctx.budget.depth, BackwardPolicy::EvenDoubling);
  const std::vector<bool> prime = chain_primality(c, t, c.size());
  const auto checkpoints = density_checkpoints(ctx.budget.depth);
  std::size_t primes = 0;
  std::size_t next = 0;
  for (std::size_t s = 1; s <= c.size(); ++s) {
    if (prime[s - 1]) ++primes;
    if (s >= 2 && prime[s - 2] && prime[s - 1]) t.count("consecutive_prime_pairs");
    if (next < checkpoints.size() && s == checkpoints[next]) {
      t.count("prime_terms_to_depth_" + std::to_string(s), primes);
      ++next;
    }
  }
}

void mu(u64 n, const Context& ctx, Tally& t) {
  if (n <= 2 || n % 4 != 3 || !is_prime_u64(n)) return;
  ++t.checked;
  const Nat p = from_u64(n);
  const Trajectory tr = trajectory(p, ctx.budget.window);
  for (std::size_t s = 0; s < tr.elements.size(); ++s) {
    const Nat& v = tr.elements[s];
    if (bit_length(v) > kDefaultFactorBits) {
      t.count("unfactorable_elements");
      continue;
    }
    if (factorize(v).mobius() != 0) {
      t.maximum("max_witness_step", Nat(static_cast<unsigned long>(s + 1)), std::to_string(s + 1),
                to_string(p));
      return;
    }
  }
  if (tr.converged()) {
    t.counterexample(finding(p, "no squarefree element in orbit " + join(tr.elements)));
  } else {
    t.undecided(finding(p, "no squarefree element among the first " +
                               std::to_string(tr.elements.size()) + " orbit elements"));
  }
}

void oddprime(u64 n, const Context& ctx, Tally& t) {
  const Nat b = from_u64(n);
  auto gen = generator_status(b, ctx, t);
  if (!gen || !*gen) return;
  ++t.checked;
  const Trajectory tr = trajectory(b, ctx.budget.window);
  for (std::size_t s = 0; s < tr.elements.size(); ++s) {
    const Nat& v = tr.elements[s];
    if (!mpz_odd_p(v.get_mpz_t())) continue;
    const Primality pr = primality(v);
    if (pr.prime) {
      if (pr.probabilistic) t.count("probable_primes");
      t.maximum("max_witness_step", Nat(static_cast<unsigned long>(s + 1)), std::to_string(s + 1),
                to_string(b));
      return;
    }
  }
  if (tr.converged()) {
    t.counterexample(finding(b, "orbit " + join(tr.elements) + " contains no odd prime"));
  } else {
    t.undecided(finding(b, "no odd prime among the first " + std::to_string(tr.elements.size()) +
                               " orbit elements"));
  }
}

void omega(u64 n, const Context& ctx, Tally& t) {
  const Nat a = from_u64(n);
  auto gen = generator_status(a, ctx, t);
  if (!gen || !*gen) return;
  ++t.checked;
  const FactorMultiset f = factorize(a);
  if (f.big_omega() > 2) {
    t.counterexample(finding(a, to_string(a) + " = " + render_factors(f) +
                                    ", Omega = " + std::to_string(f.big_omega())));
  }
}

// Orbit values as uint64 when all of them fit.
std::optional<std::vector<u64>> small_values(const Trajectory& tr) {
  std::vector<u64> out;
  out.reserve(tr.elements.size());
  for (const Nat& v : tr.elements) {
    auto s = to_u64(v);
    if (!s) return std::nullopt;
    out.push_back(*s);
  }
  return out;
}

bool is_power_of_two_ratio(const Nat& diff, u64 gap) {
  if (sgn(diff) == 0 || !mpz_divisible_ui_p(diff.get_mpz_t(), gap)) return false;
  Nat q = diff / static_cast<unsigned long>(gap);
  return is_power_of_two(q).has_value();
}

void speed1(u64 n, const Context& ctx, Tally& t) {
  ++t.checked;
  const Nat b = from_u64(n);
  const Trajectory tr = trajectory(b, ctx.budget.window);
  const std::size_t len = tr.elements.size();
  std::optional<std::pair<std::size_t, std::size_t>> witness;

  if (auto small = small_values(tr)) {
    const auto& v = *small;
    for (std::size_t k = 2; k <= len && !witness; ++k) {
      for (std::size_t j = 1; j < k; ++j) {
        const u64 x = v[k - 1], y = v[j - 1];
        const u64 diff = x > y ? x - y : y - x;
        const u64 gap = k - j;
        if (diff != 0 && diff % gap == 0 && is_power_of_two(diff / gap)) {
          witness.emplace(j, k);
          break;
        }
      }
    }
  } else {
    for (std::size_t k = 2; k <= len && !witness; ++k) {
      for (std::size_t j = 1; j < k; ++j) {
        if (is_power_of_two_ratio(abs(tr.elements[k - 1] - tr.elements[j - 1]), k - j)) {
          witness.emplace(j, k);
          break;
        }
      }
    }
  }

  if (witness) {
    t.maximum("max_witness_k", Nat(static_cast<unsigned long>(witness->second)),
              std::to_string(witness->second), to_string(b));
    return;
  }
  const bool constant_one =
      tr.converged() && std::all_of(tr.elements.begin(), tr.elements.end(),
                                    [](const Nat& x) { return x == 1; });
  if (constant_one) {
    t.counterexample(finding(b, "process is constantly 1 (f(b) = 1), so every nu = 0"));
  } else if (tr.converged()) {
    // An orbit that reaches 1 after a value v > 1 always yields a witness
    // inside the materialized prefix (the step 2 -> 1 gives nu = 1).
    t.undecided(finding(b, "no witness found within the materialized orbit"));
  } else {
    t.undecided(finding(b, "no witness with k <= " + std::to_string(len)));
  }
}

void speed2(u64 n, const Context& ctx, Tally& t) {
  ++t.checked;
  const Nat b = from_u64(n);
  const Trajectory tr = trajectory(b, ctx.budget.window);
  for (std::size_t k = 1; k + 1 <= ctx.budget.window; ++k) {
    if (k + 1 > tr.elements.size() && !tr.converged()) break;
    const Nat nu = abs(tr.at_step(k + 1) - tr.at_step(k));
    if (nu >= 1) {
      if (k == 1) t.count("witness_at_k_1");
      t.maximum("max_witness_k", Nat(static_cast<unsigned long>(k)), std::to_string(k), to_string(b));
      t.maximum("max_nu_at_witness", nu, to_string(nu), to_string(b));
      return;
    }
    if (tr.converged() && k + 1 > tr.elements.size()) break;
  }
  if (tr.converged()) {
    t.counterexample(finding(b, "process is constantly 1 (f(b) = 1), so every nu(f^(k+1), f^k) = 0"));
  } else {
    t.undecided(finding(b, "no k <= window with nu >= 1"));
  }
}

void taufin(u64 n, const Context& ctx, Tally& t) {
  const Nat a = from_u64(n);
  const OrderIndex oi = order_of(n, ctx);
  if (!oi.is_converged()) {
    t.undecided(finding(a, "order not reached within " + std::to_string(ctx.budget.max_steps) + " steps"));
    return;
  }
  ++t.checked;
  t.maximum("max_tau", Nat(static_cast<unsigned long>(*oi.tau)), std::to_string(*oi.tau), to_string(a));
  t.maximum("max_ind", Nat(static_cast<unsigned long>(*oi.ind)), std::to_string(*oi.ind), to_string(a));
}

void sumlog(u64 n, const Context& ctx, Tally& t) {
  const Nat b = from_u64(n);
  const Trajectory tr = trajectory(b, ctx.budget.max_steps);
  if (!tr.converged()) {
    t.undecided(finding(b, "orbit did not reach 1 within " + std::to_string(ctx.budget.max_steps) +
                               " steps; partial sums still growing"));
    return;
  }
  ++t.checked;
  const u64 reach = tr.elements.size();  // f^reach(b) == 1
  const u64 terms = std::min<u64>(ctx.budget.max_steps, reach + 8);
  const std::vector<double> sums = log_sum_partial(b, terms);
  double previous = 0.0;
  for (u64 step = 1; step <= terms; ++step) {
    const double s = sums[step - 1];
    const bool grew = s > previous;
    const bool should_grow = step < reach;
    if (grew != should_grow) {
      t.counterexample(finding(b, "partial sum at step " + std::to_string(step) +
                                      (grew ? " grew" : " did not grow") + " but the orbit reaches 1 at step " +
                                      std::to_string(reach)));
      return;
    }
    previous = s;
  }
  const double final_sum = sums.back();
  t.maximum("max_total_log_sum", Nat(static_cast<unsigned long>(std::llround(final_sum * 1e6))),
            fixed6(final_sum), to_string(b));
}

// ---------------------------------------------------------------------------
// Pair claims

struct GeneratorOrbit {
  u64 n = 0;
  bool converged = false;
  std::size_t size = 0;
  std::size_t fingerprint = 0;  // order-independent hash of the element set
};

struct GeneratorScan {
  Tally tally;
  std::vector<GeneratorOrbit> orbits;
};

GeneratorScan scan_generators(const Context& ctx) {
  struct Chunk {
    Tally tally;
    std::vector<GeneratorOrbit> orbits;
  };
  auto chunks = map_chunks<Chunk>(ctx.range.lo, ctx.range.hi, ctx.options.threads,
                                  [&](u64 first, u64 last) {
                                    Chunk c;
                                    c.tally.cap = ctx.options.max_recorded;
                                    for (u64 n = first; n <= last; ++n) {
                                      const Nat b = from_u64(n);
                                      auto gen = generator_status(b, ctx, c.tally);
                                      if (!gen || !*gen) continue;
                                      const Trajectory tr = trajectory(b, ctx.budget.window);
                                      GeneratorOrbit o{n, tr.converged(), tr.elements.size(), 0};
                                      for (const Nat& v : tr.elements) o.fingerprint += NatHash{}(v);
                                      c.orbits.push_back(o);
                                    }
                                    return c;
                                  });
  GeneratorScan out;
  out.tally.cap = ctx.options.max_recorded;
  for (auto& c : chunks) {
    out.tally.absorb(std::move(c.tally));
    out.orbits.insert(out.orbits.end(), c.orbits.begin(), c.orbits.end());
  }
  return out;
}

std::vector<Nat> sorted_orbit(u64 n, u64 window) {
  std::vector<Nat> e = trajectory(from_u64(n), window).elements;
  std::sort(e.begin(), e.end());
  return e;
}

Tally p5(const Context& ctx) {
  GeneratorScan g = scan_generators(ctx);
  Tally& t = g.tally;
  const u64 count = g.orbits.size();
  t.checked = count * (count - (count > 0)) / 2;

  // Equal sets need equal (size, fingerprint); compare those candidates exactly.
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const auto& a = g.orbits[x];
    const auto& b = g.orbits[y];
    return std::tie(a.size, a.fingerprint, a.n) < std::tie(b.size, b.fingerprint, b.n);
  });
  std::vector<std::pair<u64, u64>> equal_pairs;
  for (std::size_t i = 0; i < count;) {
    std::size_t j = i;
    while (j < count && g.orbits[order[j]].size == g.orbits[order[i]].size &&
           g.orbits[order[j]].fingerprint == g.orbits[order[i]].fingerprint) {
      ++j;
    }
    for (std::size_t x = i; x < j; ++x) {
      for (std::size_t y = x + 1; y < j; ++y) {
        const u64 a = g.orbits[order[x]].n, b = g.orbits[order[y]].n;
        if (sorted_orbit(a, ctx.budget.window) == sorted_orbit(b, ctx.budget.window)) {
          equal_pairs.emplace_back(std::min(a, b), std::max(a, b));
        }
      }
    }
    i = j;
  }
  std::sort(equal_pairs.begin(), equal_pairs.end());
  for (const auto& [a, b] : equal_pairs) {
    t.counterexample(pair_finding(from_u64(a), from_u64(b),
                                  "distinct generators with equal truncated forward processes"));
  }
  return std::move(t);
}

Tally p10(const Context& ctx) {
  GeneratorScan g = scan_generators(ctx);
  Tally& t = g.tally;
  const std::size_t count = g.orbits.size();
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      ++t.checked;
      const auto& a = g.orbits[i];
      const auto& b = g.orbits[j];
      const bool record = t.counterexamples.size() < t.cap;
      // Two orbits that both reach 1 always meet there.
      if (a.converged && b.converged && !record) {
        ++t.counterexample_total;
        continue;
      }
      const auto hit = process_overlap(from_u64(a.n), from_u64(b.n), ctx.budget.window);
      if (!hit) continue;
      const bool same_set = a.size == b.size && a.fingerprint == b.fingerprint &&
                            sorted_orbit(a.n, ctx.budget.window) == sorted_orbit(b.n, ctx.budget.window);
      t.counterexample(pair_finding(
          from_u64(a.n), from_u64(b.n),
          "common value " + to_string(hit->value) + " = f^" + std::to_string(hit->s) + "(" +
              std::to_string(a.n) + ") = f^" + std::to_string(hit->t) + "(" + std::to_string(b.n) +
              ") but " + std::to_string(a.n) + " != " + std::to_string(b.n) +
              (same_set ? "; truncated processes are equal" : "; truncated processes differ")));
    }
  }
  return std::move(t);
}

Tally p11(const Context& ctx) {
  Tally t;
  t.cap = ctx.options.max_recorded;
  const std::vector<Nat> c = translated_chain(Nat(1), ctx.budget.depth, BackwardPolicy::EvenDoubling);
  for (std::size_t n = 1; n <= c.size(); ++n) {
    ++t.checked;
    Nat expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), 2, n);
    expected -= 1;
    if (c[n - 1] != expected) {
      t.counterexample(finding(Nat(1), "depth " + std::to_string(n) + ": translate element " +
                                           to_string(c[n - 1]) + " != 2^" + std::to_string(n) + " - 1"));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Dispatch

struct Outcome {
  Tally tally;
  std::vector<std::string> notes;
  bool always_inconclusive = false;
  std::map<std::string, Statistic> extra;
};

std::string generator_note(const Budget& b) {
  return "generator eligibility: GreedyMin classification to depth " + std::to_string(b.depth) +
         " with the 3 | b shortcut (cross-checked by the chain scan)";
}

Outcome evaluate(const ClaimSpec& spec, const Context& ctx) {
  Outcome out;
  const std::string& id = spec.id;
  if (spec.predicate_kind == PredicateKind::PerGenerator || spec.predicate_kind == PredicateKind::PerPair) {
    out.notes.push_back(generator_note(ctx.budget));
  }

  if (id == "C-P3") {
    out.tally = scan(ctx, p3);
  } else if (id == "C-P4") {
    out.tally = scan(ctx, p4);
  } else if (id == "C-P5") {
    out.tally = p5(ctx);
  } else if (id == "C-P6") {
    out.tally = scan(ctx, p6);
  } else if (id == "C-P7") {
    out.tally = scan(ctx, p7);
  } else if (id == "C-T8") {
    out.tally = scan(ctx, t8);
    out.notes.push_back("violations_order_from_one re-evaluates the claim with the order search starting at m = 1");
  } else if (id == "C-P9") {
    out.tally = scan(ctx, p9);
    out.notes.push_back("violations_order_from_one re-evaluates the claim with the order search starting at m = 1");
  } else if (id == "C-P10") {
    out.tally = p10(ctx);
  } else if (id == "C-P11") {
    out.tally = p11(ctx);
    out.notes.push_back("range-independent: checks base 1 at depths 1.." + std::to_string(ctx.budget.depth));
  } else if (id == "C-INDTAU") {
    out.tally = scan(ctx, indtau);
    out.notes.push_back(
        "under this generator notion every generator is a multiple of 3, so 3 is the only prime "
        "generator; the prime side of the equivalence is nearly empty");
  } else if (id == "C-T12") {
    out.tally = scan(ctx, t12);
  } else if (id == "C-T13") {
    out.tally = scan(ctx, t13);
  } else if (id == "C-DENSITY") {
    out.tally = scan(ctx, density);
    out.always_inconclusive = true;
    const u64 generators = out.tally.checked;
    for (std::size_t d : density_checkpoints(ctx.budget.depth)) {
      const std::string key = "prime_terms_to_depth_" + std::to_string(d);
      const u64 primes = out.tally.counters.count(key) ? out.tally.counters[key] : 0;
      const double ratio = generators ? static_cast<double>(primes) / static_cast<double>(generators * d) : 0.0;
      out.extra["prime_ratio_to_depth_" + std::to_string(d)] = fixed6(ratio);
    }
    out.notes.push_back("finite-depth approximants of a limit; no verdict beyond inconclusive is possible");
  } else if (id == "C-MU") {
    out.tally = scan(ctx, mu);
  } else if (id == "C-ODDPRIME") {
    out.tally = scan(ctx, oddprime);
  } else if (id == "C-OMEGA") {
    out.tally = scan(ctx, omega);
  } else if (id == "C-SPEED1") {
    out.tally = scan(ctx, speed1);
    out.notes.push_back("r = 0 is admitted, so nu = 1 counts as a power of two");
  } else if (id == "C-SPEED2") {
    out.tally = scan(ctx, speed2);
    out.notes.push_back(
        "the bounds 2^r and 2^m are free, so any nu >= 1 satisfies the inequality for suitable r "
        "and m; the run reports the minimal k with nu(f^(k+1), f^k) >= 1");
  } else if (id == "C-TAUFIN") {
    out.tally = scan(ctx, taufin);
  } else if (id == "C-SUMLOG") {
    out.tally = scan(ctx, sumlog);
  } else {
    throw UnknownClaimError("unknown claim id: " + id);
  }

  if (out.tally.counters.count("probable_primes")) {
    out.notes.push_back("primality above 2^64 is probabilistic (Miller-Rabin, " +
                        std::to_string(kDefaultPrimalityRounds) + " rounds); probable_primes counts those results");
  }
  return out;
}

}  // namespace

std::string_view to_string(PredicateKind kind) {
  switch (kind) {
    case PredicateKind::PerInteger:
      return "PerInteger";
    case PredicateKind::PerPrime:
      return "PerPrime";
    case PredicateKind::PerGenerator:
      return "PerGenerator";
    case PredicateKind::PerPair:
      return "PerPair";
    case PredicateKind::Structural:
      return "Structural";
  }
  return "?";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::AllVerified:
      return "all_verified";
    case Verdict::CounterexamplesFound:
      return "counterexamples_found";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

const std::vector<ClaimSpec>& list_claims() { return registry(); }

std::optional<ClaimSpec> find_claim(std::string_view id) {
  for (const ClaimSpec& spec : registry()) {
    if (spec.id == id) return spec;
  }
  return std::nullopt;
}

Range parse_range(std::string_view text) {
  const std::size_t dots = text.find("..");
  auto bad = [&]() { return DomainError("range must look like lo..hi, got '" + std::string(text) + "'"); };
  if (dots == std::string_view::npos) throw bad();
  Range r;
  const std::string_view lo = text.substr(0, dots);
  const std::string_view hi = text.substr(dots + 2);
  auto parse = [&](std::string_view s, u64& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw bad();
  };
  parse(lo, r.lo);
  parse(hi, r.hi);
  return r;
}

ClaimReport run_claim(std::string_view id, Range range, const Budget& budget, const RunOptions& options) {
  const auto spec = find_claim(id);
  if (!spec) throw UnknownClaimError("unknown claim id: " + std::string(id));
  if (range.lo == 0) throw DomainError("range must start at 1 or above");
  if (range.hi < range.lo) throw DomainError("empty range");
  if (budget.max_steps == 0 || budget.depth == 0 || budget.window == 0) {
    throw DomainError("budget values must be >= 1");
  }

  const auto started = std::chrono::steady_clock::now();
  Context ctx{range, budget, options};
  ctx.options.threads = std::max(1u, options.threads);
  Outcome outcome = evaluate(*spec, ctx);
  Tally& t = outcome.tally;

  ClaimReport report;
  report.id = spec->id;
  report.policy = spec->policy;
  report.range = range;
  report.budget = budget;
  report.checked = t.checked;
  report.counterexample_total = t.counterexample_total;
  report.counterexamples = std::move(t.counterexamples);
  report.inconclusive_total = t.inconclusive_total;
  report.inconclusive = std::move(t.inconclusive);
  for (const auto& [k, v] : t.counters) report.statistics[k] = v;
  for (const auto& [k, e] : t.maxima) {
    report.statistics[k] = e.shown;
    report.statistics[k + "_at"] = e.at;
  }
  for (const auto& [k, list] : t.samples) {
    std::string joined;
    for (const auto& s : list) joined += (joined.empty() ? "" : "; ") + s;
    report.statistics[k] = joined;
  }
  for (auto& [k, v] : outcome.extra) report.statistics[k] = std::move(v);
  report.notes = std::move(outcome.notes);

  if (report.counterexample_total > 0) {
    report.verdict = Verdict::CounterexamplesFound;
  } else if (report.inconclusive_total > 0 || outcome.always_inconclusive) {
    report.verdict = Verdict::Inconclusive;
  } else {
    report.verdict = Verdict::AllVerified;
  }
  report.elapsed = std::chrono::steady_clock::now() - started;
  return report;
}

std::vector<ClaimReport> run_all(Range range, const Budget& budget, const RunOptions& options) {
  std::vector<std::string> ids;
  for (const ClaimSpec& spec : registry()) ids.push_back(spec.id);
  std::sort(ids.begin(), ids.end());
  std::vector<ClaimReport> reports;
  reports.reserve(ids.size());
  for (const auto& id : ids) reports.push_back(run_claim(id, range, budget, options));
  return reports;
}

}  // namespace collatz_lab::claims
