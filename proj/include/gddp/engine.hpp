// Semi-naive forward-chaining saturation of a problem under a rule set.

#ifndef GDDP_ENGINE_HPP_
#define GDDP_ENGINE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gddp/exec.hpp"
#include "gddp/factbase.hpp"
#include "gddp/problem.hpp"
#include "gddp/proof_tree.hpp"

namespace gddp {

struct Limits {
  std::size_t max_facts = 200000;
  std::size_t max_rounds = 10000;
  double timeout = 10.0;  // wall seconds
};

struct EngineOptions {
  Exec exec = Exec::serial;
  bool goal_stop = false;
  bool all_derivations = false;
};

struct SaturationResult {
  FactBase factbase;
  std::size_t rounds = 0;
  std::size_t rule_applications = 0;
  bool saturated = false;
  double elapsed = 0.0;
};

// One rule instance: a canonical conclusion and the ids of its premises,
// in rule premise order.
struct RuleApplication {
  Fact conclusion;
  std::vector<FactId> premises;

  bool operator==(const RuleApplication&) const = default;
};

// The facts [begin, end) are the delta; only ids below `end` are visible.
struct DeltaRange {
  FactId begin = 0;
  FactId end = 0;
};

// Every distinct instance of `rule` with all premises among the visible
// facts and at least one premise in the delta. Side conditions are checked
// against the neq facts in `fb`; tautological conclusions are dropped.
std::vector<RuleApplication> apply_rule(const Rule& rule, const FactBase& fb, DeltaRange delta,
                                        Exec exec = Exec::serial);

// Same contract with an explicit delta set (each fact must be in `fb`).
std::vector<std::pair<Fact, Derivation>> apply_rule(const Rule& rule, const FactBase& fb,
                                                    std::span<const Fact> delta);

// Re-matches every premise against every visible fact, ignoring deltas.
std::vector<RuleApplication> apply_rule_naive(const Rule& rule, const FactBase& fb,
                                              FactId visible_end);

SaturationResult saturate(const Problem& problem, const RuleSet& rules, const Limits& limits,
                          const EngineOptions& options = {});

// Saturation from an explicit list of initial facts (canonicalized here).
SaturationResult saturate_facts(std::span<const Fact> initial, const RuleSet& rules,
                                const Limits& limits, const EngineOptions& options = {},
                                std::optional<Fact> goal = std::nullopt);

// Reference loop that re-matches everything every round.
SaturationResult saturate_naive(std::span<const Fact> initial, const RuleSet& rules,
                                const Limits& limits);

enum class ProofStatus { proved, not_derivable, resource_limit };

std::string_view status_name(ProofStatus s);

struct ProofResult {
  ProofStatus status = ProofStatus::not_derivable;
  Fact goal;  // canonical
  SaturationResult saturation;
  std::optional<ProofTree> proof;
};

// Saturates with goal-stop on and extracts a proof when the goal is reached.
ProofResult prove(const Problem& problem, const RuleSet& rules, const Limits& limits,
                  Exec exec = Exec::serial);

}  // namespace gddp

#endif  // GDDP_ENGINE_HPP_
