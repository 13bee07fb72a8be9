// All-derivations deduction graph with next-step and proof-count queries.

#ifndef GDDP_HINTS_HPP_
#define GDDP_HINTS_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gddp/engine.hpp"

namespace gddp {

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

struct GraphApplication {
  FactId conclusion = 0;
  std::string rule;
  std::vector<FactId> premises;
  // Every premise was discovered before the conclusion. Only these
  // applications take part in proofs, which keeps proofs well founded.
  bool stratified = false;

  bool operator==(const GraphApplication&) const = default;
};

struct DeductionGraph {
  std::vector<Fact> facts;  // indexed by discovery order (the step index)
  std::vector<bool> hypothesis;
  std::vector<GraphApplication> applications;
  Fact goal;
  std::optional<FactId> goal_id;
  std::vector<bool> goal_relevant;
  std::vector<std::size_t> distance;  // application hops to the goal
  bool partial = false;

  std::optional<FactId> find(const Fact& f) const;
  bool operator==(const DeductionGraph&) const = default;
};

// Full saturation with goal-stop off and every derivation recorded.
DeductionGraph build_graph(const Problem& problem, const RuleSet& rules, const Limits& limits,
                           Exec exec = Exec::serial);

// Builds the graph from an existing all-derivations saturation.
DeductionGraph graph_from(const SaturationResult& sat, const Fact& goal,
                          std::span<const Fact> hypotheses);

struct Hint {
  Fact fact;
  std::string rule_name;
  std::vector<Fact> premises;
  bool on_goal_path = false;
  std::size_t step_index = 0;

  bool operator==(const Hint&) const = default;
};

// Facts one application away from the established ones (hypotheses are
// always established). Goal-path facts first, then by distance to the
// goal, then by discovery order; at most k hints.
std::vector<Hint> next_steps(const DeductionGraph& graph, std::span<const Fact> established,
                             const Fact& goal, std::size_t k);

struct ProofCount {
  std::size_t count = 0;
  bool capped = false;       // the count saturated at the cap
  bool lower_bound = false;  // the graph is partial

  bool operator==(const ProofCount&) const = default;
};

// Number of distinct proof DAGs of `goal`, choosing one application per
// needed fact. Throws std::invalid_argument when the goal is not a node.
ProofCount count_proofs(const DeductionGraph& graph, const Fact& goal, std::size_t cap);

// The proof json schema with an `applications` array and per-fact
// `goal_relevant` flags.
std::string export_graph(const DeductionGraph& graph, std::span<const std::string> names);

}  // namespace gddp

#endif  // GDDP_HINTS_HPP_
