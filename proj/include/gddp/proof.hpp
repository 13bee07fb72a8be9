// Proof extraction, rendering and independent replay.

#ifndef GDDP_PROOF_HPP_
#define GDDP_PROOF_HPP_

#include <span>
#include <string>
#include <vector>

#include "gddp/engine.hpp"
#include "gddp/problem.hpp"
#include "gddp/proof_tree.hpp"

namespace gddp {

enum class OutputFormat { text, latex, json };

ProofTree extract_proof(const SaturationResult& sat, const Fact& goal);

enum class WordStyle { text, latex };

// A fact in the teacher/student register, e.g. "EF ∥ GH".
std::string fact_words(const Fact& f, std::span<const std::string> names,
                       WordStyle style = WordStyle::text);

// Renders the proof. Rule descriptions come from `rules`; hypothesis steps
// are listed first and every step cites the earlier steps it uses.
std::string render_proof(const ProofTree& tree, std::span<const std::string> names,
                         const RuleSet& rules, OutputFormat format,
                         const ProofStats* stats = nullptr);

// Re-derives every step of the tree by matching its rule against its
// premises from scratch. `hypotheses` are the facts allowed as leaves and the
// neq facts available to side conditions (canonical or not). Returns an
// empty string on success, otherwise the first failure.
std::string replay_proof(const ProofTree& tree, const RuleSet& rules,
                         std::span<const Fact> hypotheses);

}  // namespace gddp

#endif  // GDDP_PROOF_HPP_
