// Proof trees extracted from a derivation record.

#ifndef GDDP_PROOF_TREE_HPP_
#define GDDP_PROOF_TREE_HPP_

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gddp/factbase.hpp"

namespace gddp {

struct ProofNode {
  Fact fact;
  std::string rule;                  // "hypothesis" for leaves
  std::vector<std::size_t> premises; // indices into ProofTree::nodes
  std::size_t depth = 0;             // 0 for leaves

  bool is_leaf() const { return rule == kHypothesisRule; }
};

// A proof DAG in topological order: every premise index is smaller than the
// index of the node that uses it, and the root is the last node.
struct ProofTree {
  Fact root;
  std::vector<ProofNode> nodes;
  std::size_t depth = 0;
  std::size_t step_count = 0;  // distinct non-hypothesis nodes

  std::vector<Fact> leaves() const;
  const ProofNode& root_node() const { return nodes.back(); }
};

struct ProofStats {
  std::size_t step_count = 0;
  std::size_t depth = 0;
  std::map<std::string, std::size_t> rule_histogram;
  double elapsed = 0.0;
};

class NoProof : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Walks back from `goal` along first derivations. Throws NoProof when the
// canonical goal is not in the fact base.
ProofTree extract_proof(const FactBase& fb, const Fact& goal);

ProofStats proof_stats(const ProofTree& tree, double elapsed = 0.0);

}  // namespace gddp

#endif  // GDDP_PROOF_TREE_HPP_
