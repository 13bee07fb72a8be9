#include "gddp/proof.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gddp {

ProofTree extract_proof(const FactBase& fb, const Fact& goal) {
  const Fact target = canonicalize(goal);
  auto goal_id = fb.find(target);
  if (!goal_id) throw NoProof("goal is not in the fact base");

  std::set<FactId> reached;
  std::vector<FactId> stack{*goal_id};
  while (!stack.empty()) {
    const FactId id = stack.back();
    stack.pop_back();
    if (!reached.insert(id).second) continue;
    for (FactId p : fb.premises(id)) stack.push_back(p);
  }

  // premises always precede their conclusion, so id order is topological
  ProofTree tree;
  tree.root = target;
  std::map<FactId, std::size_t> index;
  for (FactId id : reached) {
    ProofNode node;
    node.fact = fb.fact(id);
    node.rule = std::string(fb.rule_of(id));
    for (FactId p : fb.premises(id)) {
      node.premises.push_back(index.at(p));
      node.depth = std::max(node.depth, tree.nodes[index.at(p)].depth + 1);
    }
    if (!node.is_leaf()) ++tree.step_count;
    index[id] = tree.nodes.size();
    tree.nodes.push_back(std::move(node));
  }
  tree.depth = tree.nodes.back().depth;
  return tree;
}

ProofTree extract_proof(const SaturationResult& sat, const Fact& goal) {
  return extract_proof(sat.factbase, goal);
}

std::vector<Fact> ProofTree::leaves() const {
  std::vector<Fact> out;
  for (const auto& n : nodes)
    if (n.is_leaf()) out.push_back(n.fact);
  return out;
}

ProofStats proof_stats(const ProofTree& tree, double elapsed) {
  ProofStats s;
  s.step_count = tree.step_count;
  s.depth = tree.depth;
  s.elapsed = elapsed;
  for (const auto& n : tree.nodes)
    if (!n.is_leaf()) ++s.rule_histogram[n.rule];
  return s;
}

std::string fact_words(const Fact& f, std::span<const std::string> names, WordStyle style) {
  auto p = [&](std::size_t i) -> const std::string& { return names[f.args[i].index]; };
  auto seg = [&](std::size_t i) { return p(i) + p(i + 1); };
  const bool tex = style == WordStyle::latex;
  switch (f.pred) {
    case Pred::coll:
      return tex ? "$" + p(0) + ", " + p(1) + ", " + p(2) + "$ are collinear"
                 : p(0) + ", " + p(1) + ", " + p(2) + " are collinear";
    case Pred::para:
      return tex ? "$" + seg(0) + " \\parallel " + seg(2) + "$" : seg(0) + " ∥ " + seg(2);
    case Pred::perp:
      return tex ? "$" + seg(0) + " \\perp " + seg(2) + "$" : seg(0) + " ⟂ " + seg(2);
    case Pred::midp:
      return tex ? "$" + p(0) + "$ is the midpoint of $" + p(1) + p(2) + "$"
                 : p(0) + " is the midpoint of " + p(1) + p(2);
    case Pred::cong:
      return tex ? "$|" + seg(0) + "| = |" + seg(2) + "|$" : "|" + seg(0) + "| = |" + seg(2) + "|";
    case Pred::eqangle:
      return tex ? "$\\angle(" + seg(0) + "," + seg(2) + ") = \\angle(" + seg(4) + "," + seg(6) + ")$"
                 : "∠(" + seg(0) + "," + seg(2) + ") = ∠(" + seg(4) + "," + seg(6) + ")";
    case Pred::eqratio:
      return tex ? "$\\frac{" + seg(0) + "}{" + seg(2) + "} = \\frac{" + seg(4) + "}{" + seg(6) + "}$"
                 : seg(0) + "/" + seg(2) + " = " + seg(4) + "/" + seg(6);
    case Pred::simtri:
      return tex ? "$\\triangle " + p(0) + p(1) + p(2) + " \\sim \\triangle " + p(3) + p(4) + p(5) + "$"
                 : "triangles " + p(0) + p(1) + p(2) + " and " + p(3) + p(4) + p(5) + " are similar";
    case Pred::cyclic:
      return tex ? "$" + p(0) + ", " + p(1) + ", " + p(2) + ", " + p(3) + "$ are concyclic"
                 : p(0) + ", " + p(1) + ", " + p(2) + ", " + p(3) + " are concyclic";
    case Pred::neq:
      return tex ? "$" + p(0) + " \\neq " + p(1) + "$" : p(0) + " ≠ " + p(1);
  }
  return to_string(f, names);
}

namespace {

std::string describe_rule(const RuleSet& rules, const std::string& name) {
  const Rule* r = rules.find(name);
  return r ? r->description : name;
}

std::string cite(const std::vector<std::size_t>& premises) {
  std::string s;
  for (std::size_t i = 0; i < premises.size(); ++i)
    s += (i ? ", " : "") + std::to_string(premises[i] + 1);
  return s;
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string render_text(const ProofTree& tree, std::span<const std::string> names,
                        const RuleSet& rules) {
  std::ostringstream out;
  if (tree.step_count == 0) {
    out << "The goal is a hypothesis.\n";
    return out.str();
  }
  out << "Proof of " << fact_words(tree.root, names) << ".\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& n = tree.nodes[i];
    out << (i + 1) << ". " << capitalize(fact_words(n.fact, names));
    if (n.is_leaf()) out << " (hypothesis)\n";
    else out << " — by " << describe_rule(rules, n.rule) << " from steps " << cite(n.premises) << "\n";
  }
  out << "Therefore " << fact_words(tree.root, names) << ".\n";
  return out.str();
}

std::string render_latex(const ProofTree& tree, std::span<const std::string> names,
                         const RuleSet& rules) {
  std::ostringstream out;
  out << "\\documentclass{article}\n\\usepackage{amsmath,amssymb}\n\\begin{document}\n";
  if (tree.step_count == 0) {
    out << "The goal is a hypothesis.\n\\end{document}\n";
    return out.str();
  }
  out << "\\noindent Proof of " << fact_words(tree.root, names, WordStyle::latex) << ".\n";
  out << "\\begin{enumerate}\n";
  for (const auto& n : tree.nodes) {
    out << "  \\item " << fact_words(n.fact, names, WordStyle::latex);
    if (n.is_leaf()) out << " (hypothesis)\n";
    else out << " --- by " << describe_rule(rules, n.rule) << " from steps " << cite(n.premises) << "\n";
  }
  out << "\\end{enumerate}\n";
  out << "Therefore " << fact_words(tree.root, names, WordStyle::latex) << ".\n";
  out << "\\end{document}\n";
  return out.str();
}

nlohmann::ordered_json stats_json(const ProofStats& s) {
  nlohmann::ordered_json j;
  j["step_count"] = s.step_count;
  j["depth"] = s.depth;
  j["rule_histogram"] = nlohmann::ordered_json::object();
  for (const auto& [rule, count] : s.rule_histogram) j["rule_histogram"][rule] = count;
  return j;
}

}  // namespace

std::string render_proof(const ProofTree& tree, std::span<const std::string> names,
                         const RuleSet& rules, OutputFormat format, const ProofStats* stats) {
  switch (format) {
    case OutputFormat::text: return render_text(tree, names, rules);
    case OutputFormat::latex: return render_latex(tree, names, rules);
    case OutputFormat::json: break;
  }
  nlohmann::ordered_json j;
  j["goal"] = to_string(tree.root, names);
  j["facts"] = nlohmann::ordered_json::array();
  j["steps"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& n = tree.nodes[i];
    j["facts"].push_back({{"id", i},
                          {"fact", to_string(n.fact, names)},
                          {"text", fact_words(n.fact, names)},
                          {"hypothesis", n.is_leaf()}});
    if (!n.is_leaf())
      j["steps"].push_back({{"id", i},
                            {"rule", n.rule},
                            {"premises", n.premises},
                            {"conclusion", to_string(n.fact, names)}});
  }
  j["stats"] = stats_json(stats ? *stats : proof_stats(tree));
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Replay

namespace {

using VarMap = std::vector<std::int64_t>;

bool unify_premises(const Rule& rule, const std::vector<Fact>& premises, std::size_t k,
                    VarMap& env, const std::set<Fact>& neqs, const Fact& expected) {
  if (k == premises.size()) {
    for (auto [a, b] : rule.distinct) {
      if (env[a] == env[b]) return false;
      const Fact n = canonicalize(Fact(Pred::neq, {PointId{static_cast<std::uint32_t>(env[a])},
                                                   PointId{static_cast<std::uint32_t>(env[b])}}));
      if (!neqs.contains(n)) return false;
    }
    Fact c;
    c.pred = rule.conclusion.pred;
    for (std::size_t q = 0; q < rule.conclusion.vars.size(); ++q)
      c.args[q] = PointId{static_cast<std::uint32_t>(env[rule.conclusion.vars[q]])};
    return canonicalize(c) == expected;
  }
  const auto& pat = rule.premises[k];
  const Fact& f = premises[k];
  if (f.pred != pat.pred) return false;
  for (const Perm& perm : symmetry_group(f.pred)) {
    VarMap saved = env;
    bool ok = true;
    for (std::size_t q = 0; q < pat.vars.size() && ok; ++q) {
      const std::int64_t pt = f.args[perm[q]].index;
      auto& slot = env[pat.vars[q]];
      if (slot < 0) slot = pt;
      else ok = slot == pt;
    }
    if (ok && unify_premises(rule, premises, k + 1, env, neqs, expected)) return true;
    env = std::move(saved);
  }
  return false;
}

}  // namespace

std::string replay_proof(const ProofTree& tree, const RuleSet& rules,
                         std::span<const Fact> hypotheses) {
  std::set<Fact> allowed, neqs;
  for (const Fact& h : hypotheses) {
    allowed.insert(canonicalize(h));
    if (h.pred == Pred::neq) neqs.insert(canonicalize(h));
  }
  if (tree.nodes.empty() || tree.nodes.back().fact != canonicalize(tree.root))
    return "root is not the last node";
  std::set<Fact> established;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& n = tree.nodes[i];
    const std::string where = "step " + std::to_string(i + 1) + ": ";
    if (n.is_leaf()) {
      if (!allowed.contains(n.fact)) return where + "leaf is not a hypothesis";
      established.insert(n.fact);
      continue;
    }
    const Rule* rule = rules.find(n.rule);
    if (!rule) return where + "unknown rule " + n.rule;
    if (n.premises.size() != rule->premises.size()) return where + "premise count mismatch";
    std::vector<Fact> premises;
    for (std::size_t p : n.premises) {
      if (p >= i) return where + "premise does not precede its use";
      if (!established.contains(tree.nodes[p].fact)) return where + "premise not established";
      premises.push_back(tree.nodes[p].fact);
    }
    VarMap env(rule->var_count(), -1);
    if (!unify_premises(*rule, premises, 0, env, neqs, n.fact))
      return where + "rule " + n.rule + " does not yield the stated conclusion";
    established.insert(n.fact);
  }
  return {};
}

}  // namespace gddp
