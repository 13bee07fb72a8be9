#include "gddp/hints.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

#include "gddp/proof.hpp"
#include "json.hpp"

namespace gddp {

std::optional<FactId> DeductionGraph::find(const Fact& f) const {
  const Fact c = canonicalize(f);
  for (std::size_t i = 0; i < facts.size(); ++i)
    if (facts[i] == c) return static_cast<FactId>(i);
  return std::nullopt;
}

DeductionGraph graph_from(const SaturationResult& sat, const Fact& goal,
                          std::span<const Fact> hypotheses) {
  const FactBase& fb = sat.factbase;
  if (!fb.records_all_derivations())
    throw std::invalid_argument("graph needs an all-derivations saturation");
  DeductionGraph g;
  g.goal = canonicalize(goal);
  g.partial = !sat.saturated;
  g.facts.reserve(fb.size());
  for (FactId id = 0; id < fb.size(); ++id) {
    g.facts.push_back(fb.fact(id));
    g.hypothesis.push_back(false);
  }
  for (const Fact& h : hypotheses)
    if (auto id = fb.find(canonicalize(h))) g.hypothesis[*id] = true;
  const auto names = fb.rule_names();
  for (const Application& a : fb.applications()) {
    GraphApplication ga{a.conclusion, names[a.rule], a.premises, true};
    for (FactId p : a.premises) ga.stratified = ga.stratified && p < a.conclusion;
    g.applications.push_back(std::move(ga));
  }
  g.goal_id = fb.find(g.goal);

  g.goal_relevant.assign(g.facts.size(), false);
  g.distance.assign(g.facts.size(), kUnreachable);
  if (!g.goal_id) return g;

  std::vector<std::vector<std::size_t>> concluding(g.facts.size());
  for (std::size_t i = 0; i < g.applications.size(); ++i)
    if (g.applications[i].stratified) concluding[g.applications[i].conclusion].push_back(i);

  // BFS backwards from the goal; hypotheses are proved by themselves
  std::deque<FactId> queue{*g.goal_id};
  g.distance[*g.goal_id] = 0;
  g.goal_relevant[*g.goal_id] = true;
  while (!queue.empty()) {
    const FactId f = queue.front();
    queue.pop_front();
    if (g.hypothesis[f]) continue;
    for (std::size_t ai : concluding[f])
      for (FactId p : g.applications[ai].premises) {
        g.goal_relevant[p] = true;
        if (g.distance[p] == kUnreachable) {
          g.distance[p] = g.distance[f] + 1;
          queue.push_back(p);
        }
      }
  }
  return g;
}

DeductionGraph build_graph(const Problem& problem, const RuleSet& rules, const Limits& limits,
                           Exec exec) {
  EngineOptions options;
  options.exec = exec;
  options.all_derivations = true;
  const auto initial = initial_facts(problem);
  const auto sat = saturate_facts(initial, rules, limits, options);
  return graph_from(sat, problem.goal, initial);
}

std::vector<Hint> next_steps(const DeductionGraph& graph, std::span<const Fact> established,
                             const Fact& goal, std::size_t k) {
  std::vector<bool> known(graph.facts.size(), false);
  for (std::size_t i = 0; i < graph.facts.size(); ++i) known[i] = graph.hypothesis[i];
  for (const Fact& f : established)
    if (auto id = graph.find(f)) known[*id] = true;
  const bool goal_known = graph.goal_id && graph.goal == canonicalize(goal);

  std::vector<bool> offered(graph.facts.size(), false);
  std::vector<Hint> hints;
  for (const auto& a : graph.applications) {
    if (known[a.conclusion] || offered[a.conclusion]) continue;
    if (!std::all_of(a.premises.begin(), a.premises.end(), [&](FactId p) { return known[p]; }))
      continue;
    offered[a.conclusion] = true;
    Hint h;
    h.fact = graph.facts[a.conclusion];
    h.rule_name = a.rule;
    for (FactId p : a.premises) h.premises.push_back(graph.facts[p]);
    h.on_goal_path = goal_known && graph.goal_relevant[a.conclusion];
    h.step_index = a.conclusion;
    hints.push_back(std::move(h));
  }
  auto dist = [&](const Hint& h) {
    return goal_known ? graph.distance[h.step_index] : kUnreachable;
  };
  std::stable_sort(hints.begin(), hints.end(), [&](const Hint& a, const Hint& b) {
    if (a.on_goal_path != b.on_goal_path) return a.on_goal_path;
    if (dist(a) != dist(b)) return dist(a) < dist(b);
    return a.step_index < b.step_index;
  });
  if (hints.size() > k) hints.resize(k);
  return hints;
}

ProofCount count_proofs(const DeductionGraph& graph, const Fact& goal, std::size_t cap) {
  auto goal_id = graph.find(goal);
  if (!goal_id) throw std::invalid_argument("goal is not a node of the graph");
  ProofCount result;
  result.lower_bound = graph.partial;
  if (cap == 0) {
    result.capped = true;
    return result;
  }

  std::vector<std::vector<std::size_t>> concluding(graph.facts.size());
  for (std::size_t i = 0; i < graph.applications.size(); ++i)
    if (graph.applications[i].stratified)
      concluding[graph.applications[i].conclusion].push_back(i);

  // Resolve needed facts highest id first. Premises of a stratified
  // application have smaller ids, so a fact is never needed after it has
  // been resolved, and distinct choice sequences are distinct DAGs.
  std::set<FactId, std::greater<>> pending{*goal_id};
  std::vector<bool> resolved(graph.facts.size(), false);
  std::function<void()> enumerate = [&] {
    if (result.count >= cap) return;
    if (pending.empty()) {
      ++result.count;
      return;
    }
    const FactId f = *pending.begin();
    pending.erase(pending.begin());
    resolved[f] = true;
    if (graph.hypothesis[f]) {
      enumerate();
    } else {
      for (std::size_t ai : concluding[f]) {
        std::vector<FactId> added;
        for (FactId p : graph.applications[ai].premises)
          if (!resolved[p] && pending.insert(p).second) added.push_back(p);
        enumerate();
        for (FactId p : added) pending.erase(p);
        if (result.count >= cap) break;
      }
    }
    resolved[f] = false;
    pending.insert(f);
  };
  enumerate();
  result.capped = result.count >= cap;
  return result;
}

std::string export_graph(const DeductionGraph& graph, std::span<const std::string> names) {
  nlohmann::ordered_json j;
  j["goal"] = to_string(graph.goal, names);
  j["partial"] = graph.partial;
  j["facts"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < graph.facts.size(); ++i)
    j["facts"].push_back({{"id", i},
                          {"fact", to_string(graph.facts[i], names)},
                          {"text", fact_words(graph.facts[i], names)},
                          {"hypothesis", static_cast<bool>(graph.hypothesis[i])},
                          {"goal_relevant", static_cast<bool>(graph.goal_relevant[i])}});
  j["applications"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < graph.applications.size(); ++i) {
    const auto& a = graph.applications[i];
    j["applications"].push_back({{"id", i},
                                 {"rule", a.rule},
                                 {"premises", a.premises},
                                 {"conclusion", a.conclusion},
                                 {"stratified", a.stratified}});
  }
  return j.dump(2) + "\n";
}

}  // namespace gddp
