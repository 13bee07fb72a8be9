#include "gddp/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "gddp/hints.hpp"
#include "gddp/numeric.hpp"
#include "json.hpp"

#ifndef GDDP_DEFAULT_RULES_DIR
#define GDDP_DEFAULT_RULES_DIR "rules"
#endif

namespace gddp {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path resolve(const std::string& name, const fs::path& from_dir) {
  for (const fs::path& dir : {from_dir, fs::path(rules_dir())}) {
    const fs::path candidate = dir / name;
    if (fs::exists(candidate)) return candidate;
  }
  throw UsageError("cannot resolve include '" + name + "'");
}

void load_into(const fs::path& path, RuleSet& into, std::set<fs::path>& seen) {
  const fs::path key = fs::weakly_canonical(path);
  if (!seen.insert(key).second) return;
  RuleSet set;
  try {
    set = parse_rules(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path.string() + ":" + e.what());
  }
  for (const auto& inc : set.includes) load_into(resolve(inc, path.parent_path()), into, seen);
  set.includes.clear();
  into.merge(std::move(set));
}

std::string seconds(double s) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(3) << s;
  return ss.str();
}

struct Loaded {
  Problem problem;
  RuleSet rules;
  std::vector<std::string> names;
};

Loaded load(const RunConfig& cfg) {
  const fs::path path(cfg.problem_path);
  auto format = format_for_path(cfg.problem_path);
  if (!format) throw UsageError("unknown problem extension (expected .p or .gdd): " + path.string());
  Loaded l;
  try {
    l.problem = parse_problem(read_file(path), *format);
  } catch (const ParseError& e) {
    throw UsageError(path.string() + ":" + e.what());
  }
  l.names = l.problem.point_names();

  std::set<fs::path> seen;
  if (!cfg.rules_path.empty()) {
    load_into(cfg.rules_path, l.rules, seen);
  } else if (!l.problem.includes.empty()) {
    for (const auto& inc : l.problem.includes)
      load_into(resolve(inc, path.parent_path()), l.rules, seen);
  } else {
    load_into(fs::path(rules_dir()) / "gdd.rules", l.rules, seen);
  }
  return l;
}

int cmd_prove(const RunConfig& cfg, const Loaded& l, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  ProofResult r = prove(l.problem, l.rules, cfg.limits, cfg.exec);
  std::optional<std::string> rendered;
  ProofStats stats;
  if (r.proof) {
    stats = proof_stats(*r.proof);
    rendered = render_proof(*r.proof, l.names, l.rules, cfg.format, &stats);
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string goal = to_string(r.goal, l.names);
  const auto& sat = r.saturation;

  if (cfg.format == OutputFormat::json) {
    Json j;
    j["status"] = std::string(status_name(r.status));
    j["goal"] = goal;
    j["facts"] = sat.factbase.size();
    j["rounds"] = sat.rounds;
    j["saturated"] = sat.saturated;
    j["proof"] = rendered ? Json::parse(*rendered) : Json(nullptr);
    out << j.dump(2) << "\n";
  } else if (r.proof) {
    out << *rendered;
    if (cfg.format == OutputFormat::text)
      out << "proof steps: " << stats.step_count << ", time: " << seconds(elapsed) << " s\n";
  } else if (r.status == ProofStatus::not_derivable) {
    out << "goal " << goal << " is not derivable under the loaded rules (" << sat.factbase.size()
        << " facts, " << sat.rounds << " rounds, saturated)\n";
  } else {
    out << "resource limit reached before deriving " << goal << " (" << sat.factbase.size()
        << " facts, " << sat.rounds << " rounds)\n";
  }
  switch (r.status) {
    case ProofStatus::proved: return kExitOk;
    case ProofStatus::not_derivable: return kExitNegative;
    case ProofStatus::resource_limit: return kExitLimit;
  }
  return kExitLimit;
}

int cmd_check(const RunConfig& cfg, const Loaded& l, std::ostream& out) {
  const CheckReport r = check_conjecture(l.problem, cfg.models, cfg.seed, cfg.exec);
  if (cfg.format == OutputFormat::json) {
    Json j;
    j["goal"] = to_string(l.problem.goal, l.names);
    j["models_tried"] = r.models_tried;
    j["models_valid"] = r.models_valid;
    j["goal_holds"] = r.goal_holds;
    j["verdict"] = std::string(verdict_name(r.verdict));
    j["first_refuting"] = r.first_refuting ? Json(*r.first_refuting) : Json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    out << "goal: " << to_string(l.problem.goal, l.names) << "\n";
    out << r.models_valid << "/" << r.models_tried << " valid models, ";
    if (r.first_refuting)
      out << "goal fails in " << (r.models_valid - r.goal_holds) << " (first at model "
          << *r.first_refuting << ", seed " << cfg.seed + *r.first_refuting << ")\n";
    else if (r.models_valid == 0)
      out << "goal not evaluated\n";
    else
      out << "goal holds in all\n";
    out << "verdict: " << verdict_name(r.verdict) << "\n";
  }
  switch (r.verdict) {
    case Verdict::supported: return kExitOk;
    case Verdict::refuted: return kExitNegative;
    case Verdict::inconclusive: return kExitLimit;
  }
  return kExitLimit;
}

int cmd_saturate(const RunConfig& cfg, const Loaded& l, std::ostream& out) {
  EngineOptions opts;
  opts.exec = cfg.exec;
  const auto sat = saturate(l.problem, l.rules, cfg.limits, opts);
  const FactBase& fb = sat.factbase;
  if (cfg.format == OutputFormat::json) {
    Json j;
    j["facts"] = Json::array();
    for (FactId id = 0; id < fb.size(); ++id)
      j["facts"].push_back({{"id", id},
                            {"fact", to_string(fb.fact(id), l.names)},
                            {"rule", std::string(fb.rule_of(id))},
                            {"premises", std::vector<FactId>(fb.premises(id).begin(),
                                                             fb.premises(id).end())}});
    j["rounds"] = sat.rounds;
    j["rule_applications"] = sat.rule_applications;
    j["saturated"] = sat.saturated;
    j["goal_derived"] = fb.contains(canonicalize(l.problem.goal));
    out << j.dump(2) << "\n";
  } else {
    for (FactId id = 0; id < fb.size(); ++id) {
      out << id << ". " << to_string(fb.fact(id), l.names) << "  [" << fb.rule_of(id);
      const auto prem = fb.premises(id);
      for (std::size_t i = 0; i < prem.size(); ++i) out << (i ? ", " : " from ") << prem[i];
      out << "]\n";
    }
    out << "facts: " << fb.size() << ", rounds: " << sat.rounds
        << ", rule applications: " << sat.rule_applications
        << ", saturated: " << (sat.saturated ? "yes" : "no") << ", time: " << seconds(sat.elapsed)
        << " s\n";
  }
  return sat.saturated ? kExitOk : kExitLimit;
}

constexpr std::size_t kProofCountCap = 1000;

std::string count_text(const ProofCount& c) {
  return std::to_string(c.count) + (c.capped || c.lower_bound ? "+" : "");
}

int cmd_hints(const RunConfig& cfg, const Loaded& l, std::ostream& out) {
  const DeductionGraph g = build_graph(l.problem, l.rules, cfg.limits, cfg.exec);
  std::vector<Fact> established;
  for (const auto& s : cfg.established) established.push_back(parse_fact(s, l.problem));
  const auto hints = next_steps(g, established, l.problem.goal, cfg.k);
  std::optional<ProofCount> count;
  if (g.goal_id) count = count_proofs(g, l.problem.goal, kProofCountCap);

  if (cfg.format == OutputFormat::json) {
    Json j;
    j["goal"] = to_string(g.goal, l.names);
    j["partial"] = g.partial;
    j["proof_count"] = count ? Json(count->count) : Json(0);
    j["proof_count_capped"] = count && count->capped;
    j["hints"] = Json::array();
    for (const auto& h : hints) {
      Json premises = Json::array();
      for (const auto& p : h.premises) premises.push_back(to_string(p, l.names));
      j["hints"].push_back({{"fact", to_string(h.fact, l.names)},
                            {"rule", h.rule_name},
                            {"premises", premises},
                            {"on_goal_path", h.on_goal_path},
                            {"step_index", h.step_index}});
    }
    out << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < hints.size(); ++i) {
      const auto& h = hints[i];
      out << (i + 1) << ". " << to_string(h.fact, l.names) << " by " << h.rule_name << " from ";
      for (std::size_t p = 0; p < h.premises.size(); ++p)
        out << (p ? ", " : "") << to_string(h.premises[p], l.names);
      out << (h.on_goal_path ? "  [goal path]" : "") << "\n";
    }
    if (hints.empty()) out << "no new facts are one step away\n";
    out << "proofs of the goal: " << (count ? count_text(*count) : "0") << "\n";
  }
  return g.partial ? kExitLimit : kExitOk;
}

int cmd_graph(const RunConfig& cfg, const Loaded& l, std::ostream& out) {
  const DeductionGraph g = build_graph(l.problem, l.rules, cfg.limits, cfg.exec);
  if (cfg.format == OutputFormat::json) {
    out << export_graph(g, l.names);
  } else {
    std::size_t relevant = 0;
    for (bool b : g.goal_relevant) relevant += b;
    out << "fact nodes: " << g.facts.size() << "\n";
    out << "application nodes: " << g.applications.size() << "\n";
    out << "goal-relevant facts: " << relevant << "\n";
    out << "proofs of the goal: "
        << (g.goal_id ? count_text(count_proofs(g, g.goal, kProofCountCap)) : "0") << "\n";
    if (g.partial) out << "graph is partial (limit reached)\n";
  }
  return g.partial ? kExitLimit : kExitOk;
}

}  // namespace

std::string rules_dir() {
  if (const char* env = std::getenv("GDDP_RULES_DIR"); env && *env) return env;
  return GDDP_DEFAULT_RULES_DIR;
}

RuleSet load_rules(const std::string& path) {
  RuleSet rules;
  std::set<fs::path> seen;
  load_into(path, rules, seen);
  return rules;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.models == 0 || cfg.k == 0 || cfg.limits.max_facts == 0 || cfg.limits.max_rounds == 0 ||
        !(cfg.limits.timeout > 0))
      throw UsageError("numeric options must be positive");
    const Loaded l = load(cfg);
    switch (cfg.command) {
      case Command::prove: return cmd_prove(cfg, l, out);
      case Command::check: return cmd_check(cfg, l, out);
      case Command::saturate: return cmd_saturate(cfg, l, out);
      case Command::hints: return cmd_hints(cfg, l, out);
      case Command::graph: return cmd_graph(cfg, l, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RuleError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedFormat& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RealizationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitLimit;
  }
  return kExitUsage;
}

}  // namespace gddp
