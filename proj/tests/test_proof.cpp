#include <set>

#include "doctest.h"
#include "gddp/engine.hpp"
#include "gddp/proof.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace gddp;
using namespace gddp::test;

namespace {

const Limits kLimits{200000, 10000, 60.0};

}  // namespace

TEST_CASE("every corpus proof replays") {
  std::size_t proved = 0;
  for (const auto& entry : corpus()) {
    CAPTURE(entry.file);
    const Problem p = load_problem(entry.file);
    const ProofResult r = prove(p, default_rules(), kLimits);
    if (r.status != ProofStatus::proved) continue;
    ++proved;
    REQUIRE(r.proof);
    const ProofTree& t = *r.proof;
    CHECK(t.root == canonicalize(p.goal));
    CHECK(t.root_node().fact == t.root);
    const auto init = initial_facts(p);
    CHECK(replay_proof(t, default_rules(), init) == "");
    std::set<Fact> allowed;
    for (const Fact& f : init) allowed.insert(canonicalize(f));
    for (const Fact& leaf : t.leaves()) CHECK(allowed.contains(leaf));
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
      for (std::size_t pr : t.nodes[i].premises) CHECK(pr < i);
  }
  CHECK(proved == 4);
}

TEST_CASE("every derived fact of a saturation has a replayable proof") {
  for (const auto& file : {"problems/p1.gdd", "problems/p3.gdd"}) {
    CAPTURE(file);
    const Problem p = load_problem(file);
    const auto sat = saturate(p, default_rules(), kLimits);
    const auto init = initial_facts(p);
    for (FactId id = 0; id < sat.factbase.size(); ++id) {
      const ProofTree t = extract_proof(sat, sat.factbase.fact(id));
      REQUIRE(replay_proof(t, default_rules(), init) == "");
    }
  }
}

TEST_CASE("replay rejects tampered proofs") {
  const Problem p = load_problem("problems/p1.gdd");
  const ProofResult r = prove(p, default_rules(), kLimits);
  REQUIRE(r.proof);
  const auto init = initial_facts(p);

  ProofTree wrong_rule = *r.proof;
  for (auto& n : wrong_rule.nodes)
    if (!n.is_leaf()) n.rule = "cong_trans";
  CHECK(replay_proof(wrong_rule, default_rules(), init) != "");

  ProofTree bad_leaf = *r.proof;
  bad_leaf.nodes.front().fact = canonicalize(fact(p, Pred::para, {"A", "B", "C", "D"}));
  CHECK(replay_proof(bad_leaf, default_rules(), init) != "");

  ProofTree unknown = *r.proof;
  unknown.nodes.back().rule = "no_such_rule";
  CHECK(replay_proof(unknown, default_rules(), init).find("unknown rule") != std::string::npos);
}

TEST_CASE("the quadrilateral proof uses only the midpoint hypotheses") {
  const Problem p = load_problem("problems/p1.gdd");
  const ProofResult r = prove(p, default_rules(), kLimits);
  REQUIRE(r.proof);
  const auto leaves = r.proof->leaves();
  CHECK(leaves.size() == 4);
  for (const Fact& l : leaves) CHECK(l.pred == Pred::midp);
  CHECK(r.proof->step_count == 3);
  const ProofStats s = proof_stats(*r.proof);
  CHECK(s.step_count == 3);
  CHECK(s.depth == 2);
  std::size_t total = 0;
  for (const auto& [rule, n] : s.rule_histogram) total += n;
  CHECK(total == 3);
}

TEST_CASE("a goal that is a hypothesis") {
  const Problem p = parse_problem(
      "point A = free\npoint B = free\npoint C = free\npoint D = free\n"
      "hypothesis para(A,B,C,D)\ngoal para(C,D,B,A)\n",
      Format::construct);
  const ProofResult r = prove(p, default_rules(), kLimits);
  REQUIRE(r.status == ProofStatus::proved);
  REQUIRE(r.proof);
  CHECK(r.proof->step_count == 0);
  CHECK(r.proof->nodes.size() == 1);
  const auto names = p.point_names();
  CHECK(render_proof(*r.proof, names, default_rules(), OutputFormat::text) ==
        "The goal is a hypothesis.\n");
}

TEST_CASE("a missing goal has no proof") {
  const Problem p = load_problem("problems/p2.gdd");
  const auto sat = saturate(p, default_rules(), kLimits);
  CHECK_THROWS_AS(extract_proof(sat, p.goal), NoProof);
}

TEST_CASE("rendered proofs") {
  const Problem p = load_problem("problems/p1.gdd");
  const ProofResult r = prove(p, default_rules(), kLimits);
  REQUIRE(r.proof);
  const auto names = p.point_names();

  const std::string text = render_proof(*r.proof, names, default_rules(), OutputFormat::text);
  CHECK(text.rfind("Proof of EF ∥ GH.\n", 0) == 0);
  CHECK(text.find("(hypothesis)") != std::string::npos);
  CHECK(text.find("Therefore EF ∥ GH.") != std::string::npos);
  CHECK(text.find(default_rules().find("midline")->description) != std::string::npos);

  const std::string tex = render_proof(*r.proof, names, default_rules(), OutputFormat::latex);
  CHECK(tex.find("\\begin{document}") != std::string::npos);
  CHECK(tex.find("\\parallel") != std::string::npos);
  CHECK(tex.find("\\end{document}") != std::string::npos);

  const auto j = nlohmann::json::parse(render_proof(*r.proof, names, default_rules(), OutputFormat::json));
  CHECK(j["goal"] == "para(E,F,G,H)");
  CHECK(j["steps"].size() == r.proof->step_count);
  CHECK(j["facts"].size() == r.proof->step_count + r.proof->leaves().size());
  CHECK(j["stats"]["step_count"] == 3);
  for (const auto& step : j["steps"])
    for (const auto& prem : step["premises"]) CHECK(prem.get<std::size_t>() < step["id"].get<std::size_t>());
  CHECK(render_proof(*r.proof, names, default_rules(), OutputFormat::json) ==
        render_proof(*r.proof, names, default_rules(), OutputFormat::json));
}

TEST_CASE("fact wording") {
  const Problem p = load_problem("problems/p1.gdd");
  const auto names = p.point_names();
  CHECK(fact_words(fact(p, Pred::midp, {"E", "A", "B"}), names) == "E is the midpoint of AB");
  CHECK(fact_words(fact(p, Pred::cong, {"A", "B", "C", "D"}), names) == "|AB| = |CD|");
  CHECK(fact_words(fact(p, Pred::neq, {"A", "B"}), names, WordStyle::latex) == "$A \\neq B$");
}
