// Acceptance suite: one PASS/FAIL line per criterion.
//   gddp_acceptance <path to gddp> <source dir>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "gddp/cli.hpp"
#include "gddp/engine.hpp"
#include "gddp/numeric.hpp"
#include "gddp/proof.hpp"
#include "json.hpp"

using namespace gddp;
using Json = nlohmann::json;

namespace {

std::string g_bin, g_src;

struct Run {
  int code = -1;
  std::string out;
  double seconds = 0;
};

Run gddp_run(const std::string& args) {
  const std::string cmd = "'" + g_bin + "' " + args + " 2>/dev/null";
  const auto t0 = std::chrono::steady_clock::now();
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string src(const std::string& rel) { return g_src + "/" + rel; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Problem load(const std::string& rel) {
  return parse_problem(slurp(src(rel)), *format_for_path(rel));
}

std::optional<Json> parse_json(const std::string& s) {
  try {
    return Json::parse(s);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct Entry {
  std::string file, model;
};

const std::vector<Entry> kCorpus{{"problems/p1.gdd", "problems/p1.gdd"}, {"problems/p1.p", "problems/p1.gdd"},
                                 {"problems/p1_ndg.p", "problems/p1.gdd"}, {"problems/p2.gdd", "problems/p2.gdd"},
                                 {"problems/p3.gdd", "problems/p3.gdd"}, {"problems/p3.p", "problems/p3.gdd"},
                                 {"problems/p4.gdd", "problems/p4.gdd"}};

const Limits kLimits{200000, 10000, 60.0};

int g_failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << detail << std::endl;
  if (!ok) ++g_failures;
}

std::string fmt(double s) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::fixed << s << " s";
  return ss.str();
}

void criterion1() {
  const Run r = gddp_run("prove --format json '" + src("problems/p1.gdd") + "'");
  const auto j = parse_json(r.out);
  bool leaves_ok = false;
  std::size_t leaves = 0;
  if (j && (*j)["proof"].is_object()) {
    leaves_ok = true;
    for (const auto& f : (*j)["proof"]["facts"])
      if (f["hypothesis"].get<bool>()) {
        ++leaves;
        leaves_ok = leaves_ok && f["fact"].get<std::string>().rfind("midp(", 0) == 0;
      }
    leaves_ok = leaves_ok && leaves == 4;
  }
  report(1, r.code == 0 && leaves_ok && r.seconds < 1.0,
         "quadrilateral proved, exit " + std::to_string(r.code) + ", " + std::to_string(leaves) +
             " midp leaves, " + fmt(r.seconds));
}

void criterion2() {
  const Run r = gddp_run("prove --format json '" + src("problems/p3.gdd") + "'");
  const auto j = parse_json(r.out);
  std::set<std::string> preds;
  if (j && (*j)["proof"].is_object())
    for (const auto& s : (*j)["proof"]["steps"]) {
      const auto c = s["conclusion"].get<std::string>();
      preds.insert(c.substr(0, c.find('(')));
    }
  const bool chain = preds.contains("eqangle") && preds.contains("simtri") && preds.contains("eqratio");
  report(2, r.code == 0 && chain && r.seconds < 1.0,
         "equidistance proved, exit " + std::to_string(r.code) + ", eqangle/simtri/eqratio chain " +
             (chain ? "used" : "missing") + ", " + fmt(r.seconds));
}

void criterion3() {
  bool ok = true;
  std::string detail;
  for (const char* file : {"problems/p2.gdd", "problems/p4.gdd"}) {
    const Run r = gddp_run("prove --format json '" + src(file) + "'");
    const auto j = parse_json(r.out);
    const bool saturated = j && (*j)["saturated"].get<bool>();
    ok = ok && r.code == 1 && saturated && r.seconds < 5.0;
    detail += std::string(detail.empty() ? "" : "; ") + file + " exit " + std::to_string(r.code) +
              (saturated ? " saturated " : " not saturated ") + fmt(r.seconds);
  }
  report(3, ok, detail);
}

void criterion4(const RuleSet& rules) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::size_t facts = 0, violations = 0;
  for (const auto& e : kCorpus) {
    const Problem p = load(e.file), model = load(e.model);
    const auto sat = saturate(p, rules, kLimits);
    std::vector<Fact> all;
    for (FactId id = 0; id < sat.factbase.size(); ++id) all.push_back(sat.factbase.fact(id));
    std::vector<PointId> map;
    for (const auto& d : p.points) map.push_back(*model.find_point(d.name));
    const SweepReport r = soundness_sweep(model, all, map, 0, 100, Exec::parallel);
    facts += all.size();
    violations += r.violations.size();
    ok = ok && sat.saturated && r.models_valid >= 100 && r.violations.empty();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(4, ok && s < 60.0,
         std::to_string(facts) + " closure facts x 100 models, " + std::to_string(violations) +
             " violations, " + fmt(s));
}

void criterion5() {
  const Run r = gddp_run("check --models 100 --format json '" + src("problems/p1.gdd") + "'");
  const auto j = parse_json(r.out);
  const bool supported = r.code == 0 && j && (*j)["verdict"] == "supported" &&
                         (*j)["goal_holds"] == 100 && (*j)["models_valid"] == 100;

  const auto dir = std::filesystem::temp_directory_path() / "gddp_acceptance";
  std::filesystem::create_directories(dir);
  const auto wrong = dir / "p1_wrong.gdd";
  std::string text = slurp(src("problems/p1.gdd"));
  const auto at = text.find("goal para(E,F,G,H)");
  if (at != std::string::npos) text.replace(at, 18, "goal para(E,F,F,H)");
  std::ofstream(wrong) << text;
  const Run w = gddp_run("check --models 100 --format json '" + wrong.string() + "'");
  const auto jw = parse_json(w.out);
  const bool refuted = at != std::string::npos && w.code == 1 && jw && (*jw)["verdict"] == "refuted" &&
                       (*jw)["first_refuting"].is_number() && (*jw)["first_refuting"].get<int>() < 5;
  report(5, supported && refuted,
         std::string("original ") + (supported ? "supported 100/100" : "not supported") +
             ", perturbed " + (refuted ? "refuted within 5 models" : "not refuted early"));
}

bool canonical_properties() {
  for (std::size_t pi = 0; pi < kPredCount; ++pi) {
    const auto pred = static_cast<Pred>(pi);
    const std::size_t n = arity(pred);
    std::vector<PointId> a(n);
    std::function<bool(std::size_t)> go = [&](std::size_t k) {
      if (k == n) {
        const Fact f(pred, a);
        const Fact c = canonicalize(f);
        if (canonicalize(c) != c) return false;
        for (const Perm& g : symmetry_group(pred))
          if (canonicalize(apply_perm(f, g)) != c || apply_perm(f, g) < c) return false;
        return true;
      }
      for (std::uint32_t v = 0; v < 3; ++v) {
        a[k] = PointId{v};
        if (!go(k + 1)) return false;
      }
      return true;
    };
    if (!go(0)) return false;
  }
  return true;
}

void criterion6(const RuleSet& rules) {
  const bool canon = canonical_properties();
  bool naive = true, fixpoint = true, replay = true, roundtrip = true;
  for (const auto& e : kCorpus) {
    const Problem p = load(e.file);
    const auto init = initial_facts(p);
    const auto fast = saturate_facts(init, rules, kLimits);
    const auto slow = saturate_naive(init, rules, kLimits);
    std::set<Fact> a, b;
    std::vector<Fact> all;
    for (FactId i = 0; i < fast.factbase.size(); ++i) {
      a.insert(fast.factbase.fact(i));
      all.push_back(fast.factbase.fact(i));
    }
    for (FactId i = 0; i < slow.factbase.size(); ++i) b.insert(slow.factbase.fact(i));
    naive = naive && a == b;
    const auto again = saturate_facts(all, rules, kLimits);
    fixpoint = fixpoint && again.saturated && again.factbase.size() == all.size();
    for (const Fact& f : all)
      replay = replay && replay_proof(extract_proof(fast, f), rules, init).empty();
  }
  for (const char* f : {"problems/p1.gdd", "problems/p1.p", "problems/p1_ndg.p", "problems/p2.gdd",
                        "problems/p3.gdd", "problems/p3.p", "problems/p4.gdd", "tests/data/quadrilateral_listing.p"}) {
    const Problem p = load(f);
    roundtrip = roundtrip && parse_problem(render_problem(p), p.format) == p;
  }
  for (const char* f : {"rules/gdd.rules", "rules/geometryDeductiveDatabaseMethod.ax", "tests/data/full_angle.rules"}) {
    const RuleSet rs = parse_rules(slurp(src(f)));
    roundtrip = roundtrip && parse_rules(render_rules(rs)) == rs;
  }
  const RuleSet table = parse_rules(slurp(src("tests/data/full_angle.rules")));
  roundtrip = roundtrip && table.symmetries.size() == 4 && table.rules.size() == 1;
  auto yn = [](bool b) { return b ? "ok" : "FAILED"; };
  report(6, canon && naive && fixpoint && replay && roundtrip,
         std::string("canonical forms ") + yn(canon) + ", semi-naive = naive " + yn(naive) +
             ", fixpoint " + yn(fixpoint) + ", proof replay " + yn(replay) + ", round trip " +
             yn(roundtrip));
}

void criterion7() {
  const Run r = gddp_run("hints --k 1000 --format json '" + src("problems/p1.gdd") + "'");
  const auto j = parse_json(r.out);
  bool ok = r.code == 0 && j.has_value();
  bool seen_off = false, ef = false, gh = false;
  if (ok) {
    for (const auto& h : (*j)["hints"]) {
      const bool on = h["on_goal_path"].get<bool>();
      if (!on) seen_off = true;
      else if (seen_off) ok = false;
      const auto fact = h["fact"].get<std::string>();
      if (on && h["rule"] == "midline" && fact == "para(A,C,E,F)") ef = true;
      if (on && h["rule"] == "midline" && fact == "para(A,C,G,H)") gh = true;
    }
  }
  const std::size_t count = ok ? (*j)["proof_count"].get<std::size_t>() : 0;
  report(7, ok && ef && gh && count >= 1,
         std::string("midline hints ") + (ef && gh ? "lead on the goal path" : "missing") +
             ", proof count " + std::to_string(count));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: gddp_acceptance <gddp binary> <source dir>\n";
    return 2;
  }
  g_bin = argv[1];
  g_src = argv[2];
  const RuleSet rules = load_rules(src("rules/gdd.rules"));
  criterion1();
  criterion2();
  criterion3();
  criterion4(rules);
  criterion5();
  criterion6(rules);
  criterion7();
  return g_failures == 0 ? 0 : 1;
}
