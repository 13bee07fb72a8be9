#include "gddp/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <unordered_set>

#ifdef GDDP_HAVE_OPENMP
#include <omp.h>
#endif

namespace gddp {

namespace {

constexpr std::size_t kMaxVars = 32;
using Env = std::array<std::int32_t, kMaxVars>;
using Clock = std::chrono::steady_clock;

struct AppHash {
  std::size_t operator()(const RuleApplication& a) const noexcept {
    std::size_t h = FactHash{}(a.conclusion);
    for (FactId p : a.premises) h ^= p + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return h;
  }
};

// Which facts a premise may bind to, relative to the delta.
enum class Window { delta, old, any };

struct DeltaView {
  FactId begin = 0;
  FactId end = 0;                          // visibility bound
  const std::vector<char>* mask = nullptr; // explicit delta set, if any

  bool in_delta(FactId id) const { return mask ? (*mask)[id] != 0 : id >= begin && id < end; }
  bool admits(Window w, FactId id) const {
    if (id >= end) return false;
    switch (w) {
      case Window::delta: return in_delta(id);
      case Window::old: return !in_delta(id);
      case Window::any: return true;
    }
    return false;
  }
};

bool has_repeat(const Fact& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (f.args[i] == f.args[j]) return true;
  return false;
}

// A rule automorphism: a renaming of the rule variables that maps every
// premise onto itself up to its predicate's symmetry, and preserves the
// side conditions and the conclusion. `perm[j]` is the group index that
// realizes it on premise j.
struct Automorphism {
  std::vector<std::int32_t> sigma;
  std::vector<std::uint16_t> perm;
};

constexpr std::size_t kAutomorphismBudget = 1u << 20;

std::vector<Automorphism> automorphisms(const Rule& rule) {
  const std::size_t k = rule.premises.size();
  std::vector<Automorphism> out;
  std::vector<std::int32_t> sigma(rule.var_count(), -1);
  std::vector<std::uint16_t> chosen(k, 0);
  std::size_t visited = 0;
  bool exhausted = false;

  auto conclusion_ok = [&] {
    const auto& c = rule.conclusion;
    for (const Perm& g : symmetry_group(c.pred)) {
      bool ok = true;
      for (std::size_t q = 0; q < c.vars.size() && ok; ++q)
        ok = sigma[c.vars[q]] == static_cast<std::int32_t>(c.vars[g[q]]);
      if (ok) return true;
    }
    return false;
  };
  auto distinct_ok = [&] {
    for (auto [a, b] : rule.distinct) {
      const auto x = static_cast<std::size_t>(sigma[a]), y = static_cast<std::size_t>(sigma[b]);
      bool found = false;
      for (auto [c, d] : rule.distinct) found = found || (c == x && d == y) || (c == y && d == x);
      if (!found) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> search = [&](std::size_t j) {
    if (exhausted) return;
    if (++visited > kAutomorphismBudget) {
      exhausted = true;
      return;
    }
    if (j == k) {
      if (conclusion_ok() && distinct_ok()) out.push_back({sigma, chosen});
      return;
    }
    const auto& pat = rule.premises[j];
    const auto group = symmetry_group(pat.pred);
    for (std::size_t gi = 0; gi < group.size(); ++gi) {
      const Perm& g = group[gi];
      auto saved = sigma;
      bool ok = true;
      for (std::size_t q = 0; q < pat.vars.size() && ok; ++q) {
        auto& slot = sigma[pat.vars[q]];
        const auto target = static_cast<std::int32_t>(pat.vars[g[q]]);
        if (slot < 0) slot = target;
        else ok = slot == target;
      }
      if (ok) {
        // a renaming must be injective
        std::vector<bool> hit(sigma.size(), false);
        for (auto v : sigma) {
          if (v < 0) continue;
          if (hit[v]) ok = false;
          hit[v] = true;
        }
      }
      if (ok) {
        chosen[j] = static_cast<std::uint16_t>(gi);
        search(j + 1);
      }
      sigma = std::move(saved);
    }
  };
  search(0);
  if (exhausted) {
    // fall back to the identity, which never prunes anything
    std::vector<std::int32_t> id(rule.var_count());
    for (std::size_t v = 0; v < id.size(); ++v) id[v] = static_cast<std::int32_t>(v);
    return {{id, std::vector<std::uint16_t>(k, 0)}};
  }
  return out;
}

// For each step of a join order, which orbit images of the premise bound
// at that step are worth trying: one per coset of the automorphisms that
// fix every variable bound at earlier steps.
using StepMasks = std::vector<std::vector<char>>;

std::size_t perm_index(std::span<const Perm> group, const Perm& p) {
  return static_cast<std::size_t>(std::find(group.begin(), group.end(), p) - group.begin());
}

StepMasks step_masks(const Rule& rule, const std::vector<Automorphism>& autos,
                     const std::vector<std::size_t>& order) {
  StepMasks masks;
  std::vector<bool> bound(rule.var_count(), false);
  for (std::size_t index : order) {
    const auto& pat = rule.premises[index];
    const auto group = symmetry_group(pat.pred);
    std::vector<std::size_t> stab;
    for (const auto& a : autos) {
      bool fixes = true;
      for (std::size_t v = 0; v < bound.size() && fixes; ++v)
        fixes = !bound[v] || a.sigma[v] == static_cast<std::int32_t>(v);
      if (fixes) stab.push_back(a.perm[index]);
    }
    std::vector<char> mask(group.size(), 0);
    std::vector<char> covered(group.size(), 0);
    for (std::size_t gi = 0; gi < group.size(); ++gi) {
      if (covered[gi]) continue;
      mask[gi] = 1;
      for (std::size_t hi : stab) {
        // the binding through g[h[q]] is equivalent to the one through g[q]
        Perm gh{};
        for (std::size_t q = 0; q < kMaxArity; ++q) gh[q] = group[gi][group[hi][q]];
        covered[perm_index(group, gh)] = 1;
      }
    }
    masks.push_back(std::move(mask));
    for (auto v : pat.vars) bound[v] = true;
  }
  return masks;
}

class Joiner {
 public:
  Joiner(const Rule& rule, const FactBase& fb, const DeltaView& view)
      : rule_(rule), fb_(fb), view_(view) {
    if (rule.var_count() > kMaxVars) throw RuleError("rule '" + rule.name + "' has too many variables");
  }

  // Candidate facts for the premise at `index` given the bindings so far,
  // ascending id.
  std::vector<FactId> candidates(std::size_t index, const Env& env, Window w) const {
    const AtomPattern& pat = rule_.premises[index];
    const std::size_t n = arity(pat.pred);
    std::vector<FactId> out;

    std::optional<PointId> anchor;
    std::size_t best = SIZE_MAX;
    for (std::size_t q = 0; q < n; ++q) {
      const auto v = env[pat.vars[q]];
      if (v < 0) continue;
      const PointId pt{static_cast<std::uint32_t>(v)};
      std::size_t total = 0;
      for (std::size_t pos = 0; pos < n; ++pos) total += fb_.by_position(pat.pred, pos, pt).size();
      if (total < best) {
        best = total;
        anchor = pt;
      }
    }
    if (anchor) {
      // an orbit image can only match if the fact holds every bound point
      // at least as often as the pattern does
      std::array<std::pair<std::int32_t, std::uint8_t>, kMaxArity> need{};
      std::size_t n_need = 0;
      for (std::size_t q = 0; q < n; ++q) {
        const auto v = env[pat.vars[q]];
        if (v < 0) continue;
        std::size_t k = 0;
        while (k < n_need && need[k].first != v) ++k;
        if (k == n_need) need[n_need++] = {v, 0};
        ++need[k].second;
      }
      auto holds_bound = [&](const Fact& f) {
        for (std::size_t k = 0; k < n_need; ++k) {
          std::uint8_t c = 0;
          for (std::size_t q = 0; q < n; ++q) c += f.args[q].index == static_cast<std::uint32_t>(need[k].first);
          if (c < need[k].second) return false;
        }
        return true;
      };
      for (std::size_t pos = 0; pos < n; ++pos) {
        for (FactId id : fb_.by_position(pat.pred, pos, *anchor)) {
          if (id >= view_.end) break;
          if (!view_.admits(w, id)) continue;
          // count each fact once: skip unless this is the first position holding the anchor
          const Fact& f = fb_.fact(id);
          bool earlier = false;
          for (std::size_t k = 0; k < pos && !earlier; ++k) earlier = f.args[k] == *anchor;
          if (!earlier && holds_bound(f)) out.push_back(id);
        }
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    auto all = fb_.by_pred(pat.pred);
    FactId lo = 0;
    if (w == Window::delta && !view_.mask) lo = view_.begin;
    auto first = std::lower_bound(all.begin(), all.end(), lo);
    for (auto it = first; it != all.end() && *it < view_.end; ++it)
      if (view_.admits(w, *it)) out.push_back(*it);
    return out;
  }

  // Extends `env` by every orbit image of fact `id` that matches the premise.
  // Only images whose group index is set in `mask` are tried.
  template <class Fn>
  void for_each_binding(std::size_t index, FactId id, const Env& env,
                        const std::vector<char>& mask, Fn&& fn) const {
    const AtomPattern& pat = rule_.premises[index];
    const Fact& f = fb_.fact(id);
    const std::size_t n = f.size();
    const bool repeats = has_repeat(f);
    std::vector<Fact> seen;
    const auto group = symmetry_group(f.pred);
    for (std::size_t gi = 0; gi < group.size(); ++gi) {
      if (!mask[gi]) continue;
      const Perm& perm = group[gi];
      bool ok = true;
      for (std::size_t q = 0; q < n && ok; ++q) {
        const auto v = env[pat.vars[q]];
        ok = v < 0 || v == static_cast<std::int32_t>(f.args[perm[q]].index);
      }
      if (!ok) continue;
      Env e = env;
      for (std::size_t q = 0; q < n && ok; ++q) {
        const auto v = pat.vars[q];
        const auto pt = static_cast<std::int32_t>(f.args[perm[q]].index);
        if (e[v] < 0) e[v] = pt;
        else ok = e[v] == pt;
      }
      if (!ok) continue;
      if (repeats) {
        Fact image = apply_perm(f, perm);
        if (std::find(seen.begin(), seen.end(), image) != seen.end()) continue;
        seen.push_back(image);
      }
      fn(e);
    }
  }

  // Completes a join over premises `order[step..]`.
  void extend(const std::vector<std::size_t>& order, const std::vector<Window>& windows,
              const StepMasks& masks, std::size_t step, const Env& env,
              std::vector<FactId>& chosen, std::vector<RuleApplication>& out) const {
    if (step == order.size()) {
      emit(env, chosen, out);
      return;
    }
    const std::size_t index = order[step];
    for (FactId id : candidates(index, env, windows[index])) {
      for_each_binding(index, id, env, masks[step], [&](const Env& e) {
        chosen[index] = id;
        extend(order, windows, masks, step + 1, e, chosen, out);
      });
    }
  }

 private:
  void emit(const Env& env, const std::vector<FactId>& chosen,
            std::vector<RuleApplication>& out) const {
    for (auto [a, b] : rule_.distinct) {
      const PointId pa{static_cast<std::uint32_t>(env[a])};
      const PointId pb{static_cast<std::uint32_t>(env[b])};
      if (pa == pb) return;
      auto id = fb_.find(canonicalize(Fact(Pred::neq, {pa, pb})));
      if (!id || *id >= view_.end) return;
    }
    Fact c;
    c.pred = rule_.conclusion.pred;
    for (std::size_t q = 0; q < rule_.conclusion.vars.size(); ++q)
      c.args[q] = PointId{static_cast<std::uint32_t>(env[rule_.conclusion.vars[q]])};
    if (is_tautology(c) || is_ill_formed(c)) return;
    out.push_back({canonicalize(c), chosen});
  }

  const Rule& rule_;
  const FactBase& fb_;
  const DeltaView& view_;
};

// Join orders and their image masks, computed once per rule.
struct RulePlan {
  std::vector<std::vector<std::size_t>> delta_orders;  // one per delta position
  std::vector<StepMasks> delta_masks;
};

RulePlan make_plan(const Rule& rule) {
  const auto autos = automorphisms(rule);
  const std::size_t k = rule.premises.size();
  RulePlan plan;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> order{i};
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) order.push_back(j);
    plan.delta_masks.push_back(step_masks(rule, autos, order));
    plan.delta_orders.push_back(std::move(order));
  }
  return plan;
}

Env empty_env() {
  Env e;
  e.fill(-1);
  return e;
}

struct KernelResult {
  std::vector<RuleApplication> apps;
  bool aborted = false;
};

void dedupe(std::vector<RuleApplication>& apps) {
  std::unordered_set<RuleApplication, AppHash> seen;
  std::vector<RuleApplication> out;
  out.reserve(apps.size());
  for (auto& a : apps)
    if (seen.insert(a).second) out.push_back(std::move(a));
  apps = std::move(out);
}

// Semi-naive round kernel. For each delta position i the premise i binds to
// a delta fact, earlier premises to old facts and later ones to any fact,
// so every qualifying premise tuple is produced exactly once.
KernelResult semi_naive(const Rule& rule, const RulePlan& plan, const FactBase& fb,
                        const DeltaView& view, Exec exec,
                        std::optional<Clock::time_point> deadline) {
  KernelResult result;
  Joiner join(rule, fb, view);
  const std::size_t k = rule.premises.size();
  std::atomic<bool> aborted{false};

  for (std::size_t i = 0; i < k && !aborted; ++i) {
    std::vector<Window> windows(k);
    for (std::size_t j = 0; j < k; ++j)
      windows[j] = j < i ? Window::old : (j == i ? Window::delta : Window::any);
    const auto& order = plan.delta_orders[i];
    const auto& masks = plan.delta_masks[i];

    const Env env0 = empty_env();
    const auto seeds = join.candidates(i, env0, Window::delta);
    std::vector<std::vector<RuleApplication>> per_seed(seeds.size());

    auto work = [&](std::size_t s) {
      if (aborted.load(std::memory_order_relaxed)) return;
      if (deadline && Clock::now() > *deadline) {
        aborted = true;
        return;
      }
      std::vector<FactId> chosen(k, 0);
      join.for_each_binding(i, seeds[s], env0, masks[0], [&](const Env& e) {
        chosen[i] = seeds[s];
        join.extend(order, windows, masks, 1, e, chosen, per_seed[s]);
      });
    };

    const auto count = static_cast<std::int64_t>(seeds.size());
    if (exec == Exec::parallel) {
#ifdef GDDP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
      for (std::int64_t s = 0; s < count; ++s) work(static_cast<std::size_t>(s));
    } else {
      for (std::int64_t s = 0; s < count; ++s) work(static_cast<std::size_t>(s));
    }
    for (auto& v : per_seed)
      std::move(v.begin(), v.end(), std::back_inserter(result.apps));
  }
  result.aborted = aborted;
  dedupe(result.apps);
  return result;
}

}  // namespace

std::vector<RuleApplication> apply_rule(const Rule& rule, const FactBase& fb, DeltaRange delta,
                                        Exec exec) {
  DeltaView view{delta.begin, delta.end, nullptr};
  return semi_naive(rule, make_plan(rule), fb, view, exec, std::nullopt).apps;
}

std::vector<std::pair<Fact, Derivation>> apply_rule(const Rule& rule, const FactBase& fb,
                                                    std::span<const Fact> delta) {
  std::vector<char> mask(fb.size(), 0);
  for (const Fact& f : delta) {
    auto id = fb.find(canonicalize(f));
    if (!id) throw ContractViolation("delta fact is not in the fact base");
    mask[*id] = 1;
  }
  DeltaView view{0, static_cast<FactId>(fb.size()), &mask};
  std::vector<std::pair<Fact, Derivation>> out;
  for (auto& app : semi_naive(rule, make_plan(rule), fb, view, Exec::serial, std::nullopt).apps) {
    Derivation d;
    d.conclusion = app.conclusion;
    d.rule_name = rule.name;
    for (FactId p : app.premises) d.premises.push_back(fb.fact(p));
    d.step_index = fb.size();
    out.emplace_back(app.conclusion, std::move(d));
  }
  return out;
}

std::vector<RuleApplication> apply_rule_naive(const Rule& rule, const FactBase& fb,
                                              FactId visible_end) {
  DeltaView view{0, visible_end, nullptr};
  Joiner join(rule, fb, view);
  const std::size_t k = rule.premises.size();
  std::vector<Window> windows(k, Window::any);
  std::vector<std::size_t> order(k);
  StepMasks masks;
  for (std::size_t j = 0; j < k; ++j) {
    order[j] = j;
    // the reference tries every orbit image
    masks.emplace_back(symmetry_group(rule.premises[j].pred).size(), 1);
  }
  std::vector<FactId> chosen(k, 0);
  std::vector<RuleApplication> out;
  join.extend(order, windows, masks, 0, empty_env(), chosen, out);
  dedupe(out);
  return out;
}

namespace {

SaturationResult run_saturation(std::span<const Fact> initial, const RuleSet& rules,
                                const Limits& limits, const EngineOptions& options,
                                std::optional<Fact> goal, bool naive) {
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(limits.timeout));
  SaturationResult r{FactBase(options.all_derivations), 0, 0, false, 0.0};
  FactBase& fb = r.factbase;
  std::vector<RulePlan> plans;
  for (const Rule& rule : rules.rules) plans.push_back(make_plan(rule));
  for (const Fact& f : initial) fb.insert(canonicalize(f), kHypothesisRule, {});

  auto goal_reached = [&] { return options.goal_stop && goal && fb.contains(*goal); };
  auto finish = [&](bool saturated) {
    r.saturated = saturated;
    r.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    return std::move(r);
  };
  if (goal_reached()) return finish(false);

  FactId delta_begin = 0;
  bool limit_hit = false;
  while (true) {
    if (r.rounds >= limits.max_rounds) return finish(false);
    ++r.rounds;
    const auto end = static_cast<FactId>(fb.size());
    for (std::size_t ri = 0; ri < rules.rules.size(); ++ri) {
      const Rule& rule = rules.rules[ri];
      std::vector<RuleApplication> apps;
      if (naive) {
        apps = apply_rule_naive(rule, fb, end);
      } else {
        auto kr = semi_naive(rule, plans[ri], fb, DeltaView{delta_begin, end, nullptr},
                             options.exec, deadline);
        apps = std::move(kr.apps);
        limit_hit = limit_hit || kr.aborted;
      }
      r.rule_applications += apps.size();
      for (const auto& app : apps) {
        fb.insert(app.conclusion, rule.name, app.premises);
        if (goal_reached()) return finish(false);
        if (fb.size() >= limits.max_facts) return finish(false);
      }
      if (limit_hit || Clock::now() > deadline) return finish(false);
    }
    if (fb.size() == end) return finish(true);
    delta_begin = end;
  }
}

}  // namespace

SaturationResult saturate_facts(std::span<const Fact> initial, const RuleSet& rules,
                                const Limits& limits, const EngineOptions& options,
                                std::optional<Fact> goal) {
  if (goal) goal = canonicalize(*goal);
  return run_saturation(initial, rules, limits, options, goal, false);
}

SaturationResult saturate(const Problem& problem, const RuleSet& rules, const Limits& limits,
                          const EngineOptions& options) {
  const auto initial = initial_facts(problem);
  return saturate_facts(initial, rules, limits, options, problem.goal);
}

SaturationResult saturate_naive(std::span<const Fact> initial, const RuleSet& rules,
                                const Limits& limits) {
  return run_saturation(initial, rules, limits, EngineOptions{}, std::nullopt, true);
}

std::string_view status_name(ProofStatus s) {
  switch (s) {
    case ProofStatus::proved: return "proved";
    case ProofStatus::not_derivable: return "not_derivable";
    case ProofStatus::resource_limit: return "resource_limit";
  }
  return "?";
}

ProofResult prove(const Problem& problem, const RuleSet& rules, const Limits& limits, Exec exec) {
  ProofResult result;
  result.goal = canonicalize(problem.goal);
  EngineOptions options;
  options.exec = exec;
  options.goal_stop = true;
  result.saturation = saturate(problem, rules, limits, options);
  if (result.saturation.factbase.contains(result.goal)) {
    result.status = ProofStatus::proved;
    result.proof = extract_proof(result.saturation.factbase, result.goal);
  } else {
    result.status = result.saturation.saturated ? ProofStatus::not_derivable
                                                : ProofStatus::resource_limit;
  }
  return result;
}

}  // namespace gddp
