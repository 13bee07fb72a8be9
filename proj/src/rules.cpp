#include <algorithm>
#include <set>

#include "fof.hpp"
#include "gddp/problem.hpp"

namespace gddp {

const Rule* RuleSet::find(std::string_view name) const {
  for (const auto& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

void RuleSet::merge(RuleSet other) {
  std::set<std::string> names;
  for (const auto& r : rules) names.insert(r.name);
  for (const auto& s : symmetries) names.insert(s.name);
  for (const auto& r : other.rules)
    if (!names.insert(r.name).second) throw RuleError("duplicate rule name '" + r.name + "'");
  for (const auto& s : other.symmetries)
    if (!names.insert(s.name).second) throw RuleError("duplicate rule name '" + s.name + "'");
  std::move(other.rules.begin(), other.rules.end(), std::back_inserter(rules));
  std::move(other.symmetries.begin(), other.symmetries.end(), std::back_inserter(symmetries));
  std::move(other.includes.begin(), other.includes.end(), std::back_inserter(includes));
}

namespace {

std::optional<Perm> as_symmetry(const Rule& r) {
  if (r.premises.size() != 1 || !r.distinct.empty()) return std::nullopt;
  const auto& from = r.premises.front();
  const auto& to = r.conclusion;
  if (from.pred != to.pred) return std::nullopt;
  std::set<std::size_t> distinct(from.vars.begin(), from.vars.end());
  if (distinct.size() != from.vars.size()) return std::nullopt;
  Perm perm{};
  for (std::size_t i = 0; i < kMaxArity; ++i) perm[i] = static_cast<std::uint8_t>(i);
  for (std::size_t i = 0; i < to.vars.size(); ++i) {
    auto it = std::find(from.vars.begin(), from.vars.end(), to.vars[i]);
    if (it == from.vars.end()) return std::nullopt;
    perm[i] = static_cast<std::uint8_t>(it - from.vars.begin());
  }
  std::set<std::uint8_t> used(perm.begin(), perm.begin() + static_cast<long>(to.vars.size()));
  if (used.size() != to.vars.size()) return std::nullopt;
  auto group = symmetry_group(from.pred);
  if (std::find(group.begin(), group.end(), perm) == group.end()) return std::nullopt;
  return perm;
}

}  // namespace

RuleSet parse_rules(std::string_view text) {
  auto file = detail::parse_fof(text);
  RuleSet set;
  set.includes = file.includes;
  std::set<std::string> names;

  for (const auto& st : file.statements) {
    auto fail = [&](const std::string& why) -> RuleError {
      return RuleError(std::to_string(st.where.line) + ":" + std::to_string(st.where.column) +
                       ": rule '" + st.name + "': " + why);
    };
    if (st.role != "axiom") throw fail("rule files may only contain axioms");
    if (!names.insert(st.name).second) throw fail("duplicate rule name");
    if (!st.has_implication) throw fail("a rule must be an implication");
    if (st.consequent.size() != 1) throw fail("a rule concludes exactly one atom");

    Rule r;
    r.name = st.name;
    r.var_names = st.symbols;
    auto var = [&](const std::string& s) {
      return static_cast<std::size_t>(std::find(r.var_names.begin(), r.var_names.end(), s) -
                                      r.var_names.begin());
    };
    std::vector<bool> bound(r.var_names.size(), false);
    for (const auto& lit : st.antecedent) {
      if (lit.is_neq) {
        r.distinct.emplace_back(var(lit.args[0]), var(lit.args[1]));
        continue;
      }
      AtomPattern a{lit.pred, {}};
      for (const auto& s : lit.args) {
        a.vars.push_back(var(s));
        bound[a.vars.back()] = true;
      }
      r.premises.push_back(std::move(a));
    }
    if (r.premises.empty()) throw fail("a rule needs at least one premise atom");
    const auto& c = st.consequent.front();
    r.conclusion.pred = c.pred;
    for (const auto& s : c.args) {
      const auto v = var(s);
      if (!bound[v]) throw fail("variable " + s + " of the conclusion occurs in no premise");
      r.conclusion.vars.push_back(v);
    }
    for (auto [a, b] : r.distinct)
      for (auto v : {a, b})
        if (!bound[v])
          throw fail("variable " + r.var_names[v] + " of a side condition occurs in no premise");
    r.description = st.annotation.value_or(st.name);

    if (auto perm = as_symmetry(r)) {
      set.symmetries.push_back({r.name, r.conclusion.pred, *perm});
    } else {
      set.rules.push_back(std::move(r));
    }
  }
  return set;
}

namespace {

std::string atom_text(const AtomPattern& a, const std::vector<std::string>& names) {
  std::string s(pred_name(a.pred));
  s += "(";
  for (std::size_t i = 0; i < a.vars.size(); ++i) s += (i ? "," : "") + names[a.vars[i]];
  return s + ")";
}

std::string quantified(const std::vector<std::string>& names) {
  std::string s = "! [";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
  return s + "] : ";
}

}  // namespace

std::string render_rules(const RuleSet& rules) {
  std::string out;
  for (const auto& inc : rules.includes) out += "include('" + inc + "').\n";
  for (const auto& sym : rules.symmetries) {
    const std::size_t n = arity(sym.pred);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("X" + std::to_string(i + 1));
    AtomPattern from{sym.pred, {}}, to{sym.pred, {}};
    for (std::size_t i = 0; i < n; ++i) {
      from.vars.push_back(i);
      to.vars.push_back(sym.perm[i]);
    }
    out += "fof(" + sym.name + ",axiom,( " + quantified(names) + "(" + atom_text(from, names) +
           " => " + atom_text(to, names) + "))).\n";
  }
  for (const auto& r : rules.rules) {
    std::string lhs;
    for (auto [a, b] : r.distinct)
      lhs += (lhs.empty() ? "" : " & ") + r.var_names[a] + "!=" + r.var_names[b];
    for (const auto& p : r.premises)
      lhs += (lhs.empty() ? "" : " & ") + atom_text(p, r.var_names);
    out += "fof(" + r.name + ",axiom,( " + quantified(r.var_names) + "((" + lhs + ") => " +
           atom_text(r.conclusion, r.var_names) + ")),'" + r.description + "').\n";
  }
  return out;
}

}  // namespace gddp
