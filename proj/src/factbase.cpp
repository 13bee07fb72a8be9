#include "gddp/factbase.hpp"

#include <algorithm>
#include <set>

namespace gddp {

std::uint32_t FactBase::intern_rule(std::string_view name) {
  auto it = rule_ids_.find(std::string(name));
  if (it != rule_ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(rule_names_.size());
  rule_names_.emplace_back(name);
  rule_ids_.emplace(std::string(name), id);
  return id;
}

bool FactBase::insert(const Fact& fact, const Derivation& deriv) {
  std::vector<FactId> premise_ids;
  premise_ids.reserve(deriv.premises.size());
  for (const Fact& p : deriv.premises) {
    auto id = find(canonicalize(p));
    if (!id) throw ContractViolation("premise of a derivation is not in the fact base");
    premise_ids.push_back(*id);
  }
  return insert(fact, deriv.rule_name, premise_ids).second;
}

std::pair<FactId, bool> FactBase::insert(const Fact& fact, std::string_view rule,
                                         std::span<const FactId> premises) {
  if (!is_canonical(fact)) throw ContractViolation("insert of a non-canonical fact");
  if (auto it = ids_.find(fact); it != ids_.end()) {
    if (record_all_ && rule != kHypothesisRule) add_application(it->second, rule, premises);
    return {it->second, false};
  }
  for (FactId p : premises)
    if (p >= records_.size()) throw ContractViolation("premise id out of range");

  const auto id = static_cast<FactId>(records_.size());
  records_.push_back({fact, intern_rule(rule), {premises.begin(), premises.end()}});
  ids_.emplace(fact, id);

  const auto pi = static_cast<std::size_t>(fact.pred);
  by_pred_[pi].push_back(id);
  for (std::size_t pos = 0; pos < fact.size(); ++pos) {
    auto& column = by_pos_[pi][pos];
    const auto point = fact.args[pos].index;
    if (column.size() <= point) column.resize(point + 1);
    column[point].push_back(id);
  }
  if (record_all_ && rule != kHypothesisRule) add_application(id, rule, premises);
  return {id, true};
}

void FactBase::add_application(FactId conclusion, std::string_view rule,
                               std::span<const FactId> premises) {
  if (!record_all_) return;
  applications_.push_back({conclusion, intern_rule(rule), {premises.begin(), premises.end()}});
}

std::optional<FactId> FactBase::find(const Fact& f) const {
  auto it = ids_.find(f);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Derivation FactBase::derivation(FactId id) const {
  const Record& r = records_[id];
  Derivation d;
  d.conclusion = r.fact;
  d.rule_name = rule_names_[r.rule];
  d.step_index = id;
  for (FactId p : r.premises) d.premises.push_back(records_[p].fact);
  return d;
}

std::span<const FactId> FactBase::by_pred(Pred p) const {
  return by_pred_[static_cast<std::size_t>(p)];
}

std::span<const FactId> FactBase::by_position(Pred p, std::size_t pos, PointId point) const {
  const auto& column = by_pos_[static_cast<std::size_t>(p)][pos];
  if (point.index >= column.size()) return {};
  return column[point.index];
}

std::vector<Binding> FactBase::match(const Pattern& pattern) const {
  const std::size_t n = arity(pattern.pred);
  std::vector<FactId> candidates;
  std::optional<PointId> anchor;
  for (std::size_t i = 0; i < n && !anchor; ++i) anchor = pattern.slots[i];
  if (anchor) {
    for (std::size_t pos = 0; pos < n; ++pos) {
      auto ids = by_position(pattern.pred, pos, *anchor);
      candidates.insert(candidates.end(), ids.begin(), ids.end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  } else {
    auto ids = by_pred(pattern.pred);
    candidates.assign(ids.begin(), ids.end());
  }

  std::vector<Binding> out;
  for (FactId id : candidates) {
    for (const Fact& image : orbit(records_[id].fact)) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i)
        ok = !pattern.slots[i] || *pattern.slots[i] == image.args[i];
      if (ok) out.push_back({id, image});
    }
  }
  return out;
}

bool FactBase::index_consistent() const {
  std::size_t indexed = 0;
  for (std::size_t pi = 0; pi < kPredCount; ++pi) {
    for (FactId id : by_pred_[pi]) {
      if (id >= records_.size() || static_cast<std::size_t>(records_[id].fact.pred) != pi)
        return false;
      ++indexed;
    }
    for (std::size_t pos = 0; pos < kMaxArity; ++pos) {
      const auto& column = by_pos_[pi][pos];
      for (std::size_t point = 0; point < column.size(); ++point)
        for (FactId id : column[point]) {
          if (id >= records_.size()) return false;
          const Fact& f = records_[id].fact;
          if (static_cast<std::size_t>(f.pred) != pi || f.args[pos].index != point) return false;
        }
    }
  }
  if (indexed != records_.size() || ids_.size() != records_.size()) return false;
  for (std::size_t id = 0; id < records_.size(); ++id) {
    auto it = ids_.find(records_[id].fact);
    if (it == ids_.end() || it->second != id) return false;
    const Fact& f = records_[id].fact;
    for (std::size_t pos = 0; pos < f.size(); ++pos) {
      auto ids = by_position(f.pred, pos, f.args[pos]);
      if (!std::binary_search(ids.begin(), ids.end(), static_cast<FactId>(id))) return false;
    }
  }
  return true;
}

}  // namespace gddp
