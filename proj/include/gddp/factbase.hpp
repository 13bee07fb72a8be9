// Indexed set of canonical facts with their derivation records.

#ifndef GDDP_FACTBASE_HPP_
#define GDDP_FACTBASE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gddp/model.hpp"

namespace gddp {

inline constexpr std::string_view kHypothesisRule = "hypothesis";

using FactId = std::uint32_t;

struct Derivation {
  Fact conclusion;
  std::string rule_name;
  std::vector<Fact> premises;
  std::size_t step_index = 0;

  bool is_hypothesis() const { return rule_name == kHypothesisRule; }
};

// One rule application by fact ids, as recorded in all-derivations mode.
struct Application {
  FactId conclusion = 0;
  std::uint32_t rule = 0;  // index into FactBase::rule_names()
  std::vector<FactId> premises;

  bool operator==(const Application&) const = default;
};

// A query pattern: each position is either a fixed point or a wildcard.
struct Pattern {
  Pred pred = Pred::coll;
  std::array<std::optional<PointId>, kMaxArity> slots{};
};

struct Binding {
  FactId fact = 0;
  Fact instance;  // the orbit member that matched, aligned with the pattern
};

class FactBase {
 public:
  explicit FactBase(bool record_all_derivations = false)
      : record_all_(record_all_derivations) {}

  // Returns true iff the fact was new. `deriv.premises` must already be
  // present; the first derivation of a fact is never overwritten.
  bool insert(const Fact& fact, const Derivation& deriv);

  // Id-based insert used by the engine. Returns {id, inserted}.
  std::pair<FactId, bool> insert(const Fact& fact, std::string_view rule,
                                 std::span<const FactId> premises);

  // Records an additional derivation (all-derivations mode only).
  void add_application(FactId conclusion, std::string_view rule,
                       std::span<const FactId> premises);

  bool contains(const Fact& f) const { return ids_.contains(f); }
  std::optional<FactId> find(const Fact& f) const;

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const Fact& fact(FactId id) const { return records_[id].fact; }
  std::span<const FactId> premises(FactId id) const { return records_[id].premises; }
  std::string_view rule_of(FactId id) const { return rule_names_[records_[id].rule]; }
  Derivation derivation(FactId id) const;

  bool records_all_derivations() const { return record_all_; }
  std::span<const Application> applications() const { return applications_; }
  std::span<const std::string> rule_names() const { return rule_names_; }

  // Facts of a predicate, ascending id.
  std::span<const FactId> by_pred(Pred p) const;
  // Facts of a predicate holding `point` at canonical position `pos`, ascending id.
  std::span<const FactId> by_position(Pred p, std::size_t pos, PointId point) const;

  // Every stored fact whose orbit contains an instance compatible with the
  // pattern, ordered by fact id and then group order.
  std::vector<Binding> match(const Pattern& pattern) const;

  // Verifies that the index and the set describe the same facts.
  bool index_consistent() const;

 private:
  struct Record {
    Fact fact;
    std::uint32_t rule = 0;
    std::vector<FactId> premises;
  };

  std::uint32_t intern_rule(std::string_view name);

  bool record_all_;
  std::vector<Record> records_;
  std::unordered_map<Fact, FactId, FactHash> ids_;
  std::vector<std::string> rule_names_;
  std::unordered_map<std::string, std::uint32_t> rule_ids_;
  std::vector<Application> applications_;
  std::array<std::vector<FactId>, kPredCount> by_pred_;
  // by_pos_[pred][pos][point]
  std::array<std::array<std::vector<std::vector<FactId>>, kMaxArity>, kPredCount> by_pos_;
};

}  // namespace gddp

#endif  // GDDP_FACTBASE_HPP_
