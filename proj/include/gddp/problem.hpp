// Problems, point constructors and rule sets, plus their text formats.

#ifndef GDDP_PROBLEM_HPP_
#define GDDP_PROBLEM_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gddp/model.hpp"

namespace gddp {

enum class Format { fof, construct };

// A located parse failure. Line and column are 1-based and point at the
// first character of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column,
             std::string token);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& token() const { return token_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

enum class CtorKind { free, midpoint, on_line, intersect, parallel_point, foot };

std::string_view ctor_name(CtorKind k);
std::size_t ctor_arity(CtorKind k);

// How a point is built from previously declared points.
//   midpoint(P,Q)          the midpoint of PQ
//   on_line(P,Q)           a point P + t(Q-P) for a drawn parameter t
//   intersect(P,Q,R,S)     the meet of lines PQ and RS
//   parallel_point(P,Q,R)  P + (R - Q), so P->self is parallel and equal to Q->R
//   foot(P,Q,R)            the orthogonal projection of P on line QR
struct Constructor {
  CtorKind kind = CtorKind::free;
  std::vector<PointId> args;

  bool operator==(const Constructor&) const = default;
};

// Facts a constructor guarantees for the point `self`.
std::vector<Fact> emitted_facts(PointId self, const Constructor& c);

struct PointDecl {
  std::string name;
  std::optional<Constructor> ctor;  // absent in FOF problems

  bool operator==(const PointDecl&) const = default;
};

struct Problem {
  std::string name;
  Format format = Format::construct;
  std::vector<PointDecl> points;
  std::vector<Fact> hypotheses;  // as written; constructor facts are not repeated here
  Fact goal;
  std::vector<std::string> includes;

  std::vector<std::string> point_names() const;
  std::optional<PointId> find_point(std::string_view name) const;
  std::size_t point_count() const { return points.size(); }

  bool operator==(const Problem&) const = default;
};

// Facts the initial fact base is seeded with: constructor facts in point
// order, then the written hypotheses, then the distinctness facts the
// policy grants (pairwise neq between free points of construct problems).
std::vector<Fact> constructor_facts(const Problem& p);
std::vector<Fact> distinctness_facts(const Problem& p);
std::vector<Fact> initial_facts(const Problem& p);

Problem parse_problem(std::string_view text, Format format);
std::string render_problem(const Problem& p);

// One atom such as "para(E,F,G,H)" or "A != B" over the points of `p`.
Fact parse_fact(std::string_view text, const Problem& p);

// Picks the format from a file extension (".p" -> fof, ".gdd" -> construct).
std::optional<Format> format_for_path(std::string_view path);

// ---------------------------------------------------------------------------
// Rules

// A premise or conclusion over rule variables 0..n-1.
struct AtomPattern {
  Pred pred = Pred::coll;
  std::vector<std::size_t> vars;

  bool operator==(const AtomPattern&) const = default;
};

struct Rule {
  std::string name;
  std::vector<std::string> var_names;
  std::vector<AtomPattern> premises;
  std::vector<std::pair<std::size_t, std::size_t>> distinct;  // side conditions
  AtomPattern conclusion;
  std::string description;  // natural-language justification used in proofs

  std::size_t var_count() const { return var_names.size(); }
  bool operator==(const Rule&) const = default;
};

// A single-premise rule that only permutes the arguments of a predicate.
struct SymmetryDecl {
  std::string name;
  Pred pred = Pred::coll;
  Perm perm{};

  bool operator==(const SymmetryDecl&) const = default;
};

struct RuleSet {
  std::vector<Rule> rules;
  std::vector<SymmetryDecl> symmetries;
  std::vector<std::string> includes;

  const Rule* find(std::string_view name) const;
  // Appends another set, rejecting duplicate names.
  void merge(RuleSet other);
  bool operator==(const RuleSet&) const = default;
};

class RuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RuleSet parse_rules(std::string_view text);

// Includes, then symmetries, then rules, one fof statement per line.
std::string render_rules(const RuleSet& rules);

}  // namespace gddp

#endif  // GDDP_PROBLEM_HPP_
